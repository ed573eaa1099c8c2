//! The functor `G: Z(C) → C ⊠ C^bop`, `(X,γ) ↦ ⊕_i i* ⊠ I_{i,(X,γ)}`.

use alloc::vec::Vec;

use super::coupling::{coupling_gamma, CouplingIdempotent};
use super::deligne::{DelMorphism, DelignePair};
use super::half_braiding::CenterObject;
use crate::engine::Engine;
use crate::morphism::Morphism;
use crate::object::ObjectExpr;
use crate::Result;

/// `G(X,γ)` together with the coupling data it was built from, one entry
/// per label `i` in label order.
#[derive(Clone, Debug)]
pub struct GImage {
    pub object: DelignePair,
    pub couplings: Vec<CouplingIdempotent>,
}

pub fn functor_g(eng: &Engine<'_>, obj: &CenterObject) -> Result<GImage> {
    let cat = eng.cat();
    let mut couplings = Vec::with_capacity(cat.n_labels());
    let mut summands = Vec::with_capacity(cat.n_labels());
    for i in 0..cat.n_labels() {
        let c = coupling_gamma(eng, i, obj)?;
        summands.push((ObjectExpr::simple(cat.dual(i)), c.image.object.clone()));
        couplings.push(c);
    }
    Ok(GImage {
        object: DelignePair::new(summands),
        couplings,
    })
}

/// `G(φ) = ⊕_i 1_{i*} ⊠ (proj ∘ Γ_{i,Y} ∘ (1_i ⊗ φ) ∘ Γ_{i,X} ∘ incl)`.
pub fn functor_g_morphism(
    eng: &Engine<'_>,
    gx: &GImage,
    gy: &GImage,
    phi: &Morphism,
) -> Result<DelMorphism> {
    let cat = eng.cat();
    let ring = cat.ring();
    let mut acc = DelMorphism::zero(ring, &gx.object, &gy.object);
    for (i, (cx, cy)) in gx.couplings.iter().zip(&gy.couplings).enumerate() {
        let is = ObjectExpr::simple(i);
        let inner = cy
            .image
            .proj
            .compose(&cy.gamma)?
            .compose(&eng.tensor(&eng.identity(&is), phi)?)?
            .compose(&cx.gamma)?
            .compose(&cx.image.incl)?;
        let id = eng.identity(&ObjectExpr::simple(cat.dual(i)));
        acc = acc.add(&DelMorphism::elementary(
            ring, &gx.object, &gy.object, i, i, &id, &inner,
        )?)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn g_of_unit() {
        let cat = catalog::catalog("fibonacci").unwrap();
        let eng = Engine::new(&cat);
        let g = functor_g(&eng, &CenterObject::unit(&eng)).unwrap();
        assert_eq!(g.object.multiplicities(cat.ring()), [1, 0, 0, 0]);
    }

    #[test]
    fn g_preserves_identities() {
        let cat = catalog::catalog("ising").unwrap();
        let eng = Engine::new(&cat);
        let obj = super::super::half_braiding::functor_f(&eng, &DelignePair::simple(1, 2)).unwrap();
        let g = functor_g(&eng, &obj).unwrap();
        let gid = functor_g_morphism(&eng, &g, &g, &eng.identity(&obj.x)).unwrap();
        assert!(gid.identity_defect() < 1e-10);
    }
}
