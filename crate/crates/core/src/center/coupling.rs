//! The coupling idempotent `Γ_{i,(X,γ)}` and its image factorization.

use alloc::vec::Vec;

use super::half_braiding::CenterObject;
use crate::engine::Engine;
use crate::linalg;
use crate::morphism::Morphism;
use crate::object::ObjectExpr;
use crate::scalar::{CMatrix, ONE};
use crate::{Error, Result};

/// `Γ = incl ∘ proj` with `proj ∘ incl = id_I`.
#[derive(Clone, Debug)]
pub struct Image {
    pub object: ObjectExpr,
    pub incl: Morphism,
    pub proj: Morphism,
}

#[derive(Clone, Debug)]
pub struct CouplingIdempotent {
    pub i: usize,
    pub center_obj: CenterObject,
    pub gamma: Morphism,
    pub image: Image,
    /// `‖Γ² − Γ‖`
    pub residual: f64,
}

/// `dim(Ω)^{-1} Σ_j dim(j) ptr_j(c^{-1}_{i⊗X,j} ∘ (c^{-1}_{j,i} ⊗ 1_X) ∘ (1_i ⊗ γ_j^{-1}))`
/// on `i ⊗ X`: the `Ω` loop passing under `i` and through `γ` on `X`.
pub fn coupling_morphism(eng: &Engine<'_>, i: usize, obj: &CenterObject) -> Result<Morphism> {
    let cat = eng.cat();
    let is = ObjectExpr::simple(i);
    let ix = is.tensor(&obj.x);
    let id_i = eng.identity(&is);
    let id_x = eng.identity(&obj.x);
    let mut acc = eng.zero(&ix, &ix);
    for j in 0..cat.n_labels() {
        let js = ObjectExpr::simple(j);
        let f = eng
            .braiding(&js, &ix, true)?
            .compose(&eng.tensor(&eng.braiding(&is, &js, true)?, &id_x)?)?
            .compose(&eng.tensor(&id_i, &obj.gamma.get(j).inverse()?)?)?;
        let t = eng.partial_trace(&f, &ix, &ix, &js)?;
        acc = acc.add(&t.scale(cat.dim(j)))?;
    }
    Ok(acc.scale(ONE / cat.global_dim()?))
}

/// `Γ` with its image `I = ⊕_c c^{r_c}`; `incl` has orthonormal columns
/// spanning the image of `Γ` and `proj = incl^† Γ`.
pub fn coupling_gamma(
    eng: &Engine<'_>,
    i: usize,
    obj: &CenterObject,
) -> Result<CouplingIdempotent> {
    let cat = eng.cat();
    let n = cat.n_labels();
    let eps = cat.tol().eps_identity;
    let g = coupling_morphism(eng, i, obj)?;
    let residual = g.compose(&g)?.distance(&g);
    let mut spread: f64 = 0.0;
    for c in 0..n {
        for ev in linalg::eigenvalues(g.block(c)) {
            spread = spread.max(ev.norm().min((ev - ONE).norm()));
        }
    }
    if residual > eps || spread > eps {
        return Err(Error::Idempotency { residual, spread });
    }
    let mut ranks = Vec::with_capacity(n);
    let mut cols = Vec::with_capacity(n);
    for c in 0..n {
        let u = linalg::column_space(g.block(c), 0.5);
        ranks.push(u.ncols());
        cols.push(u);
    }
    let object = ObjectExpr::sum(
        (0..n)
            .filter(|&c| ranks[c] > 0)
            .map(|c| (alloc::vec![c], ranks[c]))
            .collect(),
    );
    let ring = cat.ring();
    let ix = g.source().clone();
    let incl_blocks: Vec<CMatrix> = cols.clone();
    let incl = Morphism::new(ring, object.clone(), ix.clone(), incl_blocks)?;
    let proj_blocks: Vec<CMatrix> = (0..n).map(|c| cols[c].adjoint() * g.block(c)).collect();
    let proj = Morphism::new(ring, ix, object.clone(), proj_blocks)?;
    Ok(CouplingIdempotent {
        i,
        center_obj: obj.clone(),
        gamma: g,
        image: Image { object, incl, proj },
        residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::center::deligne::DelignePair;
    use crate::center::half_braiding::functor_f;

    #[test]
    fn unit_object_couples_to_unit_label() {
        for name in ["fibonacci", "ising"] {
            let cat = catalog::catalog(name).unwrap();
            let eng = Engine::new(&cat);
            let one = CenterObject::unit(&eng);
            for i in 0..cat.n_labels() {
                let c = coupling_gamma(&eng, i, &one).unwrap();
                if i == 0 {
                    assert!(c.gamma.identity_defect() < 1e-12);
                } else {
                    assert!(c.gamma.norm() < 1e-12);
                    assert!(c.image.object.is_zero());
                }
            }
        }
    }

    #[test]
    fn image_factors_gamma() {
        let cat = catalog::catalog("fibonacci").unwrap();
        let eng = Engine::new(&cat);
        let obj = functor_f(&eng, &DelignePair::simple(1, 1)).unwrap();
        for i in 0..2 {
            let c = coupling_gamma(&eng, i, &obj).unwrap();
            assert!(
                c.image
                    .incl
                    .compose(&c.image.proj)
                    .unwrap()
                    .distance(&c.gamma)
                    < 1e-12
            );
            assert!(
                c.image
                    .proj
                    .compose(&c.image.incl)
                    .unwrap()
                    .identity_defect()
                    < 1e-12
            );
        }
    }

    #[test]
    fn degenerate_idempotency() {
        let cat = catalog::catalog("vec_z2_sym").unwrap();
        let eng = Engine::new(&cat);
        let obj = functor_f(&eng, &DelignePair::simple(1, 0)).unwrap();
        let c = coupling_gamma(&eng, 1, &obj).unwrap();
        assert!(c.residual < 1e-12);
    }
}
