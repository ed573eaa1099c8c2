//! The natural transformations `d: 1 → GF`, `q: GF → 1`, `b: 1 → FG`,
//! `p: FG → 1`.
//!
//! `d` and `q` are built from a basis `α_k` of `Hom(X, i*)` and its
//! trace-dual basis `α^k`, so that `Tr(α_k ∘ α^l) = δ_kl`; with that
//! normalization both carry the factor `√dim(i)`.

use alloc::vec::Vec;

use super::deligne::{DelMorphism, DelignePair};
use super::functors::{functor_g, GImage};
use super::half_braiding::{functor_f, CenterObject};
use crate::engine::{CasimirPair, CupCap, Engine};
use crate::morphism::Morphism;
use crate::object::ObjectExpr;
use crate::scalar::{sqrt, Scalar};
use crate::{Error, Result};

/// The four families at one pair of test objects.
#[derive(Clone, Debug)]
pub struct DeligneSide {
    pub pair: DelignePair,
    pub gf: GImage,
    pub d: DelMorphism,
    pub q: DelMorphism,
}

#[derive(Clone, Debug)]
pub struct CenterSide {
    pub obj: CenterObject,
    pub g: GImage,
    pub fg: CenterObject,
    pub b: Morphism,
    pub p: Morphism,
}

fn sqrt_dim(eng: &Engine<'_>, i: usize) -> Scalar {
    sqrt(eng.cat().dim(i))
}

fn split(pair: &DelignePair) -> Result<(&ObjectExpr, &ObjectExpr)> {
    match pair.summands() {
        [(x, y)] => Ok((x, y)),
        _ => Err(Error::Shape(
            "d and q are built on a single pair X ⊠ Y".into(),
        )),
    }
}

/// Canonical bases of `Hom(X, i*)` for every label `i`.
pub fn default_bases(eng: &Engine<'_>, x: &ObjectExpr) -> Result<Vec<CasimirPair>> {
    (0..eng.cat().n_labels())
        .map(|i| eng.hom_basis(x, i))
        .collect()
}

/// `d_i = √dim(i) Σ_k α_k ⊠ (proj ∘ (1_i ⊗ α^k ⊗ 1_Y) ∘ (coev_i ⊗ 1_Y))`.
pub fn transform_d(
    eng: &Engine<'_>,
    pair: &DelignePair,
    gf: &GImage,
    bases: &[CasimirPair],
) -> Result<DelMorphism> {
    let cat = eng.cat();
    let ring = cat.ring();
    let (_, y) = split(pair)?;
    let id_y = eng.identity(y);
    let mut acc = DelMorphism::zero(ring, pair, &gf.object);
    for (i, basis) in bases.iter().enumerate() {
        if basis.basis.is_empty() {
            continue;
        }
        let is = ObjectExpr::simple(i);
        let coev = eng.tensor(&eng.cup_cap(&is, CupCap::Coev)?, &id_y)?;
        let proj = &gf.couplings[i].image.proj;
        for (a, ad) in basis.basis.iter().zip(&basis.dual_basis) {
            let right = proj
                .compose(&eng.tensor_all(&[&eng.identity(&is), ad, &id_y])?)?
                .compose(&coev)?
                .retype(ring, y.clone(), proj.target().clone())?;
            let term = DelMorphism::elementary(ring, pair, &gf.object, 0, i, a, &right)?;
            acc = acc.add(&term.scale(sqrt_dim(eng, i)))?;
        }
    }
    Ok(acc)
}

/// `q_i = √dim(i) Σ_k α^k ⊠ ((ev'_i ⊗ 1_Y) ∘ (1_i ⊗ α_k ⊗ 1_Y) ∘ incl)`.
pub fn transform_q(
    eng: &Engine<'_>,
    pair: &DelignePair,
    gf: &GImage,
    bases: &[CasimirPair],
) -> Result<DelMorphism> {
    let cat = eng.cat();
    let ring = cat.ring();
    let (_, y) = split(pair)?;
    let id_y = eng.identity(y);
    let mut acc = DelMorphism::zero(ring, &gf.object, pair);
    for (i, basis) in bases.iter().enumerate() {
        if basis.basis.is_empty() {
            continue;
        }
        let is = ObjectExpr::simple(i);
        let ev = eng.tensor(&eng.cup_cap(&is, CupCap::EvalRight)?, &id_y)?;
        let incl = &gf.couplings[i].image.incl;
        for (a, ad) in basis.basis.iter().zip(&basis.dual_basis) {
            let right = ev
                .compose(&eng.tensor_all(&[&eng.identity(&is), a, &id_y])?)?
                .compose(incl)?
                .retype(ring, incl.source().clone(), y.clone())?;
            let term = DelMorphism::elementary(ring, &gf.object, pair, i, 0, ad, &right)?;
            acc = acc.add(&term.scale(sqrt_dim(eng, i)))?;
        }
    }
    Ok(acc)
}

/// Builds `GF(X ⊠ Y)`, `d` and `q` with the canonical hom bases.
pub fn deligne_side(eng: &Engine<'_>, pair: &DelignePair) -> Result<DeligneSide> {
    let (x, _) = split(pair)?;
    let gf = functor_g(eng, &functor_f(eng, pair)?)?;
    let bases = default_bases(eng, x)?;
    let d = transform_d(eng, pair, &gf, &bases)?;
    let q = transform_q(eng, pair, &gf, &bases)?;
    Ok(DeligneSide {
        pair: pair.clone(),
        gf,
        d,
        q,
    })
}

fn fg_parts(eng: &Engine<'_>, g: &GImage) -> Vec<ObjectExpr> {
    let cat = eng.cat();
    g.couplings
        .iter()
        .map(|c| ObjectExpr::simple(cat.dual(c.i)).tensor(&c.image.object))
        .collect()
}

/// `b = Σ_i √dim(i) (1_{i*} ⊗ proj_i) ∘ (coev'_i ⊗ 1_X)`.
pub fn transform_b(eng: &Engine<'_>, obj: &CenterObject, g: &GImage) -> Result<Morphism> {
    let cat = eng.cat();
    let ring = cat.ring();
    let parts = fg_parts(eng, g);
    let total = Engine::pair_object(g.object.summands());
    let id_x = eng.identity(&obj.x);
    let mut acc = eng.zero(&obj.x, &total);
    for c in &g.couplings {
        let is = ObjectExpr::simple(c.i);
        let isd = ObjectExpr::simple(cat.dual(c.i));
        let coev = eng
            .tensor(&eng.cup_cap(&is, CupCap::CoevRight)?, &id_x)?
            .retype(ring, obj.x.clone(), isd.tensor(&is).tensor(&obj.x))?;
        let bi = eng
            .tensor(&eng.identity(&isd), &c.image.proj)?
            .compose(&coev)?;
        let term = eng.part_inclusion(&parts, c.i).compose(&bi)?;
        acc = acc.add(&term.scale(sqrt_dim(eng, c.i)))?;
    }
    Ok(acc)
}

/// `p = Σ_i √dim(i) (ev_i ⊗ 1_X) ∘ (1_{i*} ⊗ Γ_i ∘ incl_i)`.
pub fn transform_p(eng: &Engine<'_>, obj: &CenterObject, g: &GImage) -> Result<Morphism> {
    let cat = eng.cat();
    let ring = cat.ring();
    let parts = fg_parts(eng, g);
    let total = Engine::pair_object(g.object.summands());
    let id_x = eng.identity(&obj.x);
    let mut acc = eng.zero(&total, &obj.x);
    for c in &g.couplings {
        let is = ObjectExpr::simple(c.i);
        let isd = ObjectExpr::simple(cat.dual(c.i));
        let ev = eng
            .tensor(&eng.cup_cap(&is, CupCap::Eval)?, &id_x)?
            .retype(ring, isd.tensor(&is).tensor(&obj.x), obj.x.clone())?;
        let pi = ev.compose(&eng.tensor(&eng.identity(&isd), &c.gamma.compose(&c.image.incl)?)?)?;
        let term = pi.compose(&eng.part_projection(&parts, c.i))?;
        acc = acc.add(&term.scale(sqrt_dim(eng, c.i)))?;
    }
    Ok(acc)
}

/// Builds `G(X,γ)`, `FG(X,γ)`, `b` and `p`.
pub fn center_side(eng: &Engine<'_>, obj: &CenterObject) -> Result<CenterSide> {
    let g = functor_g(eng, obj)?;
    let fg = functor_f(eng, &g.object)?;
    let b = transform_b(eng, obj, &g)?;
    let p = transform_p(eng, obj, &g)?;
    Ok(CenterSide {
        obj: obj.clone(),
        g,
        fg,
        b,
        p,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::scalar::ONE;

    #[test]
    fn qd_on_unit_pair() {
        let cat = catalog::catalog("fibonacci").unwrap();
        let eng = Engine::new(&cat);
        let s = deligne_side(&eng, &DelignePair::simple(0, 0)).unwrap();
        assert!(s.q.compose(&s.d).unwrap().identity_defect() < 1e-12);
    }

    #[test]
    fn pb_on_unit_object() {
        let cat = catalog::catalog("fibonacci").unwrap();
        let eng = Engine::new(&cat);
        let s = center_side(&eng, &CenterObject::unit(&eng)).unwrap();
        assert!(s.p.compose(&s.b).unwrap().identity_defect() < 1e-12);
    }

    #[test]
    fn degenerate_pb_is_doubled() {
        let cat = catalog::catalog("vec_z2_sym").unwrap();
        let eng = Engine::new(&cat);
        let s = center_side(&eng, &CenterObject::unit(&eng)).unwrap();
        let pb = s.p.compose(&s.b).unwrap();
        assert!((pb.block(0)[(0, 0)] - ONE * 2.0).norm() < 1e-12);
    }
}
