//! Objects of the Drinfeld center and the tautological functor
//! `F: C ⊠ C^bop → Z(C)`.

use alloc::vec::Vec;

use super::deligne::{DelMorphism, DelignePair};
use crate::engine::Engine;
use crate::linalg;
use crate::morphism::Morphism;
use crate::object::ObjectExpr;
use crate::scalar::{Scalar, ONE, ZERO};
use crate::{Error, Result};

/// `γ_j: j ⊗ X → X ⊗ j` for every simple label `j`.
#[derive(Clone, Debug, PartialEq)]
pub struct HalfBraiding {
    pub maps: Vec<Morphism>,
}

impl HalfBraiding {
    pub fn get(&self, j: usize) -> &Morphism {
        &self.maps[j]
    }
}

/// A pair `(X, γ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CenterObject {
    pub x: ObjectExpr,
    pub gamma: HalfBraiding,
}

impl CenterObject {
    /// `(1, id)`.
    pub fn unit(eng: &Engine<'_>) -> Self {
        let n = eng.cat().n_labels();
        let maps = (0..n)
            .map(|j| eng.identity(&ObjectExpr::simple(j)))
            .collect();
        CenterObject {
            x: ObjectExpr::unit(),
            gamma: HalfBraiding { maps },
        }
    }
}

/// Residuals of the half-braiding axioms.
#[derive(Clone, Debug, PartialEq)]
pub struct CenterCheck {
    /// `‖γ_1 − id‖`
    pub unit: f64,
    /// `‖(γ_j ⊗ 1)(1 ⊗ γ_k) − Σ_l dim(l) (1 ⊗ φ^m) γ_l (φ_m ⊗ 1)‖`
    pub tensoriality: f64,
    /// `‖(1 ⊗ φ)(γ_j ⊗ 1)(1 ⊗ γ_k) − γ_l (φ ⊗ 1)‖` over fusion vertices `φ`
    pub naturality: f64,
    /// Largest sector condition number among the `γ_j`.
    pub condition: f64,
    pub pass: bool,
}

/// `(γ_j ⊗ 1_k)(1_j ⊗ γ_k): j ⊗ k ⊗ X → X ⊗ j ⊗ k`.
pub fn gamma_pair(eng: &Engine<'_>, obj: &CenterObject, j: usize, k: usize) -> Result<Morphism> {
    let js = ObjectExpr::simple(j);
    let ks = ObjectExpr::simple(k);
    let inner = eng.tensor(&eng.identity(&js), obj.gamma.get(k))?;
    let outer = eng.tensor(obj.gamma.get(j), &eng.identity(&ks))?;
    outer.compose(&inner)
}

pub fn verify_center_object(eng: &Engine<'_>, obj: &CenterObject) -> Result<CenterCheck> {
    let cat = eng.cat();
    let n = cat.n_labels();
    let x = &obj.x;
    if obj.gamma.maps.len() != n {
        return Err(Error::Shape(
            "half-braiding must have one map per label".into(),
        ));
    }
    let unit = obj.gamma.get(0).block_identity_defect();
    let mut condition: f64 = 1.0;
    for g in &obj.gamma.maps {
        for b in g.blocks() {
            condition = condition.max(linalg::condition_number(b));
        }
    }
    let mut tensoriality: f64 = 0.0;
    let mut naturality: f64 = 0.0;
    let id_x = eng.identity(x);
    for j in 0..n {
        for k in 0..n {
            let w = ObjectExpr::word(alloc::vec![j, k]);
            let lhs = gamma_pair(eng, obj, j, k)?;
            let mut rhs = eng.zero(&w.tensor(x), &x.tensor(&w));
            for i in 0..n {
                let l = cat.dual(i);
                let pair = eng.hom_basis(&w, i)?;
                for (phi, dual) in pair.basis.iter().zip(&pair.dual_basis) {
                    let pre = eng.tensor(phi, &id_x)?;
                    let post = eng.tensor(&id_x, dual)?;
                    let term = post.compose(obj.gamma.get(l))?.compose(&pre)?;
                    rhs = rhs.add(&term.scale(cat.dim(i)))?;
                    let nat_l = eng.tensor(&id_x, phi)?.compose(&lhs)?;
                    let nat_r = obj.gamma.get(l).compose(&pre)?;
                    naturality = naturality.max(nat_l.distance(&nat_r));
                }
            }
            tensoriality = tensoriality.max(lhs.distance(&rhs));
        }
    }
    let eps = cat.tol().eps_identity;
    let pass = unit < eps
        && tensoriality < eps
        && naturality < eps
        && condition.is_finite()
        && condition < 1e12;
    Ok(CenterCheck {
        unit,
        tensoriality,
        naturality,
        condition,
        pass,
    })
}

/// `max_j ‖(f ⊗ 1_j) γ_j − β_j (1_j ⊗ f)‖` for `f: (X, γ) → (Y, β)`.
pub fn center_morphism_residual(
    eng: &Engine<'_>,
    a: &CenterObject,
    b: &CenterObject,
    f: &Morphism,
) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for j in 0..eng.cat().n_labels() {
        let js = ObjectExpr::simple(j);
        let lhs = eng.tensor(f, &eng.identity(&js))?.compose(a.gamma.get(j))?;
        let rhs = b
            .gamma
            .get(j)
            .compose(&eng.tensor(&eng.identity(&js), f)?)?;
        worst = worst.max(lhs.distance(&rhs));
    }
    Ok(worst)
}

/// Projection of `Hom_C(X, Y)` onto `Hom_{Z(C)}((X,γ), (Y,β))`:
/// `h ↦ dim(Ω)^{-1} Σ_j dim(j) ptr_j(β_j (1_j ⊗ h) γ_j^{-1})`.
pub fn average(
    eng: &Engine<'_>,
    a: &CenterObject,
    b: &CenterObject,
    h: &Morphism,
) -> Result<Morphism> {
    let cat = eng.cat();
    let mut acc = eng.zero(&a.x, &b.x);
    for j in 0..cat.n_labels() {
        let js = ObjectExpr::simple(j);
        let inner = b
            .gamma
            .get(j)
            .compose(&eng.tensor(&eng.identity(&js), h)?)?
            .compose(&a.gamma.get(j).inverse()?)?;
        let t = eng.partial_trace(&inner, &a.x, &b.x, &js)?;
        acc = acc.add(&t.scale(cat.dim(j)))?;
    }
    Ok(acc.scale(ONE / cat.global_dim()?))
}

/// `dim Hom_{Z(C)}((X,γ), (Y,β))`, as the trace of the averaging projection.
pub fn center_hom_dim(eng: &Engine<'_>, a: &CenterObject, b: &CenterObject) -> Result<usize> {
    let cat = eng.cat();
    let ring = cat.ring();
    let mut tr = ZERO;
    for c in 0..cat.n_labels() {
        let rows = b.x.sector_dim(ring, c);
        let cols = a.x.sector_dim(ring, c);
        for r in 0..rows {
            for s in 0..cols {
                let mut h = eng.zero(&a.x, &b.x);
                h.block_mut(c)[(r, s)] = ONE;
                let p = average(eng, a, b, &h)?;
                tr += p.block(c)[(r, s)];
            }
        }
    }
    let rounded = num_traits::Float::round(tr.re);
    if (tr - Scalar::new(rounded, 0.0)).norm() > 1e-6 || rounded < 0.0 {
        return Err(Error::Numerical {
            context: "center hom dimension is not an integer".into(),
            condition: tr.norm(),
        });
    }
    Ok(rounded as usize)
}

/// `F(⊕_k X_k ⊠ Y_k) = (⊕_k X_k ⊗ Y_k, ⊕_k (1 ⊗ c^{-1}_{Y_k,−})(c_{−,X_k} ⊗ 1))`.
pub fn functor_f(eng: &Engine<'_>, d: &DelignePair) -> Result<CenterObject> {
    let n = eng.cat().n_labels();
    let x = Engine::pair_object(d.summands());
    let parts: Vec<ObjectExpr> = d.summands().iter().map(|(a, b)| a.tensor(b)).collect();
    let mut maps = Vec::with_capacity(n);
    for j in 0..n {
        let js = ObjectExpr::simple(j);
        let src_parts: Vec<ObjectExpr> = parts.iter().map(|p| js.tensor(p)).collect();
        let tgt_parts: Vec<ObjectExpr> = parts.iter().map(|p| p.tensor(&js)).collect();
        let mut acc = eng.zero(&js.tensor(&x), &x.tensor(&js));
        for (k, (xk, yk)) in d.summands().iter().enumerate() {
            let first = eng.tensor(&eng.braiding(&js, xk, false)?, &eng.identity(yk))?;
            let second = eng.tensor(&eng.identity(xk), &eng.braiding(&js, yk, true)?)?;
            let g = second.compose(&first)?;
            let term = eng
                .part_inclusion(&tgt_parts, k)
                .compose(&g)?
                .compose(&eng.part_projection(&src_parts, k))?;
            acc = acc.add(&term)?;
        }
        maps.push(acc);
    }
    Ok(CenterObject {
        x,
        gamma: HalfBraiding { maps },
    })
}

/// `F(φ)` for a Deligne morphism `φ`.
pub fn functor_f_morphism(eng: &Engine<'_>, phi: &DelMorphism) -> Result<Morphism> {
    eng.pair_transform(phi.source().summands(), phi.target().summands(), |a, b| {
        phi.block(a, b).clone()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn unit_object_passes() {
        let cat = catalog::catalog("fibonacci").unwrap();
        let eng = Engine::new(&cat);
        let chk = verify_center_object(&eng, &CenterObject::unit(&eng)).unwrap();
        assert!(chk.pass);
        assert!(chk.tensoriality < 1e-14);
    }

    #[test]
    fn f_images_pass() {
        for name in ["fibonacci", "ising", "vec_z3_modular"] {
            let cat = catalog::catalog(name).unwrap();
            let eng = Engine::new(&cat);
            for a in 0..cat.n_labels() {
                for b in 0..cat.n_labels() {
                    let obj = functor_f(&eng, &DelignePair::simple(a, b)).unwrap();
                    let chk = verify_center_object(&eng, &obj).unwrap();
                    assert!(chk.pass, "{name} {a}x{b}: {chk:?}");
                }
            }
        }
    }

    #[test]
    fn rescaled_gamma_fails() {
        let cat = catalog::catalog("vec_z2_sym").unwrap();
        let eng = Engine::new(&cat);
        let mut obj = functor_f(&eng, &DelignePair::simple(1, 0)).unwrap();
        obj.gamma.maps[1] = obj.gamma.maps[1].scale(ONE * 2.0);
        let chk = verify_center_object(&eng, &obj).unwrap();
        assert!(!chk.pass);
        assert!(chk.tensoriality >= 1.0);
    }

    #[test]
    fn negated_unit_component_fails() {
        let cat = catalog::catalog("vec_z2_sym").unwrap();
        let eng = Engine::new(&cat);
        let mut obj = functor_f(&eng, &DelignePair::simple(1, 0)).unwrap();
        obj.gamma.maps[0] = obj.gamma.maps[0].scale(-ONE);
        let chk = verify_center_object(&eng, &obj).unwrap();
        assert!(!chk.pass);
        assert!(chk.tensoriality >= 1.0);
    }

    #[test]
    fn character_twist_is_a_half_braiding() {
        let cat = catalog::catalog("vec_z2_sym").unwrap();
        let eng = Engine::new(&cat);
        let mut obj = functor_f(&eng, &DelignePair::simple(1, 0)).unwrap();
        obj.gamma.maps[1] = obj.gamma.maps[1].scale(-ONE);
        assert!(verify_center_object(&eng, &obj).unwrap().pass);
    }

    #[test]
    fn f_of_gg_collapses() {
        let cat = catalog::catalog("vec_z2_sym").unwrap();
        let eng = Engine::new(&cat);
        let obj = functor_f(&eng, &DelignePair::simple(1, 1)).unwrap();
        assert!((obj.gamma.get(1).block(1)[(0, 0)] - ONE).norm() < 1e-14);
    }

    #[test]
    fn hom_dims_of_f_images() {
        let cat = catalog::catalog("fibonacci").unwrap();
        let eng = Engine::new(&cat);
        let a = functor_f(&eng, &DelignePair::simple(1, 0)).unwrap();
        let b = functor_f(&eng, &DelignePair::simple(0, 1)).unwrap();
        assert_eq!(center_hom_dim(&eng, &a, &a).unwrap(), 1);
        assert_eq!(center_hom_dim(&eng, &a, &b).unwrap(), 0);
    }
}
