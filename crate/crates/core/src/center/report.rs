//! Defect norms of the four composites `q∘d`, `d∘q`, `p∘b`, `b∘p`.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::deligne::DelignePair;
use super::half_braiding::{center_hom_dim, center_morphism_residual, functor_f, CenterObject};
use super::transforms::{center_side, deligne_side};
use super::tube::{center_simples, tube_algebra};
use crate::category::CategoryData;
use crate::engine::Engine;
use crate::modularity::{is_modular, muger_center};
use crate::object::ObjectExpr;
use crate::Result;

/// Which test objects enter the defect maxima.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SamplingPolicy {
    /// Word pairs `X ⊠ Y` with `|X| + |Y|` up to this bound, beyond the simples.
    pub max_word_length: usize,
}

impl Default for SamplingPolicy {
    fn default() -> Self {
        SamplingPolicy { max_word_length: 2 }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Defects {
    pub qd: f64,
    pub dq: f64,
    pub pb: f64,
    pub bp: f64,
}

impl Defects {
    pub fn max(&self) -> f64 {
        self.qd.max(self.dq).max(self.pb).max(self.bp)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FactorizationReport {
    pub category: String,
    pub modular: bool,
    pub rank_s: usize,
    pub muger_trivial: bool,
    pub defects: Defects,
    /// Largest `‖q∘d − id‖` over simple pairs alone.
    pub qd_simple: f64,
    pub center_count: usize,
    pub square_count: usize,
    /// Largest half-braiding compatibility residual of `b` and of `p`.
    pub b_residual: f64,
    pub p_residual: f64,
    /// Largest `‖Γ² − Γ‖` over labels and center simples.
    pub idempotency: f64,
    /// `GF(a ⊠ b)` has multiplicity vector `e_{a,b}` for every simple pair.
    pub gf_on_simples: bool,
    /// For each center simple, the number of simple pairs whose `F`-image
    /// is isomorphic to it.
    pub f_hits: Vec<usize>,
    pub deligne_objects: usize,
    pub center_objects: usize,
    pub factorizable: bool,
}

impl FactorizationReport {
    /// `modular ⟺ trivial Müger center ⟺ factorizable`.
    pub fn triple_equivalence(&self) -> bool {
        self.modular == self.muger_trivial && self.modular == self.factorizable
    }

    /// Each center simple is hit by exactly one simple pair.
    pub fn f_bijective(&self) -> bool {
        self.f_hits.len() == self.square_count && self.f_hits.iter().all(|&h| h == 1)
    }
}

fn words(n: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                (1..n).map(move |a| {
                    let mut v = w.clone();
                    v.push(a);
                    v
                })
            })
            .collect();
    }
    out
}

/// Simple pairs `a ⊠ b`, then word pairs up to the policy bound that are not
/// already simple.
pub fn test_pairs(cat: &CategoryData, policy: SamplingPolicy) -> Vec<DelignePair> {
    let n = cat.n_labels();
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            out.push(DelignePair::simple(a, b));
        }
    }
    for total in 0..=policy.max_word_length {
        for lx in 0..=total {
            let ly = total - lx;
            if lx <= 1 && ly <= 1 && total > 0 {
                continue;
            }
            for x in words(n, lx) {
                for y in words(n, ly) {
                    out.push(DelignePair::single(
                        ObjectExpr::word(x.clone()),
                        ObjectExpr::word(y),
                    ));
                }
            }
        }
    }
    out
}

pub fn invertibility_report(
    cat: &CategoryData,
    policy: SamplingPolicy,
) -> Result<FactorizationReport> {
    let eng = Engine::new(cat);
    let n = cat.n_labels();
    let ring = cat.ring();
    let verdict = is_modular(cat)?;
    let muger = muger_center(cat)?;
    let mut defects = Defects::default();
    let mut qd_simple: f64 = 0.0;
    let mut gf_on_simples = true;

    let pairs = test_pairs(cat, policy);
    for (k, pair) in pairs.iter().enumerate() {
        let s = deligne_side(&eng, pair)?;
        let qd = s.q.compose(&s.d)?.identity_defect();
        let dq = s.d.compose(&s.q)?.identity_defect();
        defects.qd = defects.qd.max(qd);
        defects.dq = defects.dq.max(dq);
        if k < n * n {
            qd_simple = qd_simple.max(qd);
            let mut want = vec![0; n * n];
            want[k] = 1;
            gf_on_simples &= s.gf.object.multiplicities(ring) == want;
        }
    }

    let alg = tube_algebra(&eng)?;
    let simples = center_simples(&eng, &alg)?;
    let mut b_residual: f64 = 0.0;
    let mut p_residual: f64 = 0.0;
    let mut idempotency: f64 = 0.0;
    for obj in &simples {
        let s = center_side(&eng, obj)?;
        for c in &s.g.couplings {
            idempotency = idempotency.max(c.residual);
        }
        defects.pb = defects.pb.max(s.p.compose(&s.b)?.identity_defect());
        defects.bp = defects.bp.max(s.b.compose(&s.p)?.identity_defect());
        b_residual = b_residual.max(center_morphism_residual(&eng, obj, &s.fg, &s.b)?);
        p_residual = p_residual.max(center_morphism_residual(&eng, &s.fg, obj, &s.p)?);
    }

    let f_images: Vec<CenterObject> = (0..n * n)
        .map(|ab| functor_f(&eng, &DelignePair::simple(ab / n, ab % n)))
        .collect::<Result<_>>()?;
    let mut f_hits = vec![0; simples.len()];
    for (k, z) in simples.iter().enumerate() {
        for img in &f_images {
            if center_hom_dim(&eng, img, z)? > 0 {
                f_hits[k] += 1;
            }
        }
    }

    let eps = cat.tol().eps_identity;
    let factorizable = defects.max() < eps;
    Ok(FactorizationReport {
        category: cat.name().into(),
        modular: verdict.modular,
        rank_s: verdict.rank,
        muger_trivial: muger.transparent == [0],
        defects,
        qd_simple,
        center_count: simples.len(),
        square_count: n * n,
        b_residual,
        p_residual,
        idempotency,
        gf_on_simples,
        f_hits,
        deligne_objects: pairs.len(),
        center_objects: simples.len(),
        factorizable,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn trivial_is_factorizable() {
        let cat = catalog::catalog("trivial").unwrap();
        let r = invertibility_report(&cat, SamplingPolicy::default()).unwrap();
        assert!(r.factorizable);
        assert_eq!(r.defects.max(), 0.0);
        assert!(r.triple_equivalence());
    }

    #[test]
    fn sampling_counts() {
        let cat = catalog::catalog("fibonacci").unwrap();
        // 4 simple pairs, 1⊠1 on empty words, ττ⊠1 and 1⊠ττ
        assert_eq!(test_pairs(&cat, SamplingPolicy::default()).len(), 7);
        assert_eq!(
            test_pairs(&cat, SamplingPolicy { max_word_length: 0 }).len(),
            5
        );
    }
}
