use alloc::string::String;
use alloc::vec::Vec;

use super::CategoryData;
use crate::engine::Engine;
use crate::linalg;
use crate::morphism::Morphism;
use crate::object::ObjectExpr;
use crate::scalar::{Scalar, ONE, ZERO};

/// One named residual.
#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub residual: f64,
    pub pass: bool,
}

/// Named residuals of the category axioms; `pass` iff every check passes.
#[derive(Clone, Debug, PartialEq)]
pub struct ValidationReport {
    pub category: String,
    pub eps_structural: f64,
    pub checks: Vec<Check>,
    pub pass: bool,
}

impl ValidationReport {
    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn residual(&self, name: &str) -> f64 {
        self.get(name).map_or(f64::INFINITY, |c| c.residual)
    }
}

pub(super) fn validate(cat: &CategoryData) -> ValidationReport {
    let eps = cat.tol().eps_structural;
    let raw = [
        ("unit", unit_residual(cat)),
        ("duality", duality_residual(cat)),
        ("associativity", associativity_residual(cat)),
        ("f_invertible", f_condition_residual(cat)),
        ("pentagon", pentagon_residual(cat)),
        ("hexagon", hexagon_residual(cat, false)),
        ("hexagon_inverse", hexagon_residual(cat, true)),
        ("unit_symbols", unit_symbol_residual(cat)),
        ("zigzag", zigzag_residual(cat)),
        ("pivotal_unit", (cat.pivotal().get(0) - ONE).norm()),
        ("sphericality", sphericality_residual(cat)),
        ("nonzero_dims", nonzero_dims_residual(cat)),
    ];
    let checks: Vec<Check> = raw
        .into_iter()
        .map(|(name, residual)| Check {
            name: name.into(),
            residual,
            pass: residual < eps,
        })
        .collect();
    let pass = checks.iter().all(|c| c.pass);
    ValidationReport {
        category: cat.name().into(),
        eps_structural: eps,
        checks,
        pass,
    }
}

fn indicator(b: bool) -> f64 {
    if b {
        0.0
    } else {
        1.0
    }
}

fn unit_residual(cat: &CategoryData) -> f64 {
    let ring = cat.ring();
    let n = cat.n_labels();
    let mut bad = false;
    for i in 0..n {
        for k in 0..n {
            let delta = i == k;
            bad |= ring.admissible(i, 0, k) != delta || ring.admissible(0, i, k) != delta;
        }
    }
    indicator(!bad)
}

fn duality_residual(cat: &CategoryData) -> f64 {
    let ring = cat.ring();
    let n = cat.n_labels();
    let mut bad = false;
    for i in 0..n {
        for j in 0..n {
            bad |= ring.admissible(i, j, 0) != (j == cat.dual(i));
        }
    }
    indicator(!bad)
}

fn associativity_residual(cat: &CategoryData) -> f64 {
    let ring = cat.ring();
    let n = cat.n_labels();
    let mut worst = 0usize;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let lhs: usize = (0..n)
                        .map(|m| (ring.multiplicity(i, j, m) * ring.multiplicity(m, k, l)) as usize)
                        .sum();
                    let rhs: usize = (0..n)
                        .map(|m| (ring.multiplicity(j, k, m) * ring.multiplicity(i, m, l)) as usize)
                        .sum();
                    worst = worst.max(lhs.abs_diff(rhs));
                }
            }
        }
    }
    worst as f64
}

/// Zero when every F-matrix is invertible at a sane condition number.
fn f_condition_residual(cat: &CategoryData) -> f64 {
    let bad = cat
        .f()
        .blocks()
        .any(|b| !b.condition.is_finite() || b.condition > 1e12);
    indicator(!bad)
}

fn pentagon_residual(cat: &CategoryData) -> f64 {
    let f = cat.f();
    let ring = cat.ring();
    let n = cat.n_labels();
    let mut worst: f64 = 0.0;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    for e in 0..n {
                        for fl in ring.channels(a, b) {
                            for g in ring.channels(fl, c) {
                                if !ring.admissible(g, d, e) {
                                    continue;
                                }
                                for k in 0..n {
                                    for l in 0..n {
                                        let lhs =
                                            f.get(fl, c, d, e, g, l) * f.get(a, b, l, e, fl, k);
                                        let rhs = (0..n).fold(ZERO, |acc, h| {
                                            acc + f.get(a, b, c, g, fl, h)
                                                * f.get(a, h, d, e, g, k)
                                                * f.get(b, c, d, k, h, l)
                                        });
                                        worst = worst.max((lhs - rhs).norm());
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    worst
}

/// Both hexagons; `reversed` uses the reverse braiding `R'(a,b;c) = 1/R(b,a;c)`.
fn hexagon_residual(cat: &CategoryData, reversed: bool) -> f64 {
    let f = cat.f();
    let ring = cat.ring();
    let n = cat.n_labels();
    let r = |a: usize, b: usize, c: usize| -> Scalar {
        if !ring.admissible(a, b, c) {
            return ZERO;
        }
        if reversed {
            let v = cat.r().get(b, a, c);
            if v == ZERO {
                Scalar::new(f64::INFINITY, 0.0)
            } else {
                ONE / v
            }
        } else {
            cat.r().get(a, b, c)
        }
    };
    let mut worst: f64 = 0.0;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    for fl in 0..n {
                        for g in 0..n {
                            let lhs = r(a, fl, d) * f.get(b, c, a, d, fl, g);
                            let rhs = (0..n).fold(ZERO, |acc, e| {
                                let t = f.inverse(a, b, c, d, fl, e);
                                if t == ZERO {
                                    return acc;
                                }
                                acc + t * r(a, b, e) * f.get(b, a, c, d, e, g) * r(a, c, g)
                            });
                            let res = (lhs - rhs).norm();
                            worst = worst.max(if res.is_nan() { f64::INFINITY } else { res });
                        }
                    }
                }
            }
        }
    }
    worst
}

/// F- and R-symbols with a unit leg must be 1.
fn unit_symbol_residual(cat: &CategoryData) -> f64 {
    let mut worst: f64 = 0.0;
    for (k, v) in cat.f().entries() {
        if k[0] == 0 || k[1] == 0 || k[2] == 0 {
            worst = worst.max((v - ONE).norm());
        }
    }
    for (k, v) in cat.r().entries() {
        if k[0] == 0 || k[1] == 0 {
            worst = worst.max((v - ONE).norm());
        }
    }
    worst
}

/// Second zig-zag for the chosen cup/cap normalization.
fn zigzag_residual(cat: &CategoryData) -> f64 {
    let mut worst: f64 = 0.0;
    for a in 0..cat.n_labels() {
        let ad = cat.dual(a);
        let v = cat.eval_coeff(a) * cat.f().inverse(ad, a, ad, ad, 0, 0);
        let res = (v - ONE).norm();
        worst = worst.max(if res.is_nan() { f64::INFINITY } else { res });
    }
    worst
}

/// Left and right traces of random endomorphisms agree, both on simples and
/// on two-letter words, and the dimension of a label equals that of its dual.
fn sphericality_residual(cat: &CategoryData) -> f64 {
    let n = cat.n_labels();
    let mut worst: f64 = 0.0;
    for a in 0..n {
        worst = worst.max((cat.dim(a) - cat.left_dim(a)).norm());
        worst = worst.max((cat.dim(a) - cat.dim(cat.dual(a))).norm());
    }
    let eng = Engine::new(cat);
    let mut rng = linalg::rng(0x5eed);
    for a in 0..n {
        for b in 0..n {
            let x = ObjectExpr::word(alloc::vec![a, b]);
            let f = Morphism::random(cat.ring(), &x, &x, &mut rng);
            let res = match (eng.trace_left_loop(&f), eng.trace_right_loop(&f)) {
                (Ok(l), Ok(r)) => {
                    let scale = 1.0 + r.norm();
                    (l - r).norm() / scale
                }
                _ => f64::INFINITY,
            };
            worst = worst.max(if res.is_nan() { f64::INFINITY } else { res });
        }
    }
    worst
}

fn nonzero_dims_residual(cat: &CategoryData) -> f64 {
    let bad = (0..cat.n_labels()).any(|a| {
        let d = cat.dim(a);
        d.norm() < cat.tol().eps_identity || !d.norm().is_finite()
    });
    indicator(!bad)
}

impl core::fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        for c in &self.checks {
            writeln!(
                f,
                "{:<16} {:>12.3e}  {}",
                c.name,
                c.residual,
                if c.pass { "ok" } else { "FAIL" }
            )?;
        }
        write!(f, "{}", if self.pass { "pass" } else { "fail" })
    }
}
