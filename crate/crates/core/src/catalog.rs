//! Built-in categories, generated in code from closed-form data.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_traits::Float;

use crate::category::{CategoryData, CategoryParts, FusionRing};
use crate::scalar::{phase, real, Scalar, ToleranceCfg, I, ONE};
use crate::{Error, Result};

/// Names of the built-in categories, in listing order.
pub const NAMES: [&str; 6] = [
    "trivial",
    "fibonacci",
    "ising",
    "semion",
    "vec_z2_sym",
    "vec_z3_modular",
];

pub fn available() -> Vec<String> {
    NAMES.iter().map(|s| s.to_string()).collect()
}

pub fn catalog(name: &str) -> Result<CategoryData> {
    let parts = match name {
        "trivial" => trivial(),
        "fibonacci" => fibonacci(),
        "ising" => ising(),
        "semion" => semion(),
        "vec_z2_sym" => vec_z2_sym(),
        "vec_z3_modular" => vec_z3_modular(),
        _ => {
            return Err(Error::UnknownCategory {
                name: name.into(),
                available: available(),
            })
        }
    };
    CategoryData::from_parts(parts)
}

struct Entry<'a> {
    name: &'a str,
    labels: &'a [&'a str],
    dual: &'a [usize],
    fuse: &'a dyn Fn(usize, usize, usize) -> bool,
    f: &'a dyn Fn([usize; 6]) -> Scalar,
    r: &'a dyn Fn([usize; 3]) -> Scalar,
    t: &'a dyn Fn(usize) -> Scalar,
}

/// Tabulates every admissible F- and R-symbol of `entry`.
fn build(entry: Entry<'_>) -> CategoryParts {
    let n = entry.labels.len();
    let mut fusion = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if (entry.fuse)(i, j, k) {
                    fusion.push([i, j, k]);
                }
            }
        }
    }
    let mut ring_parts = CategoryParts {
        name: entry.name.into(),
        labels: entry.labels.iter().map(|s| s.to_string()).collect(),
        dual: entry.dual.to_vec(),
        fusion,
        f: Vec::new(),
        r: Vec::new(),
        pivotal: (0..n).map(|i| (i, (entry.t)(i))).collect(),
        tolerances: ToleranceCfg::default(),
    };
    let ring = CategoryData::from_parts(ring_parts.clone())
        .expect("catalog fusion data is well formed")
        .ring()
        .clone();
    ring_parts.f = admissible_f(&ring)
        .into_iter()
        .map(|k| (k, (entry.f)(k)))
        .collect();
    ring_parts.r = ring
        .triples()
        .into_iter()
        .map(|k| (k, (entry.r)(k)))
        .collect();
    ring_parts
}

fn admissible_f(ring: &FusionRing) -> Vec<[usize; 6]> {
    let n = ring.n_labels();
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    for e in 0..n {
                        for f in 0..n {
                            if ring.admissible(a, b, e)
                                && ring.admissible(e, c, d)
                                && ring.admissible(b, c, f)
                                && ring.admissible(a, f, d)
                            {
                                out.push([a, b, c, d, e, f]);
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

fn trivial() -> CategoryParts {
    build(Entry {
        name: "trivial",
        labels: &["1"],
        dual: &[0],
        fuse: &|_, _, _| true,
        f: &|_| ONE,
        r: &|_| ONE,
        t: &|_| ONE,
    })
}

fn fibonacci() -> CategoryParts {
    let phi = (1.0 + Float::sqrt(5f64)) / 2.0;
    build(Entry {
        name: "fibonacci",
        labels: &["1", "tau"],
        dual: &[0, 1],
        // τ ⊗ τ = 1 ⊕ τ
        fuse: &|i, j, k| match (i, j) {
            (0, _) => j == k,
            (_, 0) => i == k,
            _ => true,
        },
        f: &move |[a, b, c, d, e, f]| {
            if [a, b, c, d] == [1, 1, 1, 1] {
                match (e, f) {
                    (0, 0) => real(1.0 / phi),
                    (1, 1) => real(-1.0 / phi),
                    _ => real(1.0 / Float::sqrt(phi)),
                }
            } else {
                ONE
            }
        },
        r: &|[a, b, c]| match (a, b, c) {
            (1, 1, 0) => phase(-4.0 * PI / 5.0),
            (1, 1, 1) => phase(3.0 * PI / 5.0),
            _ => ONE,
        },
        t: &|_| ONE,
    })
}

fn ising() -> CategoryParts {
    const S: usize = 1;
    const P: usize = 2;
    build(Entry {
        name: "ising",
        labels: &["1", "sigma", "psi"],
        dual: &[0, 1, 2],
        // σ⊗σ = 1 ⊕ ψ, σ⊗ψ = σ, ψ⊗ψ = 1
        fuse: &|i, j, k| match (i, j) {
            (0, _) => j == k,
            (_, 0) => i == k,
            (S, S) => k == 0 || k == P,
            (S, P) | (P, S) => k == S,
            _ => k == 0,
        },
        f: &|[a, b, c, d, e, f]| {
            if [a, b, c, d] == [S, S, S, S] {
                let s = real(1.0 / Float::sqrt(2f64));
                if e == P && f == P {
                    -s
                } else {
                    s
                }
            } else if [a, b, c, d] == [S, P, S, P] || [a, b, c, d] == [P, S, P, S] {
                -ONE
            } else {
                ONE
            }
        },
        r: &|[a, b, c]| match (a, b, c) {
            (S, S, 0) => phase(-PI / 8.0),
            (S, S, P) => phase(3.0 * PI / 8.0),
            (S, P, S) | (P, S, S) => -I,
            (P, P, 0) => -ONE,
            _ => ONE,
        },
        t: &|_| ONE,
    })
}

fn semion() -> CategoryParts {
    build(Entry {
        name: "semion",
        labels: &["1", "s"],
        dual: &[0, 1],
        fuse: &|i, j, k| (i + j) % 2 == k,
        f: &|k| if k[..4] == [1, 1, 1, 1] { -ONE } else { ONE },
        r: &|k| if k == [1, 1, 0] { I } else { ONE },
        // F^{sss}_s = -1 makes the pivotal sign -1 necessary for dim(s) = 1
        t: &|i| if i == 1 { -ONE } else { ONE },
    })
}

fn vec_z2_sym() -> CategoryParts {
    build(Entry {
        name: "vec_z2_sym",
        labels: &["1", "g"],
        dual: &[0, 1],
        fuse: &|i, j, k| (i + j) % 2 == k,
        f: &|_| ONE,
        r: &|_| ONE,
        t: &|_| ONE,
    })
}

fn vec_z3_modular() -> CategoryParts {
    build(Entry {
        name: "vec_z3_modular",
        labels: &["1", "w", "w2"],
        dual: &[0, 2, 1],
        fuse: &|i, j, k| (i + j) % 3 == k,
        f: &|_| ONE,
        r: &|[a, b, _]| phase(2.0 * PI * (a * b) as f64 / 3.0),
        t: &|_| ONE,
    })
}
