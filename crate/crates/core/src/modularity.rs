//! S-matrix, modularity verdict and Müger center.

use alloc::vec::Vec;

use crate::category::CategoryData;
use crate::engine::Engine;
use crate::linalg;
use crate::object::ObjectExpr;
use crate::scalar::{CMatrix, Scalar};
use crate::Result;

#[derive(Clone, Debug, PartialEq)]
pub struct SMatrix {
    /// `s_ij = Tr(c_{j,i} ∘ c_{i,j})`.
    pub entries: CMatrix,
    pub rank: usize,
    pub det: Scalar,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModularityVerdict {
    pub modular: bool,
    pub rank: usize,
    pub abs_det: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MugerReport {
    pub transparent: Vec<usize>,
    /// `‖c_{Y,X} ∘ c_{X,Y} − id‖`, maximized over simple `Y`, per label `X`.
    pub monodromy_defects: Vec<f64>,
}

/// Double braiding `c_{Y,X} ∘ c_{X,Y}` on `X ⊗ Y`.
pub fn monodromy(eng: &Engine<'_>, x: &ObjectExpr, y: &ObjectExpr) -> Result<crate::Morphism> {
    eng.braiding(y, x, false)?
        .compose(&eng.braiding(x, y, false)?)
}

pub fn s_matrix(cat: &CategoryData) -> Result<SMatrix> {
    let eng = Engine::new(cat);
    let n = cat.n_labels();
    let mut s = CMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let m = monodromy(&eng, &ObjectExpr::simple(i), &ObjectExpr::simple(j))?;
            s[(i, j)] = eng.quantum_trace(&m)?;
        }
    }
    let rank = linalg::rank(&s, cat.tol().eps_identity);
    let det = s.determinant();
    Ok(SMatrix {
        entries: s,
        rank,
        det,
    })
}

pub fn is_modular(cat: &CategoryData) -> Result<ModularityVerdict> {
    let s = s_matrix(cat)?;
    Ok(ModularityVerdict {
        modular: s.rank == cat.n_labels(),
        rank: s.rank,
        abs_det: s.det.norm(),
    })
}

pub fn muger_center(cat: &CategoryData) -> Result<MugerReport> {
    let eng = Engine::new(cat);
    let n = cat.n_labels();
    let mut defects = Vec::with_capacity(n);
    for x in 0..n {
        let mut worst: f64 = 0.0;
        for y in 0..n {
            let m = monodromy(&eng, &ObjectExpr::simple(x), &ObjectExpr::simple(y))?;
            worst = worst.max(m.identity_defect());
        }
        defects.push(worst);
    }
    let transparent = (0..n)
        .filter(|&x| defects[x] < cat.tol().eps_identity)
        .collect();
    Ok(MugerReport {
        transparent,
        monodromy_defects: defects,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::scalar::{real, ONE};

    fn close(a: &CMatrix, b: &[f64]) -> bool {
        a.iter().zip(b).all(|(x, y)| (x - real(*y)).norm() < 1e-10)
    }

    #[test]
    fn trivial_s_matrix() {
        let s = s_matrix(&catalog::catalog("trivial").unwrap()).unwrap();
        assert_eq!(s.entries.shape(), (1, 1));
        assert!((s.entries[(0, 0)] - ONE).norm() < 1e-15);
    }

    #[test]
    fn vec_z2_sym_is_degenerate() {
        let cat = catalog::catalog("vec_z2_sym").unwrap();
        let s = s_matrix(&cat).unwrap();
        assert!(close(&s.entries, &[1.0, 1.0, 1.0, 1.0]));
        assert_eq!(s.rank, 1);
        assert!(!is_modular(&cat).unwrap().modular);
        assert_eq!(muger_center(&cat).unwrap().transparent, [0, 1]);
    }

    #[test]
    fn semion_s_matrix() {
        let s = s_matrix(&catalog::catalog("semion").unwrap()).unwrap();
        // column-major storage
        assert!(close(&s.entries, &[1.0, 1.0, 1.0, -1.0]));
        assert_eq!(s.rank, 2);
    }

    #[test]
    fn fibonacci_det() {
        let cat = catalog::catalog("fibonacci").unwrap();
        let v = is_modular(&cat).unwrap();
        assert!(v.modular);
        // det [[1, φ], [φ, -1]] = -(1 + φ²)
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((v.abs_det - (1.0 + phi * phi)).abs() < 1e-10);
        let m = muger_center(&cat).unwrap();
        assert_eq!(m.transparent, [0]);
        assert!(m.monodromy_defects[1] > 0.5);
    }

    #[test]
    fn first_row_is_dims() {
        for name in catalog::NAMES {
            let cat = catalog::catalog(name).unwrap();
            let s = s_matrix(&cat).unwrap();
            for i in 0..cat.n_labels() {
                assert!((s.entries[(0, i)] - cat.dim(i)).norm() < 1e-10);
                for j in 0..cat.n_labels() {
                    assert!((s.entries[(i, j)] - s.entries[(j, i)]).norm() < 1e-10);
                }
            }
        }
    }
}
