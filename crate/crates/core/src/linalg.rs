//! Small dense linear-algebra helpers over complex doubles.

use alloc::vec::Vec;

use nalgebra::{Schur, QR, SVD};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::scalar::{CMatrix, Scalar, ZERO};
use crate::{Error, Result};

/// Deterministic generator used wherever a generic element is needed.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_scalar(rng: &mut ChaCha8Rng) -> Scalar {
    Scalar::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

pub fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| random_scalar(rng))
}

pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

/// Singular value decomposition with a recomposition check. Inputs the
/// Golub–Kahan iteration mishandles are retried after a random unitary
/// change of basis on the right, which is then undone in `V^†`.
pub fn svd(m: &CMatrix) -> SVD<Scalar, nalgebra::Dyn, nalgebra::Dyn> {
    let scale = m.norm().max(f64::MIN_POSITIVE);
    let ok = |s: &SVD<Scalar, nalgebra::Dyn, nalgebra::Dyn>, target: &CMatrix| match (&s.u, &s.v_t)
    {
        (Some(u), Some(vt)) => {
            let sigma = CMatrix::from_diagonal(&s.singular_values.map(|x| Scalar::new(x, 0.0)));
            (u * sigma * vt - target).norm() <= 1e-12 * scale
        }
        _ => false,
    };
    let first = SVD::new(m.clone(), true, true);
    if ok(&first, m) {
        return first;
    }
    let n = m.ncols();
    let mut rng = rng(0x5bd1 + n as u64);
    for _ in 0..8 {
        let q = QR::new(random_matrix(&mut rng, n, n)).q();
        let rotated = m * &q;
        let mut s = SVD::new(rotated.clone(), true, true);
        if ok(&s, &rotated) {
            s.v_t = s.v_t.map(|vt| vt * q.adjoint());
            return s;
        }
    }
    first
}

/// Singular values in decreasing order. Empty matrices have none.
pub fn singular_values(m: &CMatrix) -> Vec<f64> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Vec::new();
    }
    let svd = svd(m);
    let mut s: Vec<f64> = svd.singular_values.iter().copied().collect();
    s.sort_by(|a, b| b.partial_cmp(a).unwrap_or(core::cmp::Ordering::Equal));
    s
}

pub fn spectral_norm(m: &CMatrix) -> f64 {
    singular_values(m).first().copied().unwrap_or(0.0)
}

/// Ratio of extreme singular values; infinite for singular square matrices.
pub fn condition_number(m: &CMatrix) -> f64 {
    let s = singular_values(m);
    match (s.first(), s.last()) {
        (Some(&hi), Some(&lo)) if s.len() == m.nrows().min(m.ncols()) => {
            if lo == 0.0 {
                f64::INFINITY
            } else {
                hi / lo
            }
        }
        (None, None) => 1.0,
        _ => f64::INFINITY,
    }
}

/// Numerical rank with singular values thresholded at `rel_tol * ‖m‖`.
pub fn rank(m: &CMatrix, rel_tol: f64) -> usize {
    let s = singular_values(m);
    let top = s.first().copied().unwrap_or(0.0);
    if top == 0.0 {
        return 0;
    }
    s.iter().filter(|&&x| x > rel_tol * top).count()
}

pub fn inverse(m: &CMatrix, context: &str) -> Result<CMatrix> {
    if m.nrows() != m.ncols() {
        return Err(Error::Shape(alloc::format!(
            "{context}: cannot invert a {}x{} matrix",
            m.nrows(),
            m.ncols()
        )));
    }
    if m.nrows() == 0 {
        return Ok(m.clone());
    }
    let cond = condition_number(m);
    if !cond.is_finite() || cond > 1e13 {
        return Err(Error::Numerical {
            context: context.into(),
            condition: cond,
        });
    }
    m.clone().try_inverse().ok_or_else(|| Error::Numerical {
        context: context.into(),
        condition: cond,
    })
}

/// Orthonormal basis of the null space of `m`, as columns.
pub fn nullspace(m: &CMatrix, abs_tol: f64) -> CMatrix {
    let n = m.ncols();
    if n == 0 {
        return CMatrix::zeros(0, 0);
    }
    let rows = m.nrows().max(n);
    let mut padded = CMatrix::zeros(rows, n);
    padded.view_mut((0, 0), (m.nrows(), n)).copy_from(m);
    let svd = svd(&padded);
    let v_t = svd.v_t.expect("requested V^T");
    let cols: Vec<usize> = (0..n)
        .filter(|&k| svd.singular_values[k] <= abs_tol)
        .collect();
    let mut out = CMatrix::zeros(n, cols.len());
    for (j, &k) in cols.iter().enumerate() {
        for r in 0..n {
            out[(r, j)] = v_t[(k, r)].conj();
        }
    }
    out
}

/// Orthonormal basis of the column space of `m`, keeping singular values
/// above `abs_tol`.
pub fn column_space(m: &CMatrix, abs_tol: f64) -> CMatrix {
    if m.nrows() == 0 || m.ncols() == 0 {
        return CMatrix::zeros(m.nrows(), 0);
    }
    let svd = svd(m);
    let u = svd.u.expect("requested U");
    let keep: Vec<usize> = (0..svd.singular_values.len())
        .filter(|&k| svd.singular_values[k] > abs_tol)
        .collect();
    let mut out = CMatrix::zeros(m.nrows(), keep.len());
    for (j, &k) in keep.iter().enumerate() {
        out.set_column(j, &u.column(k));
    }
    out
}

/// Least-squares solution of `a x = b`.
pub fn solve(a: &CMatrix, b: &CMatrix, context: &str) -> Result<CMatrix> {
    if a.ncols() == 0 {
        return Ok(CMatrix::zeros(0, b.ncols()));
    }
    let svd = svd(a);
    svd.solve(b, 1e-12 * spectral_norm(a).max(1e-300))
        .map_err(|_| Error::Numerical {
            context: context.into(),
            condition: condition_number(a),
        })
}

/// Unit vector `v` minimizing `‖(m − λ) v‖`.
pub fn eigenvector(m: &CMatrix, lambda: Scalar) -> CMatrix {
    let n = m.nrows();
    let shifted = m - CMatrix::identity(n, n) * lambda;
    let svd = svd(&shifted);
    let v_t = svd.v_t.expect("requested V^T");
    let k = (0..n)
        .min_by(|&a, &b| svd.singular_values[a].total_cmp(&svd.singular_values[b]))
        .expect("non-empty matrix");
    CMatrix::from_fn(n, 1, |r, _| v_t[(k, r)].conj())
}

/// Eigenvalues of a square matrix, read off its complex Schur form.
pub fn eigenvalues(m: &CMatrix) -> Vec<Scalar> {
    if m.nrows() == 0 {
        return Vec::new();
    }
    let (_, t) = Schur::new(m.clone()).unpack();
    (0..t.nrows()).map(|k| t[(k, k)]).collect()
}

/// Groups values that lie within `tol` of one another, in first-seen order.
pub fn cluster(values: &[Scalar], tol: f64) -> Vec<(Scalar, usize)> {
    let mut out: Vec<(Scalar, usize)> = Vec::new();
    for &v in values {
        match out.iter_mut().find(|(c, _)| (*c - v).norm() < tol) {
            Some(entry) => entry.1 += 1,
            None => out.push((v, 1)),
        }
    }
    out
}

pub fn trace(m: &CMatrix) -> Scalar {
    let mut acc = ZERO;
    for k in 0..m.nrows().min(m.ncols()) {
        acc += m[(k, k)];
    }
    acc
}
