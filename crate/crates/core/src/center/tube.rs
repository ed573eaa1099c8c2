//! The tube algebra and the simple objects of `Z(C)` read off its blocks.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use super::half_braiding::{CenterObject, HalfBraiding};
use crate::engine::Engine;
use crate::linalg;
use crate::morphism::Morphism;
use crate::object::ObjectExpr;
use crate::scalar::{CMatrix, Scalar, ONE, ZERO};
use crate::{Error, Result};

/// Basis element: the map `s ⊗ a → b ⊗ s` that is `1` on channel `c`
/// and zero on the other channels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct TubeIndex {
    pub s: usize,
    pub a: usize,
    pub b: usize,
    pub c: usize,
}

/// Tube algebra `⊕_{s,a,b} Hom(s ⊗ a, b ⊗ s)` with product
/// `τ' · τ = Σ_r dim(r) Σ_l (1 ⊗ φ_l)(τ' ⊗ 1_s)(1_t ⊗ τ)(φ^l ⊗ 1_a)`,
/// where `φ_l: t ⊗ s → r`.
#[derive(Clone, Debug)]
pub struct TubeAlgebra {
    pub basis: Vec<TubeIndex>,
    /// `left[x]` is left multiplication by basis element `x`.
    pub left: Vec<CMatrix>,
    /// Coordinates of the unit `Σ_a id_a`.
    pub unit: Vec<Scalar>,
    /// Minimal central idempotents, in coordinates.
    pub blocks: Vec<Vec<Scalar>>,
    /// Dimension `d_p²` of each block.
    pub block_dims: Vec<usize>,
}

/// One term `(r, φ, φ^∨)` of a resolution of the identity.
type Resolution = (usize, Morphism, Morphism);

fn basis_of(eng: &Engine<'_>) -> Vec<TubeIndex> {
    let ring = eng.cat().ring();
    let n = ring.n_labels();
    let mut out = Vec::new();
    for s in 0..n {
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if ring.admissible(s, a, c) && ring.admissible(b, s, c) {
                        out.push(TubeIndex { s, a, b, c });
                    }
                }
            }
        }
    }
    out
}

fn element(eng: &Engine<'_>, t: TubeIndex) -> Morphism {
    let mut m = eng.zero(
        &ObjectExpr::word(vec![t.s, t.a]),
        &ObjectExpr::word(vec![t.b, t.s]),
    );
    m.block_mut(t.c)[(0, 0)] = ONE;
    m
}

impl TubeAlgebra {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn index(&self, t: TubeIndex) -> Option<usize> {
        self.basis.binary_search(&t).ok()
    }

    /// Product of two coordinate vectors.
    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![ZERO; self.dim()];
        for (i, &xi) in x.iter().enumerate() {
            if xi == ZERO {
                continue;
            }
            let col = &self.left[i] * CMatrix::from_column_slice(y.len(), 1, y);
            for (k, v) in col.iter().enumerate() {
                out[k] += xi * v;
            }
        }
        out
    }

    /// Left-multiplication matrix of an arbitrary element.
    pub fn left_matrix(&self, x: &[Scalar]) -> CMatrix {
        let d = self.dim();
        let mut m = CMatrix::zeros(d, d);
        for (i, &xi) in x.iter().enumerate() {
            if xi != ZERO {
                m += &self.left[i] * xi;
            }
        }
        m
    }

    /// Right-multiplication matrix of an arbitrary element.
    pub fn right_matrix(&self, x: &[Scalar]) -> CMatrix {
        let d = self.dim();
        let mut m = CMatrix::zeros(d, d);
        for j in 0..d {
            let v = &self.left[j] * CMatrix::from_column_slice(d, 1, x);
            m.set_column(j, &v.column(0));
        }
        m
    }

    fn unit_of(&self, a: usize) -> Vec<Scalar> {
        let mut v = vec![ZERO; self.dim()];
        if let Some(k) = self.index(TubeIndex {
            s: 0,
            a,
            b: a,
            c: a,
        }) {
            v[k] = ONE;
        }
        v
    }

    /// `max ‖(xy)z − x(yz)‖` over basis triples.
    pub fn associativity_residual(&self) -> f64 {
        let d = self.dim();
        let mut worst: f64 = 0.0;
        for i in 0..d {
            for j in 0..d {
                let lhs =
                    &self.left_matrix(&self.left[i].column(j).iter().copied().collect::<Vec<_>>());
                let rhs = &self.left[i] * &self.left[j];
                worst = worst.max(linalg::max_abs(&(lhs - rhs)));
            }
        }
        worst
    }
}

/// Builds the tube algebra and splits it into simple blocks.
pub fn tube_algebra(eng: &Engine<'_>) -> Result<TubeAlgebra> {
    let cat = eng.cat();
    let n = cat.n_labels();
    let basis = basis_of(eng);
    let d = basis.len();
    let elems: Vec<Morphism> = basis.iter().map(|&t| element(eng, t)).collect();
    let index: BTreeMap<TubeIndex, usize> =
        basis.iter().enumerate().map(|(k, t)| (*t, k)).collect();

    let mut casimir: BTreeMap<(usize, usize), Vec<Resolution>> = BTreeMap::new();
    for t in 0..n {
        for s in 0..n {
            casimir.insert(
                (t, s),
                eng.identity_resolution(&ObjectExpr::word(vec![t, s]))?,
            );
        }
    }

    let mut left = vec![CMatrix::zeros(d, d); d];
    for (x, tx) in basis.iter().enumerate() {
        for (y, ty) in basis.iter().enumerate() {
            if tx.a != ty.b {
                continue;
            }
            let (t, s) = (tx.s, ty.s);
            let id_s = eng.identity(&ObjectExpr::simple(s));
            let id_t = eng.identity(&ObjectExpr::simple(t));
            let id_a = eng.identity(&ObjectExpr::simple(ty.a));
            let id_c = eng.identity(&ObjectExpr::simple(tx.b));
            let core = eng
                .tensor(&elems[x], &id_s)?
                .compose(&eng.tensor(&id_t, &elems[y])?)?;
            for (i, phi, dual) in &casimir[&(t, s)] {
                let r = cat.dual(*i);
                let prod = eng
                    .tensor(&id_c, phi)?
                    .compose(&core)?
                    .compose(&eng.tensor(dual, &id_a)?)?
                    .scale(cat.dim(*i));
                for c in 0..n {
                    let blk = prod.block(c);
                    if blk.nrows() == 0 || blk.ncols() == 0 {
                        continue;
                    }
                    let key = TubeIndex {
                        s: r,
                        a: ty.a,
                        b: tx.b,
                        c,
                    };
                    let k = index[&key];
                    left[x][(k, y)] += blk[(0, 0)];
                }
            }
        }
    }

    let mut alg = TubeAlgebra {
        basis,
        left,
        unit: Vec::new(),
        blocks: Vec::new(),
        block_dims: Vec::new(),
    };
    let mut unit = vec![ZERO; d];
    for a in 0..n {
        for (k, v) in alg.unit_of(a).into_iter().enumerate() {
            unit[k] += v;
        }
    }
    alg.unit = unit;
    let (blocks, dims) = central_idempotents(&alg)?;
    alg.blocks = blocks;
    alg.block_dims = dims;
    Ok(alg)
}

/// `Π_q (x − q)/(λ − q)` applied to `unit`, with `x` acting through `lx`.
fn lagrange(lx: &CMatrix, unit: &[Scalar], lambda: Scalar, others: &[Scalar]) -> Vec<Scalar> {
    let mut v = CMatrix::from_column_slice(unit.len(), 1, unit);
    for &q in others {
        v = (lx * &v - &v * q) / (lambda - q);
    }
    v.iter().copied().collect()
}

/// Newton refinement `e ← 3e² − 2e³` of an approximate idempotent.
fn polish(alg: &TubeAlgebra, e: Vec<Scalar>) -> Vec<Scalar> {
    let mut e = e;
    for _ in 0..50 {
        let e2 = alg.mul(&e, &e);
        let e3 = alg.mul(&e2, &e);
        let defect = e2
            .iter()
            .zip(&e)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        if defect < 1e-15 {
            break;
        }
        e = e2.iter().zip(&e3).map(|(a, b)| a * 3.0 - b * 2.0).collect();
    }
    e
}

fn central_idempotents(alg: &TubeAlgebra) -> Result<(Vec<Vec<Scalar>>, Vec<usize>)> {
    let d = alg.dim();
    // z central ⟺ z e_j − e_j z = 0 for every j
    let mut sys = CMatrix::zeros(d * d, d);
    for j in 0..d {
        for i in 0..d {
            let zj = alg.left[i].column(j).clone_owned();
            let jz = alg.left[j].column(i).clone_owned();
            for k in 0..d {
                sys[(j * d + k, i)] = zj[k] - jz[k];
            }
        }
    }
    let center = linalg::nullspace(&sys, 1e-9);
    let m = center.ncols();
    let mut best: Option<(f64, Vec<Scalar>, Vec<Scalar>)> = None;
    for seed in 0..8u64 {
        let mut rng = linalg::rng(0xc0ffee + seed);
        let coeffs = linalg::random_matrix(&mut rng, m, 1);
        let z = &center * &coeffs;
        let z: Vec<Scalar> = z.iter().copied().collect();
        let lz = alg.left_matrix(&z);
        let op = center.adjoint() * &lz * &center;
        let eig = linalg::eigenvalues(&op);
        let mut gap = f64::INFINITY;
        for p in 0..eig.len() {
            for q in 0..p {
                gap = gap.min((eig[p] - eig[q]).norm());
            }
        }
        if best.as_ref().is_none_or(|b| gap > b.0) {
            best = Some((gap, z, eig));
        }
        if gap > 1e-2 {
            break;
        }
    }
    let (gap, z, eig) = best.ok_or_else(|| Error::Construction("empty tube algebra".into()))?;
    if gap < 1e-6 {
        return Err(Error::Numerical {
            context: "central element has clustered spectrum".into(),
            condition: 1.0 / gap,
        });
    }
    let lz = alg.left_matrix(&z);
    let op = center.adjoint() * &lz * &center;
    let mut blocks = Vec::with_capacity(m);
    let mut dims = Vec::with_capacity(m);
    for &lambda in &eig {
        // eigenvectors of z on the center are multiples of the block units
        let v: Vec<Scalar> = (&center * linalg::eigenvector(&op, lambda))
            .iter()
            .copied()
            .collect();
        let vv = alg.mul(&v, &v);
        let num: Scalar = vv.iter().zip(&v).map(|(a, b)| a * b.conj()).sum();
        let den: f64 = v.iter().map(|b| b.norm_sqr()).sum();
        let scale = num / den;
        let e = polish(alg, v.iter().map(|x| x / scale).collect());
        let rank = linalg::rank(&alg.left_matrix(&e), 1e-8);
        blocks.push(e);
        dims.push(rank);
    }
    Ok((blocks, dims))
}

/// The primitive idempotent cut out of block `e` at corner label `a`.
fn primitive_idempotent(
    alg: &TubeAlgebra,
    e: &[Scalar],
    a: usize,
    seed: u64,
) -> Result<Vec<Scalar>> {
    let g = alg.mul(&alg.unit_of(a), e);
    let lg = alg.left_matrix(&g);
    let rg = alg.right_matrix(&g);
    let corner = linalg::column_space(&(&lg * &rg), 1e-8);
    let k = corner.ncols();
    let n_a = num_traits::Float::round(num_traits::Float::sqrt(k as f64)) as usize;
    if n_a * n_a != k || n_a == 0 {
        return Err(Error::Construction(format!(
            "corner at label {a} has dimension {k}, not a square"
        )));
    }
    if n_a == 1 {
        return Ok(polish(alg, g));
    }
    let mut rng = linalg::rng(0xfeed + seed);
    let coeffs = linalg::random_matrix(&mut rng, k, 1);
    let y: Vec<Scalar> = (&corner * coeffs).iter().copied().collect();
    let ly = alg.left_matrix(&y);
    let op = corner.adjoint() * &ly * &corner;
    let eig = linalg::eigenvalues(&op);
    let clusters = linalg::cluster(&eig, 1e-6);
    if clusters.len() != n_a || clusters.iter().any(|c| c.1 != n_a) {
        return Err(Error::Numerical {
            context: format!("corner element at label {a} has a degenerate spectrum"),
            condition: clusters.len() as f64,
        });
    }
    let lambda = clusters[0].0;
    let others: Vec<Scalar> = clusters[1..].iter().map(|c| c.0).collect();
    Ok(polish(alg, lagrange(&ly, &g, lambda, &others)))
}

/// Rebuilds `(X, γ)` from the irreducible module `A f`.
fn reconstruct(eng: &Engine<'_>, alg: &TubeAlgebra, f: &[Scalar]) -> Result<CenterObject> {
    let cat = eng.cat();
    let n = cat.n_labels();
    let rf = alg.right_matrix(f);
    let mut bases: Vec<CMatrix> = Vec::with_capacity(n);
    for b in 0..n {
        let lb = alg.left_matrix(&alg.unit_of(b));
        bases.push(linalg::column_space(&(lb * &rf), 1e-8));
    }
    let mult: Vec<usize> = bases.iter().map(|m| m.ncols()).collect();
    let present: Vec<usize> = (0..n).filter(|&b| mult[b] > 0).collect();
    let x = ObjectExpr::sum(present.iter().map(|&b| (vec![b], mult[b])).collect());
    let summand_of = |b: usize| present.iter().position(|&p| p == b);

    let ring = cat.ring();
    let mut maps = Vec::with_capacity(n);
    for s in 0..n {
        let ss = ObjectExpr::simple(s);
        let mut inv = eng.zero(&x.tensor(&ss), &ss.tensor(&x));
        for (k, t) in alg.basis.iter().enumerate() {
            if t.s != s || mult[t.a] == 0 || mult[t.b] == 0 {
                continue;
            }
            let rho = bases[t.b].adjoint() * &alg.left[k] * &bases[t.a];
            let scale = cat.dim(t.b) / cat.dim(t.c);
            let kb = summand_of(t.b).expect("present");
            let ka = summand_of(t.a).expect("present");
            for m in 0..mult[t.b] {
                for kk in 0..mult[t.a] {
                    // δ: (b, m) ⊗ s → s ⊗ (a, kk) on channel c
                    let col = x.tensor(&ss).offset(ring, t.c, kb, m);
                    let row = ss.tensor(&x).offset(ring, t.c, ka, kk);
                    inv.block_mut(t.c)[(row, col)] += rho[(m, kk)] * scale;
                }
            }
        }
        maps.push(inv.inverse()?);
    }
    Ok(CenterObject {
        x,
        gamma: HalfBraiding { maps },
    })
}

/// Invariant used to order center simples:
/// `Tr(c_{X,j} ∘ γ_j)` for every label `j`.
fn signature(eng: &Engine<'_>, obj: &CenterObject) -> Result<Vec<Scalar>> {
    let mut out = Vec::new();
    for j in 0..eng.cat().n_labels() {
        let js = ObjectExpr::simple(j);
        let c = eng.braiding(&obj.x, &js, false)?;
        out.push(eng.quantum_trace(&c.compose(obj.gamma.get(j))?)?);
    }
    Ok(out)
}

fn cmp_scalars(a: &[Scalar], b: &[Scalar]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        for (u, v) in [(x.re, y.re), (x.im, y.im)] {
            if (u - v).abs() > 1e-7 {
                return u.partial_cmp(&v).unwrap_or(Ordering::Equal);
            }
        }
    }
    Ordering::Equal
}

/// One simple object of `Z(C)` per block of the tube algebra, ordered by
/// multiplicity vector of the underlying object and then by the traces
/// `Tr(c_{X,j} ∘ γ_j)`.
pub fn center_simples(eng: &Engine<'_>, alg: &TubeAlgebra) -> Result<Vec<CenterObject>> {
    let n = eng.cat().n_labels();
    let mut out = Vec::with_capacity(alg.blocks.len());
    for (p, e) in alg.blocks.iter().enumerate() {
        let a = (0..n)
            .find(|&a| {
                let g = alg.mul(&alg.unit_of(a), e);
                g.iter().map(|v| v.norm()).fold(0.0, f64::max) > 1e-8
            })
            .ok_or_else(|| Error::Construction(format!("block {p} meets no label")))?;
        let f = primitive_idempotent(alg, e, a, p as u64)?;
        out.push(reconstruct(eng, alg, &f)?);
    }
    let mut keyed = Vec::with_capacity(out.len());
    for obj in out {
        let mult: Vec<usize> = (0..n)
            .map(|b| obj.x.sector_dim(eng.cat().ring(), b))
            .collect();
        let sig = signature(eng, &obj)?;
        keyed.push((mult, sig, obj));
    }
    keyed.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| cmp_scalars(&a.1, &b.1)));
    Ok(keyed.into_iter().map(|k| k.2).collect())
}
