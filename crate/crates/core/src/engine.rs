//! Evaluation of the graphical calculus on sector block matrices: tensor
//! products, braidings, cups and caps, traces, dual hom bases and
//! regular-colored loops.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::category::CategoryData;
use crate::linalg;
use crate::morphism::Morphism;
use crate::object::{fusion_trees, ObjectExpr};
use crate::scalar::{CMatrix, Scalar, ONE, ZERO};
use crate::{Error, Result};

/// Which of the four duality morphisms to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CupCap {
    /// `coev_X: 1 → X ⊗ X*`
    Coev,
    /// `ev_X: X* ⊗ X → 1`
    Eval,
    /// `coev'_X: 1 → X* ⊗ X`
    CoevRight,
    /// `ev'_X: X ⊗ X* → 1`
    EvalRight,
}

/// A basis `φ_l: X → i*` of `Hom(X, i*)` with its trace-dual basis
/// `φ^l: i* → X`, so that `Tr(φ_k ∘ φ^l) = δ_kl`.
#[derive(Clone, Debug)]
pub struct CasimirPair {
    pub i: usize,
    pub basis: Vec<Morphism>,
    pub dual_basis: Vec<Morphism>,
}

impl CasimirPair {
    /// Gram matrix `G_kl = Tr(φ_k ∘ φ^l)`.
    pub fn pairing(&self, eng: &Engine<'_>) -> Result<CMatrix> {
        let n = self.basis.len();
        let mut g = CMatrix::zeros(n, n);
        for k in 0..n {
            for l in 0..n {
                g[(k, l)] = eng.quantum_trace(&self.basis[k].compose(&self.dual_basis[l])?)?;
            }
        }
        Ok(g)
    }
}

/// Basis entries `(summand, copy, chain)` of `Hom(c, X)`, in storage order.
pub(crate) struct SectorBasis {
    pub entries: Vec<(usize, usize, Vec<usize>)>,
    starts: Vec<usize>,
    trees: Vec<Vec<Vec<usize>>>,
}

impl SectorBasis {
    pub fn new(cat: &CategoryData, x: &ObjectExpr, c: usize) -> Self {
        let mut entries = Vec::new();
        let mut starts = Vec::new();
        let mut trees = Vec::new();
        for (k, (w, m)) in x.summands().iter().enumerate() {
            starts.push(entries.len());
            let ts = fusion_trees(cat.ring(), w, c);
            for copy in 0..*m {
                for t in &ts {
                    entries.push((k, copy, t.clone()));
                }
            }
            trees.push(ts);
        }
        SectorBasis {
            entries,
            starts,
            trees,
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn index(&self, k: usize, copy: usize, chain: &[usize]) -> usize {
        let ts = &self.trees[k];
        let t = ts
            .binary_search_by(|t| t.as_slice().cmp(chain))
            .expect("chain belongs to the sector basis");
        self.starts[k] + copy * ts.len() + t
    }
}

/// Evaluator bound to one category.
#[derive(Clone, Copy)]
pub struct Engine<'c> {
    cat: &'c CategoryData,
}

impl<'c> Engine<'c> {
    pub fn new(cat: &'c CategoryData) -> Self {
        Engine { cat }
    }

    pub fn cat(&self) -> &'c CategoryData {
        self.cat
    }

    fn n(&self) -> usize {
        self.cat.n_labels()
    }

    pub fn identity(&self, x: &ObjectExpr) -> Morphism {
        Morphism::identity(self.cat.ring(), x)
    }

    pub fn zero(&self, x: &ObjectExpr, y: &ObjectExpr) -> Morphism {
        Morphism::zero(self.cat.ring(), x, y)
    }

    pub fn compose(&self, g: &Morphism, f: &Morphism) -> Result<Morphism> {
        g.compose(f)
    }

    /// Chain expansion of the vertex `(u ⊗ v) ∘ ψ^{ab}_c` in the
    /// left-combed basis of the concatenated word.
    fn expand(
        &self,
        u: &[usize],
        a: usize,
        v: &[usize],
        v_word: &[usize],
        b: usize,
        c: usize,
    ) -> Vec<(Vec<usize>, Scalar)> {
        if v_word.is_empty() {
            return if c == a {
                vec![(u.to_vec(), ONE)]
            } else {
                vec![]
            };
        }
        if u.is_empty() {
            return if c == b {
                vec![(v.to_vec(), ONE)]
            } else {
                vec![]
            };
        }
        if v_word.len() == 1 {
            let mut ch = u.to_vec();
            ch.push(c);
            return vec![(ch, ONE)];
        }
        let n = v_word.len();
        let b1 = v[n - 2];
        let y = v_word[n - 1];
        let f = self.cat.f();
        let mut out = Vec::new();
        for e in self.cat.ring().channels(a, b1) {
            if !self.cat.ring().admissible(e, y, c) {
                continue;
            }
            let coeff = f.inverse(a, b1, y, c, b, e);
            if coeff == ZERO {
                continue;
            }
            for (mut ch, k) in self.expand(u, a, &v[..n - 1], &v_word[..n - 1], b1, e) {
                ch.push(c);
                out.push((ch, coeff * k));
            }
        }
        out
    }

    /// `⊕_k X_k ⊗ Y_k`.
    pub fn pair_object(pairs: &[(ObjectExpr, ObjectExpr)]) -> ObjectExpr {
        pairs.iter().fold(ObjectExpr::zero(), |acc, (x, y)| {
            acc.direct_sum(&x.tensor(y))
        })
    }

    /// Label pairs `(a, b)` fusing to `c`, each with the offset and size of
    /// its block in the pair basis of `pairs` at `c`.
    pub(crate) fn pair_layout(
        &self,
        pairs: &[(ObjectExpr, ObjectExpr)],
        c: usize,
    ) -> Vec<((usize, usize), usize, usize)> {
        let ring = self.cat.ring();
        let mut out = Vec::new();
        let mut off = 0;
        for a in 0..self.n() {
            for b in 0..self.n() {
                if !ring.admissible(a, b, c) {
                    continue;
                }
                let size: usize = pairs
                    .iter()
                    .map(|(x, y)| x.sector_dim(ring, a) * y.sector_dim(ring, b))
                    .sum();
                out.push(((a, b), off, size));
                off += size;
            }
        }
        out
    }

    /// Change of basis at sector `c` from the pair basis
    /// `⊕_{(a,b)} ⊕_k Hom(a, X_k) ⊗ Hom(b, Y_k)` to the fusion-tree basis of
    /// `⊕_k X_k ⊗ Y_k`.
    pub(crate) fn pair_matrix(&self, pairs: &[(ObjectExpr, ObjectExpr)], c: usize) -> CMatrix {
        let total = Self::pair_object(pairs);
        let tb = SectorBasis::new(self.cat, &total, c);
        let mut m = CMatrix::zeros(tb.len(), tb.len());
        let mut col = 0;
        let mut summand_base = Vec::with_capacity(pairs.len());
        let mut acc = 0;
        for (x, y) in pairs {
            summand_base.push(acc);
            acc += x.summands().len() * y.summands().len();
        }
        for ((a, b), _, _) in self.pair_layout(pairs, c) {
            for (k, (x, y)) in pairs.iter().enumerate() {
                let xb = SectorBasis::new(self.cat, x, a);
                let yb = SectorBasis::new(self.cat, y, b);
                for (kx, cx, u) in &xb.entries {
                    for (ky, cy, v) in &yb.entries {
                        let s = summand_base[k] + kx * y.summands().len() + ky;
                        let copy = cx * y.summands()[*ky].1 + cy;
                        let v_word = &y.summands()[*ky].0;
                        for (ch, coeff) in self.expand(u, a, v, v_word, b, c) {
                            m[(tb.index(s, copy, &ch), col)] += coeff;
                        }
                        col += 1;
                    }
                }
            }
        }
        debug_assert_eq!(col, tb.len());
        m
    }

    /// The morphism `⊕_k X_k ⊗ Y_k → ⊕_l X'_l ⊗ Y'_l` acting on each pair
    /// block `(a, b)` by `block(a, b)`.
    pub(crate) fn pair_transform(
        &self,
        src: &[(ObjectExpr, ObjectExpr)],
        tgt: &[(ObjectExpr, ObjectExpr)],
        mut block: impl FnMut(usize, usize) -> CMatrix,
    ) -> Result<Morphism> {
        let source = Self::pair_object(src);
        let target = Self::pair_object(tgt);
        let n = self.n();
        let mut cache: BTreeMap<(usize, usize), CMatrix> = BTreeMap::new();
        let mut blocks = Vec::with_capacity(n);
        for c in 0..n {
            let ls = self.pair_layout(src, c);
            let lt = self.pair_layout(tgt, c);
            let rows: usize = lt.iter().map(|l| l.2).sum();
            let cols: usize = ls.iter().map(|l| l.2).sum();
            let mut d = CMatrix::zeros(rows, cols);
            for (((a, b), ot, st), (_, os, ss)) in lt.iter().zip(ls.iter()) {
                let m = cache.entry((*a, *b)).or_insert_with(|| block(*a, *b));
                if m.nrows() != *st || m.ncols() != *ss {
                    return Err(Error::Shape(format!(
                        "pair block ({a},{b}) is {}x{}, expected {st}x{ss}",
                        m.nrows(),
                        m.ncols()
                    )));
                }
                d.view_mut((*ot, *os), (*st, *ss)).copy_from(m);
            }
            if rows == 0 || cols == 0 {
                blocks.push(d);
                continue;
            }
            let mt = self.pair_matrix(tgt, c);
            let ms = self.pair_matrix(src, c);
            let ms_inv = linalg::inverse(&ms, &format!("pair basis at sector {c}"))?;
            blocks.push(mt * d * ms_inv);
        }
        Ok(Morphism::from_blocks_unchecked(source, target, blocks))
    }

    /// `f ⊗ g`.
    pub fn tensor(&self, f: &Morphism, g: &Morphism) -> Result<Morphism> {
        self.pair_transform(
            &[(f.source().clone(), g.source().clone())],
            &[(f.target().clone(), g.target().clone())],
            |a, b| linalg::kron(f.block(a), g.block(b)),
        )
    }

    /// Tensor product of several morphisms, left to right.
    pub fn tensor_all(&self, fs: &[&Morphism]) -> Result<Morphism> {
        let mut it = fs.iter();
        let first = it
            .next()
            .ok_or_else(|| Error::Shape("empty tensor product".into()))?;
        let mut acc = (*first).clone();
        for f in it {
            acc = self.tensor(&acc, f)?;
        }
        Ok(acc)
    }

    /// `c_{X,Y}: X⊗Y → Y⊗X`, or with `inverse` set, `c_{Y,X}^{-1}: X⊗Y → Y⊗X`.
    pub fn braiding(&self, x: &ObjectExpr, y: &ObjectExpr, inverse: bool) -> Result<Morphism> {
        let ring = self.cat.ring();
        let r = self.cat.r();
        let src = [(x.clone(), y.clone())];
        let tgt = [(y.clone(), x.clone())];
        let source = x.tensor(y);
        let target = y.tensor(x);
        let mut blocks = Vec::with_capacity(self.n());
        for c in 0..self.n() {
            let ls = self.pair_layout(&src, c);
            let lt = self.pair_layout(&tgt, c);
            let size: usize = ls.iter().map(|l| l.2).sum();
            let mut p = CMatrix::zeros(size, size);
            for ((a, b), os, _) in &ls {
                let (_, ot, _) = lt
                    .iter()
                    .find(|l| l.0 == (*b, *a))
                    .expect("fusion is commutative in a braided category");
                let da = x.sector_dim(ring, *a);
                let db = y.sector_dim(ring, *b);
                let ph = if inverse {
                    ONE / r.get(*b, *a, c)
                } else {
                    r.get(*a, *b, c)
                };
                for i in 0..da {
                    for j in 0..db {
                        p[(ot + j * da + i, os + i * db + j)] = ph;
                    }
                }
            }
            if size == 0 {
                blocks.push(p);
                continue;
            }
            let mt = self.pair_matrix(&tgt, c);
            let ms = self.pair_matrix(&src, c);
            let ms_inv = linalg::inverse(&ms, &format!("pair basis at sector {c}"))?;
            blocks.push(mt * p * ms_inv);
        }
        Ok(Morphism::from_blocks_unchecked(source, target, blocks))
    }

    /// Inclusion of copy `copy` of summand `k` of `x`, as a morphism from
    /// that summand's word.
    pub fn summand_inclusion(&self, x: &ObjectExpr, k: usize, copy: usize) -> Morphism {
        let ring = self.cat.ring();
        let w = ObjectExpr::word(x.summands()[k].0.clone());
        let mut f = self.zero(&w, x);
        for c in 0..self.n() {
            let d = w.sector_dim(ring, c);
            if d == 0 {
                continue;
            }
            let off = x.offset(ring, c, k, copy);
            f.block_mut(c)
                .view_mut((off, 0), (d, d))
                .copy_from(&CMatrix::identity(d, d));
        }
        f
    }

    /// Projection onto copy `copy` of summand `k`.
    pub fn summand_projection(&self, x: &ObjectExpr, k: usize, copy: usize) -> Morphism {
        let inc = self.summand_inclusion(x, k, copy);
        let blocks = inc.blocks().iter().map(|b| b.transpose()).collect();
        Morphism::from_blocks_unchecked(inc.target().clone(), inc.source().clone(), blocks)
    }

    /// Inclusion of `parts[idx]` into `parts[0] ⊕ parts[1] ⊕ …`.
    pub fn part_inclusion(&self, parts: &[ObjectExpr], idx: usize) -> Morphism {
        let ring = self.cat.ring();
        let total = parts
            .iter()
            .fold(ObjectExpr::zero(), |acc, p| acc.direct_sum(p));
        let mut f = self.zero(&parts[idx], &total);
        for c in 0..self.n() {
            let off: usize = parts[..idx].iter().map(|p| p.sector_dim(ring, c)).sum();
            let d = parts[idx].sector_dim(ring, c);
            f.block_mut(c)
                .view_mut((off, 0), (d, d))
                .copy_from(&CMatrix::identity(d, d));
        }
        f
    }

    /// Projection of `parts[0] ⊕ parts[1] ⊕ …` onto `parts[idx]`.
    pub fn part_projection(&self, parts: &[ObjectExpr], idx: usize) -> Morphism {
        let inc = self.part_inclusion(parts, idx);
        let blocks = inc.blocks().iter().map(|b| b.transpose()).collect();
        Morphism::from_blocks_unchecked(inc.target().clone(), inc.source().clone(), blocks)
    }

    fn simple_cup_cap(&self, a: usize, kind: CupCap) -> Morphism {
        let cat = self.cat;
        let ad = cat.dual(a);
        let unit = ObjectExpr::unit();
        let (src, tgt, value) = match kind {
            CupCap::Coev => (unit, ObjectExpr::word(vec![a, ad]), ONE),
            CupCap::Eval => (ObjectExpr::word(vec![ad, a]), unit, cat.eval_coeff(a)),
            CupCap::CoevRight => (
                unit,
                ObjectExpr::word(vec![ad, a]),
                ONE / cat.pivotal().get(a),
            ),
            CupCap::EvalRight => (
                ObjectExpr::word(vec![a, ad]),
                unit,
                cat.pivotal().get(a) * cat.eval_coeff(ad),
            ),
        };
        let mut f = self.zero(&src, &tgt);
        f.block_mut(0)[(0, 0)] = value;
        f
    }

    fn word_cup_cap(&self, w: &[usize], kind: CupCap) -> Result<Morphism> {
        if w.is_empty() {
            return Ok(self.identity(&ObjectExpr::unit()));
        }
        if w.len() == 1 {
            return Ok(self.simple_cup_cap(w[0], kind));
        }
        let x1 = ObjectExpr::simple(w[0]);
        let x1d = ObjectExpr::simple(self.cat.dual(w[0]));
        let rest = ObjectExpr::word(w[1..].to_vec());
        let restd = rest.dual(self.cat);
        let inner = self.word_cup_cap(&w[1..], kind)?;
        let outer = self.simple_cup_cap(w[0], kind);
        match kind {
            CupCap::Coev => {
                let mid = self.tensor_all(&[&self.identity(&x1), &inner, &self.identity(&x1d)])?;
                mid.compose(&outer)
            }
            CupCap::Eval => {
                let mid =
                    self.tensor_all(&[&self.identity(&restd), &outer, &self.identity(&rest)])?;
                inner.compose(&mid)
            }
            CupCap::EvalRight => {
                let mid = self.tensor_all(&[&self.identity(&x1), &inner, &self.identity(&x1d)])?;
                outer.compose(&mid)
            }
            CupCap::CoevRight => {
                let mid =
                    self.tensor_all(&[&self.identity(&restd), &outer, &self.identity(&rest)])?;
                mid.compose(&inner)
            }
        }
    }

    /// Duality morphisms of an arbitrary object, assembled from simple cups
    /// and caps by nesting along words and summing over summand copies.
    pub fn cup_cap(&self, x: &ObjectExpr, kind: CupCap) -> Result<Morphism> {
        let xd = x.dual(self.cat);
        let (pair, unit) = match kind {
            CupCap::Coev | CupCap::EvalRight => (x.tensor(&xd), ObjectExpr::unit()),
            CupCap::Eval | CupCap::CoevRight => (xd.tensor(x), ObjectExpr::unit()),
        };
        let into_pair = matches!(kind, CupCap::Coev | CupCap::CoevRight);
        let mut acc = if into_pair {
            self.zero(&unit, &pair)
        } else {
            self.zero(&pair, &unit)
        };
        let len = x.summands().len();
        for (k, (w, m)) in x.summands().iter().enumerate() {
            let base = self.word_cup_cap(w, kind)?;
            for copy in 0..*m {
                let s = k * len + k;
                let pc = copy * m + copy;
                let term = if into_pair {
                    self.summand_inclusion(&pair, s, pc).compose(&base)?
                } else {
                    base.compose(&self.summand_projection(&pair, s, pc))?
                };
                acc = acc.add(&term)?;
            }
        }
        Ok(acc)
    }

    /// `Tr(f) = Σ_c dim(c) tr(f_c)`.
    pub fn quantum_trace(&self, f: &Morphism) -> Result<Scalar> {
        if !f.is_endo() {
            return Err(Error::Shape("quantum trace of a non-endomorphism".into()));
        }
        Ok((0..self.n()).fold(ZERO, |acc, c| {
            acc + self.cat.dim(c) * linalg::trace(f.block(c))
        }))
    }

    /// `ev'_X ∘ (f ⊗ 1) ∘ coev_X`, evaluated diagrammatically.
    pub fn trace_right_loop(&self, f: &Morphism) -> Result<Scalar> {
        if !f.is_endo() {
            return Err(Error::Shape("trace of a non-endomorphism".into()));
        }
        let x = f.source();
        let xd = x.dual(self.cat);
        let coev = self.cup_cap(x, CupCap::Coev)?;
        let ev = self.cup_cap(x, CupCap::EvalRight)?;
        let s = ev
            .compose(&self.tensor(f, &self.identity(&xd))?)?
            .compose(&coev)?;
        Ok(s.block(0)[(0, 0)])
    }

    /// `ev_X ∘ (1 ⊗ f) ∘ coev'_X`, evaluated diagrammatically.
    pub fn trace_left_loop(&self, f: &Morphism) -> Result<Scalar> {
        if !f.is_endo() {
            return Err(Error::Shape("trace of a non-endomorphism".into()));
        }
        let x = f.source();
        let xd = x.dual(self.cat);
        let coev = self.cup_cap(x, CupCap::CoevRight)?;
        let ev = self.cup_cap(x, CupCap::Eval)?;
        let s = ev
            .compose(&self.tensor(&self.identity(&xd), f)?)?
            .compose(&coev)?;
        Ok(s.block(0)[(0, 0)])
    }

    /// Right partial trace `(1_Y ⊗ ev'_Z)(f ⊗ 1_{Z*})(1_X ⊗ coev_Z)` of
    /// `f: X⊗Z → Y⊗Z`.
    pub fn partial_trace(
        &self,
        f: &Morphism,
        x: &ObjectExpr,
        y: &ObjectExpr,
        z: &ObjectExpr,
    ) -> Result<Morphism> {
        let ring = self.cat.ring();
        let f = f.retype(ring, x.tensor(z), y.tensor(z))?;
        let zd = z.dual(self.cat);
        let coev = self.tensor(&self.identity(x), &self.cup_cap(z, CupCap::Coev)?)?;
        let ev = self.tensor(&self.identity(y), &self.cup_cap(z, CupCap::EvalRight)?)?;
        let mid = self.tensor(&f, &self.identity(&zd))?;
        ev.compose(&mid)?
            .compose(&coev)?
            .retype(ring, x.clone(), y.clone())
    }

    /// Left partial trace `(ev_Z ⊗ 1_Y)(1_{Z*} ⊗ f)(coev'_Z ⊗ 1_X)` of
    /// `f: Z⊗X → Z⊗Y`.
    pub fn partial_trace_left(
        &self,
        f: &Morphism,
        x: &ObjectExpr,
        y: &ObjectExpr,
        z: &ObjectExpr,
    ) -> Result<Morphism> {
        let ring = self.cat.ring();
        let f = f.retype(ring, z.tensor(x), z.tensor(y))?;
        let zd = z.dual(self.cat);
        let coev = self.tensor(&self.cup_cap(z, CupCap::CoevRight)?, &self.identity(x))?;
        let ev = self.tensor(&self.cup_cap(z, CupCap::Eval)?, &self.identity(y))?;
        let mid = self.tensor(&self.identity(&zd), &f)?;
        ev.compose(&mid)?
            .compose(&coev)?
            .retype(ring, x.clone(), y.clone())
    }

    /// Canonical basis of `Hom(X, i*)` (unit rows at sector `i*`) with its
    /// trace-dual basis.
    pub fn hom_basis(&self, x: &ObjectExpr, i: usize) -> Result<CasimirPair> {
        let ring = self.cat.ring();
        let id_ = self.cat.dual(i);
        let target = ObjectExpr::simple(id_);
        let n = x.sector_dim(ring, id_);
        let basis = (0..n)
            .map(|l| {
                let mut f = self.zero(x, &target);
                f.block_mut(id_)[(0, l)] = ONE;
                f
            })
            .collect();
        self.casimir_from_basis(x, i, basis)
    }

    /// Trace-dual basis for an arbitrary basis of `Hom(X, i*)`.
    pub fn casimir_from_basis(
        &self,
        x: &ObjectExpr,
        i: usize,
        basis: Vec<Morphism>,
    ) -> Result<CasimirPair> {
        let ring = self.cat.ring();
        let id_ = self.cat.dual(i);
        let target = ObjectExpr::simple(id_);
        let n = x.sector_dim(ring, id_);
        if basis.len() != n {
            return Err(Error::Shape(format!(
                "Hom(X, {id_}) has dimension {n}, got {} vectors",
                basis.len()
            )));
        }
        let coords: Vec<Morphism> = (0..n)
            .map(|l| {
                let mut f = self.zero(&target, x);
                f.block_mut(id_)[(l, 0)] = ONE;
                f
            })
            .collect();
        // G_rl = Tr(φ_r ∘ e_l); the dual basis is e · G^{-1}.
        let mut g = CMatrix::zeros(n, n);
        for r in 0..n {
            for l in 0..n {
                g[(r, l)] = self.quantum_trace(&basis[r].compose(&coords[l])?)?;
            }
        }
        let ginv = linalg::inverse(&g, "trace pairing on a hom space")?;
        let mut dual_basis = Vec::with_capacity(n);
        for k in 0..n {
            let mut acc = self.zero(&target, x);
            for (l, e) in coords.iter().enumerate() {
                acc = acc.add(&e.scale(ginv[(l, k)]))?;
            }
            dual_basis.push(acc);
        }
        Ok(CasimirPair {
            i,
            basis,
            dual_basis,
        })
    }

    /// Triples `(i, φ_l, φ^l)` with `Σ dim(i) φ^l ∘ φ_l = 1_W`.
    pub fn identity_resolution(&self, w: &ObjectExpr) -> Result<Vec<(usize, Morphism, Morphism)>> {
        let mut out = Vec::new();
        for i in 0..self.n() {
            let pair = self.hom_basis(w, i)?;
            for (phi, dual) in pair.basis.into_iter().zip(pair.dual_basis) {
                out.push((i, phi, dual));
            }
        }
        Ok(out)
    }

    /// `Σ dim(i) φ^l ∘ φ_l` over an identity resolution.
    pub fn resolve(
        &self,
        w: &ObjectExpr,
        triples: &[(usize, Morphism, Morphism)],
    ) -> Result<Morphism> {
        let mut acc = self.zero(w, w);
        for (i, phi, dual) in triples {
            acc = acc.add(&dual.compose(phi)?.scale(self.cat.dim(*i)))?;
        }
        Ok(acc)
    }

    /// The `j`-colored loop around `W`: `ptr_j(c_{j,W} ∘ c_{W,j})`.
    pub fn colored_loop(&self, j: usize, w: &ObjectExpr) -> Result<Morphism> {
        let js = ObjectExpr::simple(j);
        let mono = self
            .braiding(&js, w, false)?
            .compose(&self.braiding(w, &js, false)?)?;
        self.partial_trace(&mono, w, w, &js)
    }

    /// The loop colored by the regular color `Ω = Σ_j dim(j) j`.
    pub fn omega_loop(&self, w: &ObjectExpr) -> Result<Morphism> {
        let mut acc = self.zero(w, w);
        for j in 0..self.n() {
            acc = acc.add(&self.colored_loop(j, w)?.scale(self.cat.dim(j)))?;
        }
        Ok(acc)
    }

    /// The `Ω`-loop around `W` closed on the left:
    /// `Σ_j dim(j) ptl_j(c_{W,j} ∘ c_{j,W})`.
    pub fn omega_loop_left(&self, w: &ObjectExpr) -> Result<Morphism> {
        let mut acc = self.zero(w, w);
        for j in 0..self.n() {
            let js = ObjectExpr::simple(j);
            let mono = self
                .braiding(w, &js, false)?
                .compose(&self.braiding(&js, w, false)?)?;
            let l = self.partial_trace_left(&mono, w, w, &js)?;
            acc = acc.add(&l.scale(self.cat.dim(j)))?;
        }
        Ok(acc)
    }

    /// The `Ω`-loop around `W` after sliding a parallel `k` strand onto it:
    /// `dim(k)^{-1} Σ_j dim(j) ptr_{j⊗k}(c_{j⊗k,W} ∘ c_{W,j⊗k})`.
    pub fn omega_loop_slid(&self, w: &ObjectExpr, k: usize) -> Result<Morphism> {
        let mut acc = self.zero(w, w);
        for j in 0..self.n() {
            let jk = ObjectExpr::word(vec![j, k]);
            let mono = self
                .braiding(&jk, w, false)?
                .compose(&self.braiding(w, &jk, false)?)?;
            let l = self.partial_trace(&mono, w, w, &jk)?;
            acc = acc.add(&l.scale(self.cat.dim(j)))?;
        }
        Ok(acc.scale(ONE / self.cat.dim(k)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::scalar::I;

    #[test]
    fn tensor_with_unit_is_trivial() {
        let cat = catalog::catalog("fibonacci").unwrap();
        let eng = Engine::new(&cat);
        let x = ObjectExpr::word(vec![1, 1]);
        let mut rng = linalg::rng(3);
        let f = Morphism::random(cat.ring(), &x, &x, &mut rng);
        let t = eng.tensor(&eng.identity(&ObjectExpr::unit()), &f).unwrap();
        assert!(t.distance(&f) < 1e-14);
    }

    #[test]
    fn id_tau_tensor_id_tau() {
        let cat = catalog::catalog("fibonacci").unwrap();
        let eng = Engine::new(&cat);
        let t = ObjectExpr::simple(1);
        let f = eng.tensor(&eng.identity(&t), &eng.identity(&t)).unwrap();
        assert_eq!(f.block(0).shape(), (1, 1));
        assert_eq!(f.block(1).shape(), (1, 1));
        assert!(f.identity_defect() < 1e-14);
    }

    #[test]
    fn semion_braiding_in_unit_sector() {
        let cat = catalog::catalog("semion").unwrap();
        let eng = Engine::new(&cat);
        let s = ObjectExpr::simple(1);
        let c = eng.braiding(&s, &s, false).unwrap();
        assert!((c.block(0)[(0, 0)] - I).norm() < 1e-14);
    }

    #[test]
    fn braiding_with_unit_is_identity() {
        let cat = catalog::catalog("ising").unwrap();
        let eng = Engine::new(&cat);
        let y = ObjectExpr::word(vec![1, 2]);
        let c = eng.braiding(&ObjectExpr::unit(), &y, false).unwrap();
        assert!(c.identity_defect() < 1e-14);
    }

    #[test]
    fn braiding_inverse_pair() {
        let cat = catalog::catalog("ising").unwrap();
        let eng = Engine::new(&cat);
        let x = ObjectExpr::word(vec![1, 1]);
        let y = ObjectExpr::simple(1);
        let c = eng.braiding(&x, &y, false).unwrap();
        let ci = eng.braiding(&y, &x, true).unwrap();
        assert!(ci.compose(&c).unwrap().identity_defect() < 1e-12);
    }

    #[test]
    fn zigzag_on_simples() {
        for name in catalog::NAMES {
            let cat = catalog::catalog(name).unwrap();
            let eng = Engine::new(&cat);
            for a in 0..cat.n_labels() {
                let x = ObjectExpr::simple(a);
                let xd = x.dual(&cat);
                let coev = eng.cup_cap(&x, CupCap::Coev).unwrap();
                let ev = eng.cup_cap(&x, CupCap::Eval).unwrap();
                let z = eng
                    .tensor(&eng.identity(&x), &ev)
                    .unwrap()
                    .compose(&eng.tensor(&coev, &eng.identity(&x)).unwrap())
                    .unwrap();
                assert!(z.identity_defect() < 1e-12, "{name} {a}");
                let z2 = eng
                    .tensor(&ev, &eng.identity(&xd))
                    .unwrap()
                    .compose(&eng.tensor(&eng.identity(&xd), &coev).unwrap())
                    .unwrap();
                assert!(z2.identity_defect() < 1e-12, "{name} {a}");
            }
        }
    }

    #[test]
    fn loop_trace_matches_dims() {
        let cat = catalog::catalog("fibonacci").unwrap();
        let eng = Engine::new(&cat);
        let t = ObjectExpr::simple(1);
        let d = eng.trace_right_loop(&eng.identity(&t)).unwrap();
        assert!((d - cat.dim(1)).norm() < 1e-12);
        let w = ObjectExpr::sum(vec![(vec![1, 1], 2), (vec![], 1)]);
        let d = eng.trace_right_loop(&eng.identity(&w)).unwrap();
        assert!((d - cat.quantum_dim(&w)).norm() < 1e-12);
    }

    #[test]
    fn hom_basis_counts() {
        let cat = catalog::catalog("fibonacci").unwrap();
        let eng = Engine::new(&cat);
        let p = eng.hom_basis(&ObjectExpr::word(vec![1, 1]), 1).unwrap();
        assert_eq!(p.basis.len(), 1);
        let unit = eng.hom_basis(&ObjectExpr::unit(), 0).unwrap();
        assert_eq!(unit.basis.len(), 1);
        assert!((unit.basis[0].block(0)[(0, 0)] - ONE).norm() < 1e-15);
        assert!((unit.dual_basis[0].block(0)[(0, 0)] - ONE).norm() < 1e-15);
    }
}
