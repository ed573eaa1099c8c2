//! Skeletal premodular-category data: labels, fusion ring, F- and R-symbols,
//! pivotal coefficients and the derived quantum dimensions.

mod validate;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::linalg;
use crate::object::ObjectExpr;
use crate::scalar::{CMatrix, Scalar, ToleranceCfg, ONE, ZERO};
use crate::{Error, Result};

pub use validate::{Check, ValidationReport};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleLabel {
    pub id: usize,
    pub name: String,
}

/// Multiplicity-free fusion rules `N(i, j, k) ∈ {0, 1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct FusionRing {
    n: usize,
    table: Vec<u8>,
}

impl FusionRing {
    fn new(n: usize) -> Self {
        FusionRing {
            n,
            table: vec![0; n * n * n],
        }
    }

    #[inline]
    fn idx(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.n + j) * self.n + k
    }

    pub fn n_labels(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn multiplicity(&self, i: usize, j: usize, k: usize) -> u8 {
        self.table[self.idx(i, j, k)]
    }

    #[inline]
    pub fn admissible(&self, i: usize, j: usize, k: usize) -> bool {
        self.multiplicity(i, j, k) != 0
    }

    /// Labels `k` with `N(i, j, k) = 1`, increasing.
    pub fn channels(&self, i: usize, j: usize) -> Vec<usize> {
        (0..self.n).filter(|&k| self.admissible(i, j, k)).collect()
    }

    /// Nonzero fusion triples in lexicographic order.
    pub fn triples(&self) -> Vec<[usize; 3]> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                for k in 0..self.n {
                    if self.admissible(i, j, k) {
                        out.push([i, j, k]);
                    }
                }
            }
        }
        out
    }
}

/// One F-matrix: fixed `(a, b, c; d)`, rows indexed by the left channel `e`
/// of `(a b) c`, columns by the right channel `f` of `a (b c)`.
#[derive(Clone, Debug, PartialEq)]
pub struct FBlock {
    pub es: Vec<usize>,
    pub fs: Vec<usize>,
    pub matrix: CMatrix,
    /// Inverse matrix; rows indexed by `f`, columns by `e`.
    pub inverse: CMatrix,
    pub condition: f64,
}

impl FBlock {
    pub fn e_index(&self, e: usize) -> Option<usize> {
        self.es.iter().position(|&x| x == e)
    }

    pub fn f_index(&self, f: usize) -> Option<usize> {
        self.fs.iter().position(|&x| x == f)
    }
}

/// Associator coefficients: the left tree `((a b)_e c)_d` equals
/// `Σ_f F(a,b,c;d;e,f)` times the right tree `(a (b c)_f)_d`.
#[derive(Clone, Debug, PartialEq)]
pub struct FSymbolTable {
    n: usize,
    entries: BTreeMap<[usize; 6], Scalar>,
    blocks: Vec<Option<FBlock>>,
}

impl FSymbolTable {
    #[inline]
    fn block_idx(&self, a: usize, b: usize, c: usize, d: usize) -> usize {
        ((a * self.n + b) * self.n + c) * self.n + d
    }

    pub fn get(&self, a: usize, b: usize, c: usize, d: usize, e: usize, f: usize) -> Scalar {
        self.entries
            .get(&[a, b, c, d, e, f])
            .copied()
            .unwrap_or(ZERO)
    }

    pub fn block(&self, a: usize, b: usize, c: usize, d: usize) -> Option<&FBlock> {
        self.blocks[self.block_idx(a, b, c, d)].as_ref()
    }

    /// Entry `(F^{abc}_d)^{-1}_{f,e}`; zero when inadmissible.
    pub fn inverse(&self, a: usize, b: usize, c: usize, d: usize, f: usize, e: usize) -> Scalar {
        match self.block(a, b, c, d) {
            Some(blk) => match (blk.f_index(f), blk.e_index(e)) {
                (Some(i), Some(j)) => blk.inverse[(i, j)],
                _ => ZERO,
            },
            None => ZERO,
        }
    }

    pub fn entries(&self) -> &BTreeMap<[usize; 6], Scalar> {
        &self.entries
    }

    pub fn blocks(&self) -> impl Iterator<Item = &FBlock> {
        self.blocks.iter().flatten()
    }
}

/// Braiding eigenvalues: `c_{a,b}` maps the splitting vertex of `c` into
/// `a ⊗ b` to `R(a,b;c)` times the vertex into `b ⊗ a`.
#[derive(Clone, Debug, PartialEq)]
pub struct RSymbolTable {
    entries: BTreeMap<[usize; 3], Scalar>,
}

impl RSymbolTable {
    pub fn get(&self, a: usize, b: usize, c: usize) -> Scalar {
        self.entries.get(&[a, b, c]).copied().unwrap_or(ZERO)
    }

    pub fn entries(&self) -> &BTreeMap<[usize; 3], Scalar> {
        &self.entries
    }
}

/// Per-label scalars `t_i` identifying `i` with `i**`.
#[derive(Clone, Debug, PartialEq)]
pub struct PivotalCoeffs {
    t: Vec<Scalar>,
}

impl PivotalCoeffs {
    pub fn get(&self, i: usize) -> Scalar {
        self.t[i]
    }

    pub fn as_slice(&self) -> &[Scalar] {
        &self.t
    }
}

/// Unindexed description of a category, as read from a document or built by
/// the catalog.
#[derive(Clone, Debug, PartialEq)]
pub struct CategoryParts {
    pub name: String,
    pub labels: Vec<String>,
    pub dual: Vec<usize>,
    pub fusion: Vec<[usize; 3]>,
    pub f: Vec<([usize; 6], Scalar)>,
    pub r: Vec<([usize; 3], Scalar)>,
    pub pivotal: Vec<(usize, Scalar)>,
    pub tolerances: ToleranceCfg,
}

/// A complete skeletal premodular category. Immutable once built.
#[derive(Clone, Debug, PartialEq)]
pub struct CategoryData {
    name: String,
    labels: Vec<SimpleLabel>,
    dual: Vec<usize>,
    ring: FusionRing,
    f: FSymbolTable,
    r: RSymbolTable,
    piv: PivotalCoeffs,
    tol: ToleranceCfg,
    dims: Vec<Scalar>,
}

fn check_id(key: &str, id: usize, n: usize) -> Result<()> {
    if id >= n {
        return Err(Error::schema(
            key,
            format!("label id {id} out of range 0..{n}"),
        ));
    }
    Ok(())
}

impl CategoryData {
    /// Indexes `parts` after structural checks. Axioms are not checked here;
    /// see [`CategoryData::validate`].
    pub fn from_parts(parts: CategoryParts) -> Result<Self> {
        let n = parts.labels.len();
        if n == 0 {
            return Err(Error::schema(
                "labels",
                "missing unit: at least one label is required",
            ));
        }
        parts.tolerances.check()?;
        if parts.dual.len() != n {
            return Err(Error::schema(
                "dual",
                format!("expected {n} entries, found {}", parts.dual.len()),
            ));
        }
        for &d in &parts.dual {
            check_id("dual", d, n)?;
        }
        if parts.dual[0] != 0 {
            return Err(Error::schema("dual", "unit must be self-dual"));
        }
        for i in 0..n {
            if parts.dual[parts.dual[i]] != i {
                return Err(Error::schema(
                    "dual",
                    format!("dual map is not an involution at label {i}"),
                ));
            }
        }
        let mut seen = BTreeMap::new();
        for (i, name) in parts.labels.iter().enumerate() {
            if seen.insert(name.clone(), i).is_some() {
                return Err(Error::schema(
                    "labels",
                    format!("duplicate label name `{name}`"),
                ));
            }
        }

        let mut ring = FusionRing::new(n);
        for &[i, j, k] in &parts.fusion {
            check_id("fusion", i, n)?;
            check_id("fusion", j, n)?;
            check_id("fusion", k, n)?;
            let idx = ring.idx(i, j, k);
            if ring.table[idx] != 0 {
                return Err(Error::schema(
                    "fusion",
                    format!("duplicate triple [{i},{j},{k}]"),
                ));
            }
            ring.table[idx] = 1;
        }

        let f = build_f(&ring, &parts.f)?;
        let r = build_r(&ring, &parts.r)?;

        let mut t = vec![None; n];
        for &(i, v) in &parts.pivotal {
            check_id("pivotal", i, n)?;
            if t[i].replace(v).is_some() {
                return Err(Error::schema(
                    "pivotal",
                    format!("duplicate entry for label {i}"),
                ));
            }
        }
        let t: Vec<Scalar> = t
            .into_iter()
            .enumerate()
            .map(|(i, v)| {
                v.ok_or_else(|| Error::schema("pivotal", format!("missing entry for label {i}")))
            })
            .collect::<Result<_>>()?;

        let labels = parts
            .labels
            .into_iter()
            .enumerate()
            .map(|(id, name)| SimpleLabel { id, name })
            .collect();
        let mut cat = CategoryData {
            name: parts.name,
            labels,
            dual: parts.dual,
            ring,
            f,
            r,
            piv: PivotalCoeffs { t },
            tol: parts.tolerances,
            dims: Vec::new(),
        };
        cat.dims = (0..n).map(|a| cat.right_dim(a)).collect();
        Ok(cat)
    }

    /// Reverse of [`CategoryData::from_parts`]: every stored table entry,
    /// in canonical order.
    pub fn to_parts(&self) -> CategoryParts {
        CategoryParts {
            name: self.name.clone(),
            labels: self.labels.iter().map(|l| l.name.clone()).collect(),
            dual: self.dual.clone(),
            fusion: self.ring.triples(),
            f: self.f.entries.iter().map(|(k, v)| (*k, *v)).collect(),
            r: self.r.entries.iter().map(|(k, v)| (*k, *v)).collect(),
            pivotal: self.piv.t.iter().copied().enumerate().collect(),
            tolerances: self.tol,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn n_labels(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[SimpleLabel] {
        &self.labels
    }

    pub fn label_name(&self, i: usize) -> &str {
        &self.labels[i].name
    }

    pub fn label_id(&self, name: &str) -> Option<usize> {
        self.labels.iter().position(|l| l.name == name)
    }

    #[inline]
    pub fn dual(&self, i: usize) -> usize {
        self.dual[i]
    }

    pub fn ring(&self) -> &FusionRing {
        &self.ring
    }

    pub fn f(&self) -> &FSymbolTable {
        &self.f
    }

    pub fn r(&self) -> &RSymbolTable {
        &self.r
    }

    pub fn pivotal(&self) -> &PivotalCoeffs {
        &self.piv
    }

    pub fn tol(&self) -> ToleranceCfg {
        self.tol
    }

    pub fn with_tolerances(mut self, tol: ToleranceCfg) -> Result<Self> {
        tol.check()?;
        self.tol = tol;
        Ok(self)
    }

    /// Scalar of the left evaluation `a* ⊗ a → 1` on the fusion vertex,
    /// fixed by the zig-zag identity with a unit-normalized coevaluation.
    pub fn eval_coeff(&self, a: usize) -> Scalar {
        let ad = self.dual(a);
        let x = self.f.get(a, ad, a, a, 0, 0);
        if x == ZERO {
            ZERO
        } else {
            ONE / x
        }
    }

    /// `Tr(id_a)` closed with the pivotal structure on the right.
    fn right_dim(&self, a: usize) -> Scalar {
        self.piv.get(a) * self.eval_coeff(self.dual(a))
    }

    /// `Tr(id_a)` closed on the left; agrees with the right trace exactly
    /// when the pivotal structure is spherical.
    pub fn left_dim(&self, a: usize) -> Scalar {
        let t = self.piv.get(a);
        if t == ZERO {
            ZERO
        } else {
            self.eval_coeff(a) / t
        }
    }

    /// Quantum dimension of a simple label.
    #[inline]
    pub fn dim(&self, a: usize) -> Scalar {
        self.dims[a]
    }

    /// Quantum dimension of an object: additive over summands,
    /// multiplicative along words.
    pub fn quantum_dim(&self, x: &ObjectExpr) -> Scalar {
        x.summands()
            .iter()
            .map(|(w, m)| w.iter().fold(ONE, |acc, &a| acc * self.dim(a)) * (*m as f64))
            .fold(ZERO, |acc, v| acc + v)
    }

    /// `dim(Ω) = Σ_i dim(i)²`.
    pub fn global_dim(&self) -> Result<Scalar> {
        let d = self.dims.iter().fold(ZERO, |acc, &x| acc + x * x);
        if d.norm() < self.tol.eps_identity {
            return Err(Error::InvalidCategory(format!(
                "global dimension of `{}` vanishes",
                self.name
            )));
        }
        Ok(d)
    }

    /// Ribbon twist `θ_a`, derived from R-symbols and dimensions.
    pub fn twist(&self, a: usize) -> Scalar {
        let acc = self
            .ring
            .channels(a, a)
            .into_iter()
            .fold(ZERO, |acc, c| acc + self.dim(c) * self.r.get(a, a, c));
        acc / self.dim(a)
    }

    pub fn validate(&self) -> ValidationReport {
        validate::validate(self)
    }
}

fn build_f(ring: &FusionRing, raw: &[([usize; 6], Scalar)]) -> Result<FSymbolTable> {
    let n = ring.n_labels();
    let mut entries = BTreeMap::new();
    for &(key, v) in raw {
        for &id in &key {
            check_id("F", id, n)?;
        }
        let [a, b, c, d, e, f] = key;
        let ok = ring.admissible(a, b, e)
            && ring.admissible(e, c, d)
            && ring.admissible(b, c, f)
            && ring.admissible(a, f, d);
        if !ok {
            return Err(Error::schema(
                "F",
                format!("entry {key:?} is not admissible"),
            ));
        }
        if entries.insert(key, v).is_some() {
            return Err(Error::schema("F", format!("duplicate entry {key:?}")));
        }
    }
    let mut blocks = Vec::with_capacity(n * n * n * n);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let es: Vec<usize> = (0..n)
                        .filter(|&e| ring.admissible(a, b, e) && ring.admissible(e, c, d))
                        .collect();
                    let fs: Vec<usize> = (0..n)
                        .filter(|&f| ring.admissible(b, c, f) && ring.admissible(a, f, d))
                        .collect();
                    if es.is_empty() && fs.is_empty() {
                        blocks.push(None);
                        continue;
                    }
                    if es.len() != fs.len() {
                        return Err(Error::schema(
                            "fusion",
                            format!("ring is not associative at ({a},{b},{c};{d})"),
                        ));
                    }
                    let unit_leg = a == 0 || b == 0 || c == 0;
                    if unit_leg {
                        // Identity-forced entries default to 1 when omitted.
                        for (&e, &f) in es.iter().zip(fs.iter()) {
                            entries.entry([a, b, c, d, e, f]).or_insert(ONE);
                        }
                    }
                    let matrix = CMatrix::from_fn(es.len(), fs.len(), |i, j| {
                        entries
                            .get(&[a, b, c, d, es[i], fs[j]])
                            .copied()
                            .unwrap_or(ZERO)
                    });
                    let condition = linalg::condition_number(&matrix);
                    let inverse = if condition.is_finite() && condition < 1e14 {
                        matrix
                            .clone()
                            .try_inverse()
                            .unwrap_or_else(|| CMatrix::zeros(fs.len(), es.len()))
                    } else {
                        CMatrix::zeros(fs.len(), es.len())
                    };
                    blocks.push(Some(FBlock {
                        es,
                        fs,
                        matrix,
                        inverse,
                        condition,
                    }));
                }
            }
        }
    }
    Ok(FSymbolTable { n, entries, blocks })
}

fn build_r(ring: &FusionRing, raw: &[([usize; 3], Scalar)]) -> Result<RSymbolTable> {
    let n = ring.n_labels();
    let mut entries = BTreeMap::new();
    for &(key, v) in raw {
        for &id in &key {
            check_id("R", id, n)?;
        }
        let [a, b, c] = key;
        if !ring.admissible(a, b, c) {
            return Err(Error::schema(
                "R",
                format!("entry {key:?} is not admissible"),
            ));
        }
        if entries.insert(key, v).is_some() {
            return Err(Error::schema("R", format!("duplicate entry {key:?}")));
        }
    }
    for a in 0..n {
        for c in 0..n {
            if ring.admissible(0, a, c) {
                entries.entry([0, a, c]).or_insert(ONE);
            }
            if ring.admissible(a, 0, c) {
                entries.entry([a, 0, c]).or_insert(ONE);
            }
        }
    }
    Ok(RSymbolTable { entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn trivial_parts() -> CategoryParts {
        CategoryParts {
            name: "t".into(),
            labels: vec!["1".into()],
            dual: vec![0],
            fusion: vec![[0, 0, 0]],
            f: vec![],
            r: vec![],
            pivotal: vec![(0, ONE)],
            tolerances: ToleranceCfg::default(),
        }
    }

    #[test]
    fn unit_must_be_self_dual() {
        let mut p = trivial_parts();
        p.labels.push("g".into());
        p.dual = vec![1, 0];
        let err = CategoryData::from_parts(p).unwrap_err();
        assert!(
            matches!(err, Error::Schema { ref key, ref message } if key == "dual" && message == "unit must be self-dual")
        );
    }

    #[test]
    fn ragged_dual_is_rejected() {
        let mut p = trivial_parts();
        p.dual = vec![0, 0];
        assert!(
            matches!(CategoryData::from_parts(p), Err(Error::Schema { ref key, .. }) if key == "dual")
        );
    }

    #[test]
    fn non_involutive_dual_is_rejected() {
        let mut p = trivial_parts();
        p.labels = vec!["1".into(), "a".into(), "b".into()];
        p.dual = vec![0, 2, 2];
        p.pivotal = vec![(0, ONE), (1, ONE), (2, ONE)];
        let err = CategoryData::from_parts(p).unwrap_err();
        assert!(matches!(err, Error::Schema { ref key, .. } if key == "dual"));
    }

    #[test]
    fn missing_pivotal_names_key() {
        let mut p = trivial_parts();
        p.pivotal.clear();
        assert!(
            matches!(CategoryData::from_parts(p), Err(Error::Schema { ref key, .. }) if key == "pivotal")
        );
    }

    #[test]
    fn inadmissible_f_entry_is_rejected() {
        let mut p = trivial_parts();
        p.labels.push("g".into());
        p.dual = vec![0, 1];
        p.pivotal.push((1, ONE));
        p.fusion = vec![[0, 0, 0], [0, 1, 1], [1, 0, 1], [1, 1, 0]];
        p.f.push(([1, 1, 1, 0, 0, 0], ONE));
        assert!(
            matches!(CategoryData::from_parts(p), Err(Error::Schema { ref key, .. }) if key == "F")
        );
    }

    #[test]
    fn trivial_category_dims() {
        let cat = CategoryData::from_parts(trivial_parts()).unwrap();
        assert_eq!(cat.n_labels(), 1);
        assert_eq!(cat.dim(0), ONE);
        assert_eq!(cat.global_dim().unwrap(), ONE);
        assert_eq!(cat.quantum_dim(&ObjectExpr::unit()), ONE);
    }

    #[test]
    fn fibonacci_dims() {
        let cat = catalog::catalog("fibonacci").unwrap();
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((cat.dim(1) - Scalar::new(phi, 0.0)).norm() < 1e-12);
        // positive root of d^2 = d + 1
        assert!((cat.dim(1) * cat.dim(1) - cat.dim(1) - ONE).norm() < 1e-12);
        let g = cat.global_dim().unwrap();
        assert!((g - Scalar::new((5.0 + 5f64.sqrt()) / 2.0, 0.0)).norm() < 1e-12);
        let tt = ObjectExpr::word(vec![1, 1]);
        assert!((cat.quantum_dim(&tt) - Scalar::new(phi * phi, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn ising_global_dim_is_four() {
        let cat = catalog::catalog("ising").unwrap();
        assert!((cat.global_dim().unwrap() - Scalar::new(4.0, 0.0)).norm() < 1e-12);
        assert!((cat.dim(1) - Scalar::new(2f64.sqrt(), 0.0)).norm() < 1e-12);
    }

    #[test]
    fn vec_z2_dims_are_one() {
        let cat = catalog::catalog("vec_z2_sym").unwrap();
        assert!((cat.dim(1) - ONE).norm() < 1e-15);
    }

    #[test]
    fn roundtrip_through_parts() {
        for name in catalog::NAMES {
            let cat = catalog::catalog(name).unwrap();
            let again = CategoryData::from_parts(cat.to_parts()).unwrap();
            assert_eq!(cat, again, "{name}");
        }
    }
}
