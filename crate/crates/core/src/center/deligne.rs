//! Objects and morphisms of `C ⊠ C^bop`.

use alloc::format;
use alloc::vec::Vec;

use crate::category::FusionRing;
use crate::linalg;
use crate::morphism::Morphism;
use crate::object::ObjectExpr;
use crate::scalar::{CMatrix, Scalar};
use crate::{Error, Result};

/// `⊕_k X_k ⊠ Y_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DelignePair {
    summands: Vec<(ObjectExpr, ObjectExpr)>,
}

impl DelignePair {
    pub fn new(summands: Vec<(ObjectExpr, ObjectExpr)>) -> Self {
        DelignePair { summands }
    }

    pub fn single(x: ObjectExpr, y: ObjectExpr) -> Self {
        DelignePair {
            summands: alloc::vec![(x, y)],
        }
    }

    /// The simple object `a ⊠ b`.
    pub fn simple(a: usize, b: usize) -> Self {
        Self::single(ObjectExpr::simple(a), ObjectExpr::simple(b))
    }

    pub fn summands(&self) -> &[(ObjectExpr, ObjectExpr)] {
        &self.summands
    }

    /// `dim Hom(a ⊠ b, self) = Σ_k dim Hom(a, X_k) · dim Hom(b, Y_k)`.
    pub fn pair_dim(&self, ring: &FusionRing, a: usize, b: usize) -> usize {
        self.summands
            .iter()
            .map(|(x, y)| x.sector_dim(ring, a) * y.sector_dim(ring, b))
            .sum()
    }

    /// Offset of summand `k` inside the `(a, b)` block.
    pub fn offset(&self, ring: &FusionRing, a: usize, b: usize, k: usize) -> usize {
        self.summands[..k]
            .iter()
            .map(|(x, y)| x.sector_dim(ring, a) * y.sector_dim(ring, b))
            .sum()
    }

    /// Multiplicity of every simple `a ⊠ b`, indexed `a * n + b`.
    pub fn multiplicities(&self, ring: &FusionRing) -> Vec<usize> {
        let n = ring.n_labels();
        (0..n * n)
            .map(|ab| self.pair_dim(ring, ab / n, ab % n))
            .collect()
    }
}

/// Morphism of `C ⊠ C^bop`, one block per simple `a ⊠ b` (index `a * n + b`),
/// acting on `⊕_k Hom(a, X_k) ⊗ Hom(b, Y_k)`.
#[derive(Clone, Debug, PartialEq)]
pub struct DelMorphism {
    source: DelignePair,
    target: DelignePair,
    n: usize,
    blocks: Vec<CMatrix>,
}

impl DelMorphism {
    pub fn zero(ring: &FusionRing, source: &DelignePair, target: &DelignePair) -> Self {
        let n = ring.n_labels();
        let blocks = (0..n * n)
            .map(|ab| {
                CMatrix::zeros(
                    target.pair_dim(ring, ab / n, ab % n),
                    source.pair_dim(ring, ab / n, ab % n),
                )
            })
            .collect();
        DelMorphism {
            source: source.clone(),
            target: target.clone(),
            n,
            blocks,
        }
    }

    pub fn identity(ring: &FusionRing, x: &DelignePair) -> Self {
        let mut m = Self::zero(ring, x, x);
        for b in &mut m.blocks {
            let d = b.nrows();
            *b = CMatrix::identity(d, d);
        }
        m
    }

    /// `f ⊠ g` placed from source summand `ks` to target summand `kt`.
    pub fn elementary(
        ring: &FusionRing,
        source: &DelignePair,
        target: &DelignePair,
        ks: usize,
        kt: usize,
        f: &Morphism,
        g: &Morphism,
    ) -> Result<Self> {
        let (sx, sy) = &source.summands[ks];
        let (tx, ty) = &target.summands[kt];
        if f.source() != sx || g.source() != sy || f.target() != tx || g.target() != ty {
            return Err(Error::Shape(format!(
                "elementary tensor does not match summands {ks} -> {kt}"
            )));
        }
        let mut m = Self::zero(ring, source, target);
        let n = m.n;
        for a in 0..n {
            for b in 0..n {
                let k = linalg::kron(f.block(a), g.block(b));
                if k.nrows() == 0 || k.ncols() == 0 {
                    continue;
                }
                let ro = target.offset(ring, a, b, kt);
                let co = source.offset(ring, a, b, ks);
                m.blocks[a * n + b]
                    .view_mut((ro, co), (k.nrows(), k.ncols()))
                    .copy_from(&k);
            }
        }
        Ok(m)
    }

    pub fn source(&self) -> &DelignePair {
        &self.source
    }

    pub fn target(&self) -> &DelignePair {
        &self.target
    }

    pub fn block(&self, a: usize, b: usize) -> &CMatrix {
        &self.blocks[a * self.n + b]
    }

    pub fn compose(&self, f: &DelMorphism) -> Result<DelMorphism> {
        if f.target != self.source {
            return Err(Error::Composition(
                "Deligne morphisms do not compose".into(),
            ));
        }
        Ok(DelMorphism {
            source: f.source.clone(),
            target: self.target.clone(),
            n: self.n,
            blocks: self
                .blocks
                .iter()
                .zip(&f.blocks)
                .map(|(g, h)| g * h)
                .collect(),
        })
    }

    pub fn add(&self, other: &DelMorphism) -> Result<DelMorphism> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::Shape(
                "adding Deligne morphisms between different objects".into(),
            ));
        }
        Ok(DelMorphism {
            source: self.source.clone(),
            target: self.target.clone(),
            n: self.n,
            blocks: self
                .blocks
                .iter()
                .zip(&other.blocks)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn scale(&self, s: Scalar) -> DelMorphism {
        DelMorphism {
            source: self.source.clone(),
            target: self.target.clone(),
            n: self.n,
            blocks: self.blocks.iter().map(|b| b * s).collect(),
        }
    }

    /// Max over blocks of the spectral norm.
    pub fn norm(&self) -> f64 {
        self.blocks
            .iter()
            .map(linalg::spectral_norm)
            .fold(0.0, f64::max)
    }

    pub fn distance(&self, other: &DelMorphism) -> f64 {
        match (self.source == other.source, self.target == other.target) {
            (true, true) => self
                .blocks
                .iter()
                .zip(&other.blocks)
                .map(|(a, b)| linalg::spectral_norm(&(a - b)))
                .fold(0.0, f64::max),
            _ => f64::INFINITY,
        }
    }

    pub fn identity_defect(&self) -> f64 {
        if self.source != self.target {
            return f64::INFINITY;
        }
        self.blocks
            .iter()
            .map(|b| linalg::spectral_norm(&(b - CMatrix::identity(b.nrows(), b.ncols()))))
            .fold(0.0, f64::max)
    }
}
