//! Morphisms as per-sector block matrices.

use alloc::format;
use alloc::vec::Vec;

use crate::category::FusionRing;
use crate::linalg;
use crate::object::ObjectExpr;
use crate::scalar::{CMatrix, Scalar};
use crate::{Error, Result};

/// `f: source → target`, stored as `blocks[c]: Hom(c, source) → Hom(c, target)`
/// in fusion-tree coordinates, one block per simple label `c`.
#[derive(Clone, Debug, PartialEq)]
pub struct Morphism {
    source: ObjectExpr,
    target: ObjectExpr,
    blocks: Vec<CMatrix>,
}

impl Morphism {
    /// Checks every block against the sector dimensions.
    pub fn new(
        ring: &FusionRing,
        source: ObjectExpr,
        target: ObjectExpr,
        blocks: Vec<CMatrix>,
    ) -> Result<Self> {
        if blocks.len() != ring.n_labels() {
            return Err(Error::Shape(format!(
                "expected {} sector blocks, found {}",
                ring.n_labels(),
                blocks.len()
            )));
        }
        for (c, b) in blocks.iter().enumerate() {
            let rows = target.sector_dim(ring, c);
            let cols = source.sector_dim(ring, c);
            if b.nrows() != rows || b.ncols() != cols {
                return Err(Error::Shape(format!(
                    "sector {c}: block is {}x{}, expected {rows}x{cols}",
                    b.nrows(),
                    b.ncols()
                )));
            }
        }
        Ok(Morphism {
            source,
            target,
            blocks,
        })
    }

    pub(crate) fn from_blocks_unchecked(
        source: ObjectExpr,
        target: ObjectExpr,
        blocks: Vec<CMatrix>,
    ) -> Self {
        Morphism {
            source,
            target,
            blocks,
        }
    }

    pub fn identity(ring: &FusionRing, x: &ObjectExpr) -> Self {
        let blocks = (0..ring.n_labels())
            .map(|c| {
                let d = x.sector_dim(ring, c);
                CMatrix::identity(d, d)
            })
            .collect();
        Morphism {
            source: x.clone(),
            target: x.clone(),
            blocks,
        }
    }

    pub fn zero(ring: &FusionRing, source: &ObjectExpr, target: &ObjectExpr) -> Self {
        let blocks = (0..ring.n_labels())
            .map(|c| CMatrix::zeros(target.sector_dim(ring, c), source.sector_dim(ring, c)))
            .collect();
        Morphism {
            source: source.clone(),
            target: target.clone(),
            blocks,
        }
    }

    /// Random morphism with entries uniform in the unit square.
    pub fn random(
        ring: &FusionRing,
        source: &ObjectExpr,
        target: &ObjectExpr,
        rng: &mut rand_chacha::ChaCha8Rng,
    ) -> Self {
        let blocks = (0..ring.n_labels())
            .map(|c| {
                linalg::random_matrix(rng, target.sector_dim(ring, c), source.sector_dim(ring, c))
            })
            .collect();
        Morphism {
            source: source.clone(),
            target: target.clone(),
            blocks,
        }
    }

    pub fn source(&self) -> &ObjectExpr {
        &self.source
    }

    pub fn target(&self) -> &ObjectExpr {
        &self.target
    }

    pub fn blocks(&self) -> &[CMatrix] {
        &self.blocks
    }

    pub fn block(&self, c: usize) -> &CMatrix {
        &self.blocks[c]
    }

    pub fn block_mut(&mut self, c: usize) -> &mut CMatrix {
        &mut self.blocks[c]
    }

    pub fn is_endo(&self) -> bool {
        self.source == self.target
    }

    /// `self ∘ f`.
    pub fn compose(&self, f: &Morphism) -> Result<Morphism> {
        if f.target != self.source {
            return Err(Error::Composition(format!(
                "target {:?} of the first factor does not match source {:?}",
                f.target.summands(),
                self.source.summands()
            )));
        }
        let mut blocks = Vec::with_capacity(self.blocks.len());
        for (c, (g, h)) in self.blocks.iter().zip(&f.blocks).enumerate() {
            if g.ncols() != h.nrows() {
                return Err(Error::Composition(format!(
                    "sector {c}: {}x{} after {}x{}",
                    g.nrows(),
                    g.ncols(),
                    h.nrows(),
                    h.ncols()
                )));
            }
            blocks.push(g * h);
        }
        Ok(Morphism {
            source: f.source.clone(),
            target: self.target.clone(),
            blocks,
        })
    }

    fn zip_with(
        &self,
        other: &Morphism,
        op: impl Fn(&CMatrix, &CMatrix) -> CMatrix,
    ) -> Result<Morphism> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::Shape(
                "adding morphisms between different objects".into(),
            ));
        }
        Ok(Morphism {
            source: self.source.clone(),
            target: self.target.clone(),
            blocks: self
                .blocks
                .iter()
                .zip(&other.blocks)
                .map(|(a, b)| op(a, b))
                .collect(),
        })
    }

    pub fn add(&self, other: &Morphism) -> Result<Morphism> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Morphism) -> Result<Morphism> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, s: Scalar) -> Morphism {
        Morphism {
            source: self.source.clone(),
            target: self.target.clone(),
            blocks: self.blocks.iter().map(|b| b * s).collect(),
        }
    }

    /// Max over sectors of the spectral norm.
    pub fn norm(&self) -> f64 {
        self.blocks
            .iter()
            .map(linalg::spectral_norm)
            .fold(0.0, f64::max)
    }

    /// `‖self − other‖`, or infinity when the shapes differ.
    pub fn distance(&self, other: &Morphism) -> f64 {
        self.sub(other).map(|d| d.norm()).unwrap_or(f64::INFINITY)
    }

    /// `‖self − id‖` for an endomorphism; infinity otherwise.
    pub fn identity_defect(&self) -> f64 {
        if !self.is_endo() {
            return f64::INFINITY;
        }
        self.blocks
            .iter()
            .map(|b| linalg::spectral_norm(&(b - CMatrix::identity(b.nrows(), b.ncols()))))
            .fold(0.0, f64::max)
    }

    /// `‖self − id‖` on blocks alone, ignoring the endpoint objects; useful
    /// between objects that agree up to unit letters.
    pub fn block_identity_defect(&self) -> f64 {
        self.blocks
            .iter()
            .map(|b| {
                if b.nrows() != b.ncols() {
                    f64::INFINITY
                } else {
                    linalg::spectral_norm(&(b - CMatrix::identity(b.nrows(), b.ncols())))
                }
            })
            .fold(0.0, f64::max)
    }

    /// Inverse, sector by sector.
    pub fn inverse(&self) -> Result<Morphism> {
        let blocks = self
            .blocks
            .iter()
            .enumerate()
            .map(|(c, b)| linalg::inverse(b, &format!("inverting sector {c}")))
            .collect::<Result<Vec<_>>>()?;
        Ok(Morphism {
            source: self.target.clone(),
            target: self.source.clone(),
            blocks,
        })
    }

    /// Same blocks, relabelled endpoints. Fails when sector dimensions differ.
    pub fn retype(
        &self,
        ring: &FusionRing,
        source: ObjectExpr,
        target: ObjectExpr,
    ) -> Result<Morphism> {
        Morphism::new(ring, source, target, self.blocks.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::scalar::ONE;

    #[test]
    fn identity_is_neutral() {
        let cat = catalog::catalog("fibonacci").unwrap();
        let ring = cat.ring();
        let x = ObjectExpr::word(vec![1, 1, 1]);
        let mut rng = linalg::rng(1);
        let f = Morphism::random(ring, &x, &x, &mut rng);
        let id = Morphism::identity(ring, &x);
        assert_eq!(id.compose(&f).unwrap(), f);
        assert_eq!(f.compose(&id).unwrap(), f);
        assert_eq!(id.identity_defect(), 0.0);
    }

    #[test]
    fn composition_checks_endpoints() {
        let cat = catalog::catalog("ising").unwrap();
        let ring = cat.ring();
        let a = Morphism::identity(ring, &ObjectExpr::simple(1));
        let b = Morphism::identity(ring, &ObjectExpr::simple(2));
        assert!(matches!(a.compose(&b), Err(Error::Composition(_))));
    }

    #[test]
    fn shape_is_checked() {
        let cat = catalog::catalog("fibonacci").unwrap();
        let ring = cat.ring();
        let x = ObjectExpr::simple(1);
        let bad = alloc::vec![CMatrix::zeros(1, 1), CMatrix::zeros(1, 1)];
        assert!(Morphism::new(ring, x.clone(), x, bad).is_err());
    }

    #[test]
    fn inverse_roundtrip() {
        let cat = catalog::catalog("ising").unwrap();
        let ring = cat.ring();
        let x = ObjectExpr::word(alloc::vec![1, 1]);
        let mut rng = linalg::rng(5);
        let f = Morphism::random(ring, &x, &x, &mut rng)
            .add(&Morphism::identity(ring, &x).scale(ONE * 3.0))
            .unwrap();
        let g = f.inverse().unwrap();
        assert!(g.compose(&f).unwrap().identity_defect() < 1e-12);
    }
}
