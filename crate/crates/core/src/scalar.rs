//! Scalars, matrices and tolerance policy.

use nalgebra::DMatrix;
use num_complex::Complex;
use num_traits::Float;

use crate::{Error, Result};

/// The ground field, realized as complex doubles.
pub type Scalar = Complex<f64>;

/// Dense complex matrix used for every sector block.
pub type CMatrix = DMatrix<Scalar>;

pub const ONE: Scalar = Scalar::new(1.0, 0.0);
pub const ZERO: Scalar = Scalar::new(0.0, 0.0);
pub const I: Scalar = Scalar::new(0.0, 1.0);

#[inline]
pub fn real(x: f64) -> Scalar {
    Scalar::new(x, 0.0)
}

/// `exp(i * theta)`.
#[inline]
pub fn phase(theta: f64) -> Scalar {
    Scalar::new(Float::cos(theta), Float::sin(theta))
}

/// Principal square root.
#[inline]
pub fn sqrt(z: Scalar) -> Scalar {
    z.sqrt()
}

#[inline]
pub fn close(a: Scalar, b: Scalar, eps: f64) -> bool {
    (a - b).norm() < eps
}

/// Thresholds used for all floating comparisons.
///
/// `eps_structural` bounds axiom residuals (pentagon, hexagon, pivotal data),
/// `eps_identity` bounds comparisons of composites against identities.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ToleranceCfg {
    pub eps_structural: f64,
    pub eps_identity: f64,
}

impl Default for ToleranceCfg {
    fn default() -> Self {
        ToleranceCfg {
            eps_structural: 1e-10,
            eps_identity: 1e-9,
        }
    }
}

impl ToleranceCfg {
    pub fn new(eps_structural: f64, eps_identity: f64) -> Result<Self> {
        let cfg = ToleranceCfg {
            eps_structural,
            eps_identity,
        };
        cfg.check()?;
        Ok(cfg)
    }

    pub fn check(&self) -> Result<()> {
        let ok = self.eps_structural > 0.0
            && self.eps_structural <= self.eps_identity
            && self.eps_identity < 1.0
            && self.eps_structural.is_finite();
        if ok {
            Ok(())
        } else {
            Err(Error::Tolerance(alloc::format!(
                "need 0 < eps_structural ({}) <= eps_identity ({}) < 1",
                self.eps_structural,
                self.eps_identity
            )))
        }
    }
}
