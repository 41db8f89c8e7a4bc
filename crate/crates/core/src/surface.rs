//! Numerical invariants of a Kahler surface of non-negative Kodaira dimension.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{IntersectionLattice, LatticeError, LatticeVector};
use crate::{frac, rat, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error("K_min is torsion of order {order} but K_min^2 = {kmin_sq} (must be 0)")]
    TorsionWithNonzeroSquare { order: u32, kmin_sq: i64 },
    #[error("K_min^2 = {0} < 0 is not the square of a minimal model with kappa >= 0")]
    NegativeKminSquare(i64),
    #[error("signature (K^2 - 2e)/3 is not integral: K^2 = {kx_sq}, e = {e}")]
    SignatureNotIntegral { kx_sq: i64, e: i64 },
    #[error("inconsistent invariants: {0}")]
    Inconsistent(String),
    #[error("plurigenus formula needs general type, got Kodaira dimension {0}")]
    NotGeneralType(u8),
    #[error("plurigenus index must be at least 2, got {0}")]
    PlurigenusIndex(i64),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// Input invariants. Everything else is derived from these.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SurfaceInvariants {
    pub p_g: u32,
    pub q: u32,
    pub kmin_sq: i64,
    /// 0 when `K_min` is not torsion, otherwise its order.
    #[serde(default)]
    pub kmin_torsion_order: u32,
    #[serde(default)]
    pub n_exceptional: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DerivedInvariants {
    /// Holomorphic Euler characteristic `1 - q + p_g`.
    pub chi: i64,
    pub kx_sq: i64,
    /// Topological Euler characteristic.
    pub e: i64,
    pub sigma: i64,
    pub b1: i64,
    pub b2: i64,
    pub b_plus: i64,
    pub b_minus: i64,
}

impl SurfaceInvariants {
    pub fn new(p_g: u32, q: u32, kmin_sq: i64, kmin_torsion_order: u32, n_exceptional: u32) -> Self {
        SurfaceInvariants { p_g, q, kmin_sq, kmin_torsion_order, n_exceptional }
    }

    pub fn chi(&self) -> i64 {
        1 - self.q as i64 + self.p_g as i64
    }

    pub fn kx_sq(&self) -> i64 {
        self.kmin_sq - self.n_exceptional as i64
    }

    /// Noether's formula and the standard Betti number identities.
    pub fn derive(&self) -> Result<DerivedInvariants, SurfaceError> {
        if self.kmin_torsion_order > 0 && self.kmin_sq != 0 {
            return Err(SurfaceError::TorsionWithNonzeroSquare {
                order: self.kmin_torsion_order,
                kmin_sq: self.kmin_sq,
            });
        }
        let chi = self.chi();
        let kx_sq = self.kx_sq();
        let e = 12 * chi - kx_sq;
        if (kx_sq - 2 * e) % 3 != 0 {
            return Err(SurfaceError::SignatureNotIntegral { kx_sq, e });
        }
        let sigma = (kx_sq - 2 * e) / 3;
        let b1 = 2 * self.q as i64;
        let b2 = e - 2 + 2 * b1;
        let b_plus = 2 * self.p_g as i64 + 1;
        let b_minus = b2 - b_plus;
        if b_minus < 0 {
            return Err(SurfaceError::Inconsistent(format!("b_- = b_2 - b_+ = {b2} - {b_plus} < 0")));
        }
        if sigma != b_plus - b_minus {
            return Err(SurfaceError::Inconsistent(format!(
                "sigma = {sigma} but b_+ - b_- = {}",
                b_plus - b_minus
            )));
        }
        Ok(DerivedInvariants { chi, kx_sq, e, sigma, b1, b2, b_plus, b_minus })
    }

    pub fn kodaira_dimension(&self) -> Result<u8, SurfaceError> {
        if self.kmin_sq < 0 {
            return Err(SurfaceError::NegativeKminSquare(self.kmin_sq));
        }
        if self.kmin_torsion_order > 0 {
            if self.kmin_sq != 0 {
                return Err(SurfaceError::TorsionWithNonzeroSquare {
                    order: self.kmin_torsion_order,
                    kmin_sq: self.kmin_sq,
                });
            }
            return Ok(0);
        }
        Ok(if self.kmin_sq > 0 { 2 } else { 1 })
    }

    /// `P_n = n(n-1)/2 * K_min^2 + chi` for surfaces of general type.
    pub fn plurigenus(&self, n: i64) -> Result<i64, SurfaceError> {
        let kappa = self.kodaira_dimension()?;
        if kappa != 2 {
            return Err(SurfaceError::NotGeneralType(kappa));
        }
        if n < 2 {
            return Err(SurfaceError::PlurigenusIndex(n));
        }
        Ok(n * (n - 1) / 2 * self.kmin_sq + self.chi())
    }

    /// Real virtual dimension `(L^2 - (2e + 3 sigma)) / 4` of the moduli space
    /// for a structure with determinant of square `l_sq`.
    pub fn vdim_real(&self, l_sq: i64) -> Result<Rational, SurfaceError> {
        let d = self.derive()?;
        Ok(frac(l_sq - (2 * d.e + 3 * d.sigma), 4))
    }
}

/// `L . (L - K)`, the virtual dimension for the twisting bundle `L`.
pub fn vdim_twisting(
    lat: &IntersectionLattice,
    l: &LatticeVector,
    k: &LatticeVector,
) -> Result<Rational, SurfaceError> {
    Ok(lat.pair(l, &(l - k))?)
}

/// Same quantity from the determinant side: `((2L - K)^2 - K^2) / 4`.
pub fn vdim_from_determinant(
    lat: &IntersectionLattice,
    l: &LatticeVector,
    k: &LatticeVector,
) -> Result<Rational, SurfaceError> {
    let det = &l.scale(&rat(2)) - k;
    let diff = lat.square(&det)? - lat.square(k)?;
    Ok(diff / rat(4))
}
