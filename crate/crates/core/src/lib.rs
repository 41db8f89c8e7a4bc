//! Exact arithmetic for the combinatorial side of Seiberg-Witten theory on
//! Kahler surfaces.
//!
//! * [`lattice`]: intersection lattices, reflections in spheres,
//!   characteristic vectors, signatures and chambers.
//! * [`series`]: truncated power series in `t` over `Q[x, theta]` and
//!   evaluation on symmetric products of curves.
//! * [`surface`]: numerical invariants of a surface and virtual dimensions.
//! * [`elliptic`]: multiplicities of vertical bundles on elliptic surfaces,
//!   the blow-up correction, and recovery of multiple-fiber multiplicities.
//! * [`basic_classes`]: candidate basic classes and the `(-1)`-sphere
//!   equation.
//!
//! Everything is exact; there is no floating point anywhere in the crate.

#![allow(clippy::needless_range_loop)]

pub mod basic_classes;
pub mod elliptic;
pub mod lattice;
pub mod series;
pub mod surface;

pub use num_bigint::BigInt;
pub use num_rational::BigRational as Rational;

pub use basic_classes::{BasicClassCandidate, MinusOneSphere, SphereSolution, SurfaceModel};
pub use elliptic::{EllipticSurface, ExpectedDivisibilities, RecoveryInput, VerticalBundle};
pub use lattice::{ChamberPoint, IntersectionLattice, LatticeVector, Signature};
pub use series::{BiPoly, TruncatedSeries};
pub use surface::{DerivedInvariants, SurfaceInvariants};

/// Integer `n` as an exact rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Exact fraction `n / d`; panics on `d == 0`.
pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}
