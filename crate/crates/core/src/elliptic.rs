//! Elliptic surfaces over a curve of genus `g`: divisibility of the canonical
//! class, Seiberg-Witten multiplicities of vertical twisting bundles, the
//! blow-up correction, and recovery of two multiple-fiber multiplicities from
//! divisibility data.
//!
//! Multiplicities are normalized so that the trivial bundle on a surface with
//! `chi = 1, g = 0` has multiplicity `+1`. Reversing the orientation of `H^+`
//! changes signs globally and nothing else.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::series::{binom_pow, binomial_big, eval_symmetric_product, BiPoly, SeriesError, TruncatedSeries};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EllipticError {
    #[error("multiple fiber multiplicity must be at least 2, got {0}")]
    FiberMultiplicity(u32),
    #[error("fiber coefficient a_{index} = {value} outside 0 <= a < {multiplicity}")]
    FiberCoefficient { index: usize, value: i64, multiplicity: u32 },
    #[error("{got} fiber coefficients for {expected} multiple fibers")]
    FiberCount { expected: usize, got: usize },
    #[error("base degree d = {0} is negative")]
    NegativeDegree(i64),
    #[error("canonical divisibility {0} is not an integer; input is inconsistent")]
    NonIntegralDivisibility(Rational),
    #[error("divisibility d = {0} < 0: rational surface, outside the kappa >= 0 range")]
    NegativeDivisibility(i64),
    #[error("second divisibility d2 = {d2} must be smaller than d = {d}")]
    SecondDivisibility { d: i64, d2: i64 },
    #[error("no exceptional-table row for p_g = {p_g}, gcd = {gcd}, d = {d}")]
    NoTableMatch { p_g: u32, gcd: u64, d: i64 },
    #[error("recovered {what} is not an integer; input is inconsistent")]
    NonIntegralRecovery { what: &'static str },
    #[error("recovered (p, q) = ({p}, {q}) is inconsistent with the input: {reason}")]
    InconsistentRecovery { p: i64, q: i64, reason: String },
    #[error("series multiplicity {0} is not an integer")]
    NonIntegralMultiplicity(Rational),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

#[derive(Deserialize)]
struct EllipticRecord {
    g: u32,
    chi: u32,
    #[serde(default)]
    fibers: Vec<u32>,
}

/// Elliptic fibration `X -> C` with base genus `g`, holomorphic Euler
/// characteristic `chi`, and multiple fibers of the given multiplicities.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "EllipticRecord")]
pub struct EllipticSurface {
    pub g: u32,
    pub chi: u32,
    pub fibers: Vec<u32>,
}

impl TryFrom<EllipticRecord> for EllipticSurface {
    type Error = EllipticError;
    fn try_from(r: EllipticRecord) -> Result<Self, EllipticError> {
        EllipticSurface::new(r.g, r.chi, r.fibers)
    }
}

/// Twisting bundle `O(pi^* D + sum a_i F_i)` with `deg D = base_degree`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VerticalBundle {
    pub base_degree: i64,
    pub fiber_coeffs: Vec<i64>,
}

impl EllipticSurface {
    pub fn new(g: u32, chi: u32, fibers: Vec<u32>) -> Result<Self, EllipticError> {
        if let Some(&p) = fibers.iter().find(|&&p| p < 2) {
            return Err(EllipticError::FiberMultiplicity(p));
        }
        Ok(EllipticSurface { g, chi, fibers })
    }

    pub fn check_bundle(&self, bundle: &VerticalBundle) -> Result<(), EllipticError> {
        if bundle.fiber_coeffs.len() != self.fibers.len() {
            return Err(EllipticError::FiberCount {
                expected: self.fibers.len(),
                got: bundle.fiber_coeffs.len(),
            });
        }
        for (index, (&a, &p)) in bundle.fiber_coeffs.iter().zip(&self.fibers).enumerate() {
            if a < 0 || a >= p as i64 {
                return Err(EllipticError::FiberCoefficient { index, value: a, multiplicity: p });
            }
        }
        Ok(())
    }

    /// Multiplicity of a vertical bundle. The fiber coefficients do not enter:
    /// the moduli space is `C^d` for every choice of them.
    pub fn multiplicity(&self, bundle: &VerticalBundle) -> Result<BigInt, EllipticError> {
        self.check_bundle(bundle)?;
        Ok(sw_mult_closed(self.chi as i64, self.g as i64, bundle.base_degree))
    }

    /// Oriented divisibility of `K_X` in units of the primitive class
    /// `F / lcm(p_i)`.
    pub fn canonical_divisibility(&self) -> Result<i64, EllipticError> {
        general_divisibility(self)
    }
}

/// `((p_g + 1) p q - p - q) / gcd(p, q)`: divisibility of `K_X` for the
/// elliptic surface over `P^1` with two multiple fibers `p, q`.
pub fn divisibility(p: u64, q: u64, p_g: u32) -> i64 {
    assert!(p >= 1 && q >= 1, "multiplicities must be positive");
    let (p, q) = (p as i64, q as i64);
    let gcd = p.gcd(&q);
    let num = (p_g as i64 + 1) * p * q - p - q;
    assert_eq!(num % gcd, 0, "numerator {num} not divisible by gcd {gcd}");
    num / gcd
}

/// `((2g - 2 + chi) + sum (p_i - 1)/p_i) * lcm(p_i)`.
pub fn general_divisibility(surf: &EllipticSurface) -> Result<i64, EllipticError> {
    let lcm = surf.fibers.iter().fold(1i64, |acc, &p| acc.lcm(&(p as i64)));
    let mut total = Rational::from_integer(BigInt::from(2 * surf.g as i64 - 2 + surf.chi as i64));
    for &p in &surf.fibers {
        total += Rational::new(BigInt::from(p - 1), BigInt::from(p));
    }
    let scaled = total * Rational::from_integer(BigInt::from(lcm));
    if !scaled.is_integer() {
        return Err(EllipticError::NonIntegralDivisibility(scaled));
    }
    Ok(i64::try_from(scaled.to_integer()).expect("divisibility fits in i64"))
}

/// Closed-form multiplicity of `O(pi^* D + sum a_i F_i)` with `deg D = d`.
pub fn sw_mult_closed(chi: i64, g: i64, d: i64) -> BigInt {
    if d < 0 {
        return BigInt::zero();
    }
    let sign = |k: i64| if k % 2 == 0 { BigInt::one() } else { -BigInt::one() };
    if chi + g - 2 >= 0 {
        sign(d) * binomial_big(&BigInt::from(chi + 2 * g - 2), d as u64)
    } else {
        (0..=d)
            .map(|j| {
                sign(j)
                    * binomial_big(&BigInt::from(1 - g - chi + d - j), (d - j) as u64)
                    * binomial_big(&BigInt::from(g), j as u64)
            })
            .sum()
    }
}

/// `(1 + tx)^{d + 1 - g - chi + extra} * exp(-t theta / (1 + tx))` modulo
/// `t^{order + 1}`: the inverse index class times the tangent class of `C^d`,
/// optionally twisted by `(1 + tx)^extra`.
fn multiplicity_series(chi: i64, g: i64, d: i64, extra: i64, order: usize) -> TruncatedSeries {
    let x = BiPoly::x();
    let theta_over = &TruncatedSeries::monomial(-&BiPoly::theta(), 1, order) * &binom_pow(&x, -1, order);
    let tangent_exp = theta_over.exp().expect("argument has no constant term");
    let series = &binom_pow(&x, d + 1 - g - chi + extra, order) * &tangent_exp;
    debug_assert!(series.is_graded());
    series
}

fn evaluate_integral(value: Rational) -> Result<BigInt, EllipticError> {
    if value.is_integer() {
        Ok(value.to_integer())
    } else {
        Err(EllipticError::NonIntegralMultiplicity(value))
    }
}

/// Multiplicity computed from characteristic classes on `C^d`, without
/// the power-series substitution that leads to the closed form.
pub fn sw_mult_series(chi: i64, g: i64, d: i64) -> Result<BigInt, EllipticError> {
    if d < 0 {
        return Err(EllipticError::NegativeDegree(d));
    }
    let order = d as usize;
    let series = multiplicity_series(chi, g, d, 0, order);
    let top = series.coeff_t(order)?;
    evaluate_integral(eval_symmetric_product(top, d as u32, g as u32))
}

/// Real virtual dimension of the blown-up twisting bundle `L(aE)`, given
/// `L.(L - K)` on the original surface.
pub fn blowup_target_dimension(l_dot_l_minus_k: i64, a: i64) -> i64 {
    l_dot_l_minus_k - a * (a - 1)
}

/// Multiplicity of `L(aE)` on the blow-up, for vertical `L` of base degree `d`.
///
/// The class is twisted by `(1 + tx)^{a(a-1)/2}` and read off in the degree
/// matching real dimension `-a(a-1)`, which lies above the top degree of `C^d`
/// once `a >= 2`.
pub fn sw_mult_blowup(chi: i64, g: i64, d: i64, a: i64) -> Result<BigInt, EllipticError> {
    assert!(a >= 0, "blow-up coefficient must be non-negative");
    if d < 0 {
        return Ok(BigInt::zero());
    }
    let shift = a * (a - 1) / 2;
    debug_assert_eq!(-2 * shift, blowup_target_dimension(0, a));
    let order = (d + shift) as usize;
    let series = multiplicity_series(chi, g, d, shift, order);
    let top = series.coeff_t(order)?;
    evaluate_integral(eval_symmetric_product(top, d as u32, g as u32))
}

/// One row of the table of multiplicity pairs for which `+-K_X` are the only
/// classes on their ray.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExceptionalRow {
    pub p_g: u32,
    pub p: u64,
    pub q: u64,
    pub gcd: u64,
    pub d: i64,
    pub kind: Option<&'static str>,
}

pub const EXCEPTIONAL_TABLE: [ExceptionalRow; 8] = [
    ExceptionalRow { p_g: 0, p: 2, q: 2, gcd: 2, d: 0, kind: Some("Enriques") },
    ExceptionalRow { p_g: 0, p: 2, q: 3, gcd: 1, d: 1, kind: None },
    ExceptionalRow { p_g: 0, p: 2, q: 4, gcd: 2, d: 1, kind: None },
    ExceptionalRow { p_g: 0, p: 2, q: 5, gcd: 1, d: 3, kind: None },
    ExceptionalRow { p_g: 0, p: 3, q: 3, gcd: 3, d: 1, kind: None },
    ExceptionalRow { p_g: 0, p: 3, q: 4, gcd: 1, d: 5, kind: None },
    ExceptionalRow { p_g: 1, p: 1, q: 1, gcd: 1, d: 0, kind: Some("K3") },
    ExceptionalRow { p_g: 1, p: 1, q: 2, gcd: 1, d: 1, kind: None },
];

/// Divisibility of `K_X` and, when it exists, of the next class `-K_X + 2F_q`
/// on the same ray.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExpectedDivisibilities {
    pub d: i64,
    pub d2: Option<i64>,
}

pub fn expected_divisibilities(p: u64, q: u64, p_g: u32) -> ExpectedDivisibilities {
    let d = divisibility(p, q, p_g);
    let gcd = p.gcd(&q) as i64;
    let p = p as i64;
    let d2 = (d * gcd >= 2 * p).then(|| d - 2 * p / gcd);
    ExpectedDivisibilities { d, d2 }
}

/// Diffeomorphism-invariant data from which `(p, q)` is recovered.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RecoveryInput {
    pub p_g: u32,
    /// Order of the fundamental group, `gcd(p, q)`.
    pub gcd_pq: u64,
    pub d: i64,
    #[serde(default)]
    pub d2: Option<i64>,
}

impl RecoveryInput {
    pub fn from_expected(p_g: u32, gcd_pq: u64, e: ExpectedDivisibilities) -> Self {
        RecoveryInput { p_g, gcd_pq, d: e.d, d2: e.d2 }
    }
}

pub fn recover_multiplicities(input: &RecoveryInput) -> Result<(u64, u64), EllipticError> {
    let RecoveryInput { p_g, gcd_pq, d, d2 } = *input;
    if d < 0 {
        return Err(EllipticError::NegativeDivisibility(d));
    }
    let Some(d2) = d2 else {
        return EXCEPTIONAL_TABLE
            .iter()
            .find(|r| r.p_g == p_g && r.gcd == gcd_pq && r.d == d)
            .map(|r| (r.p, r.q))
            .ok_or(EllipticError::NoTableMatch { p_g, gcd: gcd_pq, d });
    };
    if d2 >= d {
        return Err(EllipticError::SecondDivisibility { d, d2 });
    }
    let gcd = gcd_pq as i64;
    let twice_p = gcd * (d - d2);
    if twice_p % 2 != 0 {
        return Err(EllipticError::NonIntegralRecovery { what: "p" });
    }
    let p = twice_p / 2;
    let denom = (p_g as i64 + 1) * p - 1;
    if p < 2 || denom <= 0 {
        return Err(EllipticError::InconsistentRecovery { p, q: 0, reason: "p must be at least 2".into() });
    }
    let num = d * gcd + p;
    if num % denom != 0 {
        return Err(EllipticError::NonIntegralRecovery { what: "q" });
    }
    let q = num / denom;
    let fail = |reason: String| EllipticError::InconsistentRecovery { p, q, reason };
    if q < p {
        return Err(fail("expected p <= q".into()));
    }
    let (pu, qu) = (p as u64, q as u64);
    if pu.gcd(&qu) != gcd_pq {
        return Err(fail(format!("gcd(p, q) = {} but gcd = {gcd_pq} was given", pu.gcd(&qu))));
    }
    let expected = expected_divisibilities(pu, qu, p_g);
    if expected.d != d || expected.d2 != Some(d2) {
        return Err(fail(format!("these multiplicities give (d, d2) = ({}, {:?})", expected.d, expected.d2)));
    }
    Ok((pu, qu))
}
