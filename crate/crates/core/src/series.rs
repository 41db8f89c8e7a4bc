//! Truncated power series in a grading variable `t` whose coefficients are
//! polynomials in `x` (the class of `O(1)`) and `theta` (the pulled-back theta
//! divisor) on a symmetric product `C^d`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("binomial coefficient with negative lower index {0}")]
    NegativeLowerIndex(i64),
    #[error("truncation order {order} is below the requested degree {needed}")]
    OrderTooLow { order: usize, needed: usize },
    #[error("series has a nonzero constant term")]
    NonzeroConstantTerm,
}

/// Generalized binomial coefficient `n (n-1) ... (n-k+1) / k!` for any
/// integer `n`.
pub fn binomial(n: i64, k: i64) -> Result<BigInt, SeriesError> {
    if k < 0 {
        return Err(SeriesError::NegativeLowerIndex(k));
    }
    Ok(binomial_big(&BigInt::from(n), k as u64))
}

pub(crate) fn binomial_big(n: &BigInt, k: u64) -> BigInt {
    // Each partial product n(n-1)...(n-i)/(i+1)! is itself a binomial, so the
    // running division is exact.
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - BigInt::from(i);
        acc /= BigInt::from(i + 1);
    }
    acc
}

pub(crate) fn factorial(n: u64) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

/// Polynomial in `x` and `theta` with rational coefficients, keyed by
/// `(x exponent, theta exponent)`. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default, Hash)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl BiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn x() -> Self {
        Self::monomial(1, 0, Rational::one())
    }

    pub fn theta() -> Self {
        Self::monomial(0, 1, Rational::one())
    }

    /// `c * x^i * theta^j`.
    pub fn monomial(i: u32, j: u32, c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(i, j, c);
        p
    }

    fn add_term(&mut self, i: u32, j: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((i, j)).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: u32, j: u32) -> Rational {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Rational::zero)
    }

    /// Nonzero terms in ascending `(x exponent, theta exponent)` order.
    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &Rational)> {
        self.terms.iter().map(|(&k, v)| (k, v))
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(0, 0)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        BiPoly { terms: self.terms.iter().map(|(&k, v)| (k, v * c)).collect() }
    }

    /// True when every monomial has total degree `m` (the zero polynomial is
    /// homogeneous of every degree).
    pub fn is_homogeneous(&self, m: u32) -> bool {
        self.terms.keys().all(|&(i, j)| i + j == m)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: Self) -> BiPoly {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, c.clone());
        }
        out
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: Self) -> BiPoly {
        self + &(-rhs)
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly { terms: self.terms.iter().map(|(&k, v)| (k, -v)).collect() }
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: Self) -> BiPoly {
        let mut out = BiPoly::zero();
        for (&(i1, j1), a) in &self.terms {
            for (&(i2, j2), b) in &rhs.terms {
                out.add_term(i1 + i2, j1 + j2, a * b);
            }
        }
        out
    }
}

impl fmt::Display for BiPoly {
    /// Terms in ascending `(x, theta)` exponent order, e.g. `-x - theta`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (&(i, j), c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            if n == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors = Vec::new();
            if !mag.is_one() || (i == 0 && j == 0) {
                factors.push(mag.to_string());
            }
            match i {
                0 => {}
                1 => factors.push("x".into()),
                _ => factors.push(format!("x^{i}")),
            }
            match j {
                0 => {}
                1 => factors.push("theta".into()),
                _ => factors.push(format!("theta^{j}")),
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

/// `sum_{m=0}^{order} coeffs[m] t^m`, modulo `t^{order+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    coeffs: Vec<BiPoly>,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        TruncatedSeries { coeffs: vec![BiPoly::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(BiPoly::one(), order)
    }

    pub fn constant(c: BiPoly, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// `c * t^m`, which is zero when `m > order`.
    pub fn monomial(c: BiPoly, m: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if m <= order {
            s.coeffs[m] = c;
        }
        s
    }

    /// Builds a series from its `t`-coefficients; the order is
    /// `coeffs.len() - 1`.
    pub fn from_coeffs(coeffs: Vec<BiPoly>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series needs at least the t^0 coefficient");
        TruncatedSeries { coeffs }
    }

    /// Univariate series with rational constant coefficients.
    pub fn from_rationals(coeffs: &[Rational]) -> Self {
        Self::from_coeffs(coeffs.iter().cloned().map(BiPoly::constant).collect())
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BiPoly] {
        &self.coeffs
    }

    /// The `t^m` coefficient.
    pub fn coeff_t(&self, m: usize) -> Result<&BiPoly, SeriesError> {
        self.coeffs.get(m).ok_or(SeriesError::OrderTooLow { order: self.order(), needed: m })
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut coeffs: Vec<_> = self.coeffs.iter().take(order + 1).cloned().collect();
        coeffs.resize(order + 1, BiPoly::zero());
        TruncatedSeries { coeffs }
    }

    pub fn scale(&self, c: &BiPoly) -> Self {
        TruncatedSeries { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Replaces `t` by `-t`.
    pub fn negate_variable(&self) -> Self {
        let coeffs =
            self.coeffs.iter().enumerate().map(|(m, c)| if m % 2 == 1 { -c } else { c.clone() }).collect();
        TruncatedSeries { coeffs }
    }

    /// Every `t^m` coefficient is homogeneous of total degree `m`.
    pub fn is_graded(&self) -> bool {
        self.coeffs.iter().enumerate().all(|(m, c)| c.is_homogeneous(m as u32))
    }

    fn check_no_constant(&self) -> Result<(), SeriesError> {
        if self.coeffs[0].is_zero() {
            Ok(())
        } else {
            Err(SeriesError::NonzeroConstantTerm)
        }
    }

    /// `(1 + self)^a` through the generalized binomial series. `self` must
    /// have zero constant term.
    pub fn one_plus_pow(&self, a: i64) -> Result<Self, SeriesError> {
        self.check_no_constant()?;
        let order = self.order();
        let a = BigInt::from(a);
        let mut out = Self::zero(order);
        let mut power = Self::one(order);
        // s^k vanishes below t^k, so k <= order suffices.
        for k in 0..=order as u64 {
            let c = Rational::from_integer(binomial_big(&a, k));
            out = &out + &power.scale(&BiPoly::constant(c));
            power = &power * self;
        }
        Ok(out)
    }

    /// `exp(self)`; `self` must have zero constant term.
    pub fn exp(&self) -> Result<Self, SeriesError> {
        self.check_no_constant()?;
        let order = self.order();
        let mut out = Self::zero(order);
        let mut power = Self::one(order);
        for k in 0..=order as u64 {
            let c = Rational::new(BigInt::one(), factorial(k));
            out = &out + &power.scale(&BiPoly::constant(c));
            power = &power * self;
        }
        Ok(out)
    }

    /// `self(inner(t))`, with `inner` having zero constant term. The result
    /// keeps the order of `inner`.
    pub fn compose(&self, inner: &Self) -> Result<Self, SeriesError> {
        inner.check_no_constant()?;
        let order = inner.order();
        // Horner: f_0 + inner (f_1 + inner (f_2 + ...))
        let mut acc = Self::zero(order);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &Self::constant(c.clone(), order);
        }
        Ok(acc)
    }
}

fn combine(
    a: &TruncatedSeries,
    b: &TruncatedSeries,
    f: impl Fn(&BiPoly, &BiPoly) -> BiPoly,
) -> TruncatedSeries {
    let order = a.order().min(b.order());
    TruncatedSeries { coeffs: (0..=order).map(|m| f(&a.coeffs[m], &b.coeffs[m])).collect() }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: Self) -> TruncatedSeries {
        combine(self, rhs, |a, b| a + b)
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: Self) -> TruncatedSeries {
        combine(self, rhs, |a, b| a - b)
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        TruncatedSeries { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    /// Cauchy product, truncated at the smaller of the two orders.
    fn mul(self, rhs: Self) -> TruncatedSeries {
        let order = self.order().min(rhs.order());
        let mut coeffs = vec![BiPoly::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(order + 1 - i) {
                if !b.is_zero() {
                    coeffs[i + j] = &coeffs[i + j] + &(a * b);
                }
            }
        }
        TruncatedSeries { coeffs }
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (m, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match m {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*t")?,
                _ => write!(f, "({c})*t^{m}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(t^{})", self.order() + 1)
    }
}

/// `(1 + t c)^a` modulo `t^{order+1}`.
pub fn binom_pow(c: &BiPoly, a: i64, order: usize) -> TruncatedSeries {
    TruncatedSeries::monomial(c.clone(), 1, order).one_plus_pow(a).expect("t*c has no constant term")
}

/// `exp(t c)` modulo `t^{order+1}`.
pub fn exp_series(c: &BiPoly, order: usize) -> TruncatedSeries {
    TruncatedSeries::monomial(c.clone(), 1, order).exp().expect("t*c has no constant term")
}

/// Both sides of the substitution identity
/// `[(1+xt)^a f(-t/(1+xt))]_{t^b} = [(1-xt)^{b-a-1} f(-t)]_{t^b}`
/// as polynomials in `x` (and `theta`, if `f` involves it).
pub fn substitute_acgh(f: &TruncatedSeries, a: i64, b: usize) -> Result<(BiPoly, BiPoly), SeriesError> {
    if f.order() < b {
        return Err(SeriesError::OrderTooLow { order: f.order(), needed: b });
    }
    let f = f.truncate(b);
    let x = BiPoly::x();

    let inner = &TruncatedSeries::monomial(-&BiPoly::one(), 1, b) * &binom_pow(&x, -1, b);
    let lhs = &binom_pow(&x, a, b) * &f.compose(&inner)?;

    let rhs = &binom_pow(&-&x, b as i64 - a - 1, b) * &f.negate_variable();

    Ok((lhs.coeff_t(b)?.clone(), rhs.coeff_t(b)?.clone()))
}

/// Degree of `p` on the fundamental class of `C^d` for a curve of genus `g`,
/// using `theta^j x^{d-j} = j! * C(g, j)`.
pub fn eval_symmetric_product(p: &BiPoly, d: u32, g: u32) -> Rational {
    p.terms()
        .filter(|&((i, j), _)| i + j == d)
        .map(|((_, j), c)| {
            let weight = factorial(j as u64) * binomial_big(&BigInt::from(g), j as u64);
            c * Rational::from_integer(weight)
        })
        .sum()
}
