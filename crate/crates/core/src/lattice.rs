//! Integral intersection lattices modeling `H^2(X, Z)` modulo torsion.
//!
//! Vectors carry rational coordinates so that classes such as `lambda * K_min`
//! with fractional `lambda` can be written down; operations that need an
//! integral vector say so and return [`LatticeError::NotIntegral`] otherwise.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("gram matrix must be square and non-empty (got {rows} rows, row {row} has {cols} entries)")]
    NotSquare { rows: usize, row: usize, cols: usize },
    #[error("gram matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("rank {rank} does not match gram matrix with {entries} entries")]
    RankMismatch { rank: usize, entries: usize },
    #[error("expected {expected} basis labels, got {got}")]
    LabelCount { expected: usize, got: usize },
    #[error("dimension mismatch: lattice rank {rank}, vector length {len}")]
    Dimension { rank: usize, len: usize },
    #[error("reflection axis must have square -1 or -2, got {0}")]
    BadReflectionAxis(Rational),
    #[error("vector is not integral")]
    NotIntegral,
    #[error("lattice signature is ({b_plus}, {b_minus}, {null}), expected (1, n) and non-degenerate")]
    NotHyperbolic { b_plus: usize, b_minus: usize, null: usize },
    #[error("vector is not timelike (square {0} <= 0)")]
    NotTimelike(Rational),
}

/// Coordinates of a class with respect to the lattice basis.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticeVector(Vec<Rational>);

impl LatticeVector {
    pub fn new(coords: Vec<Rational>) -> Self {
        LatticeVector(coords)
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        LatticeVector(coords.iter().map(|&c| crate::rat(c)).collect())
    }

    pub fn zero(len: usize) -> Self {
        LatticeVector(vec![Rational::zero(); len])
    }

    /// The `i`-th standard basis vector of a rank `len` lattice.
    pub fn basis(len: usize, i: usize) -> Self {
        let mut v = Self::zero(len);
        v.0[i] = Rational::one();
        v
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(Rational::is_integer)
    }

    /// Integer coordinates, if the vector is integral.
    pub fn to_integers(&self) -> Option<Vec<BigInt>> {
        self.0.iter().map(|c| c.is_integer().then(|| c.to_integer())).collect()
    }

    /// Largest positive integer dividing every coordinate; zero for the zero
    /// vector.
    pub fn divisibility(&self) -> Result<BigInt, LatticeError> {
        let ints = self.to_integers().ok_or(LatticeError::NotIntegral)?;
        Ok(ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c)))
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        LatticeVector(self.0.iter().map(|c| c * factor).collect())
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&Rational, &Rational) -> Rational) -> Self {
        assert_eq!(self.len(), other.len(), "vector length mismatch");
        LatticeVector(self.0.iter().zip(&other.0).map(|(a, b)| f(a, b)).collect())
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl Add for &LatticeVector {
    type Output = LatticeVector;
    fn add(self, rhs: Self) -> LatticeVector {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &LatticeVector {
    type Output = LatticeVector;
    fn sub(self, rhs: Self) -> LatticeVector {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Neg for &LatticeVector {
    type Output = LatticeVector;
    fn neg(self) -> LatticeVector {
        LatticeVector(self.0.iter().map(|c| -c).collect())
    }
}

impl Mul<&LatticeVector> for &Rational {
    type Output = LatticeVector;
    fn mul(self, rhs: &LatticeVector) -> LatticeVector {
        rhs.scale(self)
    }
}

/// Sylvester signature: counts of positive, negative and zero entries of any
/// diagonal form congruent to the Gram matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Signature {
    pub b_plus: usize,
    pub b_minus: usize,
    pub null: usize,
}

impl Signature {
    pub fn index(&self) -> i64 {
        self.b_plus as i64 - self.b_minus as i64
    }

    /// Non-degenerate with exactly one positive direction.
    pub fn is_hyperbolic(&self) -> bool {
        self.b_plus == 1 && self.null == 0
    }
}

/// Period point and perturbation class used to label chambers when `b_+ = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChamberPoint {
    omega: LatticeVector,
    epsilon: LatticeVector,
}

impl ChamberPoint {
    pub fn new(
        lat: &IntersectionLattice,
        omega: LatticeVector,
        epsilon: LatticeVector,
    ) -> Result<Self, LatticeError> {
        let sq = lat.square(&omega)?;
        lat.check_dim(&epsilon)?;
        if !sq.is_positive() {
            return Err(LatticeError::NotTimelike(sq));
        }
        Ok(ChamberPoint { omega, epsilon })
    }

    pub fn omega(&self) -> &LatticeVector {
        &self.omega
    }

    pub fn epsilon(&self) -> &LatticeVector {
        &self.epsilon
    }
}

/// Side of the wall `(L - epsilon) . omega = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Chamber {
    Positive,
    Negative,
}

/// Serialized form of a lattice: row-major Gram entries.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeRecord {
    pub rank: usize,
    pub gram: Vec<i64>,
    #[serde(default)]
    pub labels: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "LatticeRecord", into = "LatticeRecord")]
pub struct IntersectionLattice {
    gram: Vec<Vec<i64>>,
    labels: Vec<String>,
}

impl TryFrom<LatticeRecord> for IntersectionLattice {
    type Error = LatticeError;

    fn try_from(rec: LatticeRecord) -> Result<Self, LatticeError> {
        if rec.rank == 0 || rec.gram.len() != rec.rank * rec.rank {
            return Err(LatticeError::RankMismatch { rank: rec.rank, entries: rec.gram.len() });
        }
        let gram = rec.gram.chunks(rec.rank).map(<[i64]>::to_vec).collect();
        let labels = if rec.labels.is_empty() { default_labels(rec.rank) } else { rec.labels };
        IntersectionLattice::new(gram, labels)
    }
}

impl From<IntersectionLattice> for LatticeRecord {
    fn from(lat: IntersectionLattice) -> Self {
        LatticeRecord { rank: lat.rank(), gram: lat.gram.into_iter().flatten().collect(), labels: lat.labels }
    }
}

fn default_labels(rank: usize) -> Vec<String> {
    (0..rank).map(|i| format!("b{i}")).collect()
}

impl IntersectionLattice {
    pub fn new(gram: Vec<Vec<i64>>, labels: Vec<String>) -> Result<Self, LatticeError> {
        let n = gram.len();
        for (row, r) in gram.iter().enumerate() {
            if r.len() != n {
                return Err(LatticeError::NotSquare { rows: n, row, cols: r.len() });
            }
        }
        if n == 0 {
            return Err(LatticeError::NotSquare { rows: 0, row: 0, cols: 0 });
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if gram[i][j] != gram[j][i] {
                    return Err(LatticeError::NotSymmetric(i, j));
                }
            }
        }
        if labels.len() != n {
            return Err(LatticeError::LabelCount { expected: n, got: labels.len() });
        }
        Ok(IntersectionLattice { gram, labels })
    }

    /// Lattice with default labels `b0, b1, ...`.
    pub fn from_gram(gram: Vec<Vec<i64>>) -> Result<Self, LatticeError> {
        let labels = default_labels(gram.len());
        Self::new(gram, labels)
    }

    pub fn diagonal(entries: &[i64]) -> Self {
        let n = entries.len();
        let gram = (0..n).map(|i| (0..n).map(|j| if i == j { entries[i] } else { 0 }).collect()).collect();
        Self::from_gram(gram).expect("diagonal lattice is well formed")
    }

    /// The hyperbolic plane `[[0, 1], [1, 0]]`.
    pub fn hyperbolic() -> Self {
        Self::from_gram(vec![vec![0, 1], vec![1, 0]]).unwrap()
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let (n, m) = (self.rank(), other.rank());
        let mut gram = vec![vec![0; n + m]; n + m];
        for i in 0..n {
            gram[i][..n].copy_from_slice(&self.gram[i]);
        }
        for i in 0..m {
            gram[n + i][n..].copy_from_slice(&other.gram[i]);
        }
        let labels = self.labels.iter().chain(&other.labels).cloned().collect();
        IntersectionLattice { gram, labels }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, LatticeError> {
        if labels.len() != self.rank() {
            return Err(LatticeError::LabelCount { expected: self.rank(), got: labels.len() });
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    fn check_dim(&self, v: &LatticeVector) -> Result<(), LatticeError> {
        if v.len() != self.rank() {
            return Err(LatticeError::Dimension { rank: self.rank(), len: v.len() });
        }
        Ok(())
    }

    /// Intersection pairing `u^T G v`.
    pub fn pair(&self, u: &LatticeVector, v: &LatticeVector) -> Result<Rational, LatticeError> {
        self.check_dim(u)?;
        self.check_dim(v)?;
        let mut acc = Rational::zero();
        for (i, ui) in u.0.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            let mut row = Rational::zero();
            for (j, vj) in v.0.iter().enumerate() {
                let g = self.gram[i][j];
                if g != 0 {
                    row += vj * crate::rat(g);
                }
            }
            acc += ui * row;
        }
        Ok(acc)
    }

    pub fn square(&self, v: &LatticeVector) -> Result<Rational, LatticeError> {
        self.pair(v, v)
    }

    /// Reflection `v - 2 (v.s)/(s.s) s` in a sphere of square `-1` or `-2`.
    pub fn reflect_sphere(
        &self,
        v: &LatticeVector,
        s: &LatticeVector,
    ) -> Result<LatticeVector, LatticeError> {
        let ss = self.square(s)?;
        if ss != crate::rat(-1) && ss != crate::rat(-2) {
            return Err(LatticeError::BadReflectionAxis(ss));
        }
        let vs = self.pair(v, s)?;
        let coeff = crate::rat(2) * vs / ss;
        Ok(v - &s.scale(&coeff))
    }

    /// `v . x == x . x (mod 2)` for every basis vector `x`.
    pub fn is_characteristic(&self, v: &LatticeVector) -> Result<bool, LatticeError> {
        self.check_dim(v)?;
        let coords = v.to_integers().ok_or(LatticeError::NotIntegral)?;
        let two = BigInt::from(2);
        Ok((0..self.rank()).all(|i| {
            let vx: BigInt = coords.iter().zip(&self.gram[i]).map(|(c, &g)| c * BigInt::from(g)).sum();
            (vx - BigInt::from(self.gram[i][i])).is_multiple_of(&two)
        }))
    }

    /// Signature by symmetric Gaussian elimination over `Q`.
    pub fn signature(&self) -> Signature {
        let n = self.rank();
        let mut a: Vec<Vec<Rational>> =
            self.gram.iter().map(|r| r.iter().map(|&g| crate::rat(g)).collect()).collect();
        let mut sig = Signature { b_plus: 0, b_minus: 0, null: 0 };

        for k in 0..n {
            let pivot = (k..n).find(|&i| !a[i][i].is_zero()).or_else(|| {
                // All remaining diagonal entries vanish: fold an off-diagonal
                // entry onto the diagonal via x_i -> x_i + x_j.
                let (i, j) = (k..n)
                    .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
                    .find(|&(i, j)| !a[i][j].is_zero())?;
                for r in 0..n {
                    let t = a[j][r].clone();
                    a[i][r] += t;
                }
                for r in 0..n {
                    let t = a[r][j].clone();
                    a[r][i] += t;
                }
                Some(i)
            });
            let Some(p) = pivot else {
                sig.null += n - k;
                break;
            };
            a.swap(k, p);
            for row in a.iter_mut() {
                row.swap(k, p);
            }
            let d = a[k][k].clone();
            if d.is_positive() {
                sig.b_plus += 1;
            } else {
                sig.b_minus += 1;
            }
            // Schur complement of the pivot.
            let pivot_row = a[k].clone();
            for r in (k + 1)..n {
                if pivot_row[r].is_zero() {
                    continue;
                }
                let f = &pivot_row[r] / &d;
                for c in (k + 1)..n {
                    let t = &f * &pivot_row[c];
                    a[r][c] -= t;
                }
            }
            for c in (k + 1)..n {
                a[k][c] = Rational::zero();
                a[c][k] = Rational::zero();
            }
        }
        sig
    }

    /// `(L - epsilon) . omega`; zero means `(omega, epsilon)` lies on a wall.
    pub fn discriminant(&self, l: &LatticeVector, p: &ChamberPoint) -> Result<Rational, LatticeError> {
        self.check_dim(l)?;
        self.pair(&(l - &p.epsilon), &p.omega)
    }

    /// Chamber containing `p`, or `None` on a wall.
    pub fn chamber(&self, l: &LatticeVector, p: &ChamberPoint) -> Result<Option<Chamber>, LatticeError> {
        let disc = self.discriminant(l, p)?;
        Ok(if disc.is_positive() {
            Some(Chamber::Positive)
        } else if disc.is_negative() {
            Some(Chamber::Negative)
        } else {
            None
        })
    }

    /// Whether two timelike classes lie in the same half of the positive cone,
    /// as seen by the timelike reference `phi`.
    pub fn same_forward_cone(
        &self,
        u: &LatticeVector,
        v: &LatticeVector,
        phi: &LatticeVector,
    ) -> Result<bool, LatticeError> {
        let sig = self.signature();
        if !sig.is_hyperbolic() {
            return Err(LatticeError::NotHyperbolic {
                b_plus: sig.b_plus,
                b_minus: sig.b_minus,
                null: sig.null,
            });
        }
        for w in [u, v, phi] {
            let sq = self.square(w)?;
            if !sq.is_positive() {
                return Err(LatticeError::NotTimelike(sq));
            }
        }
        let same = self.pair(u, phi)?.signum() == self.pair(v, phi)?.signum();
        if same {
            let uv = self.pair(u, v)?;
            assert!(uv.is_positive(), "light-cone lemma violated: u.v = {uv}");
        }
        Ok(same)
    }
}
