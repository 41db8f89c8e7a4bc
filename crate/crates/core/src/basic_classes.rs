//! Candidate basic classes of shape `lambda * K_min + sum +-E_i`, the
//! canonical-divisor decomposition, and the `(-1)`-sphere equation.

use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::lattice::{IntersectionLattice, LatticeError, LatticeVector};
use crate::surface::{SurfaceError, SurfaceInvariants};
use crate::{rat, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BasicClassError {
    #[error("malformed exceptional set: {0}")]
    MalformedExceptionals(String),
    #[error("K_min does not match the invariants: {0}")]
    BadKmin(String),
    #[error("canonical class {0} is not characteristic in the given lattice")]
    CanonicalNotCharacteristic(LatticeVector),
    #[error("K is not nef against phi: K^2 = {}, K.phi = {}", .0 .0, .0 .1)]
    NotNef(Box<(Rational, Rational)>),
    #[error("K_min^2 = {0} must be non-negative")]
    NegativeKminSquare(i64),
    #[error("model for kappa = 1 needs an even K_min divisibility >= 2, got {0}")]
    BadModelDivisibility(u32),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BasicClassCandidate {
    pub lambda: Rational,
    /// `+1` or `-1` for each exceptional class.
    pub signs: Vec<i8>,
    pub vector: LatticeVector,
    pub square: Rational,
}

fn sign_vectors(n: usize) -> impl Iterator<Item = Vec<i8>> {
    (0u64..1 << n).map(move |mask| (0..n).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect())
}

fn check_exceptionals(
    inv: &SurfaceInvariants,
    lat: &IntersectionLattice,
    kmin: &LatticeVector,
    exceptionals: &[LatticeVector],
) -> Result<(), BasicClassError> {
    let bad = |m: String| Err(BasicClassError::MalformedExceptionals(m));
    if exceptionals.len() != inv.n_exceptional as usize {
        return bad(format!("{} classes given, invariants say {}", exceptionals.len(), inv.n_exceptional));
    }
    for (i, e) in exceptionals.iter().enumerate() {
        if !e.is_integral() {
            return bad(format!("E{} is not integral", i + 1));
        }
        if lat.square(e)? != rat(-1) {
            return bad(format!("E{} has square {}", i + 1, lat.square(e)?));
        }
        if !lat.pair(e, kmin)?.is_zero() {
            return bad(format!("E{} is not orthogonal to K_min", i + 1));
        }
        for (j, f) in exceptionals.iter().enumerate().skip(i + 1) {
            if !lat.pair(e, f)?.is_zero() {
                return bad(format!("E{} and E{} are not orthogonal", i + 1, j + 1));
            }
        }
    }
    Ok(())
}

/// The canonical class `K_min + sum E_i`.
pub fn canonical_class(kmin: &LatticeVector, exceptionals: &[LatticeVector]) -> LatticeVector {
    exceptionals.iter().fold(kmin.clone(), |acc, e| &acc + e)
}

/// All characteristic classes `lambda K_min + sum +-E_i` of square `K_X^2`,
/// sorted lexicographically by coordinates.
///
/// `lambda` is `+-1` for general type, `0` for Kodaira dimension 0, and runs
/// over the rationals `k / div(K_min)` in `[-1, 1]` for Kodaira dimension 1.
/// In the last case the result is a superset of the actual basic classes.
pub fn enumerate_candidates(
    inv: &SurfaceInvariants,
    lat: &IntersectionLattice,
    kmin: &LatticeVector,
    exceptionals: &[LatticeVector],
) -> Result<Vec<BasicClassCandidate>, BasicClassError> {
    let kappa = inv.kodaira_dimension()?;
    check_exceptionals(inv, lat, kmin, exceptionals)?;
    if lat.square(kmin)? != rat(inv.kmin_sq) {
        return Err(BasicClassError::BadKmin(format!(
            "K_min^2 = {} but kmin_sq = {}",
            lat.square(kmin)?,
            inv.kmin_sq
        )));
    }
    let canonical = canonical_class(kmin, exceptionals);
    if !lat.is_characteristic(&canonical)? {
        return Err(BasicClassError::CanonicalNotCharacteristic(canonical));
    }

    let lambdas: Vec<Rational> = match kappa {
        2 => vec![rat(-1), rat(1)],
        0 => {
            if !kmin.is_zero() {
                return Err(BasicClassError::BadKmin("torsion K_min must be the zero class".into()));
            }
            vec![rat(0)]
        }
        _ => {
            let div = kmin.divisibility()?;
            if div.is_zero() {
                return Err(BasicClassError::BadKmin("K_min vanishes but is not torsion".into()));
            }
            let div = div.to_i64().expect("divisibility fits in i64");
            (-div..=div).map(|k| crate::frac(k, div)).collect()
        }
    };

    let kx_sq = rat(inv.kx_sq());
    let mut out = Vec::new();
    for lambda in lambdas {
        let base = kmin.scale(&lambda);
        for signs in sign_vectors(exceptionals.len()) {
            let vector = signs
                .iter()
                .zip(exceptionals)
                .fold(base.clone(), |acc, (&s, e)| &acc + &e.scale(&rat(s as i64)));
            if !vector.is_integral() || !lat.is_characteristic(&vector)? {
                continue;
            }
            let square = lat.square(&vector)?;
            assert_eq!(square, kx_sq, "candidate {vector} has square {square}, expected {kx_sq}");
            out.push(BasicClassCandidate { lambda: lambda.clone(), signs, vector, square });
        }
    }
    out.sort_by(|a, b| a.vector.cmp(&b.vector));
    out.dedup_by(|a, b| a.vector == b.vector);
    Ok(out)
}

/// `D_+ = (K + L)/2` and `D_- = (K - L)/2`.
pub fn decompose_canonical(
    k: &LatticeVector,
    l: &LatticeVector,
) -> Result<(LatticeVector, LatticeVector), LatticeError> {
    if k.len() != l.len() {
        return Err(LatticeError::Dimension { rank: k.len(), len: l.len() });
    }
    let half = crate::frac(1, 2);
    Ok(((k + l).scale(&half), (k - l).scale(&half)))
}

/// `D_+ . D_-` for the decomposition of `K` along `L`; equals
/// `(K^2 - L^2) / 4`.
pub fn connectedness_defect(
    lat: &IntersectionLattice,
    k: &LatticeVector,
    l: &LatticeVector,
    phi: &LatticeVector,
) -> Result<Rational, BasicClassError> {
    let sig = lat.signature();
    if !sig.is_hyperbolic() {
        return Err(
            LatticeError::NotHyperbolic { b_plus: sig.b_plus, b_minus: sig.b_minus, null: sig.null }.into()
        );
    }
    let phi_sq = lat.square(phi)?;
    if !phi_sq.is_positive() {
        return Err(LatticeError::NotTimelike(phi_sq).into());
    }
    let k_sq = lat.square(k)?;
    let k_phi = lat.pair(k, phi)?;
    if k_sq.is_negative() || k_phi.is_negative() {
        return Err(BasicClassError::NotNef(Box::new((k_sq, k_phi))));
    }
    let (d_plus, d_minus) = decompose_canonical(k, l)?;
    let defect = lat.pair(&d_plus, &d_minus)?;
    assert_eq!(&k_sq - lat.square(l)?, &defect * rat(4), "K^2 - L^2 != 4 D+.D-");
    Ok(defect)
}

/// A `(-1)`-sphere `e = (1 - lambda)/2 K_min + E_1 + ... + E_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SphereSolution {
    pub lambda: Rational,
    pub n: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MinusOneSphere {
    /// `K_min^2 = 0`: every `lambda` gives `N = 1`.
    AnyLambda,
    Solutions(Vec<SphereSolution>),
}

/// Largest `d` with `d^2 | n`, for `n > 0`.
fn max_square_divisor_root(n: i64) -> i64 {
    (1..).take_while(|d| d * d <= n).filter(|d| n % (d * d) == 0).last().unwrap_or(1)
}

/// Solves the `(-1)`-sphere shape equation and keeps the solutions whose
/// reflection in `E_1` is again of that shape up to sign.
///
/// `K_min` is modeled as `div * kappa` where `div` is the largest integer
/// with `div^2 | K_min^2`; `(1 - lambda)/2 * K_min` must be integral.
pub fn solve_minus_one_sphere(kmin_sq: i64, n_max: u64) -> Result<MinusOneSphere, BasicClassError> {
    if kmin_sq < 0 {
        return Err(BasicClassError::NegativeKminSquare(kmin_sq));
    }
    if kmin_sq == 0 {
        return Ok(MinusOneSphere::AnyLambda);
    }
    let div = max_square_divisor_root(kmin_sq);
    let prim_sq = kmin_sq / (div * div);

    // (s, N) with s = (1 - lambda)/2 = j/div in [0, 1]
    let raw: Vec<(i64, u64)> = (0..=div)
        .filter_map(|j| {
            let n = (j * j * prim_sq + 1) as u64;
            (n <= n_max).then_some((j, n))
        })
        .collect();
    if raw.is_empty() {
        return Ok(MinusOneSphere::Solutions(Vec::new()));
    }

    let rank = 1 + n_max as usize;
    let mut diag = vec![-1i64; rank];
    diag[0] = prim_sq;
    let lat = IntersectionLattice::diagonal(&diag);
    let sphere = |j: i64, n: u64| {
        let mut c = vec![0i64; rank];
        c[0] = j;
        c[1..=n as usize].fill(1);
        LatticeVector::from_ints(&c)
    };
    let has_shape = |v: &LatticeVector| -> bool {
        let c = v.coords();
        let ones = c[1..].iter().filter(|x| x.is_one()).count() as u64;
        c[1..].iter().all(|x| x.is_zero() || x.is_one())
            && raw.iter().any(|&(j, n)| c[0] == rat(j) && n == ones)
    };

    let e1 = LatticeVector::basis(rank, 1);
    let mut solutions = Vec::new();
    for &(j, n) in &raw {
        let e = sphere(j, n);
        assert_eq!(lat.square(&e)?, rat(-1));
        let reflected = lat.reflect_sphere(&e, &e1)?;
        if has_shape(&reflected) || has_shape(&-&reflected) {
            let lambda = Rational::one() - crate::frac(2 * j, div);
            solutions.push(SphereSolution { lambda, n });
        }
    }
    solutions.sort_by(|a, b| a.lambda.cmp(&b.lambda));
    Ok(MinusOneSphere::Solutions(solutions))
}

/// A concrete lattice realizing given invariants: the `K_min` part, then one
/// generator per exceptional curve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceModel {
    pub lattice: IntersectionLattice,
    pub kmin: LatticeVector,
    pub exceptionals: Vec<LatticeVector>,
    pub canonical: LatticeVector,
}

/// Builds `<K_min^2> + n<-1>` for general type and `H + n<-1>` otherwise, with
/// `K_min = (kmin_div, 0)` in the hyperbolic plane `H` when `kappa = 1` and
/// `K_min = 0` when `kappa = 0`.
pub fn model_lattice(inv: &SurfaceInvariants, kmin_div: u32) -> Result<SurfaceModel, BasicClassError> {
    let kappa = inv.kodaira_dimension()?;
    let n = inv.n_exceptional as usize;
    let (base, kmin_part) = match kappa {
        2 => (IntersectionLattice::diagonal(&[inv.kmin_sq]).with_labels(vec!["Kmin".into()])?, vec![1]),
        1 => {
            if kmin_div < 2 || !kmin_div.is_multiple_of(2) {
                return Err(BasicClassError::BadModelDivisibility(kmin_div));
            }
            (hyperbolic_labeled()?, vec![kmin_div as i64, 0])
        }
        _ => (hyperbolic_labeled()?, vec![0, 0]),
    };
    let lattice = if n == 0 {
        base
    } else {
        let exc = IntersectionLattice::diagonal(&vec![-1; n])
            .with_labels((1..=n).map(|i| format!("E{i}")).collect())?;
        base.direct_sum(&exc)
    };
    let rank = lattice.rank();
    let mut kc = kmin_part.clone();
    kc.resize(rank, 0);
    let kmin = LatticeVector::from_ints(&kc);
    let exceptionals: Vec<_> = (0..n).map(|i| LatticeVector::basis(rank, kmin_part.len() + i)).collect();
    let canonical = canonical_class(&kmin, &exceptionals);
    Ok(SurfaceModel { lattice, kmin, exceptionals, canonical })
}

fn hyperbolic_labeled() -> Result<IntersectionLattice, LatticeError> {
    IntersectionLattice::hyperbolic().with_labels(vec!["f".into(), "s".into()])
}

impl SurfaceModel {
    pub fn candidates(&self, inv: &SurfaceInvariants) -> Result<Vec<BasicClassCandidate>, BasicClassError> {
        enumerate_candidates(inv, &self.lattice, &self.kmin, &self.exceptionals)
    }
}
