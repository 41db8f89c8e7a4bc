//! Random lattice generators shared by the property and acceptance suites.

#![allow(dead_code)]

use rand::Rng;
use swcalc_core::{IntersectionLattice, LatticeVector};

/// Integer matrix with its inverse, both stored row-major.
pub struct Unimodular {
    pub u: Vec<Vec<i64>>,
    pub inv: Vec<Vec<i64>>,
}

fn identity(n: usize) -> Vec<Vec<i64>> {
    (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect()
}

fn matmul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

fn transpose(a: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| a[j][i]).collect()).collect()
}

/// Product of a few elementary column operations, sign flips and swaps.
pub fn random_unimodular<R: Rng>(rng: &mut R, n: usize, steps: usize) -> Unimodular {
    let mut u = identity(n);
    let mut inv = identity(n);
    for _ in 0..steps {
        let mut e = identity(n);
        let mut e_inv = identity(n);
        match rng.gen_range(0..3) {
            0 if n > 1 => {
                let i = rng.gen_range(0..n);
                let mut j = rng.gen_range(0..n - 1);
                if j >= i {
                    j += 1;
                }
                let c = if rng.gen_bool(0.5) { 1 } else { -1 };
                e[j][i] = c;
                e_inv[j][i] = -c;
            }
            1 => {
                let i = rng.gen_range(0..n);
                e[i][i] = -1;
                e_inv[i][i] = -1;
            }
            _ => {
                let i = rng.gen_range(0..n);
                let j = rng.gen_range(0..n);
                e.swap(i, j);
                e_inv.swap(i, j);
            }
        }
        u = matmul(&u, &e);
        inv = matmul(&e_inv, &inv);
    }
    Unimodular { u, inv }
}

/// A lattice presented in a scrambled basis, with the map that carries
/// coordinates in the original basis to the new one.
pub struct Scrambled {
    pub lattice: IntersectionLattice,
    pub change: Unimodular,
}

impl Scrambled {
    /// Gram matrix `U^T G U`.
    pub fn new(base: &IntersectionLattice, change: Unimodular) -> Self {
        let g: Vec<Vec<i64>> = base.gram().to_vec();
        let gram = matmul(&matmul(&transpose(&change.u), &g), &change.u);
        let lattice = IntersectionLattice::from_gram(gram).unwrap();
        Scrambled { lattice, change }
    }

    /// Old coordinates `x` become `U^{-1} x`.
    pub fn carry(&self, x: &[i64]) -> LatticeVector {
        let n = x.len();
        let y: Vec<i64> = (0..n).map(|i| (0..n).map(|k| self.change.inv[i][k] * x[k]).sum()).collect();
        LatticeVector::from_ints(&y)
    }
}

pub fn random_vector<R: Rng>(rng: &mut R, n: usize, bound: i64) -> Vec<i64> {
    (0..n).map(|_| rng.gen_range(-bound..=bound)).collect()
}

/// Diagonal entries with at least one sphere direction at index 0.
pub fn random_diagonal<R: Rng>(rng: &mut R, n: usize) -> Vec<i64> {
    let choices = [1, -1, 2, -2, 3, -3, -1, -1];
    let mut d: Vec<i64> = (0..n).map(|_| choices[rng.gen_range(0..choices.len())]).collect();
    d[0] = if rng.gen_bool(0.5) { -1 } else { -2 };
    d
}

/// Characteristic vector of a diagonal form: parity of each coordinate
/// matches the parity of the diagonal entry.
pub fn random_characteristic<R: Rng>(rng: &mut R, diag: &[i64], bound: i64) -> Vec<i64> {
    diag.iter().map(|&g| g.rem_euclid(2) + 2 * rng.gen_range(-bound..=bound)).collect()
}

/// A class of square -1 or -2 in a diagonal form, in original coordinates.
pub fn random_sphere<R: Rng>(rng: &mut R, diag: &[i64]) -> Vec<i64> {
    let n = diag.len();
    let minus_ones: Vec<usize> = (0..n).filter(|&i| diag[i] == -1).collect();
    let mut s = vec![0; n];
    if minus_ones.len() >= 2 && rng.gen_bool(0.5) {
        // E_i - E_j or E_i + E_j, square -2
        let i = minus_ones[rng.gen_range(0..minus_ones.len())];
        let j = loop {
            let j = minus_ones[rng.gen_range(0..minus_ones.len())];
            if j != i {
                break j;
            }
        };
        s[i] = 1;
        s[j] = if rng.gen_bool(0.5) { 1 } else { -1 };
    } else {
        let candidates: Vec<usize> = (0..n).filter(|&i| diag[i] == -1 || diag[i] == -2).collect();
        let i = candidates[rng.gen_range(0..candidates.len())];
        s[i] = if rng.gen_bool(0.5) { 1 } else { -1 };
    }
    s
}

/// Random positive-square vector by rejection sampling.
pub fn random_timelike<R: Rng>(rng: &mut R, lat: &IntersectionLattice, bound: i64) -> LatticeVector {
    use num_traits::Signed;
    loop {
        let v = LatticeVector::from_ints(&random_vector(rng, lat.rank(), bound));
        if lat.square(&v).unwrap().is_positive() {
            return v;
        }
    }
}
