//! Fixtures shared by the benchmarks.

use swcalc_core::{IntersectionLattice, SurfaceInvariants};

/// The `(chi, g, d)` grid used for cross-checking the multiplicity routes.
pub fn oracle_grid() -> Vec<(i64, i64, i64)> {
    let mut out = Vec::new();
    for chi in 0..=6 {
        for g in 0..=4 {
            for d in 0..=10 {
                out.push((chi, g, d));
            }
        }
    }
    out
}

/// `<1> + (n-1)<-1>` with its Gram matrix sheared so that it is dense.
pub fn dense_odd_lattice(n: usize) -> IntersectionLattice {
    let mut diag = vec![-1i64; n];
    diag[0] = 1;
    // U = I + strictly upper triangular ones; Gram U^T D U
    let gram = (0..n).map(|i| (0..n).map(|j| (0..=i.min(j)).map(|k| diag[k]).sum()).collect()).collect();
    IntersectionLattice::from_gram(gram).expect("symmetric by construction")
}

/// General-type invariants with `n` blow-ups.
pub fn general_type(n: u32) -> SurfaceInvariants {
    SurfaceInvariants::new(3, 0, 2, 0, n)
}
