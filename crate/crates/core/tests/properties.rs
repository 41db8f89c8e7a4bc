mod common;

use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

use common::*;
use swcalc_core::basic_classes::{connectedness_defect, decompose_canonical, model_lattice};
use swcalc_core::elliptic::{sw_mult_blowup, sw_mult_closed, sw_mult_series};
use swcalc_core::series::{binom_pow, binomial, exp_series, substitute_acgh};
use swcalc_core::surface::{vdim_from_determinant, vdim_twisting};
use swcalc_core::{
    frac, rat, BiPoly, IntersectionLattice, LatticeVector, Rational, SurfaceInvariants, TruncatedSeries,
};

fn small_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| frac(n, d))
}

fn bipoly(max_deg: u32) -> impl Strategy<Value = BiPoly> {
    prop::collection::vec(((0..=max_deg), (0..=max_deg), small_rational()), 0..4).prop_map(|terms| {
        terms.into_iter().fold(BiPoly::zero(), |acc, (i, j, c)| &acc + &BiPoly::monomial(i, j, c))
    })
}

fn series(order: usize) -> impl Strategy<Value = TruncatedSeries> {
    prop::collection::vec(bipoly(2), order + 1).prop_map(TruncatedSeries::from_coeffs)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn series_ring_axioms(a in series(4), b in series(4), c in series(4)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &TruncatedSeries::one(4), a.clone());
        prop_assert_eq!(&a - &a, TruncatedSeries::zero(4));
    }

    #[test]
    fn exp_is_additive(p in bipoly(2), q in bipoly(2), order in 0usize..6) {
        let lhs = exp_series(&(&p + &q), order);
        let rhs = &exp_series(&p, order) * &exp_series(&q, order);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn binomial_powers_are_inverse(c in bipoly(2), a in -8i64..=8, order in 0usize..7) {
        let prod = &binom_pow(&c, a, order) * &binom_pow(&c, -a, order);
        prop_assert_eq!(prod, TruncatedSeries::one(order));
    }

    #[test]
    fn binom_pow_adds_exponents(a in -6i64..=6, b in -6i64..=6) {
        let x = BiPoly::x();
        prop_assert_eq!(&binom_pow(&x, a, 6) * &binom_pow(&x, b, 6), binom_pow(&x, a + b, 6));
    }

    #[test]
    fn acgh_identity_with_theta(a in -5i64..=5, b in 0usize..=6, k in 0usize..=6) {
        // f(t) = theta^k t^k e^{-t theta}: graded and theta-dependent
        let f = &TruncatedSeries::monomial(BiPoly::theta().pow(k as u32), k, 6)
            * &exp_series(&-&BiPoly::theta(), 6);
        let (l, r) = substitute_acgh(&f, a, b).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn reflection_laws(seed in any::<u64>(), n in 1usize..6) {
        let mut rng = StdRng::seed_from_u64(seed);
        let diag = random_diagonal(&mut rng, n);
        let sc = Scrambled::new(&IntersectionLattice::diagonal(&diag), random_unimodular(&mut rng, n, 8));
        let lat = &sc.lattice;
        let s = sc.carry(&random_sphere(&mut rng, &diag));
        let u = sc.carry(&random_vector(&mut rng, n, 4));
        let v = sc.carry(&random_characteristic(&mut rng, &diag, 3));

        let ru = lat.reflect_sphere(&u, &s).unwrap();
        let rv = lat.reflect_sphere(&v, &s).unwrap();
        prop_assert_eq!(lat.reflect_sphere(&ru, &s).unwrap(), u.clone());
        prop_assert_eq!(lat.pair(&ru, &rv).unwrap(), lat.pair(&u, &v).unwrap());
        prop_assert!(ru.is_integral());
        prop_assert!(lat.is_characteristic(&v).unwrap());
        prop_assert!(lat.is_characteristic(&rv).unwrap());
        if lat.square(&s).unwrap() == rat(-2) {
            prop_assert!((lat.pair(&v, &s).unwrap() / rat(2)).is_integer());
        }
    }

    #[test]
    fn signature_is_basis_independent(seed in any::<u64>(), n in 1usize..7) {
        let mut rng = StdRng::seed_from_u64(seed);
        let diag: Vec<i64> = (0..n).map(|_| [-3i64, -1, 0, 1, 2][rand::Rng::gen_range(&mut rng, 0..5)]).collect();
        let base = IntersectionLattice::diagonal(&diag);
        let sig = base.signature();
        prop_assert_eq!(sig.b_plus + sig.b_minus + sig.null, n);
        prop_assert_eq!(sig.b_plus, diag.iter().filter(|&&d| d > 0).count());
        prop_assert_eq!(sig.null, diag.iter().filter(|&&d| d == 0).count());
        let sc = Scrambled::new(&base, random_unimodular(&mut rng, n, 10));
        prop_assert_eq!(sc.lattice.signature(), sig);
    }

    #[test]
    fn forward_cone_pairs_positively(seed in any::<u64>(), n in 1usize..6) {
        let mut rng = StdRng::seed_from_u64(seed);
        let mut diag = vec![-1i64; n + 1];
        diag[0] = rand::Rng::gen_range(&mut rng, 1..4);
        for d in diag.iter_mut().skip(1) {
            *d = -rand::Rng::gen_range(&mut rng, 1..4);
        }
        let sc = Scrambled::new(&IntersectionLattice::diagonal(&diag), random_unimodular(&mut rng, n + 1, 6));
        let lat = &sc.lattice;
        let u = random_timelike(&mut rng, lat, 5);
        let v = random_timelike(&mut rng, lat, 5);
        let phi = random_timelike(&mut rng, lat, 5);
        if lat.same_forward_cone(&u, &v, &phi).unwrap() {
            prop_assert!(lat.pair(&u, &v).unwrap().is_positive());
        } else {
            prop_assert!(lat.pair(&u, &v).unwrap().is_negative());
        }
    }

    #[test]
    fn virtual_dimensions_agree(kmin_sq in 1i64..5, n in 0u32..5, seed in any::<u64>()) {
        let inv = SurfaceInvariants::new(kmin_sq as u32 + 3, 0, kmin_sq, 0, n);
        let m = model_lattice(&inv, 1).unwrap();
        let mut rng = StdRng::seed_from_u64(seed);
        let l = LatticeVector::from_ints(&random_vector(&mut rng, m.lattice.rank(), 6));
        let twisting = vdim_twisting(&m.lattice, &l, &m.canonical).unwrap();
        prop_assert_eq!(&twisting, &vdim_from_determinant(&m.lattice, &l, &m.canonical).unwrap());
        let det = &l.scale(&rat(2)) - &m.canonical;
        let det_sq = m.lattice.square(&det).unwrap().to_integer().try_into().unwrap();
        let topological = inv.vdim_real(det_sq).unwrap();
        prop_assert_eq!(&topological, &twisting);
        prop_assert!(topological.is_integer());
    }

    #[test]
    fn decomposition_identity(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let h = IntersectionLattice::hyperbolic();
        let phi = LatticeVector::from_ints(&[1, 1]);
        let k = LatticeVector::from_ints(&[rand::Rng::gen_range(&mut rng, 0..6), rand::Rng::gen_range(&mut rng, 0..6)]);
        let l = LatticeVector::from_ints(&random_vector(&mut rng, 2, 6));
        let (dp, dm) = decompose_canonical(&k, &l).unwrap();
        prop_assert_eq!(&(&dp + &dm), &k);
        prop_assert_eq!(&(&dp - &dm), &l);
        let defect = connectedness_defect(&h, &k, &l, &phi).unwrap();
        prop_assert_eq!(h.square(&k).unwrap() - h.square(&l).unwrap(), defect * rat(4));
    }
}

#[test]
fn vandermonde_including_negative_upper_indices() {
    for a in -6i64..=10 {
        for b in -6i64..=10 {
            for c in 0..=12 {
                let lhs: swcalc_core::BigInt =
                    (0..=c).map(|j| binomial(a, j).unwrap() * binomial(b, c - j).unwrap()).sum();
                assert_eq!(lhs, binomial(a + b, c).unwrap(), "a={a} b={b} c={c}");
            }
        }
    }
}

#[test]
fn pipeline_series_are_graded() {
    // the un-substituted class, rebuilt from public pieces
    for (chi, g, d) in [(1i64, 0i64, 4usize), (3, 2, 5), (0, 4, 6)] {
        let x = BiPoly::x();
        let inner = &TruncatedSeries::monomial(-&BiPoly::theta(), 1, d) * &binom_pow(&x, -1, d);
        let s = &binom_pow(&x, d as i64 + 1 - g - chi, d) * &inner.exp().unwrap();
        assert!(s.is_graded());
    }
    let mixed = &binom_pow(&BiPoly::one(), 2, 3) * &exp_series(&BiPoly::x(), 3);
    assert!(!mixed.is_graded());
}

#[test]
fn multiplicity_routes_agree_beyond_acceptance_grid() {
    for chi in 0..=8i64 {
        for g in 0..=6i64 {
            for d in 0..=12i64 {
                let closed = sw_mult_closed(chi, g, d);
                assert_eq!(sw_mult_series(chi, g, d).unwrap(), closed, "chi={chi} g={g} d={d}");
                if d <= 6 {
                    assert_eq!(sw_mult_blowup(chi, g, d, 1).unwrap(), closed);
                    assert!(sw_mult_blowup(chi, g, d, 2).unwrap().is_zero());
                }
            }
        }
    }
}

#[test]
fn candidate_set_closed_under_exceptional_reflections() {
    for (inv, div) in [
        (SurfaceInvariants::new(3, 0, 2, 0, 3), 1),
        (SurfaceInvariants::new(2, 0, 0, 0, 2), 4),
        (SurfaceInvariants::new(1, 0, 0, 1, 3), 0),
    ] {
        let m = model_lattice(&inv, div).unwrap();
        let cands = m.candidates(&inv).unwrap();
        let set: Vec<_> = cands.iter().map(|c| c.vector.clone()).collect();
        for e in &m.exceptionals {
            let mut image: Vec<_> = set.iter().map(|v| m.lattice.reflect_sphere(v, e).unwrap()).collect();
            image.sort();
            assert_eq!(image, set);
        }
        for c in &cands {
            let defect = swcalc_core::basic_classes::decompose_canonical(&m.canonical, &c.vector)
                .map(|(p, q)| m.lattice.pair(&p, &q).unwrap())
                .unwrap();
            let diff = m.lattice.square(&m.canonical).unwrap() - m.lattice.square(&c.vector).unwrap();
            assert_eq!(diff, defect * rat(4));
        }
    }
}
