mod support;

use proptest::prelude::*;
use wilson_core::linalg::{direct_sum, CMat};
use wilson_core::spectral::{
    fourier_diagonalize, inertia, inertia_band, min_abs_eigenvalue, operator_inertia, BandMatrix, InertiaMethod,
    MinAbsMethod,
};
use wilson_core::{CliffordRep, GaugeField, LatticeGeometry, MassMode, WilsonOperator};

use num_complex::Complex64;
use support::*;

#[test]
fn dense_matches_eigensolver_signs() {
    let mut r = rng(1);
    for n in [1, 2, 3, 10, 40, 97] {
        let h = hermitian(&mut r, n);
        let i = inertia(&h, None).unwrap();
        assert_eq!(i.counts(), eigen_counts(&h, i.tol), "n = {n}");
    }
}

#[test]
fn fifty_random_matrices_both_paths() {
    let mut r = rng(50);
    for case in 0..50 {
        let n = 2 + (case * 37) % 127;
        let h = hermitian(&mut r, n);
        let a = inertia(&h, None).unwrap();
        let b = inertia_band(&BandMatrix::from_dense(&h), None).unwrap();
        assert_eq!(a.counts(), b.counts(), "case {case}, n = {n}");
    }
}

#[test]
fn assembled_operators_both_paths() {
    for d2n in 2..=8 {
        let cl = CliffordRep::new(2).unwrap();
        for k in -2..=2 {
            let f = flux(2, d2n, &[(1, 2, k)]).perturbed(0.1, d2n as u64).unwrap();
            for mu in [0.3, 1.0, 1.7, 2.5, 3.5] {
                let op = WilsonOperator::assemble(&f, &cl, mu, MassMode::Cutoff).unwrap();
                let a = operator_inertia(&op, None, InertiaMethod::Dense).unwrap();
                let b = operator_inertia(&op, None, InertiaMethod::Band).unwrap();
                assert_eq!(a.counts(), b.counts(), "N = {d2n} K = {k} mu = {mu}");
            }
        }
    }
}

#[test]
fn congruence_twenty_seeds() {
    for seed in 0..20 {
        let mut r = rng(100 + seed);
        let n = 4 + (seed as usize * 3) % 61;
        let h = hermitian(&mut r, n);
        let s = general(&mut r, n);
        let c = s.adjoint() * &h * &s;
        let c = (&c + c.adjoint()) * Complex64::new(0.5, 0.0);
        assert_eq!(inertia(&h, None).unwrap().counts(), inertia(&c, None).unwrap().counts(), "seed {seed}");
    }
}

#[test]
fn fourier_counts_match_inertia() {
    let cl = CliffordRep::new(2).unwrap();
    let f = GaugeField::trivial(LatticeGeometry::new(2, 4).unwrap(), 1).unwrap();
    let ev = fourier_diagonalize(&f, &cl, 1.0).unwrap();
    let op = WilsonOperator::assemble(&f, &cl, 1.0, MassMode::Cutoff).unwrap();
    let i = operator_inertia(&op, None, InertiaMethod::Dense).unwrap();
    let pos = ev.iter().filter(|&&x| x > 1e-8).count();
    let neg = ev.iter().filter(|&&x| x < -1e-8).count();
    assert_eq!((i.n_plus, i.n_minus, i.n_zero), (pos, neg, 0));
    assert!((i.gap.unwrap() - 1.0).abs() < 1e-12);
    assert!((min_abs_eigenvalue(&op, MinAbsMethod::Bisection).unwrap() - 1.0).abs() < 1e-12);
    assert!((min_abs_eigenvalue(&op, MinAbsMethod::Iterative).unwrap() - 1.0).abs() < 1e-6);
}

#[test]
fn fourier_matches_dense_spectrum_rank_two() {
    let cl = CliffordRep::new(2).unwrap();
    let f = GaugeField::trivial(LatticeGeometry::new(2, 3).unwrap(), 2).unwrap();
    let op = WilsonOperator::assemble(&f, &cl, 0.7, MassMode::Cutoff).unwrap();
    let mut dense: Vec<f64> = op.to_dense().symmetric_eigen().eigenvalues.iter().copied().collect();
    dense.sort_by(f64::total_cmp);
    let sym = fourier_diagonalize(&f, &cl, 0.7).unwrap();
    for (a, b) in dense.iter().zip(&sym) {
        assert!((a - b).abs() < 1e-10);
    }
}

#[test]
fn min_abs_squared_is_bottom_of_square() {
    let cl = CliffordRep::new(2).unwrap();
    for (n, k, mu) in [(6, 1, 0.4), (8, -2, 1.3), (5, 0, 0.9)] {
        let f = flux(2, n, &[(1, 2, k)]).perturbed(0.2, 7).unwrap();
        let op = WilsonOperator::assemble(&f, &cl, mu, MassMode::Cutoff).unwrap();
        let h = op.to_dense();
        let sq = &h * &h;
        let bottom = sq.symmetric_eigen().eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
        for method in [MinAbsMethod::Bisection, MinAbsMethod::Iterative] {
            let v = min_abs_eigenvalue(&op, method).unwrap();
            assert!((v * v - bottom).abs() <= 1e-6 * bottom, "{method:?}: {} vs {bottom}", v * v);
        }
    }
}

#[test]
fn iterative_on_larger_operator() {
    // dimension 2048: Lanczos must certify on its own
    let cl = CliffordRep::new(2).unwrap();
    let f = flux(2, 32, &[(1, 2, 1)]);
    let op = WilsonOperator::assemble(&f, &cl, 0.5, MassMode::Cutoff).unwrap();
    let it = wilson_core::spectral::lanczos::min_abs(&op).unwrap();
    let bi = min_abs_eigenvalue(&op, MinAbsMethod::Bisection).unwrap();
    assert!((it - bi).abs() <= 1e-6 * bi, "{it} vs {bi}");
}

fn herm_strategy(max: usize) -> impl Strategy<Value = CMat> {
    (1..max, any::<u64>()).prop_map(|(n, seed)| hermitian(&mut rng(seed), n))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn additivity(a in herm_strategy(24), b in herm_strategy(24)) {
        let ia = inertia(&a, Some(1e-9)).unwrap();
        let ib = inertia(&b, Some(1e-9)).unwrap();
        let s = inertia(&direct_sum(&a, &b), Some(1e-9)).unwrap();
        prop_assert_eq!(ia.add(&ib).counts(), s.counts());
    }

    #[test]
    fn band_agrees_with_dense(h in herm_strategy(60)) {
        let a = inertia(&h, None).unwrap();
        let b = inertia_band(&BandMatrix::from_dense(&h), None).unwrap();
        prop_assert_eq!(a.counts(), b.counts());
    }

    #[test]
    fn shift_moves_counts(h in herm_strategy(30), t in -2.0f64..2.0) {
        // inertia of H - t equals the count of eigenvalues on each side of t
        let n = h.nrows();
        let shifted = &h - CMat::identity(n, n) * Complex64::new(t, 0.0);
        let i = inertia(&shifted, Some(1e-10)).unwrap();
        prop_assert_eq!(i.counts(), eigen_counts(&shifted, 1e-10));
    }
}
