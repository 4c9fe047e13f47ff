mod support;

use proptest::prelude::*;
use wilson_core::gauge::random_gauge;
use wilson_core::wilson::{symbol, symbol_gap, symbol_modulus};
use wilson_core::{oracle, spectral, CliffordRep, GaugeField, InertiaMethod, LatticeGeometry, MassMode, WilsonOperator};

use support::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn symbol_squares_to_modulus(d in prop::sample::select(vec![2usize, 4, 6]),
                                 k in prop::collection::vec(0.0f64..1.0, 6),
                                 mu in -1.0f64..5.0) {
        let cl = CliffordRep::new(d).unwrap();
        let s = symbol(&cl, &k[..d], mu).unwrap().matrix;
        let f = symbol_modulus(&k[..d], mu);
        let sq = &s * &s;
        let id = wilson_core::linalg::CMat::identity(cl.dim_s(), cl.dim_s()) * num_complex::Complex64::new(f * f, 0.0);
        prop_assert!(wilson_core::linalg::max_abs_diff(&sq, &id) < 1e-12);
    }

    #[test]
    fn closed_form_gap_d2(mu in prop::sample::select(vec![0.2, 0.5, 1.0, 1.5, 2.5, 3.3])) {
        let cl = CliffordRep::new(2).unwrap();
        let g = symbol_gap(&cl, mu, 256).unwrap();
        prop_assert!((g.value - oracle::symbol_gap_d2(mu)).abs() < 1e-9);
    }

    #[test]
    fn gauge_covariance(seed in any::<u64>(), k in -2i64..=2, mu in 0.2f64..1.8) {
        let cl = CliffordRep::new(2).unwrap();
        let f = flux(2, 4, &[(1, 2, k)]).perturbed(0.5, seed).unwrap();
        let g = f.gauge_transformed(&random_gauge(f.geometry(), 1, seed ^ 1)).unwrap();
        prop_assert!((f.curvature_norm() - g.curvature_norm()).abs() < 1e-10);
        let a = WilsonOperator::assemble(&f, &cl, mu, MassMode::Cutoff).unwrap();
        let b = WilsonOperator::assemble(&g, &cl, mu, MassMode::Cutoff).unwrap();
        let ea = oracle::dense_eigenvalues(&a.to_dense());
        let eb = oracle::dense_eigenvalues(&b.to_dense());
        for (x, y) in ea.iter().zip(&eb) {
            prop_assert!((x - y).abs() < 1e-10);
        }
        let ia = spectral::operator_inertia(&a, None, InertiaMethod::Dense).unwrap();
        let ib = spectral::operator_inertia(&b, None, InertiaMethod::Band).unwrap();
        prop_assert_eq!(ia.counts(), ib.counts());
    }

    #[test]
    fn positive_scaling_keeps_inertia(s in 0.01f64..100.0, mu in 0.2f64..1.8) {
        let cl = CliffordRep::new(2).unwrap();
        let op = WilsonOperator::assemble(&flux(2, 4, &[(1, 2, 1)]), &cl, mu, MassMode::Cutoff).unwrap();
        let h = op.to_dense();
        let scaled = &h * num_complex::Complex64::new(s, 0.0);
        prop_assert_eq!(spectral::inertia(&h, None).unwrap().counts(), spectral::inertia(&scaled, None).unwrap().counts());
    }
}

#[test]
fn rank_two_trivial_doubles_spectrum() {
    let cl = CliffordRep::new(2).unwrap();
    let g = LatticeGeometry::new(2, 4).unwrap();
    let one = WilsonOperator::assemble(&GaugeField::trivial(g, 1).unwrap(), &cl, 0.6, MassMode::Cutoff).unwrap();
    let two = WilsonOperator::assemble(&GaugeField::trivial(g, 2).unwrap(), &cl, 0.6, MassMode::Cutoff).unwrap();
    let e1 = oracle::dense_eigenvalues(&one.to_dense());
    let e2 = oracle::dense_eigenvalues(&two.to_dense());
    for (i, x) in e1.iter().enumerate() {
        assert!((x - e2[2 * i]).abs() < 1e-10 && (x - e2[2 * i + 1]).abs() < 1e-10);
    }
}

#[test]
fn d4_band_matches_dense() {
    let cl = CliffordRep::new(4).unwrap();
    let f = flux(4, 3, &[(1, 2, 1), (3, 4, 1)]).perturbed(0.2, 2).unwrap();
    for mu in [0.5, 1.0, 3.0] {
        let op = WilsonOperator::assemble(&f, &cl, mu, MassMode::Cutoff).unwrap();
        let a = spectral::operator_inertia(&op, None, InertiaMethod::Dense).unwrap();
        let b = spectral::operator_inertia(&op, None, InertiaMethod::Band).unwrap();
        assert_eq!(a.counts(), b.counts(), "mu = {mu}");
    }
}
