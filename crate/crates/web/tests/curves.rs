use wilson_web::{clock_shift_curve, degree_curve, gap_curve, samples};

#[test]
fn sample_grid() {
    assert_eq!(samples(0.0, 1.0, 4).unwrap(), vec![0.0, 0.25, 0.5, 0.75, 1.0]);
    assert!(samples(1.0, 0.0, 4).is_err());
    assert!(samples(0.0, 1.0, 0).is_err());
    assert!(samples(0.0, f64::NAN, 3).is_err());
}

#[test]
fn gap_matches_closed_form_in_two_dimensions() {
    let g = gap_curve(2, 0.0, 4.0, 8, 64).unwrap();
    for (i, v) in g.iter().enumerate() {
        let mu = 0.5 * i as f64;
        let want = mu.abs().min((mu - 2.0).abs()).min((mu - 4.0).abs());
        assert!((v - want).abs() < 1e-9, "mu = {mu}: {v} vs {want}");
    }
    assert!(gap_curve(3, 0.0, 1.0, 2, 16).is_err());
}

#[test]
fn degree_steps_between_windows() {
    let k = degree_curve(2, 1.0, 5.0, 4).unwrap();
    assert_eq!(k[0], 1.0);
    assert!(k[1].is_nan());
    assert_eq!(k[2], -1.0);
    assert!(k[3].is_nan());
    assert_eq!(k[4], 0.0);
}

#[test]
fn clock_shift_values() {
    let v = clock_shift_curve(4, 9, 1.0).unwrap();
    assert!(v.iter().all(|&x| x == -1.0), "{v:?}");
    assert!(clock_shift_curve(3, 2, 1.0).is_err());
    assert!(clock_shift_curve(2, 4, 2.0).is_err());
}
