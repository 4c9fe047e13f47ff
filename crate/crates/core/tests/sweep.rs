use wilson_core::ktheory::IndexOptions;
use wilson_core::sweep::{run_sweep, write_csv, Status, SweepSpec, CSV_COLUMNS, CSV_VERSION};
use wilson_core::{FluxMatrix, MassMode};

#[test]
fn crossing_a_window_changes_the_index() {
    let spec = SweepSpec {
        d: 2,
        ns: vec![16],
        ms: vec![0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75, 1.98, 2.5, 3.0],
        fluxes: vec![FluxMatrix::from_planes(2, &[(1, 2, 1)]).unwrap()],
        mode: MassMode::Cutoff,
        options: IndexOptions::default(),
    };
    let rows = run_sweep(&spec, 2).unwrap();
    let inv: Vec<Option<i64>> = rows.iter().map(|r| r.report.as_ref().map(|x| x.invariant)).collect();
    assert!(inv[..7].iter().all(|&v| v == Some(1)), "{inv:?}");
    assert_eq!(rows[7].status, Status::WindowEdge);
    assert_eq!(inv[8], Some(-1));
    assert_eq!(inv[9], Some(-1));

    let mut out = Vec::new();
    write_csv(&rows, &mut out).unwrap();
    let text = String::from_utf8(out).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some(CSV_VERSION));
    assert_eq!(lines.next().unwrap(), CSV_COLUMNS.join(","));
}

#[test]
fn stable_across_lattice_sizes() {
    let spec = SweepSpec {
        d: 2,
        ns: vec![32, 8, 16],
        ms: vec![1.0],
        fluxes: vec![FluxMatrix::from_planes(2, &[(1, 2, -2)]).unwrap()],
        mode: MassMode::Cutoff,
        options: IndexOptions::default(),
    };
    let rows = run_sweep(&spec, 0).unwrap();
    let ns: Vec<usize> = rows.iter().map(|r| r.point.n).collect();
    assert_eq!(ns, vec![8, 16, 32]);
    assert!(rows.iter().all(|r| r.report.as_ref().unwrap().invariant == -2));
}
