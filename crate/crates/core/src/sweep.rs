//! Parameter sweeps over flux, lattice size and mass, with CSV output.

use std::io::Write;

use crate::error::{Error, Result};
use crate::gauge::{FluxMatrix, GaugeField};
use crate::ktheory::{lattice_index_with, IndexOptions, IndexReport};
use crate::lattice::LatticeGeometry;
use crate::wilson::MassMode;

/// First line of every sweep CSV; bump when columns change.
pub const CSV_VERSION: &str = "# wilson-sweep v1";

pub const CSV_COLUMNS: [&str; 15] = [
    "d", "N", "flux", "m", "mode", "mu", "I", "n_plus", "n_minus", "n_zero", "gap", "curvature", "continuum", "agrees",
    "status",
];

/// Gap below which a point is flagged even though it was invertible.
pub const SMALL_GAP: f64 = 1e-3;

/// Distance of `mu` from a window boundary `{0, 2, .., 2d}` that gets flagged.
pub const WINDOW_EDGE: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    Singular,
    SmallGap,
    WindowEdge,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Singular => "singular",
            Status::SmallGap => "small-gap",
            Status::WindowEdge => "window-edge",
        }
    }
}

#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub d: usize,
    pub ns: Vec<usize>,
    pub ms: Vec<f64>,
    pub fluxes: Vec<FluxMatrix>,
    pub mode: MassMode,
    pub options: IndexOptions,
}

#[derive(Debug, Clone)]
pub struct SweepPoint {
    pub flux: FluxMatrix,
    pub n: usize,
    pub m: f64,
}

#[derive(Debug, Clone)]
pub struct SweepRow {
    pub d: usize,
    /// Contents of the `flux` column.
    pub label: String,
    pub point: SweepPoint,
    pub mode: MassMode,
    pub mu: f64,
    pub report: Option<IndexReport>,
    pub status: Status,
}

impl SweepSpec {
    /// Points in row order: fluxes as given, then `N` ascending, then `m`
    /// ascending.
    pub fn points(&self) -> Vec<SweepPoint> {
        let mut ns = self.ns.clone();
        ns.sort_unstable();
        ns.dedup();
        let mut ms = self.ms.clone();
        ms.sort_by(f64::total_cmp);
        ms.dedup();
        let mut out = Vec::new();
        for flux in &self.fluxes {
            for &n in &ns {
                for &m in &ms {
                    out.push(SweepPoint { flux: flux.clone(), n, m });
                }
            }
        }
        out
    }

    fn validate(&self) -> Result<()> {
        if self.ns.is_empty() || self.ms.is_empty() || self.fluxes.is_empty() {
            return Err(Error::OutOfRange("sweep has an empty axis".into()));
        }
        for f in &self.fluxes {
            if f.d() != self.d {
                return Err(Error::InvalidFlux(format!("flux for d = {} in a d = {} sweep", f.d(), self.d)));
            }
        }
        for &n in &self.ns {
            LatticeGeometry::new(self.d, n)?;
        }
        Ok(())
    }
}

fn run_point(spec: &SweepSpec, p: &SweepPoint) -> Result<SweepRow> {
    let geom = LatticeGeometry::new(spec.d, p.n)?;
    let f = GaugeField::constant_flux(geom, &p.flux)?;
    let mu = crate::ktheory::mu_for(p.m, spec.mode, p.n);
    let near_edge = (0..=spec.d).any(|b| (mu - 2.0 * b as f64).abs() < WINDOW_EDGE);
    let (report, status) = match lattice_index_with(&f, p.m, spec.mode, spec.options) {
        Ok(r) => {
            let status = if r.inertia.gap.is_some_and(|g| g < SMALL_GAP) {
                Status::SmallGap
            } else if near_edge {
                Status::WindowEdge
            } else {
                Status::Ok
            };
            (Some(r), status)
        }
        Err(Error::SingularOperator { .. }) => (None, Status::Singular),
        Err(e) => return Err(e),
    };
    Ok(SweepRow {
        d: spec.d,
        label: p.flux.label(),
        point: p.clone(),
        mode: spec.mode,
        mu,
        report,
        status,
    })
}

/// Runs every point, fanning out over `threads` workers (0 = all cores).
/// Rows come back in [`SweepSpec::points`] order regardless of scheduling.
pub fn run_sweep(spec: &SweepSpec, threads: usize) -> Result<Vec<SweepRow>> {
    spec.validate()?;
    let points = spec.points();
    let threads = resolve_threads(threads).min(points.len()).max(1);
    let mut slots: Vec<Option<Result<SweepRow>>> = (0..points.len()).map(|_| None).collect();
    if threads == 1 {
        for (slot, p) in slots.iter_mut().zip(&points) {
            *slot = Some(run_point(spec, p));
        }
    } else {
        let next = std::sync::atomic::AtomicUsize::new(0);
        let done = std::sync::Mutex::new(&mut slots);
        std::thread::scope(|s| {
            for _ in 0..threads {
                s.spawn(|| loop {
                    let i = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                    if i >= points.len() {
                        break;
                    }
                    let row = run_point(spec, &points[i]);
                    done.lock().unwrap()[i] = Some(row);
                });
            }
        });
    }
    slots.into_iter().map(|s| s.expect("every point visited")).collect()
}

/// `WILSON_THREADS`, with unset, empty or `0` meaning all cores.
pub fn threads_from_env() -> usize {
    std::env::var("WILSON_THREADS")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(0)
}

fn resolve_threads(t: usize) -> usize {
    if t == 0 {
        std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
    } else {
        t
    }
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

pub fn write_csv<W: Write>(rows: &[SweepRow], mut w: W) -> Result<()> {
    writeln!(w, "{CSV_VERSION}")?;
    let mut out = csv::Writer::from_writer(w);
    out.write_record(CSV_COLUMNS)?;
    for row in rows {
        let r = row.report.as_ref();
        out.write_record([
            row.d.to_string(),
            row.point.n.to_string(),
            row.label.clone(),
            row.point.m.to_string(),
            row.mode.as_str().to_string(),
            row.mu.to_string(),
            opt(r.map(|r| r.invariant)),
            opt(r.map(|r| r.inertia.n_plus)),
            opt(r.map(|r| r.inertia.n_minus)),
            opt(r.map(|r| r.inertia.n_zero)),
            opt(r.and_then(|r| r.inertia.gap)),
            opt(r.map(|r| r.curvature_estimate)),
            opt(r.and_then(|r| r.continuum_index)),
            opt(r.and_then(|r| r.agrees)),
            row.status.as_str().to_string(),
        ])?;
    }
    out.flush()?;
    Ok(())
}
