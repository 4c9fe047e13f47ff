mod args;

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::*;
use wilson_core::acceptance::{self, Profile, Settings};
use wilson_core::ktheory::{self, IndexOptions, UnitaryTuple};
use wilson_core::sweep::{self, SweepPoint, SweepRow, SweepSpec};
use wilson_core::wgf;
use wilson_core::{CliffordRep, Error, FluxMatrix, GaugeField, InertiaMethod, LatticeGeometry, MassMode};

/// `println!` that tolerates a closed pipe (`wilson ... | head`).
macro_rules! say {
    ($($t:tt)*) => {{
        let _ = writeln!(io::stdout().lock(), $($t)*);
    }};
}

const EXIT_USAGE: u8 = 1;
const EXIT_SINGULAR: u8 = 2;
const EXIT_SELFTEST: u8 = 3;

enum Failure {
    Usage(String),
    Singular(String),
    Selftest,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::SingularOperator { .. } => Failure::Singular(format!("{e}\nhint: decrease a (increase N) or adjust m")),
            Error::Singular(_) | Error::AcmSingular | Error::WindowBoundary(_) => Failure::Singular(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    let result = match cli.command {
        Command::Index(a) => cmd_index(a),
        Command::Gap(a) => cmd_gap(a),
        Command::Degree(a) => cmd_degree(a),
        Command::Acm(a) => cmd_acm(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::VerifyBound(a) => cmd_verify_bound(a),
        Command::Selftest(a) => cmd_selftest(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Singular(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_SINGULAR)
        }
        Err(Failure::Selftest) => ExitCode::from(EXIT_SELFTEST),
    }
}

fn parse_flux_entry(s: &str) -> Result<(usize, usize, String), Failure> {
    let bad = || Failure::Usage(format!("flux entry {s:?} is not of the form j,l=k"));
    let (plane, value) = s.split_once('=').ok_or_else(bad)?;
    let (j, l) = plane.split_once(',').ok_or_else(bad)?;
    let j = j.trim().parse().map_err(|_| bad())?;
    let l = l.trim().parse().map_err(|_| bad())?;
    Ok((j, l, value.trim().to_string()))
}

fn parse_flux(d: usize, entries: &[String]) -> Result<FluxMatrix, Failure> {
    let mut planes = Vec::new();
    for e in entries {
        let (j, l, v) = parse_flux_entry(e)?;
        let v = v.parse().map_err(|_| Failure::Usage(format!("flux value in {e:?} is not an integer")))?;
        planes.push((j, l, v));
    }
    Ok(FluxMatrix::from_planes(d, &planes)?)
}

fn load_field(a: &FieldArgs) -> Result<(GaugeField, String), Failure> {
    if let Some(path) = &a.input {
        let (f, _) = wgf::read_wgf(BufReader::new(File::open(path)?))?;
        return Ok((f, format!("file:{}", path.display())));
    }
    let k = parse_flux(a.d, &a.flux)?;
    let f = GaugeField::constant_flux(LatticeGeometry::new(a.d, a.n)?, &k)?;
    Ok((f, k.label()))
}

fn mass_mode(m: Mode) -> MassMode {
    match m {
        Mode::Cutoff => MassMode::Cutoff,
        Mode::Constant => MassMode::Constant,
    }
}

fn cmd_index(a: IndexArgs) -> Outcome {
    let (f, label) = load_field(&a.field)?;
    let mode = mass_mode(a.mode);
    let method = match a.method {
        Method::Auto => InertiaMethod::Auto,
        Method::Dense => InertiaMethod::Dense,
        Method::Band => InertiaMethod::Band,
    };
    if let Some(path) = &a.export_mm {
        let cl = CliffordRep::new(f.d())?;
        let mu = ktheory::mu_for(a.m, mode, f.geometry().n());
        let op = wilson_core::WilsonOperator::assemble(&f, &cl, mu, mode)?;
        op.write_matrix_market(BufWriter::new(File::create(path)?))?;
    }
    if mode == MassMode::Cutoff && !(a.m > 0.0 && a.m < 2.0) {
        eprintln!("warning: m = {} is outside (0, 2); the index is taken in another mass window", a.m);
    }
    let r = ktheory::lattice_index_with(&f, a.m, mode, IndexOptions { tol: a.tol, method })?;
    if mode == MassMode::Constant && a.m * a.m <= r.m0_estimate {
        eprintln!(
            "warning: m^2 = {} <= 4 d^2 ||R|| = {:.4}; no a-priori gap guarantee",
            a.m * a.m,
            r.m0_estimate
        );
    }
    let i = &r.inertia;
    say!("I = {}", r.invariant);
    say!("inertia: n+ = {} n- = {} n0 = {} (tol {:.3e})", i.n_plus, i.n_minus, i.n_zero, i.tol);
    match i.gap {
        Some(g) => say!("gap = {g:.9}"),
        None => say!("gap = n/a (band path)"),
    }
    say!("mu = {} ({})", r.mu, r.mass_mode.as_str());
    say!("curvature estimate = {:.6}", r.curvature_estimate);
    say!("m0 estimate (4 d^2 ||R||) = {:.6}", r.m0_estimate);
    if let Some(b) = r.bound_margin {
        say!("bound margin = {b:.6e}");
    }
    if let Some(c) = r.continuum_index {
        say!("continuum index = {c}");
    }
    if let Some(ok) = r.agrees {
        say!("agrees = {ok}");
    }
    if let Some(path) = &a.csv {
        let g = f.geometry();
        let row = SweepRow {
            d: g.d(),
            label,
            point: SweepPoint {
                flux: FluxMatrix::zero(g.d()),
                n: g.n(),
                m: a.m,
            },
            mode,
            mu: r.mu,
            status: if i.gap.is_some_and(|x| x < sweep::SMALL_GAP) {
                sweep::Status::SmallGap
            } else {
                sweep::Status::Ok
            },
            report: Some(r),
        };
        sweep::write_csv(&[row], BufWriter::new(File::create(path)?))?;
    }
    Ok(())
}

fn cmd_gap(a: GapArgs) -> Outcome {
    let cl = CliffordRep::new(a.d)?;
    let g = wilson_core::wilson::symbol_gap(&cl, a.m, a.grid)?;
    say!("{:.6}", g.value);
    eprintln!("grid {} converged {}", g.grid, g.converged);
    Ok(())
}

fn cmd_degree(a: DegreeArgs) -> Outcome {
    let res = a.resolution.unwrap_or_else(|| ktheory::default_degree_resolution(a.d));
    say!("{}", ktheory::symbol_degree(a.d, a.m, res)?);
    Ok(())
}

fn cmd_acm(a: AcmArgs) -> Outcome {
    let t: UnitaryTuple = match (&a.input, a.builtin) {
        (Some(path), _) => wgf::read_wut(BufReader::new(File::open(path)?))?.0,
        (None, Some(Builtin::ClockShift)) => ktheory::clock_shift(a.n)?,
        (None, None) => return Err(Failure::Usage("need --input or --builtin".into())),
    };
    let v = ktheory::acm_invariant(&t, a.m)?;
    say!("{v}");
    eprintln!("d = {} n = {} epsilon = {:.6}", t.d(), t.n(), t.epsilon());
    Ok(())
}

fn parse_masses(s: &str) -> Result<Vec<f64>, Failure> {
    let bad = || Failure::Usage(format!("cannot parse masses {s:?}"));
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        [start, stop, step] => {
            let (a, b, h): (f64, f64, f64) = (
                start.parse().map_err(|_| bad())?,
                stop.parse().map_err(|_| bad())?,
                step.parse().map_err(|_| bad())?,
            );
            if !(h > 0.0) || b < a {
                return Err(bad());
            }
            let count = ((b - a) / h + 1e-9).floor() as usize;
            if count > 100_000 {
                return Err(bad());
            }
            // a + i h, rounded to 12 digits so ranges print cleanly
            Ok((0..=count).map(|i| ((a + i as f64 * h) * 1e12).round() / 1e12).collect())
        }
        [_] => s.split(',').map(|x| x.trim().parse().map_err(|_| bad())).collect(),
        _ => Err(bad()),
    }
}

fn cmd_sweep(a: SweepArgs) -> Outcome {
    let base = parse_flux(a.d, &a.flux)?;
    let fluxes = match &a.vary {
        None => vec![base],
        Some(v) => {
            let (j, l, range) = parse_flux_entry(v)?;
            let bad = || Failure::Usage(format!("--vary {v:?} is not of the form j,l=a:b"));
            let (lo, hi) = range.split_once(':').ok_or_else(bad)?;
            let (lo, hi): (i64, i64) = (lo.parse().map_err(|_| bad())?, hi.parse().map_err(|_| bad())?);
            if hi < lo {
                return Err(bad());
            }
            (lo..=hi)
                .map(|k| Ok(base.add(&FluxMatrix::from_planes(a.d, &[(j, l, k)])?)?))
                .collect::<Result<Vec<_>, Failure>>()?
        }
    };
    let spec = SweepSpec {
        d: a.d,
        ns: a.n.clone(),
        ms: parse_masses(&a.m)?,
        fluxes,
        mode: mass_mode(a.mode),
        options: IndexOptions::default(),
    };
    let threads = a.threads.unwrap_or_else(sweep::threads_from_env);
    let rows = sweep::run_sweep(&spec, threads)?;
    match &a.out {
        Some(p) => sweep::write_csv(&rows, BufWriter::new(File::create(p)?))?,
        None => sweep::write_csv(&rows, io::stdout().lock())?,
    }
    Ok(())
}

fn cmd_verify_bound(a: BoundArgs) -> Outcome {
    let (f, _) = load_field(&a.field)?;
    let cl = CliffordRep::new(f.d())?;
    let kappa = a.kappa.unwrap_or(f.geometry().n() as f64);
    let r = ktheory::verify_gap_bound(&f, &cl, a.m, kappa)?;
    say!("status = {}", r.status.as_str());
    say!("lambda_min^2 = {:.9e}", r.lambda_min_sq);
    say!("m^2 - 4 d^2 ||R|| = {:.9e}", r.rhs);
    say!("margin = {:.9e}", r.margin);
    Ok(())
}

fn cmd_selftest(a: SelftestArgs) -> Outcome {
    if !(a.tolerance_scale > 0.0) {
        return Err(Failure::Usage("tolerance scale must be positive".into()));
    }
    let settings = Settings {
        profile: if a.full { Profile::Full } else { Profile::Reduced },
        tolerance_scale: a.tolerance_scale,
        corrupt_clifford: a.mutate_clifford,
    };
    let ids: Vec<&str> = if a.only.is_empty() {
        acceptance::CRITERIA.iter().map(|c| c.0).collect()
    } else {
        a.only.iter().map(String::as_str).collect()
    };
    let mut outcomes = Vec::new();
    for id in ids {
        let o = acceptance::run_one(id, &settings)
            .ok_or_else(|| Failure::Usage(format!("unknown criterion {id:?}")))?;
        say!("{}", o.line());
        outcomes.push(o);
    }
    let passed = outcomes.iter().filter(|o| o.passed).count();
    say!("{passed}/{} criteria passed", outcomes.len());
    if let Some(p) = &a.csv {
        std::fs::write(p, acceptance::outcomes_csv(&outcomes)?)?;
    }
    if passed == outcomes.len() {
        Ok(())
    } else {
        Err(Failure::Selftest)
    }
}
