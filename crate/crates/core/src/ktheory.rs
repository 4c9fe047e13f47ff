//! Index-type invariants: the lattice index of a twisted Wilson-Dirac
//! operator, the continuum index of constant-flux bundles, the degree of the
//! normalized symbol, the a-priori gap bound and the invariant of an
//! almost-commuting unitary tuple.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::clifford::CliffordRep;
use crate::error::{Error, Result};
use crate::gauge::{FluxMatrix, GaugeField, LineBundleSum};
use crate::linalg::{kron, op_norm, unitarity_defect, CMat};
use crate::spectral::{self, half_signature, Inertia, InertiaMethod, MinAbsMethod};
use crate::wilson::{MassMode, WilsonOperator};

/// Orientation of the lattice index relative to `Pf(K)`, fixed once from
/// `d = 2, N = 16, K_12 = 1, m = 1` and never adjusted.
pub const SIGMA: i64 = 1;

#[derive(Debug, Clone, Copy)]
pub struct IndexOptions {
    /// Zero threshold; `None` means `1e-8 ||H||_inf`.
    pub tol: Option<f64>,
    pub method: InertiaMethod,
}

impl Default for IndexOptions {
    fn default() -> Self {
        Self {
            tol: None,
            method: InertiaMethod::Auto,
        }
    }
}

#[derive(Debug, Clone)]
pub struct IndexReport {
    pub invariant: i64,
    pub inertia: Inertia,
    pub mass_mode: MassMode,
    /// Physical mass as given by the caller.
    pub m: f64,
    /// Dimensionless mass used for assembly.
    pub mu: f64,
    pub curvature_estimate: f64,
    /// `4 d^2 ||R||_est`, the constant-mass threshold as literally stated.
    pub m0_estimate: f64,
    /// `N^2 gap^2 - (N^2 mu^2 - 4 d^2 ||R||)` when `mu <= 1` and the gap is
    /// known.
    pub bound_margin: Option<f64>,
    pub continuum_index: Option<i64>,
    pub agrees: Option<bool>,
    /// `n_+ - n_+(gamma)` with `gamma` acting on the whole space.
    pub remark_value: i64,
    /// `mu` inside `(0, 2)`.
    pub in_first_window: bool,
}

impl IndexReport {
    /// `I` equals `n_+(A) - n_+(gamma)`.
    pub fn remark_identity_holds(&self) -> bool {
        self.remark_value == self.invariant
    }
}

pub fn mu_for(m: f64, mode: MassMode, n: usize) -> f64 {
    match mode {
        MassMode::Cutoff => m,
        MassMode::Constant => m / n as f64,
    }
}

pub fn lattice_index(f: &GaugeField, m: f64, mode: MassMode) -> Result<IndexReport> {
    lattice_index_with(f, m, mode, IndexOptions::default())
}

/// Assembles at `mu = m` (cutoff) or `mu = m / N` (constant) and reads `I`
/// off the inertia. Masses outside the first window are allowed (sweeps cross
/// window boundaries on purpose); `in_first_window` records it.
pub fn lattice_index_with(f: &GaugeField, m: f64, mode: MassMode, opts: IndexOptions) -> Result<IndexReport> {
    if !m.is_finite() {
        return Err(Error::OutOfRange(format!("mass {m}")));
    }
    if mode == MassMode::Constant && m <= 0.0 {
        return Err(Error::OutOfRange(format!("constant-mode mass must be positive, got {m}")));
    }
    let g = f.geometry();
    let d = g.d();
    let cl = CliffordRep::new(d)?;
    let mu = mu_for(m, mode, g.n());
    let op = WilsonOperator::assemble(f, &cl, mu, mode)?;
    let inertia = spectral::operator_inertia(&op, opts.tol, opts.method)?;
    inertia.require_invertible(mu)?;
    let invariant = half_signature(&inertia)?
        .as_integer()
        .expect("assembled operators have even dimension");

    let curvature_estimate = f.curvature_norm();
    let m0_estimate = 4.0 * (d * d) as f64 * curvature_estimate;
    let nf = g.n() as f64;
    let bound_margin = match inertia.gap {
        Some(gap) if mu <= 1.0 => Some(nf * nf * gap * gap - (nf * nf * mu * mu - m0_estimate)),
        _ => None,
    };
    let continuum_index = f.topology().map(bundle_index).transpose()?;
    let agrees = continuum_index.map(|c| invariant == SIGMA * c);
    let gamma_plus = cl.grading_signs().iter().filter(|&&s| s > 0.0).count() * g.num_sites() * f.rank();
    Ok(IndexReport {
        invariant,
        inertia,
        mass_mode: mode,
        m,
        mu,
        curvature_estimate,
        m0_estimate,
        bound_margin,
        continuum_index,
        agrees,
        remark_value: inertia.n_plus as i64 - gamma_plus as i64,
        in_first_window: mu > 0.0 && mu < 2.0,
    })
}

/// `Pf(K)` by expansion along the first row.
pub fn continuum_index(k: &FluxMatrix) -> Result<i64> {
    let d = k.d();
    if !d.is_multiple_of(2) {
        return Err(Error::OddDimension(d));
    }
    let idx: Vec<usize> = (0..d).collect();
    Ok(pfaffian(k, &idx))
}

fn pfaffian(k: &FluxMatrix, idx: &[usize]) -> i64 {
    if idx.is_empty() {
        return 1;
    }
    let first = idx[0];
    let mut total = 0;
    for p in 1..idx.len() {
        let a = k.get(first, idx[p]);
        if a == 0 {
            continue;
        }
        let rest: Vec<usize> = idx[1..].iter().enumerate().filter(|&(q, _)| q + 1 != p).map(|(_, &i)| i).collect();
        let sign = if p % 2 == 1 { 1 } else { -1 };
        total += sign * a * pfaffian(k, &rest);
    }
    total
}

/// Index of a direct sum of line bundles: the sum of the Pfaffians.
pub fn bundle_index(b: &LineBundleSum) -> Result<i64> {
    b.summands.iter().map(continuum_index).sum()
}

/// Default seeding resolution per axis for [`symbol_degree`].
pub fn default_degree_resolution(d: usize) -> usize {
    match d {
        2 => 32,
        4 => 10,
        _ => 6,
    }
}

/// Degree of `F = v / |v|` with `v(k) = (W(k) + mu, sin 2 pi k_1, ..,
/// sin 2 pi k_d)`, by counting signed preimages of a regular value near the
/// north pole. Preimages are found by Newton's method seeded from a
/// `resolution^d` grid; the count is repeated at `2 * resolution` and must
/// agree.
pub fn symbol_degree(d: usize, mu: f64, resolution: usize) -> Result<i64> {
    if d == 0 || !d.is_multiple_of(2) {
        return Err(Error::OddDimension(d));
    }
    if resolution < 2 {
        return Err(Error::OutOfRange("resolution must be at least 2".into()));
    }
    if !mu.is_finite() {
        return Err(Error::OutOfRange(format!("mass {mu}")));
    }
    for b in 0..=d {
        if (mu - 2.0 * b as f64).abs() < 1e-9 {
            return Err(Error::WindowBoundary(mu));
        }
    }
    let coarse = degree_at(d, mu, resolution)?;
    let fine = degree_at(d, mu, 2 * resolution)?;
    if coarse != fine {
        return Err(Error::DegreeUnstable { coarse, fine });
    }
    Ok(coarse)
}

const DEGREE_RETRIES: usize = 6;

fn degree_at(d: usize, mu: f64, res: usize) -> Result<i64> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xde9e_u64 ^ (d as u64) << 8);
    for _ in 0..DEGREE_RETRIES {
        // target near the north pole, tilted by a fixed-seed random direction
        let mut y = DVector::<f64>::zeros(d + 1);
        y[0] = 1.0;
        for j in 1..=d {
            y[j] = rng.gen_range(-0.15..0.15);
        }
        y /= y.norm();
        if let Some(deg) = count_preimages(d, mu, res, &y) {
            return Ok(deg);
        }
    }
    Err(Error::DegreeNotCertified(DEGREE_RETRIES))
}

fn symbol_vector(k: &[f64], mu: f64) -> DVector<f64> {
    let d = k.len();
    let mut v = DVector::zeros(d + 1);
    let mut w = mu;
    for j in 0..d {
        let t = 2.0 * PI * k[j];
        w += t.cos() - 1.0;
        v[j + 1] = t.sin();
    }
    v[0] = w;
    v
}

/// Columns `dv/dk_j`, shape `(d + 1) x d`.
fn symbol_jacobian(k: &[f64]) -> DMatrix<f64> {
    let d = k.len();
    let mut jac = DMatrix::zeros(d + 1, d);
    for j in 0..d {
        let t = 2.0 * PI * k[j];
        jac[(0, j)] = -2.0 * PI * t.sin();
        jac[(j + 1, j)] = 2.0 * PI * t.cos();
    }
    jac
}

/// Signed count, or `None` if some preimage is too close to critical.
fn count_preimages(d: usize, mu: f64, res: usize, y: &DVector<f64>) -> Option<i64> {
    // orthonormal basis of y-perp: the last d columns of a full QR of y
    let mut m = DMatrix::<f64>::zeros(d + 1, d + 1);
    m.set_column(0, y);
    for j in 1..=d {
        m[(j, j)] = 1.0;
    }
    let q = m.qr().q();
    let basis = q.columns(1, d).into_owned();

    let lipschitz = 2.0 * PI * ((d + 1) as f64).sqrt();
    let cell = (d as f64).sqrt() / res as f64;
    let mut roots: Vec<Vec<f64>> = Vec::new();
    let mut total = 0i64;
    let mut k = vec![0.0; d];
    let mut counter = vec![0usize; d];
    loop {
        for j in 0..d {
            k[j] = counter[j] as f64 / res as f64;
        }
        let g = basis.transpose() * symbol_vector(&k, mu);
        if g.norm() <= lipschitz * cell {
            if let Some(root) = newton(&k, mu, &basis) {
                let v = symbol_vector(&root, mu);
                let fresh = !roots.iter().any(|r| torus_dist(r, &root) < 1e-7);
                if fresh && v.dot(y) > 0.0 {
                    let mut full = DMatrix::<f64>::zeros(d + 1, d + 1);
                    full.set_column(0, y);
                    full.columns_mut(1, d).copy_from(&symbol_jacobian(&root));
                    let det = full.determinant();
                    let scale = (2.0 * PI).powi(d as i32) * v.norm().max(1e-300);
                    if det.abs() < 1e-6 * scale.max(1.0) {
                        return None;
                    }
                    total += det.signum() as i64;
                    roots.push(root);
                }
            }
        }
        // odometer
        let mut j = 0;
        loop {
            if j == d {
                return Some(total);
            }
            counter[j] += 1;
            if counter[j] < res {
                break;
            }
            counter[j] = 0;
            j += 1;
        }
    }
}

fn torus_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| {
            let t = (x - y).rem_euclid(1.0);
            t.min(1.0 - t)
        })
        .fold(0.0, f64::max)
}

fn newton(seed: &[f64], mu: f64, basis: &DMatrix<f64>) -> Option<Vec<f64>> {
    let mut k = seed.to_vec();
    for _ in 0..60 {
        let g = basis.transpose() * symbol_vector(&k, mu);
        if g.norm() < 1e-13 {
            return Some(k.iter().map(|x| x.rem_euclid(1.0)).collect());
        }
        let jg = basis.transpose() * symbol_jacobian(&k);
        let step = jg.lu().solve(&g)?;
        let len = step.norm();
        // damp long steps; a preimage is never more than a cell away once found
        let s = if len > 0.1 { 0.1 / len } else { 1.0 };
        for j in 0..k.len() {
            k[j] -= s * step[j];
        }
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundStatus {
    Pass,
    Fail,
    /// `m^2 - 4 d^2 ||R|| <= 0`: nothing to check.
    Vacuous,
}

impl BoundStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            BoundStatus::Pass => "pass",
            BoundStatus::Fail => "fail",
            BoundStatus::Vacuous => "vacuous",
        }
    }
}

#[derive(Debug, Clone)]
pub struct BoundReport {
    pub m: f64,
    pub kappa: f64,
    /// `lambda_min((kappa D_W + m gamma)^2)`
    pub lambda_min_sq: f64,
    /// `m^2 - 4 d^2 ||R||_est`
    pub rhs: f64,
    pub margin: f64,
    pub curvature_estimate: f64,
    pub status: BoundStatus,
}

/// Compares the smallest eigenvalue of `(kappa D_W + m gamma)^2` with
/// `m^2 - 4 d^2 ||R||_est`; requires `0 < m <= kappa <= N`.
pub fn verify_gap_bound(f: &GaugeField, cl: &CliffordRep, m: f64, kappa: f64) -> Result<BoundReport> {
    let n = f.geometry().n() as f64;
    if !(m > 0.0 && m <= kappa && kappa <= n) {
        return Err(Error::OutOfRange(format!("need 0 < m <= kappa <= N, got m = {m}, kappa = {kappa}, N = {n}")));
    }
    let d = f.d();
    // kappa D_W + m gamma = kappa * H(mu = m / kappa)
    let op = WilsonOperator::assemble(f, cl, m / kappa, MassMode::Cutoff)?;
    let method = if op.dim() <= 2048 { MinAbsMethod::Bisection } else { MinAbsMethod::Iterative };
    let lam = kappa * spectral::min_abs_eigenvalue(&op, method)?;
    let curvature_estimate = f.curvature_norm();
    let rhs = m * m - 4.0 * (d * d) as f64 * curvature_estimate;
    let margin = lam * lam - rhs;
    let status = if rhs <= 0.0 {
        BoundStatus::Vacuous
    } else if margin >= -1e-9 {
        BoundStatus::Pass
    } else {
        BoundStatus::Fail
    };
    Ok(BoundReport {
        m,
        kappa,
        lambda_min_sq: lam * lam,
        rhs,
        margin,
        curvature_estimate,
        status,
    })
}

#[derive(Debug, Clone)]
pub struct MassModeReport {
    pub cutoff: IndexReport,
    pub constant: IndexReport,
    pub equal: bool,
    /// `m_const <= N`, needed for the gap bound along the homotopy.
    pub within_kappa_range: bool,
    /// `m_const > 4 d^2 ||R||_est`.
    pub above_literal_threshold: bool,
}

/// Compares the cutoff-mode index at `m_cutoff` with the constant-mode index
/// at `m_const`. Rejects `m_const^2 <= 4 d^2 ||R||_est`, where nothing
/// relates the two.
pub fn mass_mode_equivalence(f: &GaugeField, m_cutoff: f64, m_const: f64) -> Result<MassModeReport> {
    let d = f.d();
    let bound = 4.0 * (d * d) as f64 * f.curvature_norm();
    if !(m_const > 0.0) || m_const * m_const <= bound {
        return Err(Error::OutOfRange(format!(
            "constant mass {m_const} gives no gap guarantee: need m^2 > 4 d^2 ||R|| = {bound:.4}"
        )));
    }
    let cutoff = lattice_index(f, m_cutoff, MassMode::Cutoff)?;
    let constant = lattice_index(f, m_const, MassMode::Constant)?;
    Ok(MassModeReport {
        equal: cutoff.invariant == constant.invariant,
        within_kappa_range: m_const <= f.geometry().n() as f64,
        above_literal_threshold: m_const > bound,
        cutoff,
        constant,
    })
}

/// `d` unitary `n x n` matrices.
#[derive(Debug, Clone)]
pub struct UnitaryTuple {
    d: usize,
    n: usize,
    unitaries: Vec<CMat>,
    epsilon: f64,
}

pub const TUPLE_UNITARY_TOL: f64 = 1e-12;

impl UnitaryTuple {
    pub fn new(unitaries: Vec<CMat>) -> Result<Self> {
        Self::with_tolerance(unitaries, TUPLE_UNITARY_TOL)
    }

    pub fn with_tolerance(unitaries: Vec<CMat>, tol: f64) -> Result<Self> {
        let d = unitaries.len();
        if d == 0 {
            return Err(Error::OutOfRange("empty tuple".into()));
        }
        let n = unitaries[0].nrows();
        for u in &unitaries {
            if u.shape() != (n, n) {
                return Err(Error::DimensionMismatch("tuple matrices differ in size".into()));
            }
            let defect = unitarity_defect(u);
            if !(defect <= tol) {
                return Err(Error::NotUnitary(defect));
            }
        }
        let mut epsilon: f64 = 0.0;
        for j in 0..d {
            for l in j + 1..d {
                let c = &unitaries[j] * &unitaries[l] - &unitaries[l] * &unitaries[j];
                epsilon = epsilon.max(op_norm(&c));
            }
        }
        Ok(Self { d, n, unitaries, epsilon })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn unitaries(&self) -> &[CMat] {
        &self.unitaries
    }

    /// `max_{j < l} ||[U_j, U_l]||`
    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// `V U_j V*` for every `j`.
    pub fn conjugated(&self, v: &CMat) -> Result<Self> {
        Self::with_tolerance(self.unitaries.iter().map(|u| v * u * v.adjoint()).collect(), 1e-10)
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.d != other.d {
            return Err(Error::DimensionMismatch("tuples of different length".into()));
        }
        Self::new(
            self.unitaries
                .iter()
                .zip(&other.unitaries)
                .map(|(a, b)| crate::linalg::direct_sum(a, b))
                .collect(),
        )
    }

    /// The `d` big shift unitaries of a lattice gauge field.
    pub fn from_gauge_field(f: &GaugeField) -> Result<Self> {
        Self::with_tolerance((0..f.d()).map(|j| f.shift_unitary(j)).collect(), 1e-10)
    }

    /// `sum_j 1/2 (U_j - U_j*) (x) c_j + (sum_j (1/2 (U_j + U_j*) - 1) + m) (x) g`
    pub fn dirac_matrix(&self, cl: &CliffordRep, m: f64) -> Result<CMat> {
        if cl.d() != self.d {
            return Err(Error::DimensionMismatch(format!("tuple of length {} with d = {}", self.d, cl.d())));
        }
        let id = CMat::identity(self.n, self.n);
        let half = Complex64::new(0.5, 0.0);
        let mut mass = &id * Complex64::new(m, 0.0);
        let mut h = CMat::zeros(self.n * cl.dim_s(), self.n * cl.dim_s());
        for (u, c) in self.unitaries.iter().zip(cl.generators()) {
            let ua = u.adjoint();
            h += kron(&((u - &ua) * half), c);
            mass += (u + &ua) * half - &id;
        }
        h += kron(&mass, cl.grading());
        Ok(h)
    }
}

/// Clock `diag(zeta^k)` and cyclic shift `e_k -> e_{k+1}`, `zeta = e^{2 pi i / n}`.
pub fn clock_shift(n: usize) -> Result<UnitaryTuple> {
    if n < 2 {
        return Err(Error::OutOfRange("clock/shift needs n >= 2".into()));
    }
    let mut clock = CMat::zeros(n, n);
    let mut shift = CMat::zeros(n, n);
    for k in 0..n {
        clock[(k, k)] = Complex64::from_polar(1.0, 2.0 * PI * k as f64 / n as f64);
        shift[((k + 1) % n, k)] = Complex64::new(1.0, 0.0);
    }
    UnitaryTuple::with_tolerance(vec![clock, shift], 1e-12)
}

/// `I` of the Wilson-Dirac matrix built from the tuple; requires `0 < m < 2`.
pub fn acm_invariant(t: &UnitaryTuple, m: f64) -> Result<i64> {
    if !(m > 0.0 && m < 2.0) {
        return Err(Error::OutOfRange(format!("acm invariant needs 0 < m < 2, got {m}")));
    }
    let cl = CliffordRep::new(t.d())?;
    let h = t.dirac_matrix(&cl, m)?;
    let i = spectral::inertia(&h, None)?;
    if i.n_zero > 0 {
        return Err(Error::AcmSingular);
    }
    Ok(half_signature(&i)?.as_integer().expect("even dimension"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::LatticeGeometry;

    #[test]
    fn pfaffian_small_cases() {
        let k = FluxMatrix::from_planes(2, &[(1, 2, 3)]).unwrap();
        assert_eq!(continuum_index(&k).unwrap(), 3);
        let k = FluxMatrix::from_planes(4, &[(1, 2, 2), (3, 4, -1)]).unwrap();
        assert_eq!(continuum_index(&k).unwrap(), -2);
        assert_eq!(continuum_index(&FluxMatrix::zero(4)).unwrap(), 0);
        assert!(matches!(continuum_index(&FluxMatrix::zero(3)), Err(Error::OddDimension(3))));
    }

    #[test]
    fn degree_examples() {
        assert_eq!(symbol_degree(2, 1.0, 16).unwrap(), 1);
        assert_eq!(symbol_degree(2, -1.0, 16).unwrap(), 0);
        assert!(matches!(symbol_degree(2, 2.0, 16), Err(Error::WindowBoundary(_))));
        assert!(matches!(symbol_degree(3, 1.0, 16), Err(Error::OddDimension(3))));
    }

    #[test]
    fn identity_tuple() {
        let t = UnitaryTuple::new(vec![CMat::identity(3, 3); 2]).unwrap();
        assert_eq!(t.epsilon(), 0.0);
        assert_eq!(acm_invariant(&t, 1.0).unwrap(), 0);
        assert!(acm_invariant(&t, 2.5).is_err());
    }

    #[test]
    fn clock_shift_commutator() {
        let t = clock_shift(6).unwrap();
        let z = Complex64::from_polar(1.0, 2.0 * PI / 6.0);
        assert!((t.epsilon() - (z - 1.0).norm()).abs() < 1e-12);
    }

    #[test]
    fn trivial_index_zero() {
        let f = GaugeField::trivial(LatticeGeometry::new(2, 6).unwrap(), 1).unwrap();
        let r = lattice_index(&f, 1.0, MassMode::Cutoff).unwrap();
        assert_eq!(r.invariant, 0);
        assert_eq!(r.continuum_index, Some(0));
        assert_eq!(r.agrees, Some(true));
        assert!(r.remark_identity_holds());
    }

    #[test]
    fn zero_mass_is_singular() {
        let f = GaugeField::trivial(LatticeGeometry::new(2, 8).unwrap(), 1).unwrap();
        assert!(matches!(lattice_index(&f, 0.0, MassMode::Cutoff), Err(Error::SingularOperator { .. })));
    }
}
