//! Inertia, signature and smallest-|eigenvalue| computations.
//!
//! Two inertia paths are provided and are required to agree: a dense
//! reference (Householder + Sturm counts) and a banded symmetric-indefinite
//! factorization for large operators. Neither computes a spectrum; both read
//! sign counts from pivots.

pub mod band;
pub mod dense;
pub mod fourier;
pub mod lanczos;

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::CMat;
use crate::wilson::WilsonOperator;

pub use band::BandMatrix;
pub use fourier::fourier_diagonalize;

/// Relative zero threshold, scaled by `||H||_inf`.
pub const DEFAULT_REL_TOL: f64 = 1e-8;

/// Largest dimension for which `Auto` picks the dense path.
pub const DENSE_AUTO_LIMIT: usize = 600;

const HERMITIAN_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Inertia {
    pub n_plus: usize,
    pub n_minus: usize,
    pub n_zero: usize,
    /// Smallest `|lambda|`; `Some(0.0)` when singular up to `tol`. The band
    /// path does not produce it.
    pub gap: Option<f64>,
    pub tol: f64,
}

impl Inertia {
    pub fn dim(&self) -> usize {
        self.n_plus + self.n_minus + self.n_zero
    }

    pub fn counts(&self) -> (usize, usize, usize) {
        (self.n_plus, self.n_minus, self.n_zero)
    }

    /// Componentwise sum, the inertia of a direct sum.
    pub fn add(&self, other: &Inertia) -> Inertia {
        Inertia {
            n_plus: self.n_plus + other.n_plus,
            n_minus: self.n_minus + other.n_minus,
            n_zero: self.n_zero + other.n_zero,
            gap: match (self.gap, other.gap) {
                (Some(a), Some(b)) => Some(a.min(b)),
                _ => None,
            },
            tol: self.tol.max(other.tol),
        }
    }

    /// Errors with [`Error::SingularOperator`] if any eigenvalue is classified
    /// as zero.
    pub fn require_invertible(&self, mu: f64) -> Result<&Self> {
        if self.n_zero > 0 {
            Err(Error::SingularOperator { zero_modes: self.n_zero, mu })
        } else {
            Ok(self)
        }
    }
}

/// A value in `Z/2`, stored as twice itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HalfInteger {
    pub twice: i64,
}

impl HalfInteger {
    pub fn as_integer(&self) -> Option<i64> {
        (self.twice % 2 == 0).then_some(self.twice / 2)
    }

    pub fn to_f64(&self) -> f64 {
        self.twice as f64 / 2.0
    }
}

impl fmt::Display for HalfInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_integer() {
            Some(i) => write!(f, "{i}"),
            None => write!(f, "{}/2", self.twice),
        }
    }
}

/// `(n_plus - n_minus) / 2`.
pub fn half_signature(i: &Inertia) -> Result<HalfInteger> {
    if i.n_zero != 0 {
        return Err(Error::Singular(i.n_zero));
    }
    Ok(HalfInteger {
        twice: i.n_plus as i64 - i.n_minus as i64,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InertiaMethod {
    Dense,
    Band,
    /// Dense up to [`DENSE_AUTO_LIMIT`], band above.
    Auto,
}

impl std::str::FromStr for InertiaMethod {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dense" => Ok(Self::Dense),
            "band" | "sparse" => Ok(Self::Band),
            "auto" => Ok(Self::Auto),
            o => Err(Error::OutOfRange(format!("unknown inertia method {o:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MinAbsMethod {
    Bisection,
    Iterative,
}

/// Row-sum norm of a dense matrix.
pub fn norm_inf(h: &CMat) -> f64 {
    h.row_iter()
        .map(|r| r.iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

pub fn check_hermitian(h: &CMat) -> Result<()> {
    if h.nrows() != h.ncols() {
        return Err(Error::DimensionMismatch(format!("{}x{} is not square", h.nrows(), h.ncols())));
    }
    let n = h.nrows();
    let scale = h.iter().map(|z| z.norm()).fold(1.0, f64::max);
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in 0..=i {
            worst = worst.max((h[(i, j)] - h[(j, i)].conj()).norm());
        }
    }
    if worst > HERMITIAN_TOL * scale {
        return Err(Error::NotHermitian(worst));
    }
    Ok(())
}

fn resolve_tol(tol: Option<f64>, norm: f64) -> Result<f64> {
    match tol {
        Some(t) if t > 0.0 && t.is_finite() => Ok(t),
        Some(t) => Err(Error::OutOfRange(format!("tolerance must be positive, got {t}"))),
        None => Ok((DEFAULT_REL_TOL * norm).max(f64::MIN_POSITIVE)),
    }
}

/// Dense inertia. Eigenvalues in `(-tol, tol)` count as zero; `tol = None`
/// uses `1e-8 ||H||_inf`.
pub fn inertia(h: &CMat, tol: Option<f64>) -> Result<Inertia> {
    check_hermitian(h)?;
    let tol = resolve_tol(tol, norm_inf(h))?;
    Ok(inertia_tridiagonal(&dense::tridiagonalize(h), tol))
}

fn inertia_tridiagonal(t: &dense::Tridiagonal, tol: f64) -> Inertia {
    let n = t.len();
    let n_minus = t.count_below(-tol);
    let n_plus = n - t.count_below(tol);
    let n_zero = n - n_plus - n_minus;
    let gap = if n_zero > 0 { 0.0 } else { min_abs_tridiagonal(t) };
    Inertia { n_plus, n_minus, n_zero, gap: Some(gap), tol }
}

fn min_abs_tridiagonal(t: &dense::Tridiagonal) -> f64 {
    if t.is_empty() {
        return f64::INFINITY;
    }
    let c = t.count_below(0.0);
    let below = (c > 0).then(|| t.eigenvalue(c - 1).abs());
    let above = (c < t.len()).then(|| t.eigenvalue(c).abs());
    below.into_iter().chain(above).fold(f64::INFINITY, f64::min)
}

/// Band inertia from two shifted factorizations: `n_plus` counts pivots of
/// `H - tol`, `n_minus` those of `H + tol`.
pub fn inertia_band(b: &BandMatrix, tol: Option<f64>) -> Result<Inertia> {
    let tol = resolve_tol(tol, b.norm_inf())?;
    let n = b.n();
    let n_plus = b.shifted(tol).factor_inertia().positive;
    let n_minus = b.shifted(-tol).factor_inertia().negative;
    Ok(Inertia {
        n_plus,
        n_minus,
        n_zero: n - n_plus - n_minus,
        gap: None,
        tol,
    })
}

/// Inertia of an assembled operator (Hermitian by construction).
pub fn operator_inertia(op: &WilsonOperator, tol: Option<f64>, method: InertiaMethod) -> Result<Inertia> {
    let dense = match method {
        InertiaMethod::Dense => true,
        InertiaMethod::Band => false,
        InertiaMethod::Auto => op.dim() <= DENSE_AUTO_LIMIT,
    };
    if dense {
        inertia(&op.to_dense(), tol)
    } else {
        inertia_band(&op.to_band(), tol)
    }
}

/// Anything that can apply a Hermitian matrix to a vector.
pub trait HermitianOperator {
    fn dim(&self) -> usize;
    fn apply(&self, x: &[Complex64], y: &mut [Complex64]);
    fn to_dense_matrix(&self) -> CMat;
}

impl HermitianOperator for CMat {
    fn dim(&self) -> usize {
        self.nrows()
    }
    fn apply(&self, x: &[Complex64], y: &mut [Complex64]) {
        for (i, o) in y.iter_mut().enumerate() {
            *o = self.row(i).iter().zip(x).map(|(a, b)| a * b).sum();
        }
    }
    fn to_dense_matrix(&self) -> CMat {
        self.clone()
    }
}

impl HermitianOperator for WilsonOperator {
    fn dim(&self) -> usize {
        WilsonOperator::dim(self)
    }
    fn apply(&self, x: &[Complex64], y: &mut [Complex64]) {
        self.matvec_into(x, y)
    }
    fn to_dense_matrix(&self) -> CMat {
        self.to_dense()
    }
}

/// Smallest `|lambda|`. The iterative method runs Lanczos on `H^2` and
/// falls back to bisection if it cannot certify a residual within
/// [`lanczos::MAX_STEPS`] steps.
pub fn min_abs_eigenvalue<H: HermitianOperator>(h: &H, method: MinAbsMethod) -> Result<f64> {
    match method {
        MinAbsMethod::Bisection => {
            let m = h.to_dense_matrix();
            check_hermitian(&m)?;
            Ok(min_abs_tridiagonal(&dense::tridiagonalize(&m)))
        }
        MinAbsMethod::Iterative => match lanczos::min_abs(h) {
            Ok(v) => Ok(v),
            Err(Error::NoConvergence(_)) => min_abs_eigenvalue(h, MinAbsMethod::Bisection),
            Err(e) => Err(e),
        },
    }
}
