//! Lanczos iteration on `H^2` for the smallest `|lambda|` of `H`.
//!
//! Full reorthogonalization (two passes of classical Gram-Schmidt) keeps the
//! basis orthonormal to working precision. Every few steps the smallest Ritz
//! pair of the projected tridiagonal is formed and its true residual
//! `||H^2 x - theta x||` evaluated; the value is accepted once that residual
//! is below `RESIDUAL_TOL * theta` (or negligible against `||H||^2`).

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::HermitianOperator;
use crate::error::{Error, Result};

pub const MAX_STEPS: usize = 400;
pub const RESIDUAL_TOL: f64 = 1e-7;
const CHECK_EVERY: usize = 5;

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn norm(a: &[Complex64]) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn apply_sq<H: HermitianOperator>(h: &H, x: &[Complex64], tmp: &mut [Complex64], y: &mut [Complex64]) {
    h.apply(x, tmp);
    h.apply(tmp, y);
}

pub fn min_abs<H: HermitianOperator>(h: &H) -> Result<f64> {
    let n = h.dim();
    if n == 0 {
        return Err(Error::OutOfRange("empty operator".into()));
    }
    let steps = MAX_STEPS.min(n);
    let mut rng = ChaCha8Rng::seed_from_u64(0x01a2_c705);
    let mut q: Vec<Complex64> = (0..n)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let nq = norm(&q);
    q.iter_mut().for_each(|z| *z /= nq);

    let mut basis: Vec<Vec<Complex64>> = Vec::with_capacity(steps);
    let mut alpha: Vec<f64> = Vec::new();
    let mut beta: Vec<f64> = Vec::new();
    let mut w = vec![Complex64::new(0.0, 0.0); n];
    let mut tmp = vec![Complex64::new(0.0, 0.0); n];
    let mut hnorm2: f64 = 0.0;

    for j in 0..steps {
        basis.push(q.clone());
        apply_sq(h, &q, &mut tmp, &mut w);
        let a = dot(&q, &w).re;
        alpha.push(a);
        hnorm2 = hnorm2.max(a.abs());
        for _ in 0..2 {
            for b in &basis {
                let c = dot(b, &w);
                for (x, y) in w.iter_mut().zip(b) {
                    *x -= c * y;
                }
            }
        }
        let bnext = norm(&w);
        let exhausted = bnext <= 1e-14 * hnorm2.max(f64::MIN_POSITIVE) || j + 1 == steps;
        if (j + 1) % CHECK_EVERY == 0 || exhausted {
            if let Some(v) = check(h, &basis, &alpha, &beta, hnorm2, &mut tmp, &mut w.clone(), exhausted && j + 1 == n) {
                return Ok(v);
            }
        }
        if exhausted {
            break;
        }
        beta.push(bnext);
        for (x, y) in q.iter_mut().zip(&w) {
            *x = y / bnext;
        }
    }
    Err(Error::NoConvergence(steps))
}

#[allow(clippy::too_many_arguments)]
fn check<H: HermitianOperator>(
    h: &H,
    basis: &[Vec<Complex64>],
    alpha: &[f64],
    beta: &[f64],
    hnorm2: f64,
    tmp: &mut [Complex64],
    out: &mut [Complex64],
    complete: bool,
) -> Option<f64> {
    let m = alpha.len();
    let mut t = nalgebra::DMatrix::<f64>::zeros(m, m);
    for i in 0..m {
        t[(i, i)] = alpha[i];
        if i + 1 < m {
            t[(i, i + 1)] = beta[i];
            t[(i + 1, i)] = beta[i];
        }
    }
    let eig = t.symmetric_eigen();
    let (imin, &theta) = eig
        .eigenvalues
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))?;
    let s = eig.eigenvectors.column(imin);
    let n = basis[0].len();
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    for (k, b) in basis.iter().enumerate() {
        for (xi, bi) in x.iter_mut().zip(b) {
            *xi += bi * s[k];
        }
    }
    let xn = norm(&x);
    x.iter_mut().for_each(|z| *z /= xn);
    apply_sq(h, &x, tmp, out);
    let theta = theta.max(0.0);
    let r = out.iter().zip(&x).map(|(y, xi)| (y - xi * theta).norm_sqr()).sum::<f64>().sqrt();
    let hn = hnorm2.max(theta);
    if r <= RESIDUAL_TOL * theta || r <= 1e-13 * hn || (complete && r <= 1e-9 * hn) {
        Some(theta.sqrt())
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::CMat;
    use crate::spectral::{min_abs_eigenvalue, MinAbsMethod};

    #[test]
    fn diagonal() {
        let v = [-3.0, 0.7, 2.0, -0.25, 5.0, 1.5];
        let m = CMat::from_diagonal(&nalgebra::DVector::from_iterator(6, v.iter().map(|&x| Complex64::new(x, 0.0))));
        let got = min_abs(&m).unwrap();
        assert!((got - 0.25).abs() < 1e-9, "{got}");
        assert!((min_abs_eigenvalue(&m, MinAbsMethod::Iterative).unwrap() - 0.25).abs() < 1e-9);
    }
}
