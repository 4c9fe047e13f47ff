//! Dense reference path: Householder reduction to tridiagonal form followed by
//! Sturm-sequence counting and bisection.
//!
//! The reduction works on a row-major copy of the matrix. Only the magnitudes
//! of the off-diagonal entries are kept, since a Hermitian tridiagonal matrix
//! is unitarily similar (by a diagonal phase matrix) to the real symmetric one
//! with `|e_i|` off the diagonal. Operation order is fixed, so results are
//! bitwise reproducible.

use num_complex::Complex64;

use crate::linalg::CMat;

/// Real symmetric tridiagonal matrix `(diag, off)`, `off.len() == diag.len() - 1`.
#[derive(Debug, Clone)]
pub struct Tridiagonal {
    pub diag: Vec<f64>,
    pub off: Vec<f64>,
}

pub fn tridiagonalize(h: &CMat) -> Tridiagonal {
    let n = h.nrows();
    let mut a: Vec<Complex64> = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        for j in 0..n {
            a[i * n + j] = h[(i, j)];
        }
    }
    let mut diag = vec![0.0; n];
    let mut off = vec![0.0; n.saturating_sub(1)];
    let mut v = vec![Complex64::new(0.0, 0.0); n];
    let mut p = vec![Complex64::new(0.0, 0.0); n];
    for k in 0..n.saturating_sub(1) {
        diag[k] = a[k * n + k].re;
        let m = n - k - 1;
        // x = A[k+1.., k]
        let x0 = a[(k + 1) * n + k];
        let tail: f64 = (k + 2..n).map(|i| a[i * n + k].norm_sqr()).sum();
        let xnorm = (x0.norm_sqr() + tail).sqrt();
        off[k] = xnorm;
        if tail == 0.0 {
            // already tridiagonal in this column; the phase of x0 is irrelevant
            continue;
        }
        // v = x + e^{i arg x0} |x| e1, reflector I - tau v v^H
        let phase = if x0.norm() == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            x0 / x0.norm()
        };
        v[0] = x0 + phase * xnorm;
        for i in 1..m {
            v[i] = a[(k + 1 + i) * n + k];
        }
        let vnorm2: f64 = v[..m].iter().map(|z| z.norm_sqr()).sum();
        let tau = 2.0 / vnorm2;
        // p = tau A22 v
        for i in 0..m {
            let row = &a[(k + 1 + i) * n + k + 1..(k + 1 + i) * n + n];
            let s: Complex64 = row.iter().zip(&v[..m]).map(|(x, y)| x * y).sum();
            p[i] = s * tau;
        }
        // w = p - (tau/2)(v^H p) v
        let vhp: Complex64 = v[..m].iter().zip(&p[..m]).map(|(x, y)| x.conj() * y).sum();
        let kfac = 0.5 * tau * vhp.re;
        for i in 0..m {
            p[i] -= v[i] * kfac;
        }
        // A22 -= v w^H + w v^H
        for i in 0..m {
            let (vi, wi) = (v[i], p[i]);
            let row = &mut a[(k + 1 + i) * n + k + 1..(k + 1 + i) * n + n];
            for (j, x) in row.iter_mut().enumerate() {
                *x -= vi * p[j].conj() + wi * v[j].conj();
            }
        }
    }
    if n > 0 {
        diag[n - 1] = a[n * n - 1].re;
    }
    Tridiagonal { diag, off }
}

impl Tridiagonal {
    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    fn pivmin(&self) -> f64 {
        let m = self.off.iter().map(|e| e * e).fold(1.0, f64::max);
        f64::MIN_POSITIVE * m
    }

    /// Number of eigenvalues strictly below `shift`, from the signs of the
    /// pivots of `T - shift` (Sylvester's law of inertia).
    pub fn count_below(&self, shift: f64) -> usize {
        let pivmin = self.pivmin();
        let mut count = 0;
        let mut q = 1.0;
        for i in 0..self.diag.len() {
            let e2 = if i == 0 { 0.0 } else { self.off[i - 1] * self.off[i - 1] };
            q = self.diag[i] - shift - if i == 0 { 0.0 } else { e2 / q };
            if q.abs() < pivmin {
                q = -pivmin;
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// Gershgorin enclosure of the spectrum.
    pub fn bounds(&self) -> (f64, f64) {
        let n = self.diag.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let r = if i > 0 { self.off[i - 1].abs() } else { 0.0 }
                + if i + 1 < n { self.off[i].abs() } else { 0.0 };
            lo = lo.min(self.diag[i] - r);
            hi = hi.max(self.diag[i] + r);
        }
        (lo, hi)
    }

    /// `k`-th smallest eigenvalue (zero based) by bisection.
    pub fn eigenvalue(&self, k: usize) -> f64 {
        let (mut lo, mut hi) = self.bounds();
        let span = (hi - lo).max(f64::MIN_POSITIVE);
        lo -= 1e-12 * span + self.pivmin();
        hi += 1e-12 * span + self.pivmin();
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if hi - lo <= 2.0 * f64::EPSILON * lo.abs().max(hi.abs()) + self.pivmin() {
                break;
            }
            if self.count_below(mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_on_diagonal() {
        let t = Tridiagonal {
            diag: vec![3.0, -1.0, 0.5],
            off: vec![0.0, 0.0],
        };
        assert_eq!(t.count_below(0.0), 1);
        assert_eq!(t.count_below(1.0), 2);
        assert_eq!(t.count_below(10.0), 3);
        assert!((t.eigenvalue(0) + 1.0).abs() < 1e-14);
        assert!((t.eigenvalue(2) - 3.0).abs() < 1e-14);
    }

    #[test]
    fn reduction_preserves_spectrum() {
        let n = 7;
        let mut h = CMat::zeros(n, n);
        for i in 0..n {
            for j in 0..=i {
                let z = if i == j {
                    Complex64::new((i as f64 * 1.7).sin(), 0.0)
                } else {
                    Complex64::new((i * j) as f64 * 0.3 - 0.5, (i as f64 - j as f64) * 0.2)
                };
                h[(i, j)] = z;
                h[(j, i)] = z.conj();
            }
        }
        let t = tridiagonalize(&h);
        let mut want: Vec<f64> = h.clone().symmetric_eigen().eigenvalues.iter().copied().collect();
        want.sort_by(f64::total_cmp);
        for (k, w) in want.iter().enumerate() {
            assert!((t.eigenvalue(k) - w).abs() < 1e-12, "k = {k}");
        }
    }
}
