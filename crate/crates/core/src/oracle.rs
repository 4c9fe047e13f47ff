//! Independent reference computations used to cross-check the main code
//! paths. None of these share code with the quantities they check.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::CMat;

/// Symbol degree from the Brillouin-zone corners: `sum (-1)^h` over corners
/// with `h` half-integer coordinates and `mu - 2h > 0`, weighted by
/// `binom(d, h)`.
pub fn corner_degree(d: usize, mu: f64) -> i64 {
    let mut total = 0i64;
    let mut binom = 1i64;
    for h in 0..=d {
        if mu - 2.0 * h as f64 > 0.0 {
            total += if h % 2 == 0 { binom } else { -binom };
        }
        binom = binom * (d - h) as i64 / (h + 1) as i64;
    }
    total
}

/// `min_k |f(k)|` for `d = 2` in closed form. With `c_j = cos(2 pi k_j)`,
/// `|f|^2 = 2 - c_1^2 - c_2^2 + (c_1 + c_2 - 2 + mu)^2` has an indefinite
/// Hessian and is affine along every edge of `[-1, 1]^2`, so the minimum sits
/// at a vertex: `min(|mu|, |mu - 2|, |mu - 4|)`.
pub fn symbol_gap_d2(mu: f64) -> f64 {
    mu.abs().min((mu - 2.0).abs()).min((mu - 4.0).abs())
}

/// Bott index of three Hermitian matrices via the spectral localizer
/// `X_1 (x) s_1 + X_2 (x) s_2 + X_3 (x) s_3` (Pauli `s_i`), as half its
/// signature. Eigenvalues from nalgebra's dense Hermitian solver.
pub fn localizer_bott(x: &[CMat; 3]) -> Result<i64> {
    let n = x[0].nrows();
    let i = Complex64::new(0.0, 1.0);
    let one = Complex64::new(1.0, 0.0);
    let mut l = CMat::zeros(2 * n, 2 * n);
    for r in 0..n {
        for c in 0..n {
            let (a, b, z) = (x[0][(r, c)], x[1][(r, c)], x[2][(r, c)]);
            // s1 = [[0,1],[1,0]], s2 = [[0,-i],[i,0]], s3 = diag(1,-1)
            l[(2 * r, 2 * c)] = z * one;
            l[(2 * r + 1, 2 * c + 1)] = -z;
            l[(2 * r, 2 * c + 1)] = a - i * b;
            l[(2 * r + 1, 2 * c)] = a + i * b;
        }
    }
    let ev = l.symmetric_eigen().eigenvalues;
    let scale = ev.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    if ev.iter().any(|v| v.abs() < 1e-10 * scale) {
        return Err(Error::AcmSingular);
    }
    let pos = ev.iter().filter(|&&v| v > 0.0).count() as i64;
    let neg = ev.len() as i64 - pos;
    if (pos - neg) % 2 != 0 {
        return Err(Error::OutOfRange("odd signature".into()));
    }
    Ok((pos - neg) / 2)
}

/// The Hermitian triple attached to a unitary pair and a mass:
/// `(Im U_1, Im U_2, Re U_1 + Re U_2 - 2 + m)`.
pub fn bott_triple(u1: &CMat, u2: &CMat, m: f64) -> [CMat; 3] {
    let n = u1.nrows();
    let half = Complex64::new(0.5, 0.0);
    let im = |u: &CMat| (u - u.adjoint()) * Complex64::new(0.0, -0.5);
    let re = |u: &CMat| (u + u.adjoint()) * half;
    let x3 = re(u1) + re(u2) - CMat::identity(n, n) * Complex64::new(2.0 - m, 0.0);
    [im(u1), im(u2), x3]
}

/// Winding number of `t -> det((1 - t) U V + t V U)`, `t in [0, 1]`
/// (a closed loop, since `det(UV) = det(VU)`).
pub fn exel_loring_winding(u: &CMat, v: &CMat) -> Result<i64> {
    let uv = u * v;
    let vu = v * u;
    let logdet = |t: f64| -> Option<Complex64> {
        let m = &uv * Complex64::new(1.0 - t, 0.0) + &vu * Complex64::new(t, 0.0);
        let lu = m.lu();
        let mut acc = Complex64::new(0.0, 0.0);
        for k in 0..lu.u().nrows() {
            let p = lu.u()[(k, k)];
            if p.norm() < 1e-300 {
                return None;
            }
            acc += p.ln();
        }
        // permutation sign only contributes a constant phase
        Some(acc)
    };
    let phase = |t: f64| logdet(t).map(|z| z.im);
    let mut total = 0.0;
    let mut stack = vec![(0.0f64, 1.0f64, 0u32)];
    while let Some((a, b, depth)) = stack.pop() {
        let (pa, pb) = (phase(a).ok_or(Error::AcmSingular)?, phase(b).ok_or(Error::AcmSingular)?);
        let pm = phase(0.5 * (a + b)).ok_or(Error::AcmSingular)?;
        let d1 = wrap(pm - pa);
        let d2 = wrap(pb - pm);
        if (d1.abs() > 0.5 || d2.abs() > 0.5) && depth < 40 {
            stack.push((0.5 * (a + b), b, depth + 1));
            stack.push((a, 0.5 * (a + b), depth + 1));
        } else {
            total += d1 + d2;
        }
    }
    let w = total / (2.0 * std::f64::consts::PI);
    if (w - w.round()).abs() > 1e-6 {
        return Err(Error::AcmSingular);
    }
    Ok(w.round() as i64)
}

fn wrap(x: f64) -> f64 {
    let tau = 2.0 * std::f64::consts::PI;
    x - tau * (x / tau).round()
}

/// Sorted eigenvalues from nalgebra's dense Hermitian eigensolver.
pub fn dense_eigenvalues(h: &CMat) -> Vec<f64> {
    let mut v: Vec<f64> = h.clone().symmetric_eigen().eigenvalues.iter().copied().collect();
    v.sort_by(f64::total_cmp);
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corner_values() {
        assert_eq!(corner_degree(2, 1.0), 1);
        assert_eq!(corner_degree(2, 3.0), -1);
        assert_eq!(corner_degree(2, 5.0), 0);
        assert_eq!(corner_degree(4, 3.0), -3);
        assert_eq!(corner_degree(4, -1.0), 0);
    }

    #[test]
    fn closed_form_gap() {
        assert!((symbol_gap_d2(1.0) - 1.0).abs() < 1e-15);
        assert!(symbol_gap_d2(0.0) < 1e-15);
        assert!(symbol_gap_d2(2.0) < 1e-15);
    }
}
