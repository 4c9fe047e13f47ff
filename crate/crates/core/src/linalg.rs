//! Small dense complex helpers shared by the gauge and Clifford layers.

use nalgebra::DMatrix;
use num_complex::Complex64;

pub type CMat = DMatrix<Complex64>;

pub fn kron(a: &CMat, b: &CMat) -> CMat {
    a.kronecker(b)
}

/// Spectral norm (largest singular value).
pub fn op_norm(a: &CMat) -> f64 {
    if a.is_empty() {
        return 0.0;
    }
    if a.nrows() == 1 && a.ncols() == 1 {
        return a[(0, 0)].norm();
    }
    a.singular_values().max()
}

/// `max |U*U - 1|` entrywise.
pub fn unitarity_defect(u: &CMat) -> f64 {
    let n = u.ncols();
    let g = u.adjoint() * u - CMat::identity(n, n);
    g.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// `exp(iH)` for Hermitian `H` via its eigendecomposition.
pub fn expi_hermitian(h: &CMat) -> CMat {
    let n = h.nrows();
    if n == 1 {
        return CMat::from_element(1, 1, Complex64::from_polar(1.0, h[(0, 0)].re));
    }
    let eig = h.clone().symmetric_eigen();
    let phases = CMat::from_diagonal(&eig.eigenvalues.map(|t| Complex64::from_polar(1.0, t)));
    &eig.eigenvectors * phases * eig.eigenvectors.adjoint()
}

pub fn max_abs_diff(a: &CMat, b: &CMat) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Block-diagonal `a (+) b`.
pub fn direct_sum(a: &CMat, b: &CMat) -> CMat {
    let (ra, ca) = a.shape();
    let (rb, cb) = b.shape();
    let mut out = CMat::zeros(ra + rb, ca + cb);
    out.view_mut((0, 0), (ra, ca)).copy_from(a);
    out.view_mut((ra, ca), (rb, cb)).copy_from(b);
    out
}
