#![allow(dead_code)]

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wilson_core::linalg::CMat;
use wilson_core::{FluxMatrix, GaugeField, LatticeGeometry};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn hermitian(rng: &mut ChaCha8Rng, n: usize) -> CMat {
    let mut h = CMat::zeros(n, n);
    for i in 0..n {
        for j in 0..=i {
            let z = if i == j {
                Complex64::new(rng.gen_range(-1.0..1.0), 0.0)
            } else {
                Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
            };
            h[(i, j)] = z;
            h[(j, i)] = z.conj();
        }
    }
    h
}

pub fn general(rng: &mut ChaCha8Rng, n: usize) -> CMat {
    CMat::from_fn(n, n, |_, _| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
}

pub fn flux(d: usize, n: usize, planes: &[(usize, usize, i64)]) -> GaugeField {
    GaugeField::constant_flux(
        LatticeGeometry::new(d, n).unwrap(),
        &FluxMatrix::from_planes(d, planes).unwrap(),
    )
    .unwrap()
}

/// Eigenvalue signs from nalgebra's dense solver.
pub fn eigen_counts(h: &CMat, tol: f64) -> (usize, usize, usize) {
    let ev = h.clone().symmetric_eigen().eigenvalues;
    let p = ev.iter().filter(|&&x| x >= tol).count();
    let m = ev.iter().filter(|&&x| x <= -tol).count();
    (p, m, ev.len() - p - m)
}
