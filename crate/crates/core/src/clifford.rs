//! Irreducible representations of the complex Clifford algebra with negative
//! definite form, `c(v)c(w) + c(w)c(v) = -2<v,w>`, in even dimension.
//!
//! The generators are built by iterated tensor products of Pauli matrices:
//!
//! ```text
//! d = 2:      c1 = i s1,            c2 = i s2,            g = s3
//! d -> d + 2: c_j' = c_j (x) 1,     c_{d+1} = i g (x) s1, c_{d+2} = i g (x) s2,
//!             g' = g (x) s3
//! ```
//!
//! so the grading is always a diagonal matrix of signs.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{kron, CMat};

/// Largest dimension accepted by [`CliffordRep::new`] (spinor dimension 16).
pub const MAX_DIM: usize = 8;

#[derive(Debug, Clone, PartialEq)]
pub struct CliffordRep {
    d: usize,
    generators: Vec<CMat>,
    grading: CMat,
}

pub(crate) fn pauli() -> [CMat; 3] {
    let z = Complex64::new(0.0, 0.0);
    let o = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    [
        DMatrix::from_row_slice(2, 2, &[z, o, o, z]),
        DMatrix::from_row_slice(2, 2, &[z, -i, i, z]),
        DMatrix::from_row_slice(2, 2, &[o, z, z, -o]),
    ]
}

impl CliffordRep {
    /// Deterministic representation for even `d` in `2..=8`.
    pub fn new(d: usize) -> Result<Self> {
        if d == 0 || d % 2 == 1 {
            return Err(Error::OddDimension(d));
        }
        if d > MAX_DIM {
            return Err(Error::OutOfRange(format!(
                "clifford dimension {d} exceeds supported maximum {MAX_DIM}"
            )));
        }
        let [s1, s2, s3] = pauli();
        let i = Complex64::new(0.0, 1.0);
        let mut generators = vec![s1.map(|z| z * i), s2.map(|z| z * i)];
        let mut grading = s3.clone();
        while generators.len() < d {
            let id2 = CMat::identity(2, 2);
            let ig = grading.map(|z| z * i);
            let mut next: Vec<CMat> = generators.iter().map(|c| kron(c, &id2)).collect();
            next.push(kron(&ig, &s1));
            next.push(kron(&ig, &s2));
            grading = kron(&grading, &s3);
            generators = next;
        }
        Ok(Self {
            d,
            generators,
            grading,
        })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Spinor dimension `2^(d/2)`.
    pub fn dim_s(&self) -> usize {
        self.grading.nrows()
    }

    /// `c(v_j)` for `j` in `0..d` (zero based).
    pub fn generator(&self, j: usize) -> &CMat {
        &self.generators[j]
    }

    pub fn generators(&self) -> &[CMat] {
        &self.generators
    }

    pub fn grading(&self) -> &CMat {
        &self.grading
    }

    /// Diagonal of the grading; every entry is `+1` or `-1`.
    pub fn grading_signs(&self) -> Vec<f64> {
        (0..self.dim_s()).map(|k| self.grading[(k, k)].re).collect()
    }

    /// Largest entrywise deviation from the defining relations:
    /// anticommutation, skew-adjointness of generators, and
    /// `g* = g`, `g^2 = 1`, `g c_j = -c_j g`, `tr g = 0`.
    pub fn relation_defect(&self) -> f64 {
        let n = self.dim_s();
        let id = CMat::identity(n, n);
        let mut worst: f64 = 0.0;
        let mut track = |m: &CMat| {
            worst = worst.max(m.iter().map(|z| z.norm()).fold(0.0, f64::max));
        };
        for (j, cj) in self.generators.iter().enumerate() {
            for (l, cl) in self.generators.iter().enumerate() {
                let delta = if j == l { 2.0 } else { 0.0 };
                track(&(cj * cl + cl * cj + &id * Complex64::from(delta)));
            }
            track(&(cj.adjoint() + cj));
            track(&(&self.grading * cj + cj * &self.grading));
        }
        track(&(self.grading.adjoint() - &self.grading));
        track(&(&self.grading * &self.grading - &id));
        worst.max(self.grading.trace().norm())
    }

    /// Flip the sign of the first nonzero off-diagonal entry in row 0 of
    /// `c(v_1)`. Only used for the negative control of the self-test.
    pub fn corrupted(&self) -> Self {
        let mut out = self.clone();
        let c = &mut out.generators[0];
        let j = (1..c.ncols()).find(|&j| c[(0, j)].norm() > 0.0).unwrap_or(1);
        c[(0, j)] = -c[(0, j)];
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn d2_is_pauli() {
        let cl = CliffordRep::new(2).unwrap();
        assert_eq!(cl.dim_s(), 2);
        let [s1, s2, s3] = pauli();
        assert_eq!(cl.generator(0), &s1.map(|z| z * c(0.0, 1.0)));
        assert_eq!(cl.generator(1), &s2.map(|z| z * c(0.0, 1.0)));
        assert_eq!(cl.grading(), &s3);
        let anti = cl.grading() * cl.generator(0) + cl.generator(0) * cl.grading();
        assert!(anti.iter().all(|z| z.norm() == 0.0));
    }

    #[test]
    fn d4_matches_tensor_layout() {
        let cl = CliffordRep::new(4).unwrap();
        let [s1, s2, s3] = pauli();
        let i = c(0.0, 1.0);
        let id = CMat::identity(2, 2);
        assert_eq!(cl.dim_s(), 4);
        assert_eq!(cl.generator(0), &kron(&s1.map(|z| z * i), &id));
        assert_eq!(cl.generator(1), &kron(&s2.map(|z| z * i), &id));
        assert_eq!(cl.generator(2), &kron(&s3.map(|z| z * i), &s1));
        assert_eq!(cl.generator(3), &kron(&s3.map(|z| z * i), &s2));
        assert_eq!(cl.grading(), &kron(&s3, &s3));
    }

    #[test]
    fn relations_hold_up_to_d8() {
        for d in [2, 4, 6, 8] {
            let cl = CliffordRep::new(d).unwrap();
            assert_eq!(cl.dim_s(), 1 << (d / 2));
            assert!(cl.relation_defect() < 1e-12, "d = {d}");
            let signs = cl.grading_signs();
            assert_eq!(signs.iter().filter(|&&s| s > 0.0).count(), cl.dim_s() / 2);
        }
    }

    #[test]
    fn grading_is_normalized_volume_element() {
        // g = +- i^(d/2) c1 ... cd
        for d in [2, 4, 6] {
            let cl = CliffordRep::new(d).unwrap();
            let n = cl.dim_s();
            let mut prod = CMat::identity(n, n);
            for g in cl.generators() {
                prod *= g;
            }
            let phase = c(0.0, 1.0).powu((d / 2) as u32);
            let vol = prod.map(|z| z * phase);
            let plus = (&vol - cl.grading()).iter().map(|z| z.norm()).fold(0.0, f64::max);
            let minus = (&vol + cl.grading()).iter().map(|z| z.norm()).fold(0.0, f64::max);
            assert!(plus.min(minus) < 1e-12, "d = {d}");
        }
    }

    #[test]
    fn deterministic() {
        assert_eq!(CliffordRep::new(6).unwrap(), CliffordRep::new(6).unwrap());
    }

    #[test]
    fn rejects_odd_and_zero() {
        assert!(matches!(CliffordRep::new(3), Err(Error::OddDimension(3))));
        assert!(matches!(CliffordRep::new(0), Err(Error::OddDimension(0))));
        assert!(CliffordRep::new(10).is_err());
        assert!(CliffordRep::new(3)
            .unwrap_err()
            .to_string()
            .contains("even dimension required"));
    }

    #[test]
    fn commutant_is_scalar() {
        // Solve X c_j = c_j X for all j; the solution space must be one dimensional.
        for d in [2, 4] {
            let cl = CliffordRep::new(d).unwrap();
            let n = cl.dim_s();
            let mut rows = Vec::new();
            for g in cl.generators() {
                // vec(X g - g X) = (g^T (x) 1 - 1 (x) g) vec(X) in column-major vec
                let id = CMat::identity(n, n);
                let op = kron(&g.transpose(), &id) - kron(&id, g);
                rows.push(op);
            }
            let mut stacked = CMat::zeros(rows.len() * n * n, n * n);
            for (k, r) in rows.iter().enumerate() {
                stacked.view_mut((k * n * n, 0), (n * n, n * n)).copy_from(r);
            }
            let sv = stacked.singular_values();
            let nullity = sv.iter().filter(|&&s| s < 1e-10).count();
            assert_eq!(nullity, 1, "d = {d}");
        }
    }

    #[test]
    fn corruption_breaks_relations() {
        let cl = CliffordRep::new(4).unwrap().corrupted();
        assert!(cl.relation_defect() > 0.5);
    }
}
