//! Spectrum of a translation-invariant operator from its symbol.

use crate::clifford::CliffordRep;
use crate::error::{Error, Result};
use crate::gauge::GaugeField;
use crate::wilson::symbol;

/// Eigenvalues of the operator assembled from the trivial field `f`, sorted
/// ascending, obtained by diagonalizing the `2^(d/2)`-dimensional symbol at
/// every momentum `k in (Z/N)^d / N` (multiplicity `r` each).
pub fn fourier_diagonalize(f: &GaugeField, cl: &CliffordRep, mu: f64) -> Result<Vec<f64>> {
    if !f.is_trivial() {
        return Err(Error::NotTranslationInvariant);
    }
    let g = f.geometry();
    if cl.d() != g.d() {
        return Err(Error::DimensionMismatch(format!(
            "Clifford dimension {} vs lattice dimension {}",
            cl.d(),
            g.d()
        )));
    }
    let n = g.n();
    let mut out = Vec::with_capacity(g.num_sites() * cl.dim_s() * f.rank());
    for site in 0..g.num_sites() {
        let k: Vec<f64> = g.coords(site).iter().map(|&c| c as f64 / n as f64).collect();
        let sym = symbol(cl, &k, mu)?;
        let ev = sym.matrix.symmetric_eigen().eigenvalues;
        for _ in 0..f.rank() {
            out.extend(ev.iter().copied());
        }
    }
    out.sort_by(f64::total_cmp);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::LatticeGeometry;

    #[test]
    fn two_by_two_example() {
        let cl = CliffordRep::new(2).unwrap();
        let f = GaugeField::trivial(LatticeGeometry::new(2, 2).unwrap(), 1).unwrap();
        let ev = fourier_diagonalize(&f, &cl, 1.0).unwrap();
        let want = [-3.0, -1.0, -1.0, -1.0, 1.0, 1.0, 1.0, 3.0];
        assert_eq!(ev.len(), want.len());
        for (a, b) in ev.iter().zip(want) {
            assert!((a - b).abs() < 1e-12, "{ev:?}");
        }
        let ev0 = fourier_diagonalize(&f, &cl, 0.0).unwrap();
        assert!(ev0.iter().filter(|x| x.abs() < 1e-12).count() >= 2);
    }

    #[test]
    fn needs_trivial_field() {
        use crate::gauge::FluxMatrix;
        let cl = CliffordRep::new(2).unwrap();
        let geom = LatticeGeometry::new(2, 4).unwrap();
        let f = GaugeField::constant_flux(geom, &FluxMatrix::from_planes(2, &[(1, 2, 1)]).unwrap()).unwrap();
        assert!(matches!(fourier_diagonalize(&f, &cl, 1.0), Err(Error::NotTranslationInvariant)));
    }
}
