//! U(r) link fields on the finite torus.
//!
//! A link `U_j(x)` is the parallel transport from the fibre over `x` to the
//! fibre over `x + a e_j`. Collected over all sites, the links of direction
//! `j` form the shift unitary `U_j` that the Wilson operator is built from.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::lattice::LatticeGeometry;
use crate::linalg::{direct_sum, expi_hermitian, kron, op_norm, unitarity_defect, CMat};

/// Antisymmetric integer matrix of first Chern numbers through the coordinate
/// 2-planes. Entry `(j, l)` is the flux through the `(j, l)` plane.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FluxMatrix {
    d: usize,
    k: Vec<i64>,
}

impl FluxMatrix {
    pub fn zero(d: usize) -> Self {
        Self {
            d,
            k: vec![0; d * d],
        }
    }

    /// Row-major `d x d` entries; must be exactly antisymmetric.
    pub fn from_rows(d: usize, k: Vec<i64>) -> Result<Self> {
        if k.len() != d * d {
            return Err(Error::InvalidFlux(format!(
                "expected {} entries, got {}",
                d * d,
                k.len()
            )));
        }
        for j in 0..d {
            for l in 0..d {
                if k[j * d + l] != -k[l * d + j] {
                    return Err(Error::InvalidFlux(format!(
                        "not antisymmetric at ({}, {})",
                        j + 1,
                        l + 1
                    )));
                }
            }
        }
        Ok(Self { d, k })
    }

    /// Builds from `(j, l, flux)` triples with one-based plane indices.
    pub fn from_planes(d: usize, planes: &[(usize, usize, i64)]) -> Result<Self> {
        let mut out = Self::zero(d);
        for &(j, l, v) in planes {
            if j == 0 || l == 0 || j > d || l > d || j == l {
                return Err(Error::InvalidFlux(format!(
                    "plane ({j}, {l}) invalid for d = {d}"
                )));
            }
            out.k[(j - 1) * d + (l - 1)] = v;
            out.k[(l - 1) * d + (j - 1)] = -v;
        }
        Ok(out)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Zero-based entry `K_{jl}`.
    pub fn get(&self, j: usize, l: usize) -> i64 {
        self.k[j * self.d + l]
    }

    pub fn is_zero(&self) -> bool {
        self.k.iter().all(|&v| v == 0)
    }

    /// Entries of the strict upper triangle as `(j, l, K_jl)`, zero based.
    pub fn planes(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        (0..self.d).flat_map(move |j| ((j + 1)..self.d).map(move |l| (j, l, self.get(j, l))))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.d != other.d {
            return Err(Error::DimensionMismatch("flux matrices of different size".into()));
        }
        Ok(Self {
            d: self.d,
            k: self.k.iter().zip(&other.k).map(|(a, b)| a + b).collect(),
        })
    }

    /// Compact label such as `12=1;34=-2` (one-based, nonzero planes only).
    pub fn label(&self) -> String {
        let parts: Vec<String> = self
            .planes()
            .filter(|&(_, _, v)| v != 0)
            .map(|(j, l, v)| format!("{}{}={}", j + 1, l + 1, v))
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(";")
        }
    }
}

/// Topological content of a field built from constant-flux line bundles:
/// the bundle is the direct sum of the listed line bundles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineBundleSum {
    pub summands: Vec<FluxMatrix>,
}

impl LineBundleSum {
    fn tensor(&self, other: &Self) -> Result<Self> {
        let mut summands = Vec::with_capacity(self.summands.len() * other.summands.len());
        for a in &self.summands {
            for b in &other.summands {
                summands.push(a.add(b)?);
            }
        }
        Ok(Self { summands })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GaugeField {
    geometry: LatticeGeometry,
    rank: usize,
    /// `links[site * d + j]`
    links: Vec<CMat>,
    topology: Option<LineBundleSum>,
}

impl GaugeField {
    /// Wraps raw links, checking shape and unitarity to `tol`.
    pub fn from_links(geometry: LatticeGeometry, rank: usize, links: Vec<CMat>, tol: f64) -> Result<Self> {
        let d = geometry.d();
        if links.len() != geometry.num_sites() * d {
            return Err(Error::DimensionMismatch(format!(
                "expected {} links, got {}",
                geometry.num_sites() * d,
                links.len()
            )));
        }
        for u in &links {
            if u.shape() != (rank, rank) {
                return Err(Error::DimensionMismatch("link of wrong size".into()));
            }
            let defect = unitarity_defect(u);
            if !(defect <= tol) {
                return Err(Error::NotUnitary(defect));
            }
        }
        Ok(Self {
            geometry,
            rank,
            links,
            topology: None,
        })
    }

    pub fn trivial(geometry: LatticeGeometry, rank: usize) -> Result<Self> {
        if rank == 0 {
            return Err(Error::OutOfRange("rank must be at least 1".into()));
        }
        let links = vec![CMat::identity(rank, rank); geometry.num_sites() * geometry.d()];
        Ok(Self {
            geometry,
            rank,
            links,
            topology: Some(LineBundleSum {
                summands: vec![FluxMatrix::zero(geometry.d()); rank],
            }),
        })
    }

    /// U(1) field with constant curvature `2 pi i sum_{j<l} K_jl dx_j ^ dx_l`.
    ///
    /// For each plane `j < l` with `B = 2 pi K_jl / N^2` the links pick up
    /// `U_l(x) *= exp(i B x_j)` everywhere and the twist
    /// `U_j(x) *= exp(-i B N x_l)` on the hyperplane `x_j = N - 1`. Every
    /// `(j, l)` plaquette then equals `exp(i B)` exactly, wrap included.
    pub fn constant_flux(geometry: LatticeGeometry, flux: &FluxMatrix) -> Result<Self> {
        let d = geometry.d();
        if flux.d() != d {
            return Err(Error::InvalidFlux(format!(
                "flux matrix is {}x{}, lattice has d = {d}",
                flux.d(),
                flux.d()
            )));
        }
        let n = geometry.n();
        let nf = n as f64;
        let mut phases = vec![0.0f64; geometry.num_sites() * d];
        for site in 0..geometry.num_sites() {
            let x = geometry.coords(site);
            for (j, l, k) in flux.planes() {
                if k == 0 {
                    continue;
                }
                let b = 2.0 * PI * k as f64 / (nf * nf);
                phases[site * d + l] += b * x[j] as f64;
                if x[j] == n - 1 {
                    phases[site * d + j] -= b * nf * x[l] as f64;
                }
            }
        }
        let links = phases
            .into_iter()
            .map(|t| CMat::from_element(1, 1, Complex64::from_polar(1.0, t)))
            .collect();
        Ok(Self {
            geometry,
            rank: 1,
            links,
            topology: Some(LineBundleSum {
                summands: vec![flux.clone()],
            }),
        })
    }

    pub fn geometry(&self) -> &LatticeGeometry {
        &self.geometry
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn d(&self) -> usize {
        self.geometry.d()
    }

    pub fn link(&self, site: usize, j: usize) -> &CMat {
        &self.links[site * self.geometry.d() + j]
    }

    pub fn links(&self) -> &[CMat] {
        &self.links
    }

    /// Line-bundle decomposition, when the field was built from flux data.
    pub fn topology(&self) -> Option<&LineBundleSum> {
        self.topology.as_ref()
    }

    pub fn with_topology(mut self, topology: Option<LineBundleSum>) -> Self {
        self.topology = topology;
        self
    }

    /// True when every link is exactly the identity.
    pub fn is_trivial(&self) -> bool {
        let id = CMat::identity(self.rank, self.rank);
        self.links.iter().all(|u| *u == id)
    }

    /// Holonomy of the elementary square at `x` spanned by `e_j, e_l`, as a map
    /// on the fibre over `x`: `U_l(x)* U_j(x+e_l)* U_l(x+e_j) U_j(x)`.
    pub fn plaquette(&self, site: usize, j: usize, l: usize) -> CMat {
        let g = &self.geometry;
        let xj = g.shift(site, j, 1);
        let xl = g.shift(site, l, 1);
        self.link(site, l).adjoint()
            * self.link(xl, j).adjoint()
            * self.link(xj, l)
            * self.link(site, j)
    }

    /// `max_{x, j<l} ||P_jl(x) - 1|| / a^2`, the lattice estimate of `||R||`.
    pub fn curvature_norm(&self) -> f64 {
        let d = self.d();
        let id = CMat::identity(self.rank, self.rank);
        let n2 = (self.geometry.n() * self.geometry.n()) as f64;
        let mut worst: f64 = 0.0;
        for site in 0..self.geometry.num_sites() {
            for j in 0..d {
                for l in (j + 1)..d {
                    worst = worst.max(op_norm(&(self.plaquette(site, j, l) - &id)));
                }
            }
        }
        worst * n2
    }

    /// Transport once around the `j`-cycle through `base`, composed in path
    /// order: `U_j(x + (N-1) e_j) ... U_j(x + e_j) U_j(x)`.
    pub fn wilson_loop(&self, base: usize, j: usize) -> CMat {
        let mut acc = CMat::identity(self.rank, self.rank);
        let mut site = base;
        for _ in 0..self.geometry.n() {
            acc = self.link(site, j) * acc;
            site = self.geometry.shift(site, j, 1);
        }
        acc
    }

    fn check_same_geometry(&self, other: &Self) -> Result<()> {
        if self.geometry != other.geometry {
            return Err(Error::DimensionMismatch("gauge fields on different lattices".into()));
        }
        Ok(())
    }

    /// Field of the tensor product bundle: links are Kronecker products.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        self.check_same_geometry(other)?;
        let links = self
            .links
            .iter()
            .zip(&other.links)
            .map(|(a, b)| kron(a, b))
            .collect();
        let topology = match (&self.topology, &other.topology) {
            (Some(a), Some(b)) => Some(a.tensor(b)?),
            _ => None,
        };
        Ok(Self {
            geometry: self.geometry,
            rank: self.rank * other.rank,
            links,
            topology,
        })
    }

    /// Field of the direct sum bundle: block-diagonal links.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        self.check_same_geometry(other)?;
        let links = self
            .links
            .iter()
            .zip(&other.links)
            .map(|(a, b)| direct_sum(a, b))
            .collect();
        let topology = match (&self.topology, &other.topology) {
            (Some(a), Some(b)) => {
                let mut summands = a.summands.clone();
                summands.extend(b.summands.iter().cloned());
                Some(LineBundleSum { summands })
            }
            _ => None,
        };
        Ok(Self {
            geometry: self.geometry,
            rank: self.rank + other.rank,
            links,
            topology,
        })
    }

    /// Multiplies every link on the left by `exp(iH)` with `H` a random
    /// Hermitian matrix of spectral norm at most `strength`.
    ///
    /// Generator: `ChaCha8Rng::seed_from_u64(seed)`. Links are visited in
    /// storage order (site, then direction). For each link, `r^2` complex
    /// entries of `G` are drawn row-major as standard normal pairs `(re, im)`,
    /// followed by one uniform `u` in `[0, 1)`. Then `H = (G + G*)/2`
    /// rescaled to norm `u * strength`.
    pub fn perturbed(&self, strength: f64, seed: u64) -> Result<Self> {
        if !(strength >= 0.0) || !strength.is_finite() {
            return Err(Error::OutOfRange(format!("perturbation strength {strength}")));
        }
        if strength == 0.0 {
            return Ok(self.clone());
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r = self.rank;
        let links = self
            .links
            .iter()
            .map(|u| {
                let h = random_hermitian(&mut rng, r, strength);
                expi_hermitian(&h) * u
            })
            .collect();
        Ok(Self {
            geometry: self.geometry,
            rank: r,
            links,
            topology: self.topology.clone(),
        })
    }

    /// `U_j(x) -> g(x + e_j) U_j(x) g(x)*` for one unitary `g(x)` per site.
    pub fn gauge_transformed(&self, g: &[CMat]) -> Result<Self> {
        if g.len() != self.geometry.num_sites() {
            return Err(Error::DimensionMismatch("one gauge matrix per site required".into()));
        }
        let d = self.d();
        let mut links = Vec::with_capacity(self.links.len());
        for site in 0..self.geometry.num_sites() {
            for j in 0..d {
                let next = self.geometry.shift(site, j, 1);
                links.push(&g[next] * self.link(site, j) * g[site].adjoint());
            }
        }
        Ok(Self {
            geometry: self.geometry,
            rank: self.rank,
            links,
            topology: self.topology.clone(),
        })
    }

    /// Big shift unitary `U_j` on `sites (x) C^r` as a dense matrix:
    /// block `(x + e_j, x)` is `U_j(x)`.
    pub fn shift_unitary(&self, j: usize) -> CMat {
        let r = self.rank;
        let ns = self.geometry.num_sites();
        let mut u = CMat::zeros(ns * r, ns * r);
        for site in 0..ns {
            let next = self.geometry.shift(site, j, 1);
            u.view_mut((next * r, site * r), (r, r))
                .copy_from(self.link(site, j));
        }
        u
    }
}

fn random_hermitian(rng: &mut ChaCha8Rng, r: usize, strength: f64) -> CMat {
    let mut g = CMat::zeros(r, r);
    for i in 0..r {
        for j in 0..r {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            g[(i, j)] = Complex64::new(re, im);
        }
    }
    let u: f64 = rng.gen();
    let h = (&g + g.adjoint()).map(|z| z * 0.5);
    let norm = op_norm(&h);
    if norm == 0.0 {
        return CMat::zeros(r, r);
    }
    h.map(|z| z * (u * strength / norm))
}

/// Seeded random gauge transformation, one unitary per site.
pub fn random_gauge(geometry: &LatticeGeometry, rank: usize, seed: u64) -> Vec<CMat> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..geometry.num_sites())
        .map(|_| expi_hermitian(&random_hermitian(&mut rng, rank, 2.0 * PI)))
        .collect()
}

/// Entrywise conversion helper for callers holding plain `(re, im)` data.
pub fn link_from_parts(rank: usize, parts: &[f64]) -> CMat {
    DMatrix::from_fn(rank, rank, |i, j| {
        let k = 2 * (i * rank + j);
        Complex64::new(parts[k], parts[k + 1])
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::max_abs_diff;

    fn geom(d: usize, n: usize) -> LatticeGeometry {
        LatticeGeometry::new(d, n).unwrap()
    }

    fn phase(z: Complex64) -> f64 {
        z.arg()
    }

    #[test]
    fn trivial_field_is_flat() {
        let f = GaugeField::trivial(geom(2, 4), 1).unwrap();
        assert_eq!(f.links().len(), 32);
        assert!(f.links().iter().all(|u| u[(0, 0)] == Complex64::new(1.0, 0.0)));
        assert_eq!(f.curvature_norm(), 0.0);
        for s in 0..16 {
            assert_eq!(f.plaquette(s, 0, 1), CMat::identity(1, 1));
            assert_eq!(f.wilson_loop(s, 0), CMat::identity(1, 1));
            assert_eq!(f.wilson_loop(s, 1), CMat::identity(1, 1));
        }
        assert!(f.is_trivial());
    }

    #[test]
    fn unit_flux_d2_plaquettes() {
        // Oracle: multiply the plaquettes directly from the links.
        let g = geom(2, 4);
        let f = GaugeField::constant_flux(g, &FluxMatrix::from_planes(2, &[(1, 2, 1)]).unwrap()).unwrap();
        let mut total = 0.0;
        let mut product = Complex64::new(1.0, 0.0);
        for s in 0..16 {
            let p = f.plaquette(s, 0, 1)[(0, 0)];
            assert!((phase(p) - 2.0 * PI / 16.0).abs() < 1e-12, "site {s}");
            total += phase(p);
            product *= p;
        }
        assert!((total - 2.0 * PI).abs() < 1e-12);
        assert!((product - Complex64::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn zero_flux_equals_trivial() {
        let g = geom(2, 5);
        let f = GaugeField::constant_flux(g, &FluxMatrix::zero(2)).unwrap();
        let t = GaugeField::trivial(g, 1).unwrap();
        assert_eq!(f.links(), t.links());
    }

    #[test]
    fn d4_two_plane_flux() {
        let g = geom(4, 3);
        let k = FluxMatrix::from_planes(4, &[(1, 2, 1), (3, 4, 1)]).unwrap();
        let f = GaugeField::constant_flux(g, &k).unwrap();
        for s in 0..g.num_sites() {
            for j in 0..4 {
                for l in (j + 1)..4 {
                    let p = f.plaquette(s, j, l)[(0, 0)];
                    let want = if (j, l) == (0, 1) || (j, l) == (2, 3) {
                        2.0 * PI / 9.0
                    } else {
                        0.0
                    };
                    assert!((phase(p) - want).abs() < 1e-12, "site {s} plane {j}{l}");
                }
            }
        }
    }

    #[test]
    fn flux_quantization_on_every_slice() {
        let g = geom(3, 4);
        let k = FluxMatrix::from_planes(3, &[(1, 2, 2), (1, 3, -1), (2, 3, 3)]).unwrap();
        let f = GaugeField::constant_flux(g, &k).unwrap();
        for (j, l, kjl) in k.planes() {
            // slices: fix the remaining coordinate
            let other = (0..3).find(|&c| c != j && c != l).unwrap();
            for fixed in 0..4 {
                let mut sum = 0.0;
                for s in 0..g.num_sites() {
                    if g.coord(s, other) == fixed {
                        sum += phase(f.plaquette(s, j, l)[(0, 0)]);
                    }
                }
                assert!((sum - 2.0 * PI * kjl as f64).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn curvature_closed_form() {
        for n in [4usize, 8, 16, 64] {
            let f = GaugeField::constant_flux(geom(2, n), &FluxMatrix::from_planes(2, &[(1, 2, 1)]).unwrap()).unwrap();
            let n2 = (n * n) as f64;
            let want = (Complex64::from_polar(1.0, 2.0 * PI / n2) - 1.0).norm() * n2;
            assert!((f.curvature_norm() - want).abs() < 1e-10);
        }
        let f = GaugeField::constant_flux(geom(2, 4), &FluxMatrix::from_planes(2, &[(1, 2, 1)]).unwrap()).unwrap();
        assert!((f.curvature_norm() - 6.2429).abs() < 1e-4);
        let f = GaugeField::constant_flux(geom(2, 512), &FluxMatrix::from_planes(2, &[(1, 2, 1)]).unwrap()).unwrap();
        assert!((f.curvature_norm() - 2.0 * PI).abs() < 1e-4);
    }

    #[test]
    fn wilson_loops_unit_flux() {
        let g = geom(2, 8);
        let f = GaugeField::constant_flux(g, &FluxMatrix::from_planes(2, &[(1, 2, 1)]).unwrap()).unwrap();
        let w1 = f.wilson_loop(0, 0)[(0, 0)];
        assert!((w1 - Complex64::new(1.0, 0.0)).norm() < 1e-14);
        // Parallel loops one row apart enclose a strip of N plaquettes:
        // |W(x) - W(x + e_2)| <= ||R|| a^2 * N
        let eps = f.curvature_norm() / 64.0;
        for row in 0..8 {
            let a = f.wilson_loop(g.index(&[0, row]), 0);
            let b = f.wilson_loop(g.index(&[0, row + 1]), 0);
            assert!(op_norm(&(a - b)) <= eps * 8.0 + 1e-12);
        }
    }

    #[test]
    fn shift_unitaries_almost_commute() {
        // ||[U_1, U_2]|| is the largest plaquette deviation, i.e. a^2 ||R||_est.
        let g = geom(2, 6);
        let f = GaugeField::constant_flux(g, &FluxMatrix::from_planes(2, &[(1, 2, 2)]).unwrap()).unwrap();
        let u1 = f.shift_unitary(0);
        let u2 = f.shift_unitary(1);
        let comm = &u1 * &u2 - &u2 * &u1;
        let want = f.curvature_norm() / 36.0;
        assert!((op_norm(&comm) - want).abs() < 1e-10);
    }

    #[test]
    fn tensor_and_sum_laws() {
        let g = geom(2, 4);
        let k1 = FluxMatrix::from_planes(2, &[(1, 2, 1)]).unwrap();
        let k2 = FluxMatrix::from_planes(2, &[(1, 2, 2)]).unwrap();
        let f1 = GaugeField::constant_flux(g, &k1).unwrap();
        let f2 = GaugeField::constant_flux(g, &k2).unwrap();
        let t1 = GaugeField::trivial(g, 1).unwrap();
        assert_eq!(t1.tensor(&f1).unwrap().links(), f1.links());

        let t2 = GaugeField::trivial(g, 2).unwrap();
        let big = f1.tensor(&t2).unwrap();
        assert_eq!(big.rank(), 2);
        let p = big.plaquette(3, 0, 1);
        assert_eq!(p[(0, 1)], Complex64::new(0.0, 0.0));
        assert!((p[(0, 0)] - p[(1, 1)]).norm() < 1e-15);

        let prod = f1.tensor(&f2).unwrap();
        let p3 = GaugeField::constant_flux(g, &k1.add(&k2).unwrap()).unwrap();
        for s in 0..16 {
            let a = prod.plaquette(s, 0, 1)[(0, 0)];
            let b = p3.plaquette(s, 0, 1)[(0, 0)];
            assert!((a - b).norm() < 1e-12);
        }
        assert!(prod.curvature_norm() <= f1.curvature_norm() + f2.curvature_norm() + 1e-12);

        let sum = f1.direct_sum(&f2).unwrap();
        assert_eq!(sum.rank(), 2);
        assert_eq!(sum.topology().unwrap().summands.len(), 2);
        let tt = t1.direct_sum(&t1).unwrap();
        assert_eq!(tt.links(), t2.links());

        let other = GaugeField::trivial(geom(2, 5), 1).unwrap();
        assert!(f1.tensor(&other).is_err());
        assert!(f1.direct_sum(&other).is_err());
    }

    #[test]
    fn perturbation_is_deterministic_and_bounded() {
        let g = geom(2, 6);
        let f = GaugeField::constant_flux(g, &FluxMatrix::from_planes(2, &[(1, 2, 1)]).unwrap())
            .unwrap()
            .tensor(&GaugeField::trivial(g, 2).unwrap())
            .unwrap();
        assert_eq!(f.perturbed(0.0, 7).unwrap(), f);
        let a = f.perturbed(0.05, 7).unwrap();
        let b = f.perturbed(0.05, 7).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, f.perturbed(0.05, 8).unwrap());
        for u in a.links() {
            assert!(unitarity_defect(u) < 1e-12);
        }
        // Each plaquette contains four links, each moved by at most `s` in norm.
        for s in [0.01, 0.05, 0.2] {
            let p = f.perturbed(s, 11).unwrap();
            let drift = (p.curvature_norm() - f.curvature_norm()).abs();
            assert!(drift <= 4.0 * s * 36.0 + 1e-9, "s = {s}: drift {drift}");
        }
    }

    #[test]
    fn gauge_covariance_of_plaquette_spectra() {
        let g = geom(2, 4);
        let f = GaugeField::constant_flux(g, &FluxMatrix::from_planes(2, &[(1, 2, 1)]).unwrap())
            .unwrap()
            .tensor(&GaugeField::trivial(g, 2).unwrap())
            .unwrap()
            .perturbed(0.3, 5)
            .unwrap();
        let gauge = random_gauge(&g, 2, 99);
        let h = f.gauge_transformed(&gauge).unwrap();
        assert!((f.curvature_norm() - h.curvature_norm()).abs() < 1e-10);
        for s in 0..16 {
            let pf = f.plaquette(s, 0, 1);
            let ph = h.plaquette(s, 0, 1);
            let back = gauge[s].adjoint() * ph * &gauge[s];
            assert!(max_abs_diff(&pf, &back) < 1e-12);
        }
    }

    #[test]
    fn flux_validation() {
        assert!(FluxMatrix::from_rows(2, vec![0, 1, 1, 0]).is_err());
        assert!(FluxMatrix::from_rows(2, vec![0, 1, -1]).is_err());
        assert!(FluxMatrix::from_planes(2, &[(1, 3, 1)]).is_err());
        let k = FluxMatrix::from_rows(2, vec![0, 3, -3, 0]).unwrap();
        assert_eq!(k.label(), "12=3");
        assert!(GaugeField::constant_flux(geom(4, 3), &k).is_err());
    }
}
