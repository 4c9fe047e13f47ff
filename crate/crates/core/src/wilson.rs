//! Massive hermitian Wilson-Dirac operator and its Brillouin-torus symbol.
//!
//! In dimensionless form the assembled matrix is
//!
//! ```text
//! H = sum_j 1/2 (U_j - U_j*) (x) c_j + ( sum_j (1/2 (U_j + U_j*) - 1) + mu ) (x) g
//! ```
//!
//! acting on `sites (x) C^r (x) S`. `H = a (D_W + (mu/a) g)`, so its inertia is
//! that of the physical operator with mass `mu / a`.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::io::Write;

use num_complex::Complex64;

use crate::clifford::CliffordRep;
use crate::error::{Error, Result};
use crate::gauge::GaugeField;
use crate::lattice::LatticeGeometry;
use crate::linalg::CMat;
use crate::spectral::band::BandMatrix;

/// How the dimensionless mass was obtained from the physical one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MassMode {
    /// `mu = m`: mass `m / a` at the cutoff scale.
    Cutoff,
    /// `mu = a m`: mass `m` independent of the spacing.
    Constant,
}

impl MassMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            MassMode::Cutoff => "cutoff",
            MassMode::Constant => "constant",
        }
    }
}

impl std::str::FromStr for MassMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cutoff" => Ok(MassMode::Cutoff),
            "constant" => Ok(MassMode::Constant),
            other => Err(Error::OutOfRange(format!("unknown mass mode {other:?}"))),
        }
    }
}

/// Block-sparse Hermitian matrix: one dense `s x s` block per coupled site
/// pair, `s = r * 2^(d/2)`. Rows of blocks are sorted by column site.
#[derive(Debug, Clone)]
pub struct WilsonOperator {
    geometry: LatticeGeometry,
    rank: usize,
    dim_s: usize,
    mu: f64,
    mass_mode: MassMode,
    /// `rows[site] = [(col_site, block row-major)]`
    rows: Vec<Vec<(usize, Vec<Complex64>)>>,
}

fn block_kron(u: &CMat, spin: &CMat) -> Vec<Complex64> {
    let (r, s) = (u.nrows(), spin.nrows());
    let n = r * s;
    let mut out = vec![Complex64::new(0.0, 0.0); n * n];
    for a in 0..r {
        for b in 0..r {
            let uab = u[(a, b)];
            if uab == Complex64::new(0.0, 0.0) {
                continue;
            }
            for al in 0..s {
                for be in 0..s {
                    out[(a * s + al) * n + b * s + be] = uab * spin[(al, be)];
                }
            }
        }
    }
    out
}

fn adjoint_block(b: &[Complex64], n: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        for j in 0..n {
            out[j * n + i] = b[i * n + j].conj();
        }
    }
    out
}

impl WilsonOperator {
    /// Assembles `H(mu)` from a gauge field. Only the diagonal and strictly
    /// lower blocks are accumulated; the upper blocks are their exact
    /// conjugate transposes.
    pub fn assemble(field: &GaugeField, cl: &CliffordRep, mu: f64, mass_mode: MassMode) -> Result<Self> {
        let d = field.d();
        if cl.d() != d {
            return Err(Error::DimensionMismatch(format!(
                "gauge field has d = {d}, Clifford representation has d = {}",
                cl.d()
            )));
        }
        let geometry = *field.geometry();
        let r = field.rank();
        let ds = cl.dim_s();
        let s = r * ds;
        let half = Complex64::new(0.5, 0.0);
        let forward: Vec<CMat> = (0..d)
            .map(|j| (cl.generator(j) + cl.grading()).map(|z| z * half))
            .collect();
        let diag = block_kron(
            &CMat::identity(r, r),
            &cl.grading().map(|z| z * (mu - d as f64)),
        );

        let ns = geometry.num_sites();
        let mut lower: Vec<BTreeMap<usize, Vec<Complex64>>> = vec![BTreeMap::new(); ns];
        for x in 0..ns {
            for j in 0..d {
                let y = geometry.shift(x, j, 1);
                // block (y, x) = U_j(x) (x) (c_j + g)/2
                let b = block_kron(field.link(x, j), &forward[j]);
                let (row, col, val) = if y > x {
                    (y, x, b)
                } else {
                    (x, y, adjoint_block(&b, s))
                };
                let slot = lower[row]
                    .entry(col)
                    .or_insert_with(|| vec![Complex64::new(0.0, 0.0); s * s]);
                for (acc, v) in slot.iter_mut().zip(val) {
                    *acc += v;
                }
            }
        }

        let mut rows: Vec<Vec<(usize, Vec<Complex64>)>> = vec![Vec::new(); ns];
        for (row, blocks) in lower.into_iter().enumerate() {
            for (col, b) in blocks {
                rows[col].push((row, adjoint_block(&b, s)));
                rows[row].push((col, b));
            }
            rows[row].push((row, diag.clone()));
        }
        for row in &mut rows {
            row.sort_by_key(|(c, _)| *c);
        }
        Ok(Self {
            geometry,
            rank: r,
            dim_s: ds,
            mu,
            mass_mode,
            rows,
        })
    }

    pub fn geometry(&self) -> &LatticeGeometry {
        &self.geometry
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn mass_mode(&self) -> MassMode {
        self.mass_mode
    }

    pub fn block_size(&self) -> usize {
        self.rank * self.dim_s
    }

    /// Matrix dimension `N^d r 2^(d/2)`.
    pub fn dim(&self) -> usize {
        self.geometry.num_sites() * self.block_size()
    }

    pub fn max_row_nnz(&self) -> usize {
        let s = self.block_size();
        (0..self.dim())
            .map(|i| {
                let (site, k) = (i / s, i % s);
                self.rows[site]
                    .iter()
                    .map(|(_, b)| b[k * s..(k + 1) * s].iter().filter(|z| z.norm() != 0.0).count())
                    .sum::<usize>()
            })
            .max()
            .unwrap_or(0)
    }

    pub fn matvec(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} for operator of dimension {}",
                v.len(),
                self.dim()
            )));
        }
        let mut y = vec![Complex64::new(0.0, 0.0); v.len()];
        self.matvec_into(v, &mut y);
        Ok(y)
    }

    pub(crate) fn matvec_into(&self, v: &[Complex64], y: &mut [Complex64]) {
        let s = self.block_size();
        for (site, blocks) in self.rows.iter().enumerate() {
            let out = &mut y[site * s..(site + 1) * s];
            out.iter_mut().for_each(|z| *z = Complex64::new(0.0, 0.0));
            for (col, b) in blocks {
                let x = &v[col * s..(col + 1) * s];
                for (i, o) in out.iter_mut().enumerate() {
                    let row = &b[i * s..(i + 1) * s];
                    *o += row.iter().zip(x).map(|(a, b)| a * b).sum::<Complex64>();
                }
            }
        }
    }

    pub fn to_dense(&self) -> CMat {
        let s = self.block_size();
        let n = self.dim();
        let mut m = CMat::zeros(n, n);
        for (site, blocks) in self.rows.iter().enumerate() {
            for (col, b) in blocks {
                for i in 0..s {
                    for j in 0..s {
                        m[(site * s + i, col * s + j)] = b[i * s + j];
                    }
                }
            }
        }
        m
    }

    /// Banded copy in the folded site order used by the band factorization.
    pub fn to_band(&self) -> BandMatrix {
        let s = self.block_size();
        let order = self.geometry.folded_order();
        let mut pos = vec![0usize; order.len()];
        for (k, &site) in order.iter().enumerate() {
            pos[site] = k;
        }
        let mut width = 0;
        for (site, blocks) in self.rows.iter().enumerate() {
            for (col, _) in blocks {
                if pos[site] > pos[*col] {
                    width = width.max((pos[site] - pos[*col]) * s + s - 1);
                }
            }
        }
        width = width.max(s - 1);
        let mut band = BandMatrix::zeros(self.dim(), width);
        for (site, blocks) in self.rows.iter().enumerate() {
            for (col, b) in blocks {
                if pos[site] < pos[*col] {
                    continue;
                }
                for i in 0..s {
                    for j in 0..s {
                        let (gi, gj) = (pos[site] * s + i, pos[*col] * s + j);
                        if gi >= gj {
                            band.set(gi, gj, b[i * s + j]);
                        }
                    }
                }
            }
        }
        band
    }

    /// Writes the lower triangle in Matrix Market `coordinate complex
    /// hermitian` format (one-based indices).
    pub fn write_matrix_market<W: Write>(&self, mut w: W) -> Result<()> {
        let s = self.block_size();
        let mut entries = Vec::new();
        for (site, blocks) in self.rows.iter().enumerate() {
            for (col, b) in blocks {
                for i in 0..s {
                    for j in 0..s {
                        let (gi, gj) = (site * s + i, col * s + j);
                        let z = b[i * s + j];
                        if gi >= gj && z.norm() != 0.0 {
                            entries.push((gj, gi, z));
                        }
                    }
                }
            }
        }
        // column-major order, as most readers expect
        entries.sort_by_key(|&(c, r, _)| (c, r));
        writeln!(w, "%%MatrixMarket matrix coordinate complex hermitian")?;
        writeln!(
            w,
            "% hermitian Wilson-Dirac operator: d={} N={} rank={} mu={:e} mode={}",
            self.geometry.d(),
            self.geometry.n(),
            self.rank,
            self.mu,
            self.mass_mode.as_str()
        )?;
        writeln!(w, "{} {} {}", self.dim(), self.dim(), entries.len())?;
        for (c, r, z) in entries {
            writeln!(w, "{} {} {:.17e} {:.17e}", r + 1, c + 1, z.re, z.im)?;
        }
        Ok(())
    }
}

/// `D_W(k) + mu g` at one Brillouin momentum.
#[derive(Debug, Clone)]
pub struct SymbolPoint {
    pub k: Vec<f64>,
    pub matrix: CMat,
}

/// `sum_j c_j i sin(2 pi k_j) + (sum_j (cos(2 pi k_j) - 1) + mu) g`.
pub fn symbol(cl: &CliffordRep, k: &[f64], mu: f64) -> Result<SymbolPoint> {
    if k.len() != cl.d() {
        return Err(Error::DimensionMismatch(format!(
            "momentum has {} components, d = {}",
            k.len(),
            cl.d()
        )));
    }
    let n = cl.dim_s();
    let mut m = CMat::zeros(n, n);
    let mut wilson = mu;
    for (j, &kj) in k.iter().enumerate() {
        let t = 2.0 * PI * kj;
        m += cl.generator(j).map(|z| z * Complex64::new(0.0, t.sin()));
        wilson += t.cos() - 1.0;
    }
    m += cl.grading().map(|z| z * wilson);
    Ok(SymbolPoint { k: k.to_vec(), matrix: m })
}

/// `|D_W(k) + mu g|`: every eigenvalue of the symbol is `+-` this value.
pub fn symbol_modulus(k: &[f64], mu: f64) -> f64 {
    let mut sines = 0.0;
    let mut wilson = mu;
    for &kj in k {
        let t = 2.0 * PI * kj;
        sines += t.sin() * t.sin();
        wilson += t.cos() - 1.0;
    }
    (sines + wilson * wilson).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapScan {
    /// Minimum of the symbol modulus over the finest grid scanned.
    pub value: f64,
    /// Finest grid used.
    pub grid: usize,
    /// Whether the last two grids agreed to three significant digits.
    pub converged: bool,
}

/// Exact minimum of the symbol modulus over the momentum grid `(Z/g)^d / g`.
///
/// The modulus is invariant under `k_j -> -k_j` and under permuting
/// coordinates, so only nondecreasing index tuples in `0..=g/2` are visited,
/// with branches pruned once the partial `sum sin^2` exceeds the best value.
pub fn symbol_min_on_grid(d: usize, mu: f64, grid: usize) -> f64 {
    let g = grid.max(1);
    let h = g / 2;
    let cos: Vec<f64> = (0..=h).map(|i| (2.0 * PI * i as f64 / g as f64).cos()).collect();
    let sin2: Vec<f64> = (0..=h)
        .map(|i| {
            let s = (2.0 * PI * i as f64 / g as f64).sin();
            s * s
        })
        .collect();
    // f^2 = sum sin^2 + (sum cos - d + mu)^2
    let target = d as f64 - mu;
    let mut best = f64::INFINITY;
    scan(&cos, &sin2, d, 0, 0.0, 0.0, target, &mut best);
    best.sqrt()
}

#[allow(clippy::too_many_arguments)]
fn scan(cos: &[f64], sin2: &[f64], left: usize, start: usize, s2: f64, csum: f64, target: f64, best: &mut f64) {
    if left == 1 {
        for i in start..cos.len() {
            let w = csum + cos[i] - target;
            let v = s2 + sin2[i] + w * w;
            if v < *best {
                *best = v;
            }
        }
        return;
    }
    for i in start..cos.len() {
        let s = s2 + sin2[i];
        if s >= *best {
            continue;
        }
        scan(cos, sin2, left - 1, i, s, csum + cos[i], target, best);
    }
}

/// Grid minimum of the symbol modulus, refined by doubling until two
/// successive grids agree to three significant digits (at most three
/// doublings past `grid`).
pub fn symbol_gap(cl: &CliffordRep, mu: f64, grid: usize) -> Result<GapScan> {
    if grid < 2 {
        return Err(Error::OutOfRange(format!("grid must be at least 2, got {grid}")));
    }
    let d = cl.d();
    let agree = |a: f64, b: f64| (a - b).abs() <= 5e-4 * a.abs().max(b.abs()) || (a - b).abs() < 1e-12;
    let mut coarse = symbol_min_on_grid(d, mu, grid.div_ceil(2).max(2));
    let mut g = grid;
    for _ in 0..4 {
        let fine = symbol_min_on_grid(d, mu, g);
        if agree(coarse, fine) {
            return Ok(GapScan {
                value: fine,
                grid: g,
                converged: true,
            });
        }
        coarse = fine;
        g *= 2;
    }
    Ok(GapScan {
        value: coarse,
        grid: g / 2,
        converged: false,
    })
}
