//! Banded symmetric-indefinite factorization `P H P^T = L D L^H` with
//! Bunch-Kaufman diagonal pivoting (1x1 and 2x2 blocks). Only the pivot blocks
//! `D` are kept: by Sylvester's law their inertia is the inertia of `H`.
//!
//! Storage is the lower band of a Hermitian matrix, column by column. Each
//! column tracks how far its nonzeros extend, so elimination only touches the
//! live profile. Symmetric interchanges can push entries past the stored
//! width; the storage is widened when that happens.

use num_complex::Complex64;

use crate::linalg::CMat;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// `(1 + sqrt 17) / 8`, the Bunch-Kaufman growth-balancing constant.
const ALPHA: f64 = 0.640_388_203_202_208_4;

#[derive(Debug, Clone)]
pub struct BandMatrix {
    n: usize,
    width: usize,
    /// column `j`, row `i` in `j..=j+width` at `data[j * (width + 1) + (i - j)]`
    data: Vec<Complex64>,
}

/// Counts of positive, negative and zero pivots.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct PivotCounts {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
    pub two_by_two: usize,
    pub interchanges: usize,
}

impl BandMatrix {
    pub fn zeros(n: usize, width: usize) -> Self {
        let width = width.min(n.saturating_sub(1));
        Self {
            n,
            width,
            data: vec![ZERO; n * (width + 1)],
        }
    }

    /// Lower band of a dense Hermitian matrix; `width` is detected.
    pub fn from_dense(h: &CMat) -> Self {
        let n = h.nrows();
        let mut width = 0;
        for j in 0..n {
            for i in j..n {
                if h[(i, j)] != ZERO {
                    width = width.max(i - j);
                }
            }
        }
        let mut b = Self::zeros(n, width);
        for j in 0..n {
            for i in j..=(j + b.width).min(n - 1) {
                b.set(i, j, h[(i, j)]);
            }
        }
        b
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// Entry `(i, j)` with `i >= j`.
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        debug_assert!(i >= j);
        if i - j > self.width {
            ZERO
        } else {
            self.data[j * (self.width + 1) + i - j]
        }
    }

    /// Sets entry `(i, j)` with `i >= j`, which must lie inside the band.
    pub fn set(&mut self, i: usize, j: usize, z: Complex64) {
        assert!(i >= j && i - j <= self.width, "({i}, {j}) outside band");
        self.data[j * (self.width + 1) + i - j] = z;
    }

    pub fn shifted(&self, shift: f64) -> Self {
        let mut out = self.clone();
        for j in 0..self.n {
            out.data[j * (self.width + 1)] -= shift;
        }
        out
    }

    /// Row-sum norm `||H||_inf`.
    pub fn norm_inf(&self) -> f64 {
        let mut rows = vec![0.0; self.n];
        for j in 0..self.n {
            for i in j..=(j + self.width).min(self.n - 1) {
                let a = self.get(i, j).norm();
                rows[i] += a;
                if i != j {
                    rows[j] += a;
                }
            }
        }
        rows.into_iter().fold(0.0, f64::max)
    }

    fn widen(&mut self, width: usize) {
        let width = width.min(self.n.saturating_sub(1));
        if width <= self.width {
            return;
        }
        let mut data = vec![ZERO; self.n * (width + 1)];
        for j in 0..self.n {
            let src = &self.data[j * (self.width + 1)..(j + 1) * (self.width + 1)];
            data[j * (width + 1)..j * (width + 1) + self.width + 1].copy_from_slice(src);
        }
        self.data = data;
        self.width = width;
    }

    /// Factors in place and returns the pivot inertia. The matrix is
    /// consumed as workspace.
    pub fn factor_inertia(mut self) -> PivotCounts {
        let n = self.n;
        let mut counts = PivotCounts::default();
        // ext[j]: last row offset below the diagonal that may be nonzero
        let mut ext: Vec<usize> = (0..n)
            .map(|j| {
                let top = (self.width).min(n - 1 - j);
                (0..=top).rev().find(|&o| self.get(j + o, j) != ZERO).unwrap_or(0)
            })
            .collect();
        let mut k = 0;
        while k < n {
            let w = self.width + 1;
            let akk = self.data[k * w].re.abs();
            let (mut lambda, mut r) = (0.0, k);
            for o in 1..=ext[k] {
                let a = self.data[k * w + o].norm();
                if a > lambda {
                    lambda = a;
                    r = k + o;
                }
            }
            if akk.max(lambda) == 0.0 {
                counts.zero += 1;
                k += 1;
                continue;
            }
            let mut two = false;
            if akk < ALPHA * lambda {
                let sigma = self.offdiag_max_in_row(r, k, &ext);
                if akk * sigma >= ALPHA * lambda * lambda {
                    // 1x1 at k
                } else if self.data[r * w].re.abs() >= ALPHA * sigma {
                    self.interchange(k, r, &mut ext);
                    counts.interchanges += 1;
                } else {
                    if r != k + 1 {
                        self.interchange(k + 1, r, &mut ext);
                        counts.interchanges += 1;
                    }
                    two = true;
                }
            }
            if two {
                self.eliminate_2x2(k, &mut ext, &mut counts);
                k += 2;
            } else {
                self.eliminate_1x1(k, &mut ext, &mut counts);
                k += 1;
            }
        }
        counts
    }

    /// `max_{j >= k, j != r} |a(r, j)|` over the active part.
    fn offdiag_max_in_row(&self, r: usize, k: usize, ext: &[usize]) -> f64 {
        let mut s: f64 = 0.0;
        for j in k..r {
            if r - j <= ext[j] {
                s = s.max(self.get(r, j).norm());
            }
        }
        let w = self.width + 1;
        for o in 1..=ext[r] {
            s = s.max(self.data[r * w + o].norm());
        }
        s
    }

    /// Symmetric interchange of rows/columns `p < q` of the active block
    /// (columns `k..n`, with `k <= p`).
    fn interchange(&mut self, p: usize, q: usize, ext: &mut [usize]) {
        if p == q {
            return;
        }
        let (p, q) = (p.min(q), p.max(q));
        let need = (q - p) + ext[q];
        if need > self.width {
            self.widen(need.max(self.width + self.width / 2));
        }
        let w = self.width + 1;
        // diagonal
        self.data.swap(p * w, q * w);
        // rows p and q left of p (columns j < p): only the active columns hold
        // data we still need, but swapping the full reachable range is harmless
        let lo = p.saturating_sub(self.width);
        for j in lo..p {
            if q - j <= self.width {
                self.data.swap(j * w + (p - j), j * w + (q - j));
            }
        }
        // middle: a(i, p) <-> conj(a(q, i)) for p < i < q
        for i in (p + 1)..q {
            let a = self.data[p * w + (i - p)];
            let b = self.data[i * w + (q - i)];
            self.data[p * w + (i - p)] = b.conj();
            self.data[i * w + (q - i)] = a.conj();
        }
        // corner
        self.data[p * w + (q - p)] = self.data[p * w + (q - p)].conj();
        // below q: a(i, p) <-> a(i, q)
        let below = (ext[p] + p).max(ext[q] + q);
        for i in (q + 1)..=below.min(self.n - 1) {
            self.data.swap(p * w + i - p, q * w + i - q);
        }
        // new extents
        let ep = (ext[q] + q).max(q) - p;
        let eq = (ext[p] + p).saturating_sub(q);
        ext[p] = ep.max(q - p);
        ext[q] = eq;
        // rows between p and q can now reach further in column p's old role;
        // ext for columns in (p, q) only shrink or stay, which is conservative
        for j in (p + 1)..q {
            ext[j] = ext[j].max(q - j);
        }
    }

    fn eliminate_1x1(&mut self, k: usize, ext: &mut [usize], counts: &mut PivotCounts) {
        let w = self.width + 1;
        let d = self.data[k * w].re;
        if d > 0.0 {
            counts.positive += 1;
        } else if d < 0.0 {
            counts.negative += 1;
        } else {
            counts.zero += 1;
            return;
        }
        let e = ext[k];
        let last = k + e;
        for l in (k + 1)..=last {
            let alk = self.data[k * w + (l - k)];
            if alk == ZERO {
                continue;
            }
            let f = alk.conj() / d;
            let (head, tail) = self.data.split_at_mut(l * w);
            let colk = &head[k * w + (l - k)..k * w + e + 1];
            let coll = &mut tail[..last - l + 1];
            for (x, y) in coll.iter_mut().zip(colk) {
                *x -= y * f;
            }
            tail[0].im = 0.0;
            ext[l] = ext[l].max(last - l);
        }
    }

    fn eliminate_2x2(&mut self, k: usize, ext: &mut [usize], counts: &mut PivotCounts) {
        let w = self.width + 1;
        let a = self.data[k * w].re;
        let c = self.data[(k + 1) * w].re;
        let b = self.data[k * w + 1];
        let det = a * c - b.norm_sqr();
        counts.two_by_two += 1;
        if det < 0.0 {
            counts.positive += 1;
            counts.negative += 1;
        } else if det > 0.0 {
            if a + c > 0.0 {
                counts.positive += 2;
            } else {
                counts.negative += 2;
            }
        } else {
            counts.zero += 1;
            if a + c > 0.0 {
                counts.positive += 1;
            } else if a + c < 0.0 {
                counts.negative += 1;
            } else {
                counts.zero += 1;
            }
            return;
        }
        let last = (k + ext[k]).max(k + 1 + ext[k + 1]);
        if last < k + 2 {
            return;
        }
        // u_i = a(i, k), v_i = a(i, k+1) for i >= k+2
        let m = last - (k + 1);
        let mut u = vec![ZERO; m];
        let mut v = vec![ZERO; m];
        for (t, i) in ((k + 2)..=last).enumerate() {
            u[t] = if i - k <= self.width { self.data[k * w + (i - k)] } else { ZERO };
            v[t] = if i - k - 1 <= self.width { self.data[(k + 1) * w + (i - k - 1)] } else { ZERO };
        }
        for (t, l) in ((k + 2)..=last).enumerate() {
            let (ul, vl) = (u[t].conj(), v[t].conj());
            if ul == ZERO && vl == ZERO {
                continue;
            }
            let x = (ul * c - b.conj() * vl) / det;
            let y = (-b * ul + vl * a) / det;
            let col = &mut self.data[l * w..l * w + (last - l) + 1];
            for (s, z) in col.iter_mut().enumerate() {
                *z -= u[t + s] * x + v[t + s] * y;
            }
            col[0].im = 0.0;
            ext[l] = ext[l].max(last - l);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn herm(n: usize, seed: u64, band: usize) -> CMat {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut h = CMat::zeros(n, n);
        for i in 0..n {
            for j in 0..=i {
                if i - j > band {
                    continue;
                }
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

    fn reference(h: &CMat) -> (usize, usize) {
        let ev = h.clone().symmetric_eigen().eigenvalues;
        (ev.iter().filter(|&&x| x > 0.0).count(), ev.iter().filter(|&&x| x < 0.0).count())
    }

    #[test]
    fn matches_eigenvalue_signs() {
        for seed in 0..30 {
            for band in [1, 3, 9] {
                let h = herm(40, seed, band);
                let c = BandMatrix::from_dense(&h).factor_inertia();
                assert_eq!((c.positive, c.negative), reference(&h), "seed {seed} band {band}");
                assert_eq!(c.zero, 0);
            }
        }
    }

    #[test]
    fn zero_diagonal_forces_pivoting() {
        // all-zero diagonal: only 2x2 pivots or interchanges can make progress
        let mut h = herm(30, 5, 4);
        for i in 0..30 {
            h[(i, i)] = ZERO;
        }
        let c = BandMatrix::from_dense(&h).factor_inertia();
        assert!(c.two_by_two + c.interchanges > 0);
        assert_eq!((c.positive, c.negative), reference(&h));
    }

    #[test]
    fn singular_diagonal() {
        let mut h = CMat::zeros(3, 3);
        h[(0, 0)] = Complex64::new(3.0, 0.0);
        h[(1, 1)] = Complex64::new(-1.0, 0.0);
        let c = BandMatrix::from_dense(&h).factor_inertia();
        assert_eq!((c.positive, c.negative, c.zero), (1, 1, 1));
    }

    #[test]
    fn shifted_counts() {
        let h = herm(25, 9, 5);
        let mut ev: Vec<f64> = h.clone().symmetric_eigen().eigenvalues.iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        let shift = 0.5 * (ev[10] + ev[11]);
        let c = BandMatrix::from_dense(&h).shifted(shift).factor_inertia();
        assert_eq!(c.negative, 11);
    }
}
