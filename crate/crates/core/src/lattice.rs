//! The finite torus `(Z/N)^d` with lattice spacing `a = 1/N`.

use crate::error::{Error, Result};

/// Sites are numbered lexicographically with the first coordinate most
/// significant: `index = ((x_1 N + x_2) N + ...) N + x_d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LatticeGeometry {
    d: usize,
    n: usize,
}

impl LatticeGeometry {
    pub fn new(d: usize, n: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::OutOfRange("dimension must be at least 1".into()));
        }
        if n < 2 {
            return Err(Error::LatticeTooCoarse(n));
        }
        n.checked_pow(d as u32)
            .filter(|&v| v <= 1 << 28)
            .ok_or_else(|| Error::OutOfRange(format!("{n}^{d} sites is too many")))?;
        Ok(Self { d, n })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Sites per dimension `N`.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn spacing(&self) -> f64 {
        1.0 / self.n as f64
    }

    pub fn num_sites(&self) -> usize {
        self.n.pow(self.d as u32)
    }

    /// Stride of coordinate `j` (zero based) in the site index.
    pub fn stride(&self, j: usize) -> usize {
        self.n.pow((self.d - 1 - j) as u32)
    }

    pub fn coords(&self, mut site: usize) -> Vec<usize> {
        let mut x = vec![0; self.d];
        for j in (0..self.d).rev() {
            x[j] = site % self.n;
            site /= self.n;
        }
        x
    }

    /// Index of a coordinate tuple; coordinates are reduced mod `N`.
    pub fn index(&self, x: &[i64]) -> usize {
        let n = self.n as i64;
        x.iter()
            .fold(0usize, |acc, &c| acc * self.n + c.rem_euclid(n) as usize)
    }

    /// `site + steps * e_j` with periodic wrap.
    pub fn shift(&self, site: usize, j: usize, steps: i64) -> usize {
        let stride = self.stride(j);
        let xj = (site / stride) % self.n;
        let moved = (xj as i64 + steps).rem_euclid(self.n as i64) as usize;
        site - xj * stride + moved * stride
    }

    pub fn coord(&self, site: usize, j: usize) -> usize {
        (site / self.stride(j)) % self.n
    }

    /// Site permutation that keeps periodic neighbours close: each coordinate
    /// is visited in the order `0, N-1, 1, N-2, ...`, so `x` and `x +- 1 mod N`
    /// are at most two positions apart. Returns `order[k] = site` at position `k`.
    pub fn folded_order(&self) -> Vec<usize> {
        let fold: Vec<usize> = (0..self.n)
            .map(|p| if p % 2 == 0 { p / 2 } else { self.n - 1 - p / 2 })
            .collect();
        (0..self.num_sites())
            .map(|k| {
                let mut rest = k;
                let mut site = 0;
                for j in (0..self.d).rev() {
                    site += fold[rest % self.n] * self.stride(j);
                    rest /= self.n;
                }
                site
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn counting() {
        let g = LatticeGeometry::new(2, 4).unwrap();
        assert_eq!(g.num_sites(), 16);
        assert_eq!(g.spacing(), 0.25);
        assert_eq!(LatticeGeometry::new(4, 3).unwrap().num_sites(), 81);
        assert!(matches!(
            LatticeGeometry::new(2, 1),
            Err(Error::LatticeTooCoarse(1))
        ));
    }

    #[test]
    fn lexicographic_first_coordinate_major() {
        let g = LatticeGeometry::new(3, 5).unwrap();
        assert_eq!(g.index(&[1, 0, 0]), 25);
        assert_eq!(g.index(&[0, 0, 1]), 1);
        assert_eq!(g.coords(27), vec![1, 0, 2]);
    }

    #[test]
    fn folded_order_is_permutation_with_small_gaps() {
        for (d, n) in [(2, 5), (2, 8), (4, 3), (3, 6)] {
            let g = LatticeGeometry::new(d, n).unwrap();
            let order = g.folded_order();
            let mut pos = vec![usize::MAX; g.num_sites()];
            for (k, &s) in order.iter().enumerate() {
                assert_eq!(pos[s], usize::MAX);
                pos[s] = k;
            }
            let limit = 2 * n.pow(d as u32 - 1);
            for s in 0..g.num_sites() {
                for j in 0..d {
                    let t = g.shift(s, j, 1);
                    assert!(pos[s].abs_diff(pos[t]) <= limit);
                }
            }
        }
    }

    proptest! {
        #[test]
        fn index_is_bijective_and_periodic(d in 1usize..5, n in 2usize..7, seed in 0usize..10_000) {
            let g = LatticeGeometry::new(d, n).unwrap();
            let site = seed % g.num_sites();
            let x: Vec<i64> = g.coords(site).iter().map(|&c| c as i64).collect();
            prop_assert_eq!(g.index(&x), site);
            for j in 0..d {
                let mut y = x.clone();
                y[j] += n as i64;
                prop_assert_eq!(g.index(&y), site);
                prop_assert_eq!(g.shift(site, j, n as i64), site);
                prop_assert_eq!(g.shift(g.shift(site, j, 1), j, -1), site);
            }
        }
    }
}
