//! Curves plotted by the static page in `www/`.
//!
//! Every function returns one value per sample; samples where the quantity
//! is undefined (the symbol vanishes, the invariant is singular) are `NaN`.
//! The wasm exports in [`bindings`] are thin wrappers over these.

use wilson_core::ktheory::{acm_invariant, clock_shift, default_degree_resolution, symbol_degree};
use wilson_core::wilson::symbol_gap;
use wilson_core::CliffordRep;

pub const MAX_SAMPLES: usize = 2001;
pub const MAX_CLOCK_N: usize = 48;

/// `steps + 1` equally spaced values from `lo` to `hi`.
pub fn samples(lo: f64, hi: f64, steps: usize) -> Result<Vec<f64>, String> {
    if !(lo.is_finite() && hi.is_finite()) || lo > hi {
        return Err(format!("bad range {lo}..{hi}"));
    }
    if steps == 0 || steps + 1 > MAX_SAMPLES {
        return Err(format!("steps must be in 1..{MAX_SAMPLES}"));
    }
    Ok((0..=steps).map(|i| lo + (hi - lo) * i as f64 / steps as f64).collect())
}

/// `min_k |D_W(k) + mu g|` at each sampled `mu`.
pub fn gap_curve(d: usize, lo: f64, hi: f64, steps: usize, grid: usize) -> Result<Vec<f64>, String> {
    let cl = CliffordRep::new(d).map_err(|e| e.to_string())?;
    samples(lo, hi, steps)?
        .into_iter()
        .map(|mu| symbol_gap(&cl, mu, grid).map(|g| g.value).map_err(|e| e.to_string()))
        .collect()
}

/// Degree of the normalized symbol at each sampled `mu`.
pub fn degree_curve(d: usize, lo: f64, hi: f64, steps: usize) -> Result<Vec<f64>, String> {
    CliffordRep::new(d).map_err(|e| e.to_string())?;
    let res = default_degree_resolution(d);
    Ok(samples(lo, hi, steps)?
        .into_iter()
        .map(|mu| symbol_degree(d, mu, res).map_or(f64::NAN, |k| k as f64))
        .collect())
}

/// Invariant of the `n x n` clock and shift pair for `n` in `lo..=hi`.
pub fn clock_shift_curve(lo: usize, hi: usize, m: f64) -> Result<Vec<f64>, String> {
    if lo < 1 || lo > hi || hi > MAX_CLOCK_N {
        return Err(format!("n range must satisfy 1 <= lo <= hi <= {MAX_CLOCK_N}"));
    }
    if !(m > 0.0 && m < 2.0) {
        return Err(format!("m must lie in (0, 2), got {m}"));
    }
    (lo..=hi)
        .map(|n| {
            let t = clock_shift(n).map_err(|e| e.to_string())?;
            Ok(acm_invariant(&t, m).map_or(f64::NAN, |k| k as f64))
        })
        .collect()
}

#[cfg(target_arch = "wasm32")]
pub mod bindings {
    use wasm_bindgen::prelude::*;

    #[wasm_bindgen]
    pub fn gap_curve(d: usize, lo: f64, hi: f64, steps: usize, grid: usize) -> Result<Vec<f64>, JsError> {
        super::gap_curve(d, lo, hi, steps, grid).map_err(|e| JsError::new(&e))
    }

    #[wasm_bindgen]
    pub fn degree_curve(d: usize, lo: f64, hi: f64, steps: usize) -> Result<Vec<f64>, JsError> {
        super::degree_curve(d, lo, hi, steps).map_err(|e| JsError::new(&e))
    }

    #[wasm_bindgen]
    pub fn clock_shift_curve(lo: usize, hi: usize, m: f64) -> Result<Vec<f64>, JsError> {
        super::clock_shift_curve(lo, hi, m).map_err(|e| JsError::new(&e))
    }
}
