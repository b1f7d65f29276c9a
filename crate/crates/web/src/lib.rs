//! Browser bindings for the interactive demo in `www/`.
//!
//! Three operations are exported: the signal photon number along the crystal,
//! the coupling/mismatch interplay map at fixed length, and the regime
//! classification for a single parameter set.

use pdc_zeno::closed_forms::{n_s_large_mismatch_asymptote, n_s_strong_coupling_asymptote};
use pdc_zeno::dynamics::signal_photons;
use pdc_zeno::regime::{classify_regime, regime_boundaries};
use pdc_zeno::CouplerParams;
use wasm_bindgen::prelude::*;

fn js_err(e: pdc_zeno::Error) -> JsError {
    JsError::new(&e.to_string())
}

fn samples(max: f64, count: usize) -> impl Iterator<Item = f64> {
    let count = count.max(2);
    (0..count).map(move |k| max * k as f64 / (count - 1) as f64)
}

/// `n_s(L)` at `count` evenly spaced lengths in `[0, max_length]`.
pub fn signal_curve_values(
    gamma: f64,
    kappa: f64,
    delta: f64,
    max_length: f64,
    count: usize,
) -> pdc_zeno::Result<Vec<f64>> {
    let base = CouplerParams::new(gamma, kappa, delta, 0.0)?;
    samples(max_length, count)
        .map(|l| signal_photons(&base.with_length(l)))
        .collect()
}

/// Weak-signal asymptote for the same lengths: the strong-coupling form when
/// `delta = 0`, the large-mismatch form when `kappa = 0`, empty otherwise.
pub fn asymptote_values(
    gamma: f64,
    kappa: f64,
    delta: f64,
    max_length: f64,
    count: usize,
) -> Vec<f64> {
    let eval = |l: f64| {
        if delta == 0.0 && kappa > 0.0 {
            n_s_strong_coupling_asymptote(gamma, kappa, l).ok()
        } else if kappa == 0.0 && delta != 0.0 {
            n_s_large_mismatch_asymptote(gamma, delta, l).ok()
        } else {
            None
        }
    };
    samples(max_length, count)
        .map(eval)
        .collect::<Option<Vec<_>>>()
        .unwrap_or_default()
}

/// Row-major `n_s` over `kappa in [0, kappa_max]` (rows) by
/// `delta in [0, delta_max]` (columns) at fixed length.
pub fn interplay_values(
    gamma: f64,
    length: f64,
    kappa_max: f64,
    delta_max: f64,
    size: usize,
) -> pdc_zeno::Result<Vec<f64>> {
    let kappas: Vec<f64> = samples(kappa_max, size).collect();
    let deltas: Vec<f64> = samples(delta_max, size).collect();
    let mut out = Vec::with_capacity(kappas.len() * deltas.len());
    for &kappa in &kappas {
        for &delta in &deltas {
            out.push(signal_photons(&CouplerParams::new(
                gamma, kappa, delta, length,
            )?)?);
        }
    }
    Ok(out)
}

#[wasm_bindgen]
pub fn signal_curve(
    gamma: f64,
    kappa: f64,
    delta: f64,
    max_length: f64,
    count: usize,
) -> Result<Vec<f64>, JsError> {
    signal_curve_values(gamma, kappa, delta, max_length, count).map_err(js_err)
}

#[wasm_bindgen]
pub fn asymptote_curve(
    gamma: f64,
    kappa: f64,
    delta: f64,
    max_length: f64,
    count: usize,
) -> Vec<f64> {
    asymptote_values(gamma, kappa, delta, max_length, count)
}

#[wasm_bindgen]
pub fn interplay_map(
    gamma: f64,
    length: f64,
    kappa_max: f64,
    delta_max: f64,
    size: usize,
) -> Result<Vec<f64>, JsError> {
    interplay_values(gamma, length, kappa_max, delta_max, size).map_err(js_err)
}

#[wasm_bindgen]
pub struct RegimeSummary {
    regime: String,
    discriminant: f64,
    kappa_low: f64,
    kappa_high: f64,
}

#[wasm_bindgen]
impl RegimeSummary {
    #[wasm_bindgen(getter)]
    pub fn regime(&self) -> String {
        self.regime.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn discriminant(&self) -> f64 {
        self.discriminant
    }

    /// Lower edge of the hyperbolic window, NaN when undefined.
    #[wasm_bindgen(getter)]
    pub fn kappa_low(&self) -> f64 {
        self.kappa_low
    }

    #[wasm_bindgen(getter)]
    pub fn kappa_high(&self) -> f64 {
        self.kappa_high
    }
}

pub fn summarize(gamma: f64, kappa: f64, delta: f64) -> pdc_zeno::Result<RegimeSummary> {
    let (kappa_high, kappa_low) = regime_boundaries(gamma, delta).unwrap_or((f64::NAN, f64::NAN));
    if kappa == 0.0 {
        return Ok(RegimeSummary {
            regime: "uncoupled".into(),
            discriminant: f64::NAN,
            kappa_low,
            kappa_high,
        });
    }
    let report = classify_regime(&CouplerParams::new(gamma, kappa, delta, 1.0)?)?;
    Ok(RegimeSummary {
        regime: report.regime.as_str().into(),
        discriminant: report.discriminant,
        kappa_low,
        kappa_high,
    })
}

#[wasm_bindgen]
pub fn classify(gamma: f64, kappa: f64, delta: f64) -> Result<RegimeSummary, JsError> {
    summarize(gamma, kappa, delta).map_err(js_err)
}
