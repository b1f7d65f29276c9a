//! Two-dimensional parameter sweeps and the anti-Zeno ridge.

use crate::closed_forms::{n_s_coupled_matched, n_s_mismatched_uncoupled};
use crate::dynamics::signal_photons;
use crate::error::{Error, Result};
use crate::params::CouplerParams;
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    Gamma,
    Kappa,
    Delta,
    Length,
}

impl Axis {
    pub fn as_str(&self) -> &'static str {
        match self {
            Axis::Gamma => "gamma",
            Axis::Kappa => "kappa",
            Axis::Delta => "delta",
            Axis::Length => "length",
        }
    }

    fn apply(&self, params: &mut CouplerParams, value: f64) {
        match self {
            Axis::Gamma => params.gamma = value,
            Axis::Kappa => params.kappa = value,
            Axis::Delta => params.delta = value,
            Axis::Length => params.length = value,
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Axis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gamma" => Ok(Axis::Gamma),
            "kappa" => Ok(Axis::Kappa),
            "delta" => Ok(Axis::Delta),
            "length" => Ok(Axis::Length),
            other => Err(Error::InvalidSweep(format!(
                "unknown axis parameter `{other}`"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisSpec {
    pub param: Axis,
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl AxisSpec {
    pub fn new(param: Axis, min: f64, max: f64, count: usize) -> Self {
        Self {
            param,
            min,
            max,
            count,
        }
    }

    /// Evenly spaced samples; the endpoints are hit exactly.
    pub fn values(&self) -> Vec<f64> {
        let last = (self.count - 1) as f64;
        (0..self.count)
            .map(|k| {
                if k + 1 == self.count {
                    self.max
                } else {
                    self.min + (self.max - self.min) * (k as f64 / last)
                }
            })
            .collect()
    }

    fn validate(&self) -> Result<()> {
        if self.count < 2 {
            return Err(Error::InvalidSweep(format!(
                "axis `{}` needs at least 2 points",
                self.param
            )));
        }
        if !(self.min < self.max) || !self.min.is_finite() || !self.max.is_finite() {
            return Err(Error::InvalidSweep(format!(
                "axis `{}` needs finite min < max",
                self.param
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Engine {
    Numeric,
    ClosedFormWhenApplicable,
}

impl Engine {
    pub fn as_str(&self) -> &'static str {
        match self {
            Engine::Numeric => "numeric",
            Engine::ClosedFormWhenApplicable => "closed_form_when_applicable",
        }
    }
}

impl FromStr for Engine {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "numeric" => Ok(Engine::Numeric),
            "closed_form_when_applicable" => Ok(Engine::ClosedFormWhenApplicable),
            other => Err(Error::InvalidSweep(format!("unknown engine `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSpec {
    pub fixed: CouplerParams,
    pub axis1: AxisSpec,
    pub axis2: AxisSpec,
    pub engine: Engine,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        self.axis1.validate()?;
        self.axis2.validate()?;
        if self.axis1.param == self.axis2.param {
            return Err(Error::InvalidSweep("axis parameters must differ".into()));
        }
        Ok(())
    }

    /// Parameters of cell `(row, col)` given precomputed axis samples.
    fn cell_params(&self, v1: f64, v2: f64) -> CouplerParams {
        let mut params = self.fixed;
        self.axis1.param.apply(&mut params, v1);
        self.axis2.param.apply(&mut params, v2);
        params
    }
}

/// How a grid cell was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CellSource {
    Numeric,
    ClosedForm,
    Failed,
}

impl CellSource {
    pub fn as_str(&self) -> &'static str {
        match self {
            CellSource::Numeric => "numeric",
            CellSource::ClosedForm => "closed_form",
            CellSource::Failed => "failed",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepGrid {
    pub spec: SweepSpec,
    /// Row-major `n_s` values, rows along axis 1. Failed cells hold NaN.
    pub values: Vec<f64>,
    pub provenance: Vec<CellSource>,
    pub failures: usize,
}

impl SweepGrid {
    pub fn rows(&self) -> usize {
        self.spec.axis1.count
    }

    pub fn cols(&self) -> usize {
        self.spec.axis2.count
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.values[row * self.cols() + col]
    }

    pub fn axis1_values(&self) -> Vec<f64> {
        self.spec.axis1.values()
    }

    pub fn axis2_values(&self) -> Vec<f64> {
        self.spec.axis2.values()
    }
}

/// Evaluates one cell; closed forms are used on the `delta = 0` and
/// `kappa = 0` slices when the engine allows it.
pub fn evaluate_cell(params: &CouplerParams, engine: Engine) -> (f64, CellSource) {
    if params.validate().is_err() {
        return (f64::NAN, CellSource::Failed);
    }
    if engine == Engine::ClosedFormWhenApplicable {
        if params.delta == 0.0 {
            return (
                n_s_coupled_matched(params.gamma, params.kappa, params.length).n_s,
                CellSource::ClosedForm,
            );
        }
        if params.kappa == 0.0 {
            return (
                n_s_mismatched_uncoupled(params.gamma, params.delta, params.length).n_s,
                CellSource::ClosedForm,
            );
        }
    }
    match signal_photons(params) {
        Ok(n) if n.is_finite() => (n, CellSource::Numeric),
        _ => (f64::NAN, CellSource::Failed),
    }
}

/// Evaluates `n_s` on the full grid. With the `parallel` feature the cells are
/// spread over the current rayon pool; each result lands in its own slot, so
/// the output does not depend on the number of workers.
pub fn sweep_2d(spec: &SweepSpec) -> Result<SweepGrid> {
    spec.validate()?;
    let a1 = spec.axis1.values();
    let a2 = spec.axis2.values();
    let cols = a2.len();
    let cell = |index: usize| {
        let params = spec.cell_params(a1[index / cols], a2[index % cols]);
        evaluate_cell(&params, spec.engine)
    };

    #[cfg(feature = "parallel")]
    let cells: Vec<(f64, CellSource)> = {
        use rayon::prelude::*;
        (0..a1.len() * cols).into_par_iter().map(cell).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let cells: Vec<(f64, CellSource)> = (0..a1.len() * cols).map(cell).collect();

    let (values, provenance): (Vec<f64>, Vec<CellSource>) = cells.into_iter().unzip();
    let failures = provenance
        .iter()
        .filter(|s| **s == CellSource::Failed)
        .count();
    Ok(SweepGrid {
        spec: *spec,
        values,
        provenance,
        failures,
    })
}

/// Largest `n_s` over `samples` evenly spaced lengths in `[0, max_length]`.
pub fn length_envelope(params: &CouplerParams, max_length: f64, samples: usize) -> Result<f64> {
    let axis = AxisSpec::new(Axis::Length, 0.0, max_length, samples.max(2));
    axis.values().into_iter().try_fold(0.0f64, |best, l| {
        Ok(best.max(signal_photons(&params.with_length(l))?))
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RidgePoint {
    pub delta: f64,
    pub kappa_opt: f64,
    pub n_s_max: f64,
    /// Set when the scanned landscape is flat to within `1e-9` relative, in
    /// which case `kappa_opt` is not meaningful.
    pub flat: bool,
}

pub const RIDGE_SCAN_POINTS: usize = 401;
pub const RIDGE_KAPPA_TOLERANCE: f64 = 1e-6;

/// For each mismatch, the linear coupling in `[0, 2 delta]` that maximizes the
/// signal output at length `length`: coarse scan then golden-section search.
pub fn find_anti_zeno_ridge(gamma: f64, length: f64, deltas: &[f64]) -> Result<Vec<RidgePoint>> {
    if !(gamma > 0.0) {
        return Err(Error::InvalidParameter {
            name: "gamma",
            value: gamma,
            reason: "must be positive",
        });
    }
    if !(length > 0.0) {
        return Err(Error::InvalidParameter {
            name: "length",
            value: length,
            reason: "must be positive",
        });
    }
    deltas
        .iter()
        .map(|&delta| ridge_point(gamma, length, delta))
        .collect()
}

fn ridge_point(gamma: f64, length: f64, delta: f64) -> Result<RidgePoint> {
    if !(delta > 0.0) || !delta.is_finite() {
        return Err(Error::InvalidParameter {
            name: "delta",
            value: delta,
            reason: "must be positive",
        });
    }
    let n_s = |kappa: f64| signal_photons(&CouplerParams::new(gamma, kappa, delta, length)?);
    let kappas = AxisSpec::new(Axis::Kappa, 0.0, 2.0 * delta, RIDGE_SCAN_POINTS).values();
    let values = kappas.iter().map(|&k| n_s(k)).collect::<Result<Vec<_>>>()?;

    let (best, _) = values
        .iter()
        .enumerate()
        .fold(
            (0, f64::NEG_INFINITY),
            |acc, (i, &v)| if v > acc.1 { (i, v) } else { acc },
        );
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    let max = values[best];
    let flat = !(max > min * (1.0 + 1e-9));

    let lo = kappas[best.saturating_sub(1)];
    let hi = kappas[(best + 1).min(kappas.len() - 1)];
    let (kappa_opt, refined) = golden_section_max(&n_s, lo, hi, RIDGE_KAPPA_TOLERANCE)?;
    let (kappa_opt, n_s_max) = if refined >= max {
        (kappa_opt, refined)
    } else {
        (kappas[best], max)
    };
    Ok(RidgePoint {
        delta,
        kappa_opt,
        n_s_max,
        flat,
    })
}

fn golden_section_max(
    f: &impl Fn(f64) -> Result<f64>,
    mut a: f64,
    mut b: f64,
    tol: f64,
) -> Result<(f64, f64)> {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = f(c)?;
    let mut fd = f(d)?;
    while (b - a).abs() > tol {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d)?;
        }
    }
    let x = 0.5 * (a + b);
    Ok((x, f(x)?))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RidgeFit {
    pub slope: f64,
    pub intercept: f64,
    pub max_residual: f64,
}

/// Least-squares line `kappa_opt = slope * delta + intercept`.
pub fn ridge_linearity(points: &[RidgePoint]) -> Result<RidgeFit> {
    if points.len() < 3 {
        return Err(Error::InsufficientPoints {
            needed: 3,
            got: points.len(),
        });
    }
    let n = points.len() as f64;
    let mean_x = points.iter().map(|p| p.delta).sum::<f64>() / n;
    let mean_y = points.iter().map(|p| p.kappa_opt).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.delta - mean_x).powi(2)).sum();
    let sxy: f64 = points
        .iter()
        .map(|p| (p.delta - mean_x) * (p.kappa_opt - mean_y))
        .sum();
    if sxx == 0.0 {
        return Err(Error::InvalidSweep(
            "ridge points share a single delta".into(),
        ));
    }
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let max_residual = points
        .iter()
        .map(|p| (p.kappa_opt - slope * p.delta - intercept).abs())
        .fold(0.0, f64::max);
    Ok(RidgeFit {
        slope,
        intercept,
        max_residual,
    })
}
