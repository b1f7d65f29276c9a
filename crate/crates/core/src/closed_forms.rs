//! Analytic photon numbers for the slices of parameter space where the
//! dynamics reduces to a 2x2 problem or a known asymptote.

use crate::error::{Error, Result};

/// Relative half-width of the window around the oscillatory/hyperbolic
/// threshold in which a series expansion replaces the direct formulas.
pub const BRANCH_WINDOW: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Trigonometric,
    Hyperbolic,
    Threshold,
}

impl Branch {
    pub fn as_str(&self) -> &'static str {
        match self {
            Branch::Trigonometric => "trigonometric",
            Branch::Hyperbolic => "hyperbolic",
            Branch::Threshold => "threshold",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedFormResult {
    pub n_s: f64,
    pub branch: Branch,
}

/// `sinh^2(gamma L)`: phase-matched downconversion without the auxiliary mode.
pub fn n_s_matched(gamma: f64, length: f64) -> f64 {
    (gamma * length).sinh().powi(2)
}

/// Phase-matched signal photon number with the idler coupled to the auxiliary
/// mode:
///
/// `n_s = (G^2 / X^2) sin^2(X L) + (K^2 G^2 / X^4) (1 - cos X L)^2`, `X^2 = K^2 - G^2`.
///
/// For `kappa < gamma` the same expression continues analytically
/// (`sin -> sinh`, `cos -> cosh`, `X^2 < 0`); near `X = 0` a series is used.
pub fn n_s_coupled_matched(gamma: f64, kappa: f64, length: f64) -> ClosedFormResult {
    let chi_sq = kappa * kappa - gamma * gamma;
    let g2 = gamma * gamma;
    let (first, second, branch) = if chi_sq.abs() <= BRANCH_WINDOW * g2 {
        let z = chi_sq * length * length;
        (sinc_sq_series(z), half_angle_series(z), Branch::Threshold)
    } else {
        let branch = if chi_sq > 0.0 {
            Branch::Trigonometric
        } else {
            Branch::Hyperbolic
        };
        (
            sin_sq_over(chi_sq, length),
            half_angle_direct(chi_sq, length),
            branch,
        )
    };
    // first  = sin^2(X L) / (X L)^2
    // second = (1 - cos X L)^2 / (X L)^4
    let l2 = length * length;
    let n_s = g2 * l2 * first + kappa * kappa * g2 * l2 * l2 * second;
    ClosedFormResult { n_s, branch }
}

/// Strong-coupling limit `(4 G^2 / K^2) sin^2(K L / 2)`, meaningful for `kappa >> gamma`.
pub fn n_s_strong_coupling_asymptote(gamma: f64, kappa: f64, length: f64) -> Result<f64> {
    if kappa == 0.0 {
        return Err(Error::Domain("kappa = 0"));
    }
    Ok(4.0 * gamma * gamma / (kappa * kappa) * (kappa * length / 2.0).sin().powi(2))
}

/// Large-mismatch limit `(4 G^2 / D^2) sin^2(D L / 2)`, meaningful for `|delta| >> gamma`.
pub fn n_s_large_mismatch_asymptote(gamma: f64, delta: f64, length: f64) -> Result<f64> {
    if delta == 0.0 {
        return Err(Error::Domain("delta = 0"));
    }
    Ok(4.0 * gamma * gamma / (delta * delta) * (delta * length / 2.0).sin().powi(2))
}

/// Exact signal photon number for `kappa = 0` and arbitrary mismatch:
/// `G^2 sinh^2(g L) / g^2` with `g^2 = G^2 - D^2 / 4`.
pub fn n_s_mismatched_uncoupled(gamma: f64, delta: f64, length: f64) -> ClosedFormResult {
    let g2 = gamma * gamma;
    // oscillation frequency squared; positive on the trigonometric side
    let w_sq = delta * delta / 4.0 - g2;
    let (ratio, branch) = if w_sq.abs() <= BRANCH_WINDOW * g2 {
        (sinc_sq_series(w_sq * length * length), Branch::Threshold)
    } else if w_sq > 0.0 {
        (sin_sq_over(w_sq, length), Branch::Trigonometric)
    } else {
        (sin_sq_over(w_sq, length), Branch::Hyperbolic)
    };
    ClosedFormResult {
        n_s: g2 * length * length * ratio,
        branch,
    }
}

// sin^2(x L) / (x L)^2 with x^2 = w_sq (hyperbolic continuation for w_sq < 0)
fn sin_sq_over(w_sq: f64, length: f64) -> f64 {
    let y = w_sq.abs().sqrt() * length;
    if y == 0.0 {
        return 1.0;
    }
    let s = if w_sq > 0.0 { y.sin() } else { y.sinh() };
    (s / y).powi(2)
}

// (1 - cos x L)^2 / (x L)^4 written through the half angle to avoid cancellation
fn half_angle_direct(w_sq: f64, length: f64) -> f64 {
    let half = sin_sq_over(w_sq, length / 2.0);
    // 1 - cos y = 2 sin^2(y/2), so (1 - cos y) / y^2 = sinc^2(y/2) / 2
    (half / 2.0).powi(2)
}

// Taylor series in z = x^2 L^2 (either sign), four terms each.
fn sinc_sq_series(z: f64) -> f64 {
    1.0 - z / 3.0 + 2.0 * z * z / 45.0 - z * z * z / 315.0
}

fn half_angle_series(z: f64) -> f64 {
    0.25 - z / 24.0 + z * z / 320.0 - 17.0 * z * z * z / 120_960.0
}
