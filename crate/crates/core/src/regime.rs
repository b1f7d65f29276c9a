//! Oscillatory versus hyperbolic behaviour of the signal mode.
//!
//! Eliminating the idler and auxiliary amplitudes gives a third-order equation
//! for the signal whose characteristic polynomial is
//!
//! ```text
//! x^3 + 2 D x^2 + (D^2 - K^2 + G^2) x + D G^2
//! ```
//!
//! Three distinct real roots (negative discriminant, casus irreducibilis) mean
//! bounded oscillations; a complex pair means exponential growth.
//!
//! Sign convention: these roots are the eigenvalues of the rotating-frame
//! generator `M` minus `delta / 2`. Substituting `a_s ~ exp(+i x t)` literally
//! gives the mirrored cubic `x^3 - 2 D x^2 + ... - D G^2` with negated roots
//! (see [`CubicCoefficients::mirrored`]). Reality of the roots, and therefore the
//! classification, is the same for both.

use crate::cubic::{self, RootMethod};
use crate::error::{Error, Result};
use crate::params::CouplerParams;
use num_complex::Complex64;

/// Monic cubic `x^3 + c2 x^2 + c1 x + c0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CubicCoefficients {
    pub c2: f64,
    pub c1: f64,
    pub c0: f64,
}

impl CubicCoefficients {
    pub fn eval(&self, x: Complex64) -> Complex64 {
        cubic::eval(x, self.c2, self.c1, self.c0)
    }

    /// `(p, q)` of the depressed form `y^3 + p y + q`.
    pub fn depressed(&self) -> (f64, f64) {
        cubic::depress(self.c2, self.c1, self.c0)
    }

    pub fn roots(&self) -> [Complex64; 3] {
        cubic::roots(self.c2, self.c1, self.c0).0
    }

    /// The cubic whose roots are the negatives of these roots.
    pub fn mirrored(&self) -> Self {
        Self {
            c2: -self.c2,
            c1: self.c1,
            c0: -self.c0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    Oscillatory,
    Hyperbolic,
    Boundary,
}

impl Regime {
    pub fn as_str(&self) -> &'static str {
        match self {
            Regime::Oscillatory => "oscillatory",
            Regime::Hyperbolic => "hyperbolic",
            Regime::Boundary => "boundary",
        }
    }
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegimeReport {
    pub coefficients: CubicCoefficients,
    /// Depressed-cubic discriminant `(q/2)^2 + (p/3)^3`.
    pub discriminant: f64,
    /// Roots of `coefficients`; the mirrored convention has the negated roots.
    pub roots: [Complex64; 3],
    /// True when the three-cosine formula was used.
    pub trigonometric_roots: bool,
    pub regime: Regime,
    /// Weak-coupling boundary couplings `(kappa_1, kappa_2)`, `kappa_1 >= kappa_2`.
    pub boundary_kappas: Option<(f64, f64)>,
}

impl RegimeReport {
    pub fn max_root_residual(&self) -> f64 {
        self.roots
            .iter()
            .map(|r| self.coefficients.eval(*r).norm())
            .fold(0.0, f64::max)
    }
}

pub fn characteristic_cubic(params: &CouplerParams) -> Result<CubicCoefficients> {
    params.validate()?;
    if params.kappa == 0.0 {
        return Err(Error::Domain("kappa = 0 (use the closed forms)"));
    }
    let CouplerParams {
        gamma,
        kappa,
        delta,
        ..
    } = *params;
    Ok(CubicCoefficients {
        c2: 2.0 * delta,
        c1: delta * delta - kappa * kappa + gamma * gamma,
        c0: delta * gamma * gamma,
    })
}

pub fn cubic_discriminant(coeffs: &CubicCoefficients) -> f64 {
    cubic::discriminant(coeffs.c2, coeffs.c1, coeffs.c0)
}

/// Second-order expansion of the discriminant in `gamma`, valid for
/// `gamma << |delta|, kappa`.
pub fn discriminant_weak_gamma(params: &CouplerParams) -> f64 {
    let CouplerParams {
        gamma,
        kappa,
        delta,
        ..
    } = *params;
    let (k2, d2, g2) = (kappa * kappa, delta * delta, gamma * gamma);
    -(k2 / 27.0) * ((k2 - d2).powi(2) - (5.0 * d2 + 3.0 * k2) * g2)
}

/// Zeros of the weak-coupling discriminant:
/// `kappa_{1,2} = sqrt(D^2 + 3 G^2 / 2 +- sqrt(8) |D| G)`.
pub fn regime_boundaries(gamma: f64, delta: f64) -> Result<(f64, f64)> {
    let base = delta * delta + 1.5 * gamma * gamma;
    let split = 8f64.sqrt() * delta.abs() * gamma;
    let lower = base - split;
    if lower < 0.0 || !lower.is_finite() {
        return Err(Error::Domain(
            "gamma too large relative to delta for the lower boundary",
        ));
    }
    Ok(((base + split).sqrt(), lower.sqrt()))
}

/// Boundary couplings located directly on the exact discriminant: scan
/// `kappa` over `(0, |delta| + 4 gamma + 1]` for sign changes, then bisect.
///
/// The scan step is `1/4096` of the window, so pairs of boundaries closer
/// than that (gamma below roughly 1e-3 at unit-scale delta) are not resolved.
pub fn boundary_exact(gamma: f64, delta: f64) -> Result<(f64, f64)> {
    if !(gamma > 0.0) || !gamma.is_finite() {
        return Err(Error::InvalidParameter {
            name: "gamma",
            value: gamma,
            reason: "must be positive",
        });
    }
    if delta == 0.0 || !delta.is_finite() {
        return Err(Error::InvalidParameter {
            name: "delta",
            value: delta,
            reason: "must be non-zero",
        });
    }
    const SCAN_POINTS: usize = 4096;
    let upper = delta.abs() + 4.0 * gamma + 1.0;
    let step = upper / SCAN_POINTS as f64;
    let disc = |kappa: f64| {
        cubic::discriminant(
            2.0 * delta,
            delta * delta - kappa * kappa + gamma * gamma,
            delta * gamma * gamma,
        )
    };

    let mut crossings = Vec::new();
    let mut prev_k = step;
    let mut prev_d = disc(prev_k);
    for n in 2..=SCAN_POINTS {
        let k = step * n as f64;
        let d = disc(k);
        if d == 0.0 {
            crossings.push(k);
        } else if prev_d != 0.0 && (d > 0.0) != (prev_d > 0.0) {
            crossings.push(bisect(&disc, prev_k, k, 1e-10));
        }
        prev_k = k;
        prev_d = d;
    }
    match (crossings.first(), crossings.last()) {
        (Some(&low), Some(&high)) if crossings.len() >= 2 => Ok((high, low)),
        _ => Err(Error::BoundaryNotFound { upper }),
    }
}

fn bisect(f: &impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let positive_at_lo = f(lo) > 0.0;
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if (f(mid) > 0.0) == positive_at_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

pub fn classify_regime(params: &CouplerParams) -> Result<RegimeReport> {
    let coefficients = characteristic_cubic(params)?;
    let (p, q) = coefficients.depressed();
    let discriminant = cubic_discriminant(&coefficients);
    let tol = 1e-12 * 1f64.max(p.abs().powi(3)).max(q * q);
    let regime = if discriminant < -tol {
        Regime::Oscillatory
    } else if discriminant > tol {
        Regime::Hyperbolic
    } else {
        Regime::Boundary
    };
    let (roots, method) = cubic::roots(coefficients.c2, coefficients.c1, coefficients.c0);
    Ok(RegimeReport {
        coefficients,
        discriminant,
        roots,
        trigonometric_roots: method == RootMethod::Trigonometric,
        regime,
        boundary_kappas: regime_boundaries(params.gamma, params.delta).ok(),
    })
}
