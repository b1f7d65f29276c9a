//! Dressed-mode picture of the linear coupling.
//!
//! The idler/auxiliary coupling is diagonalized by `c = (a_i + b)/sqrt(2)` and
//! `d = (a_i - b)/sqrt(2)`, which carry energy shifts `+kappa` and `-kappa`.
//! The signal then undergoes two independent downconversion processes into
//! `c` and `d`, each with coupling `gamma / sqrt(2)` and mismatch
//! `delta + kappa` or `delta - kappa`. A strong `kappa` detunes both channels
//! (Zeno); `kappa = delta` brings channel `d` back onto resonance (anti-Zeno).

use crate::dynamics::{vacuum_occupations, BogoliubovMap, ModeOccupations};
use crate::error::{Error, Result};
use crate::expm::{self, CMatrix3};
use crate::params::CouplerParams;
use nalgebra::{Matrix3, Vector3};
use num_complex::Complex64;
use std::f64::consts::{PI, SQRT_2};

pub const CHANNEL_C: usize = 1;
pub const CHANNEL_D: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DressedParams {
    /// Coupling of the signal to each dressed channel, `gamma / sqrt(2)`.
    pub gamma_eff: f64,
    /// Effective mismatch of channel `c`, `delta + kappa`.
    pub mismatch_c: f64,
    /// Effective mismatch of channel `d`, `delta - kappa`.
    pub mismatch_d: f64,
    /// Dressed energy shift of `c` (`d` is shifted by the negative).
    pub omega_shift: f64,
}

impl DressedParams {
    /// Accepts either sign of `kappa`; flipping it swaps the roles of `c` and `d`.
    pub fn new(gamma: f64, kappa: f64, delta: f64) -> Self {
        Self {
            gamma_eff: gamma / SQRT_2,
            mismatch_c: delta + kappa,
            mismatch_d: delta - kappa,
            omega_shift: kappa,
        }
    }

    pub fn kappa(&self) -> f64 {
        self.omega_shift
    }
}

pub fn to_dressed(params: &CouplerParams) -> DressedParams {
    DressedParams::new(params.gamma, params.kappa, params.delta)
}

/// Bogoliubov map in the `(s, c, d)` basis, with `c` and `d` referring to the
/// same laboratory frame as `a_i` and `b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DressedMap {
    pub map: BogoliubovMap,
}

impl DressedMap {
    /// Vacuum expectation `<c^+ d>` at the output.
    pub fn cross_moment(&self) -> Complex64 {
        let v = &self.map.v;
        (0..3)
            .map(|k| v[(CHANNEL_C, k)].conj() * v[(CHANNEL_D, k)])
            .sum()
    }

    /// Occupations of the undressed modes, `n_i` and `n_b` rebuilt from the
    /// channel occupations and their coherence.
    pub fn occupations(&self) -> ModeOccupations {
        let channels = vacuum_occupations(&self.map);
        let (n_c, n_d) = (channels.n_i, channels.n_b);
        let coherence = self.cross_moment().re;
        ModeOccupations {
            n_s: channels.n_s,
            n_i: 0.5 * (n_c + n_d) + coherence,
            n_b: 0.5 * (n_c + n_d) - coherence,
        }
    }
}

/// Propagates the signal and the two dressed channels over `length`.
///
/// The signal is kept in its laboratory frame and each channel is rotated by
/// its own mismatch, `C = c~ exp(-i (delta + kappa) t)` and
/// `D = d~ exp(-i (delta - kappa) t)`, where `c~ = c exp(i kappa t)` and
/// `d~ = d exp(-i kappa t)` are the dressed-picture operators. In that frame
/// `(a_s^+, C, D)` has a constant generator.
pub fn propagate_channels(dressed: &DressedParams, length: f64) -> Result<DressedMap> {
    let g = dressed.gamma_eff;
    let rot_c = -dressed.mismatch_c;
    let rot_d = -dressed.mismatch_d;
    #[rustfmt::skip]
    let generator = Matrix3::new(
        0.0, g,     g,
        -g,  rot_c, 0.0,
        -g,  0.0,   rot_d,
    );
    let (w, _) = expm::exp_i(&generator, length)?;
    let kappa = dressed.kappa();
    // C(L) -> c~(L) -> c(L), and likewise for d
    let to_lab_c =
        Complex64::from_polar(1.0, -rot_c * length) * Complex64::from_polar(1.0, -kappa * length);
    let to_lab_d =
        Complex64::from_polar(1.0, -rot_d * length) * Complex64::from_polar(1.0, kappa * length);
    let undo = CMatrix3::from_diagonal(&Vector3::new(Complex64::new(1.0, 0.0), to_lab_c, to_lab_d));
    Ok(DressedMap {
        map: BogoliubovMap::from_mixed(&(undo * w)),
    })
}

pub fn propagate_dressed_map(params: &CouplerParams) -> Result<DressedMap> {
    params.validate()?;
    propagate_channels(&to_dressed(params), params.length)
}

pub fn propagate_dressed(params: &CouplerParams) -> Result<ModeOccupations> {
    Ok(propagate_dressed_map(params)?.occupations())
}

/// Effective nonlinear couplings `(gamma / sqrt(2), 2 gamma / pi)`: the
/// resonant dressed channel versus rectangular quasi-phase-matching.
pub fn qpm_comparison(gamma: f64) -> Result<(f64, f64)> {
    if !(gamma > 0.0) || !gamma.is_finite() {
        return Err(Error::InvalidParameter {
            name: "gamma",
            value: gamma,
            reason: "must be positive",
        });
    }
    Ok((gamma / SQRT_2, 2.0 * gamma / PI))
}
