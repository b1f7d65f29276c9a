//! Spontaneous parametric downconversion with the idler linearly coupled to an
//! auxiliary mode.
//!
//! Under a strong classical pump the three quantum modes (signal `s`, idler `i`,
//! auxiliary `b`) obey linear Heisenberg equations, so the whole evolution is a
//! Bogoliubov map. This crate propagates that map exactly and with an
//! independent ODE integrator, evaluates the analytic photon-number formulas,
//! classifies the oscillatory/hyperbolic regime from the characteristic cubic,
//! checks the dressed-mode picture, and sweeps parameter grids to expose the
//! Zeno (coupling freezes conversion) and anti-Zeno (coupling compensates a
//! phase mismatch near `kappa = delta`) regimes.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod closed_forms;
mod cubic;
pub mod dressed;
pub mod dynamics;
mod error;
pub mod expm;
pub mod ode;
mod params;
pub mod regime;
pub mod sweep;

pub use error::{Error, Result};
pub use params::{CouplerParams, Tolerances};

pub use dynamics::{
    build_generator, check_symplectic, propagate_exact, propagate_ode, vacuum_occupations,
    BogoliubovMap, GeneratorMatrix, ModeOccupations,
};
