//! Linearized Heisenberg dynamics of the signal, idler and auxiliary modes.
//!
//! With a classical pump the equations of motion are
//!
//! ```text
//! d a_s / dt = -i G a_i^+ exp(i D t)
//! d a_i / dt = -i G a_s^+ exp(i D t) - i K b
//! d b   / dt = -i K a_i
//! ```
//!
//! (`G` = gamma, `K` = kappa, `D` = delta). Writing `A_s = a_s exp(-i D t / 2)`,
//! `A_i = a_i exp(-i D t / 2)` and `B = b exp(-i D t / 2)` removes the explicit
//! time dependence: the vector `(A_s^+, A_i, B)` obeys `dv/dt = i M v` with a
//! constant real matrix `M`. The exponential of `M` is the whole solution; the
//! frame phases are put back before the result is expressed as a
//! [`BogoliubovMap`].

use crate::error::Result;
use crate::expm::{self, CMatrix3};
use crate::ode::Dopri5;
use crate::params::CouplerParams;
use nalgebra::Matrix3;
use num_complex::Complex64;

pub const SIGNAL: usize = 0;
pub const IDLER: usize = 1;
pub const AUXILIARY: usize = 2;

/// Real generator `M` of the rotating-frame equations `dv/dt = i M v`, acting on
/// `v = (A_s^+, A_i, B)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneratorMatrix(pub Matrix3<f64>);

impl GeneratorMatrix {
    pub fn entries(&self) -> &Matrix3<f64> {
        &self.0
    }

    /// Eigenvalues of `M`. Subtracting `delta / 2` from them gives the roots of
    /// the signal-mode characteristic cubic, see [`crate::regime`].
    pub fn eigenvalues(&self) -> [Complex64; 3] {
        expm::eigenvalues(&self.0)
    }
}

/// Output mode operators as linear combinations of the input ones:
/// `a_out = U a_in + V a_in^+`, modes ordered `(s, i, b)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BogoliubovMap {
    pub u: CMatrix3,
    pub v: CMatrix3,
}

impl BogoliubovMap {
    pub fn identity() -> Self {
        Self {
            u: CMatrix3::identity(),
            v: CMatrix3::zeros(),
        }
    }

    /// Converts a propagator of the mixed vector `(a_s^+, a_i, b)` into the
    /// uniform annihilation/creation block form.
    pub fn from_mixed(f: &CMatrix3) -> Self {
        let mut u = CMatrix3::zeros();
        let mut v = CMatrix3::zeros();
        u[(SIGNAL, SIGNAL)] = f[(0, 0)].conj();
        v[(SIGNAL, IDLER)] = f[(0, 1)].conj();
        v[(SIGNAL, AUXILIARY)] = f[(0, 2)].conj();
        for row in [IDLER, AUXILIARY] {
            v[(row, SIGNAL)] = f[(row, 0)];
            u[(row, IDLER)] = f[(row, 1)];
            u[(row, AUXILIARY)] = f[(row, 2)];
        }
        Self { u, v }
    }

    /// The map obtained by applying `self` first and then `later`.
    pub fn then(&self, later: &BogoliubovMap) -> Self {
        let u = later.u * self.u + later.v * self.v.conjugate();
        let v = later.u * self.v + later.v * self.u.conjugate();
        Self { u, v }
    }

    /// Largest entrywise difference between two maps.
    pub fn max_difference(&self, other: &BogoliubovMap) -> f64 {
        let du = (self.u - other.u)
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        let dv = (self.v - other.v)
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        du.max(dv)
    }

    /// Largest entry magnitude, used to put differences on a relative scale.
    pub fn max_entry(&self) -> f64 {
        self.u
            .iter()
            .chain(self.v.iter())
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }
}

/// Vacuum-seeded mean photon numbers at the output.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ModeOccupations {
    pub n_s: f64,
    pub n_i: f64,
    pub n_b: f64,
}

impl ModeOccupations {
    /// `n_s - n_i - n_b`, which pair production keeps at zero for vacuum input.
    pub fn conservation_residual(&self) -> f64 {
        self.n_s - self.n_i - self.n_b
    }

    pub fn clamped(&self) -> Self {
        Self {
            n_s: self.n_s.max(0.0),
            n_i: self.n_i.max(0.0),
            n_b: self.n_b.max(0.0),
        }
    }
}

pub fn build_generator(params: &CouplerParams) -> Result<GeneratorMatrix> {
    params.validate()?;
    let CouplerParams {
        gamma,
        kappa,
        delta,
        ..
    } = *params;
    let h = delta / 2.0;
    #[rustfmt::skip]
    let m = Matrix3::new(
        h,      gamma,  0.0,
        -gamma, -h,     -kappa,
        0.0,    -kappa, -h,
    );
    Ok(GeneratorMatrix(m))
}

/// Exact propagation over `[0, params.length]`.
pub fn propagate_exact(params: &CouplerParams) -> Result<BogoliubovMap> {
    propagate_interval(params, 0.0)
}

/// Exact propagation over `[start, start + params.length]`.
///
/// The laboratory-frame equations are not translation invariant when
/// `delta != 0`, so segments starting at different points differ by frame
/// phases; composing `[0, L1]` with `[L1, L1 + L2]` gives `[0, L1 + L2]`.
pub fn propagate_interval(params: &CouplerParams, start: f64) -> Result<BogoliubovMap> {
    let generator = build_generator(params)?;
    let (e, _) = expm::exp_i(generator.entries(), params.length)?;
    let end = start + params.length;
    let f = frame_phase(params.delta, end)
        .try_inverse()
        .unwrap_or_else(CMatrix3::identity)
        * e
        * frame_phase(params.delta, start);
    Ok(BogoliubovMap::from_mixed(&f))
}

// diag(exp(i D t / 2), exp(-i D t / 2), exp(-i D t / 2)): lab vector -> rotating vector
fn frame_phase(delta: f64, t: f64) -> CMatrix3 {
    let p = Complex64::from_polar(1.0, delta * t / 2.0);
    CMatrix3::from_diagonal(&nalgebra::Vector3::new(p, p.conj(), p.conj()))
}

/// Per-step error target relative to the requested global accuracy.
const LOCAL_TOLERANCE_FACTOR: f64 = 0.01;

/// Integrates the laboratory-frame equations (explicit `exp(i delta t)`
/// coefficients) with an adaptive Runge-Kutta pair. Independent of the
/// rotating-frame construction used by [`propagate_exact`].
pub fn propagate_ode(params: &CouplerParams, step_tolerance: f64) -> Result<BogoliubovMap> {
    params.validate()?;
    if !(step_tolerance > 0.0) {
        return Err(crate::Error::InvalidParameter {
            name: "step_tolerance",
            value: step_tolerance,
            reason: "must be positive",
        });
    }
    let CouplerParams {
        gamma,
        kappa,
        delta,
        length,
        ..
    } = *params;

    // three columns of the mixed propagator, each as 3 complex = 6 reals
    let mut state = [0.0; 18];
    for col in 0..3 {
        state[col * 6 + 2 * col] = 1.0;
    }
    let rhs = |t: f64, y: &[f64], dy: &mut [f64]| {
        let forward = Complex64::from_polar(1.0, delta * t);
        for col in 0..3 {
            let x = &y[col * 6..col * 6 + 6];
            let sd = Complex64::new(x[0], x[1]);
            let ai = Complex64::new(x[2], x[3]);
            let b = Complex64::new(x[4], x[5]);
            let i = Complex64::i();
            let d_sd = i * gamma * forward.conj() * ai;
            let d_ai = -i * (gamma * forward * sd + kappa * b);
            let d_b = -i * kappa * ai;
            let out = &mut dy[col * 6..col * 6 + 6];
            out[0] = d_sd.re;
            out[1] = d_sd.im;
            out[2] = d_ai.re;
            out[3] = d_ai.im;
            out[4] = d_b.re;
            out[5] = d_b.im;
        }
    };
    Dopri5::new(step_tolerance * LOCAL_TOLERANCE_FACTOR).integrate(rhs, 0.0, length, &mut state)?;

    let f = CMatrix3::from_fn(|row, col| {
        Complex64::new(state[col * 6 + 2 * row], state[col * 6 + 2 * row + 1])
    });
    Ok(BogoliubovMap::from_mixed(&f))
}

pub fn vacuum_occupations(map: &BogoliubovMap) -> ModeOccupations {
    let row = |r: usize| map.v.row(r).iter().map(|z| z.norm_sqr()).sum::<f64>();
    ModeOccupations {
        n_s: row(SIGNAL),
        n_i: row(IDLER),
        n_b: row(AUXILIARY),
    }
}

/// Max-norm of `U U^+ - V V^+ - I` combined with the asymmetry of `U V^T`.
pub fn check_symplectic(map: &BogoliubovMap) -> f64 {
    let commutator = map.u * map.u.adjoint() - map.v * map.v.adjoint() - CMatrix3::identity();
    let uvt = map.u * map.v.transpose();
    let asymmetry = uvt - uvt.transpose();
    let max = |m: &CMatrix3| m.iter().map(|z| z.norm()).fold(0.0, f64::max);
    max(&commutator).max(max(&asymmetry))
}

/// Output occupations of the exact propagator.
pub fn occupations(params: &CouplerParams) -> Result<ModeOccupations> {
    Ok(vacuum_occupations(&propagate_exact(params)?))
}

/// Mean signal photon number from the exact propagator.
pub fn signal_photons(params: &CouplerParams) -> Result<f64> {
    Ok(occupations(params)?.n_s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(gamma: f64, kappa: f64, delta: f64, length: f64) -> CouplerParams {
        CouplerParams::new(gamma, kappa, delta, length).unwrap()
    }

    // Row-wise substitution: M v must reproduce the right-hand sides of the
    // rotating-frame equations for an arbitrary test vector.
    fn rotating_rhs(g: f64, k: f64, d: f64, v: [f64; 3]) -> [f64; 3] {
        [
            d / 2.0 * v[0] + g * v[1],
            -g * v[0] - d / 2.0 * v[1] - k * v[2],
            -k * v[1] - d / 2.0 * v[2],
        ]
    }

    #[test]
    fn generator_entries() {
        assert_eq!(
            build_generator(&p(0.0, 0.0, 0.0, 1.0)).unwrap().0,
            Matrix3::zeros()
        );

        let m = build_generator(&p(0.5, 1.0, 0.0, 1.0)).unwrap().0;
        assert_eq!(
            m,
            Matrix3::new(0.0, 0.5, 0.0, -0.5, 0.0, -1.0, 0.0, -1.0, 0.0)
        );

        let m = build_generator(&p(0.5, 0.0, 5.0, 1.0)).unwrap().0;
        assert_eq!(
            m,
            Matrix3::new(2.5, 0.5, 0.0, -0.5, -2.5, 0.0, 0.0, 0.0, -2.5)
        );

        let v = nalgebra::Vector3::new(0.3, -1.7, 2.2);
        for (g, k, d) in [(0.5, 1.0, 0.0), (0.5, 0.0, 5.0), (1.3, 2.1, -0.7)] {
            let mv = build_generator(&p(g, k, d, 1.0)).unwrap().0 * v;
            let want = rotating_rhs(g, k, d, [v[0], v[1], v[2]]);
            for r in 0..3 {
                assert!((mv[r] - want[r]).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn generator_rejects_invalid() {
        let bad = CouplerParams {
            gamma: f64::NAN,
            ..p(0.5, 1.0, 0.0, 1.0)
        };
        assert!(build_generator(&bad).is_err());
        let bad = CouplerParams {
            kappa: -1.0,
            ..p(0.5, 1.0, 0.0, 1.0)
        };
        assert!(build_generator(&bad).is_err());
    }

    #[test]
    fn zero_length_is_identity() {
        let map = propagate_exact(&p(0.7, 2.0, 3.0, 0.0)).unwrap();
        assert_eq!(map, BogoliubovMap::identity());
        let map = propagate_ode(&p(0.7, 2.0, 3.0, 0.0), 1e-10).unwrap();
        assert_eq!(map, BogoliubovMap::identity());
        assert_eq!(vacuum_occupations(&map), ModeOccupations::default());
    }

    #[test]
    fn matched_growth() {
        let map = propagate_exact(&p(0.5, 0.0, 0.0, 1.0)).unwrap();
        assert!((map.v[(SIGNAL, IDLER)].norm_sqr() - 0.2715403174076219).abs() < 1e-14);
        let n = vacuum_occupations(&map);
        assert!((n.n_s - 0.2715403174076219).abs() < 1e-14);
        assert!((n.n_i - 0.2715403174076219).abs() < 1e-14);
        assert_eq!(n.n_b, 0.0);
    }

    #[test]
    fn coupled_matched_values() {
        // frozen from direct evaluation of the Delta = 0 photon-number formula
        let n = signal_photons(&p(0.5, 1.0, 0.0, 1.0)).unwrap();
        assert!((n - 0.24853855243255546).abs() < 1e-13);
        let n = signal_photons(&p(0.5, 10.0, 0.0, 1.0)).unwrap();
        assert!((n - 0.009273582357134349).abs() < 1e-13);
        let asymptote = 0.01 * 5f64.sin().powi(2);
        assert!((n / asymptote - 1.0).abs() < 0.02);
    }

    #[test]
    fn ode_oracle_matches() {
        for params in [
            p(0.5, 0.0, 5.0, 1.0),
            p(0.5, 1.0, 0.0, 1.0),
            p(0.8, 3.0, -2.0, 2.5),
        ] {
            let exact = propagate_exact(&params).unwrap();
            let numeric = propagate_ode(&params, 1e-11).unwrap();
            assert!(exact.max_difference(&numeric) < 1e-10, "{params:?}");
        }
        let n = vacuum_occupations(&propagate_ode(&p(0.5, 1.0, 0.0, 1.0), 1e-11).unwrap());
        assert!((n.n_s - 0.24853855243255546).abs() < 1e-9);
    }

    #[test]
    fn ode_rejects_bad_tolerance() {
        assert!(propagate_ode(&p(0.5, 1.0, 0.0, 1.0), 0.0).is_err());
        assert!(propagate_ode(&p(0.5, 1.0, 0.0, 1.0), f64::NAN).is_err());
    }

    #[test]
    fn symplectic_residuals() {
        assert_eq!(check_symplectic(&BogoliubovMap::identity()), 0.0);
        let map = propagate_exact(&p(0.5, 1.0, 2.0, 1.3)).unwrap();
        assert!(check_symplectic(&map) < 1e-12);

        let doubled = BogoliubovMap {
            u: map.u,
            v: map.v * Complex64::new(2.0, 0.0),
        };
        let max_v2 = map.v.iter().map(|z| z.norm_sqr()).fold(0.0, f64::max);
        assert!(check_symplectic(&doubled) >= 3.0 * max_v2);
    }

    #[test]
    fn elliptic_limit_is_rotation() {
        let (kappa, length) = (1.7, 1.3);
        let map = propagate_exact(&p(0.0, kappa, 0.0, length)).unwrap();
        assert_eq!(vacuum_occupations(&map).n_s, 0.0);
        let (c, s) = ((kappa * length).cos(), (kappa * length).sin());
        for r in 0..2 {
            for col in 0..2 {
                let z = map.u[(r + 1, col + 1)];
                let expected = if r == col {
                    Complex64::new(c, 0.0)
                } else {
                    Complex64::new(0.0, -s)
                };
                assert!((z - expected).norm() < 1e-14, "{z} vs {expected}");
            }
        }
    }

    #[test]
    fn composition_with_frame_phases() {
        let first = p(0.6, 1.4, 3.0, 0.7);
        let second = first.with_length(1.1);
        let composed = propagate_exact(&first)
            .unwrap()
            .then(&propagate_interval(&second, 0.7).unwrap());
        let direct = propagate_exact(&first.with_length(1.8)).unwrap();
        assert!(composed.max_difference(&direct) < 1e-12);
    }
}
