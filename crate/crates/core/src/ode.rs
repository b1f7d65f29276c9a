//! Adaptive Dormand-Prince 5(4) integrator for real first-order systems.
//!
//! Used as the independent oracle for the exact propagator: it integrates the
//! laboratory-frame equations with their explicit `exp(i delta t)` factors.

use crate::error::{Error, Result};

const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
// 5th-order weights (FSAL: equal to the last row of A)
const B5: [f64; 7] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
    0.0,
];
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

#[derive(Debug, Clone, Copy)]
pub struct Dopri5 {
    pub rtol: f64,
    pub atol: f64,
    pub max_steps: usize,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Stats {
    pub accepted: usize,
    pub rejected: usize,
}

impl Dopri5 {
    pub fn new(tolerance: f64) -> Self {
        Self {
            rtol: tolerance,
            atol: tolerance,
            max_steps: 1_000_000,
        }
    }

    /// Integrates `y' = f(t, y)` from `t0` to `t1`, overwriting `y`.
    pub fn integrate<F>(&self, mut f: F, t0: f64, t1: f64, y: &mut [f64]) -> Result<Stats>
    where
        F: FnMut(f64, &[f64], &mut [f64]),
    {
        let n = y.len();
        let mut stats = Stats::default();
        if t1 == t0 {
            return Ok(stats);
        }
        let span = t1 - t0;
        let direction = span.signum();

        let mut k: Vec<Vec<f64>> = vec![vec![0.0; n]; 7];
        let mut stage = vec![0.0; n];
        let mut y_new = vec![0.0; n];

        let mut t = t0;
        f(t, y, &mut k[0]);
        let mut h = self.initial_step(y, &k[0], span.abs()) * direction;
        let min_step = 1e-14 * (t0.abs() + t1.abs()).max(span.abs());

        while (t1 - t) * direction > 0.0 {
            if stats.accepted + stats.rejected >= self.max_steps {
                return Err(Error::StepSizeUnderflow { t, step: h });
            }
            if (t + h - t1) * direction > 0.0 {
                h = t1 - t;
            }

            for s in 1..7 {
                let (prev, rest) = k.split_at_mut(s);
                for i in 0..n {
                    let mut acc = y[i];
                    for (j, kj) in prev.iter().enumerate() {
                        acc += h * A[s][j] * kj[i];
                    }
                    stage[i] = acc;
                }
                f(t + C[s] * h, &stage, &mut rest[0]);
            }
            // the last stage was evaluated at the 5th-order solution
            y_new.copy_from_slice(&stage);

            let mut err_sq = 0.0;
            for i in 0..n {
                let mut e = 0.0;
                for s in 0..7 {
                    e += (B5[s] - B4[s]) * k[s][i];
                }
                let scale = self.atol + self.rtol * y[i].abs().max(y_new[i].abs());
                err_sq += (h * e / scale).powi(2);
            }
            let err = (err_sq / n as f64).sqrt();

            if err <= 1.0 {
                t += h;
                y.copy_from_slice(&y_new);
                k.swap(0, 6);
                stats.accepted += 1;
                let factor = if err == 0.0 {
                    5.0
                } else {
                    (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
                };
                h *= factor;
            } else {
                stats.rejected += 1;
                h *= (0.9 * err.powf(-0.2)).clamp(0.1, 1.0);
            }
            if h.abs() < min_step && (t1 - t) * direction > min_step {
                return Err(Error::StepSizeUnderflow { t, step: h });
            }
        }
        Ok(stats)
    }

    fn initial_step(&self, y: &[f64], dy: &[f64], span: f64) -> f64 {
        let scale = |v: f64| self.atol + self.rtol * v.abs();
        let d0 = rms(y.iter().map(|&v| v / scale(v)));
        let d1 = rms(y.iter().zip(dy).map(|(&v, &d)| d / scale(v)));
        let h = if d0 < 1e-5 || d1 < 1e-5 {
            1e-6
        } else {
            0.01 * d0 / d1
        };
        h.min(span)
    }
}

fn rms(values: impl ExactSizeIterator<Item = f64>) -> f64 {
    let n = values.len().max(1) as f64;
    (values.map(|v| v * v).sum::<f64>() / n).sqrt()
}
