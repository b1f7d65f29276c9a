//! Roots of real monic cubics `x^3 + c2 x^2 + c1 x + c0`.

use num_complex::Complex64;
use std::f64::consts::PI;

/// Coefficients `(p, q)` of the depressed cubic `y^3 + p y + q` obtained with
/// `x = y - c2 / 3`.
pub(crate) fn depress(c2: f64, c1: f64, c0: f64) -> (f64, f64) {
    let p = c1 - c2 * c2 / 3.0;
    let q = 2.0 * c2 * c2 * c2 / 27.0 - c2 * c1 / 3.0 + c0;
    (p, q)
}

/// `(q/2)^2 + (p/3)^3`; negative exactly when there are three distinct real roots.
pub(crate) fn discriminant(c2: f64, c1: f64, c0: f64) -> f64 {
    let (p, q) = depress(c2, c1, c0);
    (q / 2.0).powi(2) + (p / 3.0).powi(3)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum RootMethod {
    Trigonometric,
    Cardano,
}

/// All three roots, sorted by real part then imaginary part.
///
/// Uses the three-cosine formula when the discriminant is negative and
/// Cardano's formula with a single real cube root otherwise, followed by a
/// couple of Newton polishing steps on the undepressed polynomial.
pub(crate) fn roots(c2: f64, c1: f64, c0: f64) -> ([Complex64; 3], RootMethod) {
    let (p, q) = depress(c2, c1, c0);
    let disc = (q / 2.0).powi(2) + (p / 3.0).powi(3);
    let shift = -c2 / 3.0;

    let (mut out, method) = if disc < 0.0 {
        // p < 0 is implied
        let r = 2.0 * (-p / 3.0).sqrt();
        let arg = ((3.0 * q) / (p * r)).clamp(-1.0, 1.0);
        let phi = arg.acos() / 3.0;
        let ys = [0, 1, 2].map(|k| r * (phi - 2.0 * PI * k as f64 / 3.0).cos());
        (
            ys.map(|y| Complex64::new(y + shift, 0.0)),
            RootMethod::Trigonometric,
        )
    } else {
        let sq = disc.max(0.0).sqrt();
        let u = if q > 0.0 {
            -(q / 2.0 + sq).cbrt()
        } else {
            (-q / 2.0 + sq).cbrt()
        };
        let v = if u == 0.0 { 0.0 } else { -p / (3.0 * u) };
        let real = u + v;
        let half = Complex64::new(-real / 2.0, 3f64.sqrt() / 2.0 * (u - v));
        (
            [
                Complex64::new(real + shift, 0.0),
                half + shift,
                half.conj() + shift,
            ],
            RootMethod::Cardano,
        )
    };

    for root in out.iter_mut() {
        *root = polish(*root, c2, c1, c0);
    }
    out.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    (out, method)
}

pub(crate) fn eval(x: Complex64, c2: f64, c1: f64, c0: f64) -> Complex64 {
    ((x + c2) * x + c1) * x + c0
}

fn polish(mut x: Complex64, c2: f64, c1: f64, c0: f64) -> Complex64 {
    for _ in 0..3 {
        let f = eval(x, c2, c1, c0);
        let df = (3.0 * x + 2.0 * c2) * x + c1;
        if df.norm() == 0.0 {
            break;
        }
        let next = x - f / df;
        // keep the step only if it does not make the residual worse
        if eval(next, c2, c1, c0).norm() <= f.norm() {
            x = next;
        } else {
            break;
        }
    }
    if x.im.abs() <= 1e-14 * x.re.abs().max(1.0) && x.im != 0.0 {
        let real = Complex64::new(x.re, 0.0);
        if eval(real, c2, c1, c0).norm() <= eval(x, c2, c1, c0).norm() {
            return real;
        }
    }
    x
}
