//! `exp(i t M)` for real 3x3 generators.
//!
//! The generic path diagonalizes `M` (eigenvalues from its characteristic
//! cubic, eigenvectors from cross products of the rows of `M - mu I`). When the
//! eigenvector basis is ill-conditioned, e.g. at the threshold where two or three
//! eigenvalues merge, the exponential is taken by scaling and squaring a
//! truncated Taylor series instead.

use crate::cubic;
use crate::error::{Error, Result};
use nalgebra::{Matrix3, Vector3};
use num_complex::Complex64;

pub type CMatrix3 = Matrix3<Complex64>;

/// Eigenbasis condition numbers above this switch to scaling and squaring.
pub const CONDITION_LIMIT: f64 = 1e4;

const TAYLOR_TERMS: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExpMethod {
    Eigen,
    ScalingSquaring,
}

/// Eigenvalues of a real 3x3 matrix, via its characteristic polynomial.
pub fn eigenvalues(m: &Matrix3<f64>) -> [Complex64; 3] {
    let trace = m.trace();
    let minors = m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)] + m[(0, 0)] * m[(2, 2)]
        - m[(0, 2)] * m[(2, 0)]
        + m[(1, 1)] * m[(2, 2)]
        - m[(1, 2)] * m[(2, 1)];
    let det = m.determinant();
    cubic::roots(-trace, minors, -det).0
}

/// Computes `exp(i t M)` and reports which route was taken.
pub fn exp_i(m: &Matrix3<f64>, t: f64) -> Result<(CMatrix3, ExpMethod)> {
    if !t.is_finite() || m.iter().any(|x| !x.is_finite()) {
        return Err(Error::NumericFailure("non-finite generator"));
    }
    if t == 0.0 {
        return Ok((CMatrix3::identity(), ExpMethod::Eigen));
    }
    if let Some(result) = exp_i_eigen(m, t) {
        return Ok((result, ExpMethod::Eigen));
    }
    let a = m.map(|x| Complex64::new(0.0, x * t));
    let result = exp_scaling_squaring(&a);
    if result
        .iter()
        .any(|z| !z.re.is_finite() || !z.im.is_finite())
    {
        return Err(Error::NumericFailure("scaling and squaring overflowed"));
    }
    Ok((result, ExpMethod::ScalingSquaring))
}

fn exp_i_eigen(m: &Matrix3<f64>, t: f64) -> Option<CMatrix3> {
    let mc = m.map(|x| Complex64::new(x, 0.0));
    let values = eigenvalues(m);
    let scale = m.abs().max().max(f64::MIN_POSITIVE);
    // merged eigenvalues never give a usable basis
    for i in 0..3 {
        for j in (i + 1)..3 {
            if (values[i] - values[j]).norm() <= 1e-8 * scale {
                return None;
            }
        }
    }

    let mut basis = CMatrix3::zeros();
    for (k, mu) in values.iter().enumerate() {
        let shifted = mc - CMatrix3::identity() * *mu;
        let rows = [0, 1, 2].map(|r| shifted.row(r).transpose().into_owned());
        let candidates = [
            rows[0].cross(&rows[1]),
            rows[0].cross(&rows[2]),
            rows[1].cross(&rows[2]),
        ];
        let best = candidates
            .iter()
            .max_by(|a, b| a.norm().total_cmp(&b.norm()))
            .copied()
            .unwrap_or_else(Vector3::zeros);
        let norm = best.norm();
        if norm == 0.0 || !norm.is_finite() {
            return None;
        }
        basis.set_column(k, &(best / Complex64::new(norm, 0.0)));
    }

    let inverse = basis.try_inverse()?;
    let condition = one_norm(&basis) * one_norm(&inverse);
    if !condition.is_finite() || condition > CONDITION_LIMIT {
        return None;
    }
    let phases = CMatrix3::from_diagonal(&Vector3::from_iterator(
        values.iter().map(|mu| (Complex64::i() * mu * t).exp()),
    ));
    Some(basis * phases * inverse)
}

/// General complex exponential by scaling and squaring a Taylor polynomial.
pub fn exp_scaling_squaring(a: &CMatrix3) -> CMatrix3 {
    let norm = one_norm(a);
    let squarings = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as i32
    } else {
        0
    };
    let scaled = a / Complex64::new(2f64.powi(squarings), 0.0);

    let mut term = CMatrix3::identity();
    let mut sum = CMatrix3::identity();
    for k in 1..=TAYLOR_TERMS {
        term = term * scaled / Complex64::new(k as f64, 0.0);
        sum += term;
    }
    for _ in 0..squarings {
        sum = sum * sum;
    }
    sum
}

pub(crate) fn one_norm(a: &CMatrix3) -> f64 {
    (0..3)
        .map(|c| a.column(c).iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}
