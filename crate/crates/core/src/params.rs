use crate::error::{Error, Result};

/// Numeric tolerances used when checking propagated maps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Bound on the symplectic residual of a propagated map.
    pub symplectic: f64,
    /// Bound on violations of `n_s = n_i + n_b` and on negative occupations.
    pub physical: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            symplectic: 1e-10,
            physical: 1e-10,
        }
    }
}

/// The physical knobs of the probed downconverter.
///
/// `gamma` is the nonlinear coupling (pump amplitude absorbed), `kappa` the
/// linear idler/auxiliary coupling, `delta` the nonlinear phase mismatch and
/// `length` the interaction length. All rates are inverse lengths, so only the
/// products `gamma * length`, `kappa * length` and `delta * length` matter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplerParams {
    pub gamma: f64,
    pub kappa: f64,
    pub delta: f64,
    pub length: f64,
    pub tolerances: Tolerances,
}

impl CouplerParams {
    pub fn new(gamma: f64, kappa: f64, delta: f64, length: f64) -> Result<Self> {
        let params = Self {
            gamma,
            kappa,
            delta,
            length,
            tolerances: Tolerances::default(),
        };
        params.validate()?;
        Ok(params)
    }

    pub fn with_tolerances(mut self, tolerances: Tolerances) -> Self {
        self.tolerances = tolerances;
        self
    }

    pub fn with_length(mut self, length: f64) -> Self {
        self.length = length;
        self
    }

    pub fn validate(&self) -> Result<()> {
        non_negative("gamma", self.gamma)?;
        non_negative("kappa", self.kappa)?;
        non_negative("length", self.length)?;
        if !self.delta.is_finite() {
            return Err(Error::InvalidParameter {
                name: "delta",
                value: self.delta,
                reason: "must be finite",
            });
        }
        Ok(())
    }

    /// Rescales every rate by `factor` and the length by `1 / factor`.
    pub fn rescaled(&self, factor: f64) -> Self {
        Self {
            gamma: self.gamma * factor,
            kappa: self.kappa * factor,
            delta: self.delta * factor,
            length: self.length / factor,
            tolerances: self.tolerances,
        }
    }
}

fn non_negative(name: &'static str, value: f64) -> Result<()> {
    if !value.is_finite() {
        return Err(Error::InvalidParameter {
            name,
            value,
            reason: "must be finite",
        });
    }
    if value < 0.0 {
        return Err(Error::InvalidParameter {
            name,
            value,
            reason: "must be non-negative",
        });
    }
    Ok(())
}
