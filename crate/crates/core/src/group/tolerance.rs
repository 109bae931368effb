use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Numerical thresholds shared by every classifier in the crate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    /// Allowed deviation of |q| from 1 on input; outputs are renormalized.
    pub eps_unit: f64,
    /// Singular values (and vector norms) at or below this count as zero.
    pub eps_null: f64,
    /// Componentwise equality of group elements.
    pub eps_eq: f64,
    /// Margin a pivot pair must clear to be preferred.
    pub eps_generic: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self { eps_unit: 1e-9, eps_null: 1e-7, eps_eq: 1e-8, eps_generic: 1e-6 }
    }
}

impl Tolerance {
    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("eps_unit", self.eps_unit),
            ("eps_null", self.eps_null),
            ("eps_eq", self.eps_eq),
            ("eps_generic", self.eps_generic),
        ];
        for (name, value) in fields {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::InvalidTolerance(format!("{name} must be a positive finite number, got {value}")));
            }
        }
        if self.eps_eq < self.eps_unit {
            return Err(Error::InvalidTolerance(format!(
                "eps_eq ({}) must be >= eps_unit ({})",
                self.eps_eq, self.eps_unit
            )));
        }
        if self.eps_null > self.eps_generic {
            return Err(Error::InvalidTolerance(format!(
                "eps_null ({}) must be <= eps_generic ({})",
                self.eps_null, self.eps_generic
            )));
        }
        Ok(())
    }
}
