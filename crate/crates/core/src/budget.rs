use num_complex::Complex64;

use crate::{Error, Result};

/// Accuracy target and work caps threaded through every numeric routine.
///
/// `max_lattice_radius` caps one-dimensional sums (the `d` direction of the
/// lattice, L-series, constant terms); `max_c_terms` caps the `c` direction
/// (rows of the lattice, shells of the coefficient sum); `max_q_terms` caps
/// the number of q-expansion coefficients read from a cusp form.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PrecisionBudget {
    pub target_abs_error: f64,
    pub max_lattice_radius: u64,
    pub max_c_terms: u64,
    pub max_q_terms: usize,
}

impl Default for PrecisionBudget {
    fn default() -> Self {
        PrecisionBudget {
            target_abs_error: 1e-8,
            max_lattice_radius: 2_000_000,
            max_c_terms: 40_000,
            max_q_terms: 400_000,
        }
    }
}

impl PrecisionBudget {
    pub fn new(
        target_abs_error: f64,
        max_lattice_radius: u64,
        max_c_terms: u64,
        max_q_terms: usize,
    ) -> Result<Self> {
        let budget = PrecisionBudget {
            target_abs_error,
            max_lattice_radius,
            max_c_terms,
            max_q_terms,
        };
        budget.validate()?;
        Ok(budget)
    }

    pub fn with_target(target_abs_error: f64) -> Self {
        PrecisionBudget {
            target_abs_error,
            ..Default::default()
        }
    }

    pub fn target(mut self, target_abs_error: f64) -> Self {
        self.target_abs_error = target_abs_error;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.target_abs_error.is_finite() && self.target_abs_error > 0.0) {
            return Err(Error::Invalid(format!(
                "target error must be positive and finite, got {}",
                self.target_abs_error
            )));
        }
        if self.max_lattice_radius == 0 || self.max_c_terms == 0 || self.max_q_terms == 0 {
            return Err(Error::Invalid("budget caps must be positive".into()));
        }
        Ok(())
    }
}

/// A complex value together with a bound on its absolute error.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Estimate {
    pub value: Complex64,
    pub error_bound: f64,
}

impl Estimate {
    pub fn new(value: Complex64, error_bound: f64) -> Self {
        Estimate { value, error_bound }
    }

    pub fn exact(value: Complex64) -> Self {
        Estimate {
            value,
            error_bound: 0.0,
        }
    }

    /// Whether `other` is consistent with `self` once both error bounds and
    /// an extra slack are accounted for.
    pub fn agrees_with(&self, other: &Estimate, slack: f64) -> bool {
        (self.value - other.value).norm() <= self.error_bound + other.error_bound + slack
    }
}
