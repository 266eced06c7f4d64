//! The twisted lattice sums `E_{k,i;h}` and `E^_{k,chi;h}`: direct values,
//! Fourier coefficients with truncation bounds, the exact untwisted
//! coefficients, and residuals for the decomposition, transformation and
//! reality identities.

mod checks;
mod direct;
mod exact;
mod fourier;
mod twist;

use std::sync::Arc;

pub use checks::{
    dedekind_check, index_flip_residual, modularity_residual, reality_check, Residual,
};
pub use direct::{eval_direct, eval_hat};
pub use exact::{untwisted_constant_exact, untwisted_exact, untwisted_exact_integer, untwisted_series};
pub use fourier::{
    coefficient_bound, coefficients_with_targets, eval_via_fourier, fourier_coeffs, to_raw,
    weight2_partial_sums, Normalization,
};
pub use twist::Twist;

use crate::cuspform::FourierSeries;
use crate::{Error, Result};

/// Default accuracy of the cached `Re H(-d/c)` values.
pub const DEFAULT_PERIOD_TOLERANCE: f64 = 1e-12;

/// Level, weight, twist index `i` and twisting form `h` of `E_{k,i;h}`.
///
/// Clones and [`EisensteinSpec::with_twist_index`] share the cache of period
/// values.
#[derive(Clone, Debug)]
pub struct EisensteinSpec {
    level: u64,
    weight: i64,
    twist_index: i64,
    twist: Arc<Twist>,
}

impl EisensteinSpec {
    /// Periods are computed to [`DEFAULT_PERIOD_TOLERANCE`] times the Hecke
    /// constant of `form` (at least 1), since their roundoff scales with it.
    pub fn new(level: u64, weight: i64, twist_index: i64, form: FourierSeries) -> Result<Self> {
        let tolerance = DEFAULT_PERIOD_TOLERANCE * form.hecke_constant().max(1.0);
        Self::with_period_tolerance(level, weight, twist_index, form, tolerance)
    }

    pub fn with_period_tolerance(
        level: u64,
        weight: i64,
        twist_index: i64,
        form: FourierSeries,
        period_tolerance: f64,
    ) -> Result<Self> {
        check_weight(weight)?;
        if level == 0 {
            return Err(Error::Invalid("level must be positive".into()));
        }
        if form.level() != level {
            return Err(Error::Invalid(format!(
                "twisting form has level {} but the series has level {level}",
                form.level()
            )));
        }
        let twist = Twist::new(form, period_tolerance)?;
        Ok(EisensteinSpec {
            level,
            weight,
            twist_index: twist_index.rem_euclid(level as i64),
            twist: Arc::new(twist),
        })
    }

    /// `h = 0`.
    pub fn untwisted(level: u64, weight: i64, twist_index: i64) -> Result<Self> {
        if level == 0 {
            return Err(Error::Invalid("level must be positive".into()));
        }
        Self::new(level, weight, twist_index, FourierSeries::zero(level))
    }

    pub fn with_twist_index(&self, twist_index: i64) -> Self {
        EisensteinSpec {
            twist_index: twist_index.rem_euclid(self.level as i64),
            ..self.clone()
        }
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn weight(&self) -> i64 {
        self.weight
    }

    /// The index `i`, reduced to `0..l`.
    pub fn twist_index(&self) -> i64 {
        self.twist_index
    }

    pub fn form(&self) -> &FourierSeries {
        self.twist.form()
    }

    pub fn twist(&self) -> &Twist {
        &self.twist
    }
}

pub(crate) fn check_weight(k: i64) -> Result<()> {
    if k < 3 {
        return Err(Error::UnsupportedWeight(k));
    }
    Ok(())
}

/// `e^{-2 pi i d i / l} + (-1)^k e^{2 pi i d i / l}` for `d` in `0..l`.
pub(crate) fn index_weights(l: u64, k: i64, i: i64) -> Vec<num_complex::Complex64> {
    use std::f64::consts::TAU;
    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
    (0..l as i64)
        .map(|d| {
            let e = num_complex::Complex64::from_polar(1.0, -TAU * ((d * i).rem_euclid(l as i64)) as f64 / l as f64);
            e + sign * e.conj()
        })
        .collect()
}

/// `e^{-2 pi i d i / l}` for `d` in `0..l`.
pub(crate) fn index_phases(l: u64, i: i64) -> Vec<num_complex::Complex64> {
    use std::f64::consts::TAU;
    (0..l as i64)
        .map(|d| num_complex::Complex64::from_polar(1.0, -TAU * ((d * i).rem_euclid(l as i64)) as f64 / l as f64))
        .collect()
}
