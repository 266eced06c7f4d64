use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::{Error, PrecisionBudget, Result};

use super::{gamma0_generators, h_cusp, FourierSeries, GroupElement};

/// The unitary character `gamma -> exp(2 pi i Re H(-d/c))` of `Gamma_0(l)`.
pub fn twist_character(
    h: &FourierSeries,
    gamma: &GroupElement,
    budget: &PrecisionBudget,
) -> Result<Complex64> {
    if !gamma.in_gamma0(h.level()) {
        return Err(Error::Invalid(format!("{gamma} is not in Gamma_0({})", h.level())));
    }
    if gamma.c == 0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let re = h_cusp(h, gamma.bottom_row(), budget)?.value.re;
    let z = Complex64::from_polar(1.0, TAU * re.rem_euclid(1.0));
    Ok(z / z.norm())
}

/// Real parts of `H(-d_j/c_j)` over the bottom rows of a generating set of
/// `Gamma_0(l)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PeriodData {
    pub level: u64,
    pub generators: Vec<GroupElement>,
    pub re_periods: Vec<f64>,
    pub error_bounds: Vec<f64>,
}

impl PeriodData {
    pub fn max_error_bound(&self) -> f64 {
        self.error_bounds.iter().copied().fold(0.0, f64::max)
    }

    pub fn scaled(&self, lambda: f64) -> PeriodData {
        PeriodData {
            level: self.level,
            generators: self.generators.clone(),
            re_periods: self.re_periods.iter().map(|p| p * lambda).collect(),
            error_bounds: self.error_bounds.iter().map(|e| e * lambda.abs()).collect(),
        }
    }
}

/// Periods of `h` over [`gamma0_generators`]; the translation entry is `0`.
pub fn period_data(h: &FourierSeries, l: u64, budget: &PrecisionBudget) -> Result<PeriodData> {
    if h.level() != l {
        return Err(Error::Invalid(format!(
            "form has level {} but periods were requested for level {l}",
            h.level()
        )));
    }
    let generators = gamma0_generators(l);
    let mut re_periods = Vec::with_capacity(generators.len());
    let mut error_bounds = Vec::with_capacity(generators.len());
    for g in &generators {
        if g.c == 0 {
            re_periods.push(0.0);
            error_bounds.push(0.0);
        } else {
            let v = h_cusp(h, g.bottom_row(), budget)?;
            re_periods.push(v.value.re);
            error_bounds.push(v.error_bound);
        }
    }
    Ok(PeriodData { level: l, generators, re_periods, error_bounds })
}
