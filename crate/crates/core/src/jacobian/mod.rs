//! Twists as points of the Jacobian: a form `h` and its real periods over a
//! generating set of `Gamma_0(l)`. Two forms give the same Eisenstein series
//! when their real periods differ by integers, so `h` twists trivially
//! exactly when its real periods are integral.

mod scan;

pub use scan::{rationality_scan, CoefficientVerdict, PairScan, ScanReport, Verdict};

use crate::arith::rational_reconstruct;
use crate::cuspform::{period_data, FourierSeries, PeriodData};
use crate::{Error, PrecisionBudget, Result};

/// Largest denominator tried for ratios of periods.
pub const MAX_PERIOD_RATIO_DENOMINATOR: u64 = 1000;

/// A weight-two cusp form together with its period data.
#[derive(Clone, Debug, PartialEq)]
pub struct TwistPoint {
    form: FourierSeries,
    periods: PeriodData,
}

impl TwistPoint {
    pub fn new(form: FourierSeries, budget: &PrecisionBudget) -> Result<Self> {
        if form.weight() != 2 || !form.is_cusp_form() {
            return Err(Error::Invalid("a twist needs a weight-two cusp form".into()));
        }
        let periods = period_data(&form, form.level(), budget)?;
        Ok(TwistPoint { form, periods })
    }

    /// `sum lambda_j h_j` for real `lambda_j`; all forms must share the level.
    pub fn from_combination(terms: &[(f64, FourierSeries)], budget: &PrecisionBudget) -> Result<Self> {
        let (first, rest) = terms
            .split_first()
            .ok_or_else(|| Error::Invalid("empty combination".into()))?;
        let mut form = first.1.scale(first.0.into());
        for (lambda, h) in rest {
            form = form.add(&h.scale((*lambda).into()))?;
        }
        Self::new(form, budget)
    }

    /// The untwisted point `h = 0`.
    pub fn zero(level: u64) -> Result<Self> {
        Self::new(FourierSeries::zero(level), &PrecisionBudget::default())
    }

    /// `lambda h`, with periods scaled rather than recomputed.
    pub fn scaled(&self, lambda: f64) -> TwistPoint {
        TwistPoint { form: self.form.scale(lambda.into()), periods: self.periods.scaled(lambda) }
    }

    pub fn level(&self) -> u64 {
        self.form.level()
    }

    pub fn form(&self) -> &FourierSeries {
        &self.form
    }

    pub fn periods(&self) -> &PeriodData {
        &self.periods
    }

    fn check_precision(&self, tol: f64) -> Result<()> {
        if !(tol > 0.0) {
            return Err(Error::Invalid(format!("tolerance must be positive, got {tol}")));
        }
        let worst = self.periods.max_error_bound();
        if worst > tol / 2.0 {
            return Err(Error::Inconclusive(format!(
                "period error bound {worst:.3e} exceeds half the tolerance {tol:.3e}"
            )));
        }
        Ok(())
    }
}

/// Verdict of [`is_trivial_twist`] with the distance of each real period to
/// the nearest integer.
#[derive(Clone, Debug, PartialEq)]
pub struct TrivialityWitness {
    pub trivial: bool,
    pub distances: Vec<f64>,
}

fn distance_to_integer(x: f64) -> f64 {
    (x - x.round()).abs()
}

/// Whether every real period is within `tol` of an integer.
pub fn is_trivial_twist(p: &TwistPoint, tol: f64) -> Result<TrivialityWitness> {
    p.check_precision(tol)?;
    let distances: Vec<f64> = p.periods.re_periods.iter().map(|&r| distance_to_integer(r)).collect();
    Ok(TrivialityWitness { trivial: distances.iter().all(|&d| d <= tol), distances })
}

/// The group of real `lambda` with `lambda h` twisting trivially.
#[derive(Clone, Debug, PartialEq)]
pub enum Trivialization {
    /// Every period is zero: every `lambda` works.
    Dense,
    /// `lambda` must be a multiple of `generator`; `scalars` lists the
    /// multiples up to the requested height.
    Discrete { generator: f64, scalars: Vec<f64> },
    /// Some ratio of periods is not a fraction with denominator at most
    /// [`MAX_PERIOD_RATIO_DENOMINATOR`], so only `lambda = 0` was found.
    OnlyZero,
}

/// All `lambda` with `|lambda| <= max_height` and `lambda * re_period_j`
/// within `tol` of an integer for every `j`.
///
/// With `rho` the largest nonzero period, the other nonzero periods must be
/// rational multiples `p_j/q_j` of `rho`; then `lambda rho` runs over the
/// multiples of `lcm(q_j)`.
pub fn trivialization_scalars(p: &TwistPoint, max_height: f64, tol: f64) -> Result<Trivialization> {
    p.check_precision(tol)?;
    let periods = &p.periods.re_periods;
    let nonzero: Vec<f64> = periods.iter().copied().filter(|r| r.abs() > tol).collect();
    let Some(&rho) = nonzero.iter().max_by(|a, b| a.abs().total_cmp(&b.abs())) else {
        return Ok(Trivialization::Dense);
    };
    let mut lcm: u64 = 1;
    for &r in &nonzero {
        let ratio_tol = 2.0 * tol / rho.abs() * (1.0 + (r / rho).abs());
        let Some(q) = rational_reconstruct(r / rho, ratio_tol, MAX_PERIOD_RATIO_DENOMINATOR) else {
            return Ok(Trivialization::OnlyZero);
        };
        let den = u64::try_from(q.denom().clone()).expect("denominator fits");
        lcm = num_integer::lcm(lcm, den);
    }
    let generator = lcm as f64 / rho.abs();
    // every zero period and every rational ratio is honored up to the
    // propagated period error
    for (r, e) in periods.iter().zip(&p.periods.error_bounds) {
        let d = distance_to_integer(generator * r);
        if d > generator * e + tol {
            return Ok(Trivialization::OnlyZero);
        }
    }
    let count = (max_height / generator).floor() as i64;
    let scalars = (-count..=count).map(|t| t as f64 * generator).collect();
    Ok(Trivialization::Discrete { generator, scalars })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cuspform::{eta_product_weight2, GroupElement};
    use proptest::prelude::*;

    fn synthetic(periods: Vec<f64>, err: f64) -> TwistPoint {
        let n = periods.len();
        TwistPoint {
            form: FourierSeries::zero(11),
            periods: PeriodData {
                level: 11,
                generators: vec![GroupElement::T; n],
                re_periods: periods,
                error_bounds: vec![err; n],
            },
        }
    }

    #[test]
    fn zero_is_trivial_and_dense() {
        let p = TwistPoint::zero(11).unwrap();
        assert!(is_trivial_twist(&p, 1e-9).unwrap().trivial);
        assert_eq!(trivialization_scalars(&p, 10.0, 1e-9).unwrap(), Trivialization::Dense);
    }

    #[test]
    fn single_period_gives_its_reciprocal() {
        let p = synthetic(vec![0.0, 0.25], 0.0);
        let Trivialization::Discrete { generator, scalars } = trivialization_scalars(&p, 9.0, 1e-12).unwrap() else {
            panic!()
        };
        assert!((generator - 4.0).abs() < 1e-12);
        assert_eq!(scalars, vec![-8.0, -4.0, 0.0, 4.0, 8.0]);
    }

    #[test]
    fn rational_ratios_take_the_lcm() {
        // 0.3 and 0.2: lambda must be a multiple of 10
        let p = synthetic(vec![0.3, -0.2, 0.0], 1e-15);
        let Trivialization::Discrete { generator, .. } = trivialization_scalars(&p, 1.0, 1e-12).unwrap() else {
            panic!()
        };
        assert!((generator - 10.0).abs() < 1e-9, "{generator}");
        let irrational = synthetic(vec![1.0, std::f64::consts::SQRT_2], 1e-15);
        assert_eq!(trivialization_scalars(&irrational, 1.0, 1e-12).unwrap(), Trivialization::OnlyZero);
    }

    #[test]
    fn imprecise_periods_are_inconclusive() {
        let p = synthetic(vec![0.25], 1e-6);
        assert!(matches!(is_trivial_twist(&p, 1e-9), Err(Error::Inconclusive(_))));
        assert!(matches!(trivialization_scalars(&p, 1.0, 1e-9), Err(Error::Inconclusive(_))));
    }

    #[test]
    fn eta_product_of_level_eleven() {
        let h = eta_product_weight2(11, 4000).unwrap();
        let p = TwistPoint::new(h, &PrecisionBudget::with_target(1e-12)).unwrap();
        let w = is_trivial_twist(&p, 1e-9).unwrap();
        assert!(!w.trivial);
        let Trivialization::Discrete { generator, .. } = trivialization_scalars(&p, 10.0, 1e-9).unwrap() else {
            panic!()
        };
        let star = p.scaled(generator);
        assert!(is_trivial_twist(&star, 1e-9).unwrap().trivial);
        // half the generator is not enough
        assert!(!is_trivial_twist(&p.scaled(generator / 2.0), 1e-9).unwrap().trivial);
    }

    #[test]
    fn combination_matches_scaling() {
        let h = eta_product_weight2(11, 400).unwrap();
        let b = PrecisionBudget::with_target(1e-10);
        let a = TwistPoint::from_combination(&[(2.0, h.clone()), (-0.5, h.clone())], &b).unwrap();
        let s = TwistPoint::new(h, &b).unwrap().scaled(1.5);
        for (x, y) in a.periods().re_periods.iter().zip(&s.periods().re_periods) {
            assert!((x - y).abs() < 1e-9);
        }
        assert!(TwistPoint::new(crate::cuspform::weight4_level11_square(10).unwrap(), &b).is_err());
    }

    proptest! {
        /// Accepted scalars form a group.
        #[test]
        fn accepted_scalars_form_a_group(num in 1u32..7, den in 1u32..7, a in -5i32..5, b in -5i32..5) {
            let rho = num as f64 / den as f64 * 0.137;
            let p = synthetic(vec![0.0, rho, -2.0 * rho], 1e-15);
            let Trivialization::Discrete { generator, .. } = trivialization_scalars(&p, 1.0, 1e-10).unwrap() else {
                panic!()
            };
            let (l1, l2) = (a as f64 * generator, b as f64 * generator);
            for lambda in [l1, l2, l1 + l2, -l1] {
                prop_assert!(is_trivial_twist(&p.scaled(lambda), 1e-9).unwrap().trivial);
            }
        }
    }
}
