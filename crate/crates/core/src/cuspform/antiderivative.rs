use std::f64::consts::TAU;

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::arith::{factorize, mod_inverse};
use crate::sum::ComplexSum;
use crate::{Error, Estimate, PrecisionBudget, Result};

use super::{completion, CuspRational, FourierSeries, GroupElement, HalfPlanePoint};

fn require_weight2_cusp(h: &FourierSeries) -> Result<()> {
    if h.weight() != 2 {
        return Err(Error::Invalid(format!(
            "the twisting form must have weight 2, got weight {}",
            h.weight()
        )));
    }
    if !h.is_cusp_form() {
        return Err(Error::Invalid(
            "cusp form invariant violated: constant coefficient a_0 must be exactly 0".into(),
        ));
    }
    Ok(())
}

/// Bound on `sum_{n > N} |a_n| r^n / (2 pi n)` under `|a_n| <= C n`.
fn tail(h: &FourierSeries, r: f64, n: usize) -> f64 {
    FourierSeries::power_tail(h.hecke_constant() / TAU, 0.0, r, n)
}

/// Smallest `N` whose tail falls below `target`, if it is within the stored
/// coefficients and the budget.
fn terms_needed(
    h: &FourierSeries,
    r: f64,
    target: f64,
    budget: &PrecisionBudget,
    what: impl Fn() -> String,
) -> Result<usize> {
    let available = h.precision().min(budget.max_q_terms);
    let c = h.hecke_constant() / TAU;
    if c == 0.0 {
        return Ok(available.min(1));
    }
    // c r^{N+1} / (1 - r) <= target
    let need = ((target * (1.0 - r) / c).ln() / r.ln()).ceil() - 1.0;
    let need = if need.is_finite() { need.max(1.0) as usize } else { usize::MAX };
    if need > available {
        return Err(Error::unreachable(what(), tail(h, r, available), target));
    }
    Ok(need)
}

/// The antiderivative `H(tau) = sum_{n>=1} a_n q^n / (2 pi i n)` of a
/// weight-two cusp form, vanishing at `i infinity`.
///
/// The omitted tail is bounded with the empirical Hecke constant of `h`.
pub fn h_upper(h: &FourierSeries, tau: HalfPlanePoint, budget: &PrecisionBudget) -> Result<Estimate> {
    require_weight2_cusp(h)?;
    let r = (-TAU * tau.y).exp();
    let target = budget.target_abs_error;
    let n = terms_needed(h, r, target / 2.0, budget, || format!("H at {tau}"))?;
    let mut acc = ComplexSum::new();
    let mut abs = 0.0;
    let mut err = 0.0;
    let mut mag = 1.0;
    let x = tau.x.rem_euclid(1.0);
    for k in 1..=n {
        mag *= r;
        if mag == 0.0 {
            break;
        }
        let a = h.coefficient(k);
        let w = mag / (TAU * k as f64);
        err += h.error_bounds()[k] * w;
        if a.re == 0.0 && a.im == 0.0 {
            continue;
        }
        let phase = Complex64::from_polar(1.0, TAU * (k as f64 * x).rem_euclid(1.0));
        // a q^n / (2 pi i n) = -i a q^n / (2 pi n)
        let t = a * phase * Complex64::new(0.0, -w);
        abs += t.norm();
        acc.add(t);
    }
    // phase argument error ~ n x eps, magnitude error ~ n eps from the running product
    let roundoff = abs * f64::EPSILON * (8.0 + 8.0 * n as f64);
    Ok(Estimate::new(acc.value(), err + tail(h, r, n) + roundoff))
}

/// `H(-d/c)` through `H(tau_0) - H(gamma tau_0)` with `tau_0 = (-d + i)/c`,
/// `gamma` the smallest-`|b|` completion of `(c, d)`; zero at infinity.
pub fn h_cusp(h: &FourierSeries, r: CuspRational, budget: &PrecisionBudget) -> Result<Estimate> {
    if r.is_infinity() {
        return Ok(Estimate::exact(Complex64::new(0.0, 0.0)));
    }
    let r = r.normalized();
    let g = completion(r.c, r.d)?;
    h_cusp_with_completion(h, &g, budget)
}

/// As [`h_cusp`], with the completion `gamma = (a, b; c, d)` supplied; the
/// value does not depend on the choice.
pub fn h_cusp_with_completion(
    h: &FourierSeries,
    gamma: &GroupElement,
    budget: &PrecisionBudget,
) -> Result<Estimate> {
    require_weight2_cusp(h)?;
    if !gamma.in_gamma0(h.level()) {
        return Err(Error::Invalid(format!(
            "{gamma} is not in Gamma_0({})",
            h.level()
        )));
    }
    if gamma.c == 0 {
        return Ok(Estimate::exact(Complex64::new(0.0, 0.0)));
    }
    let g = if gamma.c < 0 { gamma.neg() } else { *gamma };
    let c = g.c as f64;
    let tau0 = HalfPlanePoint::new(-(g.d as f64) / c, 1.0 / c)?;
    let tau1 = HalfPlanePoint::new(g.a as f64 / c, 1.0 / c)?;
    let half = budget.target(budget.target_abs_error / 2.0);
    let h0 = h_upper(h, tau0, &half)?;
    let h1 = h_upper(h, tau1, &half)?;
    Ok(Estimate::new(h0.value - h1.value, h0.error_bound + h1.error_bound))
}

thread_local! {
    static PLANNER: std::cell::RefCell<FftPlanner<f64>> = std::cell::RefCell::new(FftPlanner::new());
}

/// `d^{-1} mod c` for every unit `d`, and 0 for non-units (`c = 1` maps 0
/// to 1). Units are found by sieving the prime factors of `c` and inverted
/// together with one extended Euclid step.
fn unit_inverses(c: u64) -> Vec<u64> {
    let cu = c as usize;
    if c == 1 {
        return vec![1];
    }
    let mut unit = vec![true; cu];
    unit[0] = false;
    for (p, _) in factorize(c) {
        for m in (0..cu).step_by(p as usize) {
            unit[m] = false;
        }
    }
    let units: Vec<u64> = (0..c).filter(|&d| unit[d as usize]).collect();
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % c as u128) as u64;
    let mut prefix = Vec::with_capacity(units.len());
    let mut acc = 1u64;
    for &d in &units {
        acc = mul(acc, d);
        prefix.push(acc);
    }
    let mut inv = mod_inverse(acc as i64, c as i64).expect("product of units is a unit") as u64;
    let mut out = vec![0u64; cu];
    for j in (0..units.len()).rev() {
        let before = if j == 0 { 1 } else { prefix[j - 1] };
        out[units[j] as usize] = mul(inv, before);
        inv = mul(inv, units[j]);
    }
    out
}

/// `Re H(-d/c)` for one `c > 0` (a multiple of the level) and every `d`
/// coprime to `c`, from one length-`c` discrete Fourier transform.
#[derive(Clone, Debug)]
pub struct PeriodTable {
    c: u64,
    re: Vec<f64>,
    error_bound: f64,
}

impl PeriodTable {
    pub fn new(h: &FourierSeries, c: u64, tol: f64, budget: &PrecisionBudget) -> Result<Self> {
        require_weight2_cusp(h)?;
        if c == 0 || c % h.level() != 0 {
            return Err(Error::Invalid(format!(
                "period table needs a positive multiple of the level, got {c}"
            )));
        }
        let cf = c as f64;
        let r = (-TAU / cf).exp();
        let n = terms_needed(h, r, tol / 4.0, budget, || format!("periods with denominator {c}"))?;
        let cu = c as usize;
        // W_j = sum_{n = j mod c} a_n e^{-2 pi n / c} / (2 pi i n)
        let mut w = vec![Complex64::new(0.0, 0.0); cu];
        let mut coeff_err = 0.0;
        let mut abs = 0.0;
        let mut mag = 1.0;
        for k in 1..=n {
            mag *= r;
            if mag == 0.0 {
                break;
            }
            let s = mag / (TAU * k as f64);
            coeff_err += h.error_bounds()[k] * s;
            let a = h.coefficient(k);
            let t = a * Complex64::new(0.0, -s);
            abs += t.norm();
            w[k % cu] += t;
        }
        let fft = PLANNER.with(|p| p.borrow_mut().plan_fft_forward(cu));
        // X_r = sum_j W_j e^{-2 pi i j r / c} = S(-r)
        fft.process(&mut w);
        let inverses = unit_inverses(c);
        let re = (0..cu)
            .map(|d| match inverses[d] {
                0 => 0.0,
                // H(-d/c) = S(-d) - S(a) = X_d - X_{c - a}
                a => (w[d] - w[(cu - a as usize) % cu]).re,
            })
            .collect();
        let roundoff = abs * f64::EPSILON * (16.0 + 4.0 * (cf.log2() + 1.0) + 4.0 * n as f64 / cf);
        let error_bound = 2.0 * (coeff_err + tail(h, r, n) + roundoff);
        Ok(PeriodTable { c, re, error_bound })
    }

    pub fn denominator(&self) -> u64 {
        self.c
    }

    /// `Re H(-d/c)`; `d` must be coprime to `c`.
    pub fn re(&self, d: i64) -> f64 {
        self.re[d.rem_euclid(self.c as i64) as usize]
    }

    /// Common bound on the absolute error of every entry.
    pub fn error_bound(&self) -> f64 {
        self.error_bound
    }
}
