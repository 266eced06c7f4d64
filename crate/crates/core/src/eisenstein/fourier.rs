use std::f64::consts::TAU;

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;

use crate::arith::{divisors, euler_phi, gcd};
use crate::cuspform::{FourierSeries, HalfPlanePoint};
use crate::sum::ComplexSum;
use crate::{Error, Estimate, PrecisionBudget, Result};

use super::direct::smallest_with;
use super::twist::{unit, Twist};
use super::{index_weights, EisensteinSpec};

/// Denominators up to this size go through the shared period cache; larger
/// ones are computed, used and dropped.
const CACHED_DENOMINATOR: u64 = 2048;

/// Normalization of an emitted q-expansion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Normalization {
    /// Coefficients multiplied by `(2 pi i)^{-k}`.
    TwoPiIPowK,
    Raw,
}

impl Normalization {
    pub fn tag(self) -> &'static str {
        match self {
            Normalization::TwoPiIPowK => "2pii_pow_k",
            Normalization::Raw => "raw",
        }
    }

    pub fn parse(tag: &str) -> Result<Self> {
        match tag {
            "2pii_pow_k" => Ok(Normalization::TwoPiIPowK),
            "raw" => Ok(Normalization::Raw),
            _ => Err(Error::Parse(format!("unknown normalization tag {tag:?}"))),
        }
    }
}

fn factorial_f64(n: i64) -> f64 {
    (1..=n).map(|j| j as f64).product()
}

fn two_pi_i_pow(k: i64) -> Complex64 {
    Complex64::new(0.0, TAU).powi(k as i32)
}

/// Bound on `|(2 pi i)^{-k} R_m|`, `m >= 1`, valid for every twisting form.
pub fn coefficient_bound(l: u64, k: i64, m: u64) -> f64 {
    let kf = k as f64;
    shell_prefactor(k, m) * 2.0 * euler_phi(l) as f64 * (l as f64).powf(-kf) * (1.0 + 1.0 / (kf - 2.0))
}

/// `m^{k-1} / (k-1)!`.
fn shell_prefactor(k: i64, m: u64) -> f64 {
    (m as f64).powi(k as i32 - 1) / factorial_f64(k - 1)
}

/// Bound on `m^{k-1}/(k-1)! sum_{c = l c_0, c_0 > c0_max} c^{-k} |V_c|`.
fn shell_tail(l: u64, k: i64, m: u64, c0_max: f64) -> f64 {
    let kf = k as f64;
    let s = if c0_max >= 1.0 {
        c0_max.powf(2.0 - kf) / (kf - 2.0)
    } else {
        1.0 + 1.0 / (kf - 2.0)
    };
    shell_prefactor(k, m) * 2.0 * euler_phi(l) as f64 * (l as f64).powf(-kf) * s
}

/// `e^{2 pi i Re H(-d_0/c)}` for `d_0` in `0..c` with `gcd(d_0, l) = 1`,
/// grouping `d_0` by `g = gcd(c, d_0)` so each reduced denominator `c/g`
/// needs one period table.
fn shell_phases(twist: &Twist, l: u64, c: u64, budget: &PrecisionBudget) -> Result<Vec<Complex64>> {
    let mut ph = vec![Complex64::new(0.0, 0.0); c as usize];
    for g in divisors(c) {
        if gcd(g as i64, l as i64) != 1 {
            continue;
        }
        let cr = c / g;
        let fill = |re: &dyn Fn(i64) -> f64, ph: &mut Vec<Complex64>| {
            for dr in 0..cr as i64 {
                if gcd(dr, cr as i64) == 1 {
                    ph[(g as i64 * dr) as usize] = unit(re(dr));
                }
            }
        };
        if cr <= CACHED_DENOMINATOR {
            let t = twist.table(cr, budget)?;
            fill(&|d| t.re(d), &mut ph);
        } else {
            let t = twist.compute_table(cr, budget)?;
            fill(&|d| t.re(d), &mut ph);
        }
    }
    Ok(ph)
}

/// `c^{-k} V_c[m]` for `m = 1..=m_max` and a bound on its error, where
/// `V_c[m] = sum_{d_0 mod c, gcd(d_0, l) = 1} B(d_0) e^{2 pi i Re H(-d_0/c)} e^{2 pi i m d_0 / c}`.
fn shell(
    twist: &Twist,
    weights: &[Complex64],
    l: u64,
    k: i64,
    c: u64,
    m_max: u64,
    planner: &mut FftPlanner<f64>,
    budget: &PrecisionBudget,
) -> Result<(Vec<Complex64>, f64)> {
    let cu = c as usize;
    let li = l as i64;
    let mut x: Vec<Complex64> = (0..c as i64)
        .map(|d| if gcd(d, li) == 1 { weights[(d % li) as usize] } else { Complex64::new(0.0, 0.0) })
        .collect();
    if !twist.is_trivial() {
        let ph = shell_phases(twist, l, c, budget)?;
        for (xj, p) in x.iter_mut().zip(&ph) {
            *xj *= p;
        }
    }
    let abs: f64 = x.iter().map(|z| z.norm()).sum();
    planner.plan_fft_inverse(cu).process(&mut x);
    let scale = (c as f64).powi(-(k as i32));
    let out = (1..=m_max).map(|m| x[(m % c) as usize] * scale).collect();
    let fft_roundoff = f64::EPSILON * (10.0 + 5.0 * (c as f64).log2());
    let err = scale * abs * (TAU * twist.tolerance() + fft_roundoff);
    Ok((out, err))
}

/// Normalized coefficients `(2 pi i)^{-k} R_m`, `m = 0..=M`, each within
/// `budget.target_abs_error`. `M = 0` is computed as `M = 1`.
pub fn fourier_coeffs(spec: &EisensteinSpec, m: usize, budget: &PrecisionBudget) -> Result<FourierSeries> {
    coefficients_with_targets(spec, &vec![budget.target_abs_error; m.max(1) + 1], budget)
}

/// Normalized coefficients with a separate accuracy target for each
/// `m = 0..targets.len()`.
pub fn coefficients_with_targets(
    spec: &EisensteinSpec,
    targets: &[f64],
    budget: &PrecisionBudget,
) -> Result<FourierSeries> {
    budget.validate()?;
    if targets.len() < 2 {
        return Err(Error::Invalid("need targets for at least m = 0 and m = 1".into()));
    }
    if let Some(t) = targets.iter().find(|t| !(t.is_finite() && **t > 0.0)) {
        return Err(Error::Invalid(format!("coefficient target {t} must be positive")));
    }
    let (l, k, i) = (spec.level(), spec.weight(), spec.twist_index());
    let m_max = (targets.len() - 1) as u64;
    let twist = spec.twist();

    let (c0, tails) = if twist.is_trivial() {
        // shells with c_0 not dividing m vanish identically
        (m_max, vec![0.0; targets.len()])
    } else {
        let cap = (budget.max_c_terms / l).max(1);
        let mut c0 = 1u64;
        for m in 1..=m_max {
            let t = targets[m as usize] / 2.0;
            match smallest_with(|c| shell_tail(l, k, m, c), t, cap) {
                Some(c) => c0 = c0.max(c),
                None => {
                    return Err(Error::unreachable(
                        format!(
                            "coefficient m = {m} of E_{{{k},{i};h}}: shells needed exceed max_c_terms = {}",
                            budget.max_c_terms
                        ),
                        2.0 * shell_tail(l, k, m, cap as f64),
                        targets[m as usize],
                    ))
                }
            }
        }
        let tails = (0..=m_max).map(|m| if m == 0 { 0.0 } else { shell_tail(l, k, m, c0 as f64) }).collect();
        (c0, tails)
    };

    let weights = index_weights(l, k, i);
    let shells: Vec<Result<(Vec<Complex64>, f64)>> = (1..=c0)
        .into_par_iter()
        .map_init(FftPlanner::new, |planner, c0| {
            shell(twist, &weights, l, k, c0 * l, m_max, planner, budget)
        })
        .collect();
    let mut acc = vec![ComplexSum::new(); m_max as usize];
    let mut err_sum = 0.0;
    for s in shells {
        let (v, e) = s?;
        for (a, z) in acc.iter_mut().zip(v) {
            a.add(z);
        }
        err_sum += e;
    }

    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
    let (r0, e0) = constant_term(l, k, i, targets[0], budget)?;
    let mut coefficients = vec![r0];
    let mut errors = vec![e0];
    for m in 1..=m_max {
        let p = shell_prefactor(k, m);
        let v = acc[(m - 1) as usize].value() * (sign * p);
        coefficients.push(v);
        errors.push(tails[m as usize] + p * err_sum + 4.0 * f64::EPSILON * v.norm());
    }
    FourierSeries::new(l, k, coefficients, errors)
}

/// `(2 pi i)^{-k} R_0 = (2 pi i)^{-k} sum_{d >= 1, gcd(d, l) = 1} d^{-k} B(d)`.
fn constant_term(l: u64, k: i64, i: i64, target: f64, budget: &PrecisionBudget) -> Result<(Complex64, f64)> {
    let kf = k as f64;
    let norm = TAU.powf(-kf);
    let tail = |n: f64| norm * 2.0 * n.powf(1.0 - kf) / (kf - 1.0);
    let n = smallest_with(tail, target / 2.0, budget.max_lattice_radius).ok_or_else(|| {
        Error::unreachable(
            format!("constant term: terms needed exceed max_lattice_radius = {}", budget.max_lattice_radius),
            tail(budget.max_lattice_radius as f64),
            target,
        )
    })?;
    let weights = index_weights(l, k, i);
    let li = l as i64;
    let mut acc = ComplexSum::new();
    let mut abs = 0.0;
    for d in (1..=n as i64).rev() {
        if gcd(d, li) != 1 {
            continue;
        }
        let t = weights[(d % li) as usize] * (d as f64).powf(-kf);
        abs += t.norm();
        acc.add(t);
    }
    let v = acc.value() / two_pi_i_pow(k);
    Ok((v, tail(n as f64) + norm * abs * 8.0 * f64::EPSILON))
}

/// Multiplies normalized coefficients by `(2 pi i)^k`.
pub fn to_raw(normalized: &FourierSeries) -> FourierSeries {
    normalized.scale(two_pi_i_pow(normalized.weight()))
}

/// `sum_m R_m q^m` from normalized coefficients `R_0..R_M`, with their
/// error bounds plus [`coefficient_bound`] for the omitted `m > M`.
pub fn eval_via_fourier(normalized: &FourierSeries, tau: HalfPlanePoint) -> Estimate {
    let (l, k) = (normalized.level(), normalized.weight());
    let scale = two_pi_i_pow(k);
    let r = (-TAU * tau.y).exp();
    let mut acc = ComplexSum::new();
    let mut err = 0.0;
    let mut abs = 0.0;
    let mut mag = 1.0;
    for (m, (a, e)) in normalized.coefficients().iter().zip(normalized.error_bounds()).enumerate() {
        if m > 0 {
            mag *= r;
        }
        let phase = Complex64::from_polar(1.0, TAU * (m as f64 * tau.x).rem_euclid(1.0));
        let t = a * scale * phase * mag;
        abs += t.norm();
        err += e * scale.norm() * mag;
        acc.add(t);
    }
    let m_max = normalized.precision();
    let lead = coefficient_bound(l, k, 1) * scale.norm();
    let tail = FourierSeries::power_tail(lead, (k - 1) as f64, r, m_max);
    Estimate::new(acc.value(), err + tail + abs * 8.0 * f64::EPSILON * (m_max as f64 + 1.0))
}

/// Partial sums over shells `c = l c_0`, `c_0 <= C`, of the weight-two
/// coefficient `(2 pi i)^{-2} R_m`, for each cutoff `C` in `cutoffs`.
///
/// Experimental: absolute convergence of this regrouped sum is not known,
/// so no error bound is attached.
pub fn weight2_partial_sums(
    form: &FourierSeries,
    level: u64,
    i: i64,
    m: u64,
    cutoffs: &[u64],
    budget: &PrecisionBudget,
) -> Result<Vec<Complex64>> {
    if m == 0 {
        return Err(Error::Invalid("partial sums are defined for m >= 1".into()));
    }
    if form.level() != level {
        return Err(Error::Invalid("form level differs from the series level".into()));
    }
    let twist = Twist::new(form.clone(), super::DEFAULT_PERIOD_TOLERANCE)?;
    let c_max = cutoffs.iter().copied().max().unwrap_or(0);
    let weights = index_weights(level, 2, i.rem_euclid(level as i64));
    let shells: Vec<Complex64> = (1..=c_max)
        .into_par_iter()
        .map_init(FftPlanner::new, |planner, c0| {
            shell(&twist, &weights, level, 2, c0 * level, m, planner, budget).map(|(v, _)| v[(m - 1) as usize])
        })
        .collect::<Result<_>>()?;
    let mut acc = ComplexSum::new();
    let mut done = 0u64;
    let mut sorted: Vec<(usize, u64)> = cutoffs.iter().copied().enumerate().collect();
    sorted.sort_by_key(|&(_, c)| c);
    let mut values = vec![Complex64::new(0.0, 0.0); cutoffs.len()];
    for (slot, c) in sorted {
        while done < c {
            acc.add(shells[done as usize]);
            done += 1;
        }
        values[slot] = acc.value() * shell_prefactor(2, m);
    }
    Ok(values)
}
