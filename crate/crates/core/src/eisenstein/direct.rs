use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::arith::{gcd, DirichletCharacter};
use crate::cuspform::{FourierSeries, HalfPlanePoint, PeriodTable};
use crate::sum::ComplexSum;
use crate::{Error, Estimate, PrecisionBudget, Result};

use super::twist::{unit, Twist};
use super::{check_weight, index_phases, EisensteinSpec};

/// `int_R (1 + t^2)^{-k/2} dt`.
fn beta_integral(k: i64) -> f64 {
    let (mut b, mut j) = if k % 2 == 0 { (PI, 2) } else { (2.0, 3) };
    while j < k {
        j += 2;
        b *= (j - 3) as f64 / (j - 2) as f64;
    }
    b
}

/// Bound on `sum |c tau + d|^{-k}` over all rows `|c| = l c_0` with
/// `c_0 > c0_max`.
fn row_tail(k: i64, ly: f64, c0_max: f64) -> f64 {
    let kf = k as f64;
    2.0 * (beta_integral(k) * ly.powf(1.0 - kf) * c0_max.powf(2.0 - kf) / (kf - 2.0)
        + ly.powf(-kf) * c0_max.powf(1.0 - kf) / (kf - 1.0))
}

/// `sum_{m >= 1} m^{k-1} r^m`.
fn polylog_neg(k: i64, r: f64) -> f64 {
    let mut s = 0.0;
    let mut m = 1.0f64;
    loop {
        let t = m.powi(k as i32 - 1) * r.powf(m);
        s += t;
        if t < 1e-18 * s && m * (1.0 - r) > (k as f64) {
            return s;
        }
        m += 1.0;
        if m > 1e7 {
            return f64::INFINITY;
        }
    }
}

/// Bound on the same rows taken in pairs `c, -c`: each pair sums over all
/// `d` to `(-2 pi i)^k / (k-1)! c^{-k} sum_m m^{k-1} V_c[m] q^m` with
/// `|V_c[m]| <= 2 density c`.
fn paired_row_tail(k: i64, l: f64, y: f64, density: f64, c0_max: f64) -> f64 {
    let kf = k as f64;
    let fact: f64 = (1..k).map(|j| j as f64).product();
    let r = (-std::f64::consts::TAU * y).exp();
    std::f64::consts::TAU.powf(kf) / fact
        * 2.0
        * density
        * polylog_neg(k, r)
        * l.powf(1.0 - kf)
        * c0_max.powf(2.0 - kf)
        / (kf - 2.0)
}

/// Bound on the terms of one row with `|c x + d| > u`, where `s = |c| y`.
fn window_tail(k: i64, s: f64, u: f64) -> f64 {
    let kf = k as f64;
    let r2 = s * s + u * u;
    let integral = r2.powf(-(kf - 2.0) / 2.0) / u;
    let integral = if s > 0.0 {
        integral.min(beta_integral(k) * s.powf(1.0 - kf) / 2.0)
    } else {
        integral
    };
    2.0 * (r2.powf(-kf / 2.0) + integral)
}

/// Smallest integer `n >= 1` with `f(n) <= target` for decreasing `f`, or
/// `None` beyond `cap`.
pub(crate) fn smallest_with(f: impl Fn(f64) -> f64, target: f64, cap: u64) -> Option<u64> {
    if f(1.0) <= target {
        return Some(1);
    }
    // invariant: f(lo) > target >= f(hi)
    let mut lo = 1u64;
    let mut hi = 2u64;
    loop {
        if hi >= cap {
            if f(cap as f64) > target {
                return None;
            }
            hi = cap;
            break;
        }
        if f(hi as f64) <= target {
            break;
        }
        lo = hi;
        hi *= 2;
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if f(mid as f64) <= target {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Some(hi)
}

/// Looks up periods of reduced fractions through a row-local map so the
/// shared cache is touched once per denominator and row.
struct RowPhases<'a> {
    twist: &'a Twist,
    budget: &'a PrecisionBudget,
    local: HashMap<u64, Arc<PeriodTable>>,
}

impl<'a> RowPhases<'a> {
    fn new(twist: &'a Twist, budget: &'a PrecisionBudget) -> Self {
        RowPhases { twist, budget, local: HashMap::new() }
    }

    fn phase(&mut self, c: i64, d: i64) -> Result<Complex64> {
        if self.twist.is_trivial() || c == 0 {
            return Ok(Complex64::new(1.0, 0.0));
        }
        let g = gcd(c, d);
        let (mut c, mut d) = (c / g, d / g);
        if c < 0 {
            c = -c;
            d = -d;
        }
        let key = c as u64;
        if !self.local.contains_key(&key) {
            let t = self.twist.table(key, self.budget)?;
            self.local.insert(key, t);
        }
        Ok(unit(self.local[&key].re(d)))
    }
}

/// `sum (c tau + d)^{-k} w(c, d)` over `c` in `lZ`, with `w` of modulus at
/// most 1 (`None` skips a term). The error bound covers the omitted rows,
/// the omitted ends of each row, `phase_error` times the absolute sum, and
/// roundoff.
fn lattice_sum<F>(
    level: u64,
    k: i64,
    tau: HalfPlanePoint,
    budget: &PrecisionBudget,
    twist: &Twist,
    what: &str,
    density: f64,
    weight: F,
) -> Result<Estimate>
where
    F: Fn(i64, i64, &mut RowPhases) -> Result<Option<Complex64>> + Sync,
{
    budget.validate()?;
    let target = budget.target_abs_error;
    let l = level as f64;
    let ly = l * tau.y;
    let c_cap = (budget.max_c_terms / level).max(1);
    let tail = |c0: f64| row_tail(k, ly, c0).min(paired_row_tail(k, l, tau.y, density, c0));
    let c0_max = smallest_with(tail, target / 2.0, c_cap).ok_or_else(|| {
        Error::unreachable(
            format!("{what}: rows needed exceed max_c_terms = {}", budget.max_c_terms),
            tail(c_cap as f64),
            target,
        )
    })?;
    let rows = 2 * c0_max + 1;
    let allot = target / 4.0 / rows as f64;
    let x = tau.x;
    let tau_c = tau.to_complex();

    let row = |c: i64, phases: &mut RowPhases| -> Result<(ComplexSum, f64)> {
        let s = (c as f64).abs() * tau.y;
        let u = smallest_with(|u| window_tail(k, s, u), allot, budget.max_lattice_radius)
            .ok_or_else(|| {
                Error::unreachable(
                    format!("{what}: row window exceeds max_lattice_radius = {}", budget.max_lattice_radius),
                    window_tail(k, s, budget.max_lattice_radius as f64),
                    allot,
                )
            })? as f64;
        let center = -(c as f64) * x;
        let d_lo = (center - u).ceil() as i64;
        let d_hi = (center + u).floor() as i64;
        let mut acc = ComplexSum::new();
        let mut abs = 0.0;
        for d in d_lo..=d_hi {
            if c == 0 && d == 0 {
                continue;
            }
            let Some(w) = weight(c, d, phases)? else { continue };
            let z = tau_c * c as f64 + d as f64;
            let t = w * z.inv().powi(k as i32);
            abs += t.norm();
            acc.add(t);
        }
        Ok((acc, abs))
    };
    // rows c and -c need the same period tables
    let results: Vec<Result<(ComplexSum, f64)>> = (0..=c0_max as i64)
        .into_par_iter()
        .map(|c0| {
            let c = c0 * level as i64;
            let mut phases = RowPhases::new(twist, budget);
            let (mut acc, mut abs) = row(c, &mut phases)?;
            if c != 0 {
                let (a, b) = row(-c, &mut phases)?;
                acc.merge(&a);
                abs += b;
            }
            Ok((acc, abs))
        })
        .collect();
    let mut total = ComplexSum::new();
    let mut abs = 0.0;
    for r in results {
        let (s, a) = r?;
        total.merge(&s);
        abs += a;
    }
    let phase_error = std::f64::consts::TAU * twist.tolerance();
    let roundoff = abs * f64::EPSILON * (8.0 + 4.0 * k as f64);
    let truncation = tail(c0_max as f64) + rows as f64 * allot;
    Ok(Estimate::new(total.value(), truncation + abs * phase_error + roundoff))
}

/// `E_{k,i;h}(tau) = sum (c tau + d)^{-k} e^{-2 pi i d i / l} e^{2 pi i Re H(-d/c)}`
/// over `c` in `lZ`, `gcd(d, l) = 1`, `(c, d) != (0, 0)`.
pub fn eval_direct(spec: &EisensteinSpec, tau: HalfPlanePoint, budget: &PrecisionBudget) -> Result<Estimate> {
    let l = spec.level();
    let li = l as i64;
    let k = spec.weight();
    // E_{k,-i;h} = (-1)^k E_{k,i;h}
    if k % 2 == 1 && (2 * spec.twist_index()) % li == 0 {
        return Ok(Estimate::exact(Complex64::new(0.0, 0.0)));
    }
    let chars = index_phases(l, spec.twist_index());
    let units: Vec<bool> = (0..li).map(|d| gcd(d, li) == 1).collect();
    let density = crate::arith::euler_phi(l) as f64 / l as f64;
    lattice_sum(l, k, tau, budget, spec.twist(), "E", density, |c, d, ph| {
        let r = d.rem_euclid(li) as usize;
        if !units[r] {
            return Ok(None);
        }
        Ok(Some(chars[r] * ph.phase(c, d)?))
    })
}

/// `E^_{k,chi;h}(tau) = sum chi(d) (c tau + d)^{-k} e^{2 pi i Re H(-d/c)}` over
/// coprime `(c, d)` with `c` in `lZ`.
pub fn eval_hat(
    level: u64,
    k: i64,
    chi: &DirichletCharacter,
    h: &FourierSeries,
    tau: HalfPlanePoint,
    budget: &PrecisionBudget,
) -> Result<Estimate> {
    let spec = EisensteinSpec::new(level, k, 0, h.clone())?;
    eval_hat_spec(&spec, chi, tau, budget)
}

/// [`eval_hat`] reusing the period cache of `spec` (its twist index is
/// ignored).
pub fn eval_hat_spec(
    spec: &EisensteinSpec,
    chi: &DirichletCharacter,
    tau: HalfPlanePoint,
    budget: &PrecisionBudget,
) -> Result<Estimate> {
    check_weight(spec.weight())?;
    if chi.modulus() != spec.level() {
        return Err(Error::Invalid(format!(
            "character modulus {} differs from level {}",
            chi.modulus(),
            spec.level()
        )));
    }
    // (c, d) -> (-c, -d) multiplies each term by chi(-1) (-1)^k
    let parity = if spec.weight() % 2 == 0 { 1.0 } else { -1.0 };
    if (chi.value(-1).re * parity) < 0.0 {
        return Ok(Estimate::exact(Complex64::new(0.0, 0.0)));
    }
    lattice_sum(spec.level(), spec.weight(), tau, budget, spec.twist(), "E^", 1.0, |c, d, ph| {
        if gcd(c, d) != 1 {
            return Ok(None);
        }
        Ok(Some(chi.value(d) * ph.phase(c, d)?))
    })
}
