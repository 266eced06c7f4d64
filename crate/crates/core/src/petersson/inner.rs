use std::f64::consts::TAU;

use num_complex::Complex64;
use rayon::prelude::*;

use super::{QuadratureGrid, SlashEvaluator};
use crate::cuspform::{gamma1_cosets, GroupElement, HalfPlanePoint};
use crate::sum::ComplexSum;
use crate::{Error, Result};

/// Right coset representatives of `Gamma_1(l)` in `SL_2(Z)`, identity first.
/// For `l >= 3` both `g` and `-g` appear, so the list has twice the index of
/// the image of `Gamma_1(l)` in `PSL_2(Z)` (120 for `l = 11`).
pub fn coset_reps_gamma1(l: u64) -> Vec<GroupElement> {
    gamma1_cosets(l)
}

/// A Petersson pairing together with how it was obtained.
#[derive(Clone, Debug, PartialEq)]
pub struct InnerProduct {
    pub value: Complex64,
    /// Sum of the three parts below.
    pub error_estimate: f64,
    /// `|Q(grid) - Q(coarser grid)|`.
    pub quadrature_difference: f64,
    /// Estimate of the integral above `y_max`.
    pub cusp_tail: f64,
    /// Propagated error of the form evaluations.
    pub evaluation_error: f64,
    pub nodes: usize,
    pub translates: usize,
}

struct Pass {
    value: Complex64,
    evaluation_error: f64,
    /// `sum w |integrand|`, for roundoff
    magnitude: f64,
}

fn integrand(
    f: &dyn SlashEvaluator,
    g: &dyn SlashEvaluator,
    reps: &[GroupElement],
    tau: HalfPlanePoint,
) -> Result<(Complex64, f64, f64)> {
    let yk = tau.y.powi(f.weight() as i32 - 2);
    let mut acc = ComplexSum::new();
    let mut abs = 0.0;
    let mut err = 0.0;
    for r in reps {
        let a = f.slash(r, tau)?;
        let b = g.slash(r, tau)?;
        let t = a.value * b.value.conj() * yk;
        acc.add(t);
        abs += t.norm();
        err += yk
            * (a.value.norm() * b.error_bound + b.value.norm() * a.error_bound + a.error_bound * b.error_bound);
    }
    Ok((acc.value(), abs, err))
}

fn pass(f: &dyn SlashEvaluator, g: &dyn SlashEvaluator, reps: &[GroupElement], grid: &QuadratureGrid) -> Result<Pass> {
    let parts: Vec<Result<(Complex64, f64, f64)>> = grid
        .nodes()
        .par_iter()
        .map(|n| {
            let (v, a, e) = integrand(f, g, reps, HalfPlanePoint::new(n.x, n.y)?)?;
            Ok((v * n.weight, a * n.weight, e * n.weight))
        })
        .collect();
    let mut acc = ComplexSum::new();
    let mut err = 0.0;
    let mut magnitude = 0.0;
    for p in parts {
        let (v, a, e) = p?;
        acc.add(v);
        magnitude += a;
        err += e;
    }
    Ok(Pass { value: acc.value(), evaluation_error: err, magnitude })
}

/// Largest `sum_g |f|g conj(g|g)| y^{k-2}` over a row of points at height `y`.
fn row_magnitude(f: &dyn SlashEvaluator, g: &dyn SlashEvaluator, reps: &[GroupElement], y: f64) -> Result<f64> {
    let mut m: f64 = 0.0;
    for j in 0..9 {
        let x = -0.5 + j as f64 / 8.0;
        m = m.max(integrand(f, g, reps, HalfPlanePoint::new(x, y)?)?.1);
    }
    Ok(m)
}

/// `int_Y^inf (y / Y)^p e^{-a (y - Y)} dy` for integer `p >= 0`.
fn tail_integral(p: i64, a: f64, y: f64) -> f64 {
    // Y^{-p} e^{aY} Gamma(p + 1, aY) / a^{p+1}, Gamma(p+1, z) = p! e^{-z} sum_j z^j / j!
    let z = a * y;
    let mut term = 1.0;
    let mut s = 1.0;
    for j in 1..=p {
        term *= z / j as f64;
        s += term;
    }
    let fact: f64 = (1..=p).map(|j| j as f64).product();
    fact * s / (a.powi(p as i32 + 1) * y.powi(p as i32))
}

/// The Petersson pairing of two forms of the same level and weight, one of
/// which should be cuspidal.
///
/// The fundamental domain of `Gamma_1(l)` is covered by the translates
/// `g F` for the coset representatives `g`, and on `g F` the integrand is
/// `(f|g)(tau) conj((g|g)(tau)) y^{k-2}` for `tau` in `F`. For `l >= 3` the
/// translates cover the quotient twice and the sum is halved.
///
/// The integrand is sampled at `y_max` and `y_max / 2`; if it has not
/// decayed by at least half between them the integral is reported as
/// non-convergent. Above `y_max` it is assumed to decay at least like
/// `y^{k-2} e^{-2 pi y / l}`, the slowest rate a cusp form can have.
pub fn inner(f: &dyn SlashEvaluator, g: &dyn SlashEvaluator, grid: &QuadratureGrid) -> Result<InnerProduct> {
    if f.level() != g.level() || f.weight() != g.weight() {
        return Err(Error::Invalid(format!(
            "forms differ in level or weight: ({}, {}) vs ({}, {})",
            f.level(),
            f.weight(),
            g.level(),
            g.weight()
        )));
    }
    let l = f.level();
    let k = f.weight();
    let reps = coset_reps_gamma1(l);
    let y_max = grid.y_max();
    let top = row_magnitude(f, g, &reps, y_max)?;
    let mid = row_magnitude(f, g, &reps, y_max / 2.0)?;
    if top > 0.0 && top >= 0.5 * mid {
        return Err(Error::NonconvergentIntegrand(format!(
            "sum |f|g conj(g|g)| y^(k-2) is {top:.3e} at y = {y_max} and {mid:.3e} at y = {}",
            y_max / 2.0
        )));
    }
    let halve = if l >= 3 { 0.5 } else { 1.0 };
    let fine = pass(f, g, &reps, grid)?;
    let coarse = pass(f, g, &reps, &grid.coarsened())?;
    let cusp_tail = halve * top * tail_integral(k - 2, TAU / l as f64, y_max);
    let quadrature_difference = halve * (fine.value - coarse.value).norm();
    // evaluation errors plus roundoff in the products and the weights
    let evaluation_error = halve * (fine.evaluation_error + 64.0 * f64::EPSILON * fine.magnitude);
    Ok(InnerProduct {
        value: fine.value * halve,
        error_estimate: quadrature_difference + cusp_tail + evaluation_error,
        quadrature_difference,
        cusp_tail,
        evaluation_error,
        nodes: grid.len(),
        translates: reps.len(),
    })
}
