use num_complex::Complex64;

use crate::arith::{characters_mod, dirichlet_l, gauss_coefficient};
use crate::cuspform::{FourierSeries, GroupElement, HalfPlanePoint};
use crate::{Error, PrecisionBudget, Result};

use super::direct::eval_hat_spec;
use super::twist::unit;
use super::{eval_direct, fourier_coeffs, EisensteinSpec};

/// Size of the violation of an identity, with a bound on how much of it the
/// numerical errors of both sides can explain.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Residual {
    pub residual: f64,
    pub error_bound: f64,
}

impl Residual {
    pub fn below(&self, threshold: f64) -> bool {
        self.residual < threshold
    }

    fn max(self, other: Residual) -> Residual {
        Residual {
            residual: self.residual.max(other.residual),
            error_bound: self.error_bound.max(other.error_bound),
        }
    }
}

/// `|E_{k,i;h}(tau) - sum_j r_{i,j} L(chi_j, k) E^_{k,chi_j;h}(tau)|`, with
/// `r_{i,j}` the coefficients of [`gauss_coefficient`].
pub fn dedekind_check(
    level: u64,
    k: i64,
    i: i64,
    h: &FourierSeries,
    tau: HalfPlanePoint,
    budget: &PrecisionBudget,
) -> Result<Residual> {
    let spec = EisensteinSpec::new(level, k, i, h.clone())?;
    dedekind_check_spec(&spec, tau, budget)
}

/// [`dedekind_check`] reusing the period cache of `spec`.
pub fn dedekind_check_spec(spec: &EisensteinSpec, tau: HalfPlanePoint, budget: &PrecisionBudget) -> Result<Residual> {
    let t = budget.target_abs_error;
    let lhs = eval_direct(spec, tau, &budget.target(t / 2.0))?;
    // terms are weighted by |r_j L(chi_j, k)| <= |r_j| zeta(k); split the
    // remaining half of the target in proportion
    let parity = if spec.weight() % 2 == 0 { 1.0 } else { -1.0 };
    let terms: Vec<_> = characters_mod(spec.level())
        .into_iter()
        .map(|chi| (gauss_coefficient(spec.twist_index(), &chi), chi))
        .filter(|(r, chi)| r.norm() > 0.0 && chi.value(-1).re * parity > 0.0)
        .collect();
    let zeta_k = 1.0 + 1.0 / (spec.weight() as f64 - 1.0);
    let weight: f64 = terms.iter().map(|(r, _)| r.norm() * zeta_k).sum::<f64>().max(f64::MIN_POSITIVE);
    let hat_target = t / (4.0 * weight);
    let mut rhs = Complex64::new(0.0, 0.0);
    let mut err = lhs.error_bound;
    for (r, chi) in &terms {
        let lv = dirichlet_l(chi, spec.weight(), &budget.target(t / (4.0 * terms.len() as f64)))?;
        let hat = eval_hat_spec(spec, chi, tau, &budget.target(hat_target))?;
        rhs += r * lv.value * hat.value;
        err += r.norm() * (lv.value.norm() * hat.error_bound + lv.error_bound * (hat.value.norm() + hat.error_bound));
    }
    Ok(Residual { residual: (lhs.value - rhs).norm(), error_bound: err })
}

/// `|E_{k,i;h}(gamma tau) - (c tau + d)^k e^{-2 pi i Re H(-d/c)} E_{k,ai;h}(tau)|`.
pub fn modularity_residual(
    spec: &EisensteinSpec,
    gamma: &GroupElement,
    tau: HalfPlanePoint,
    budget: &PrecisionBudget,
) -> Result<Residual> {
    if !gamma.in_gamma0(spec.level()) {
        return Err(Error::Invalid(format!("{gamma} is not in Gamma_0({})", spec.level())));
    }
    let t = budget.target_abs_error;
    let gtau = gamma.act(tau);
    let lhs = eval_direct(spec, gtau, &budget.target(t / 2.0))?;
    let j = gamma.automorphy(tau.to_complex()).powi(spec.weight() as i32);
    let moved = spec.with_twist_index(gamma.a * spec.twist_index());
    let base = eval_direct(&moved, tau, &budget.target(t / (2.0 * j.norm().max(1.0))))?;
    let re_h = spec.twist().re_h(gamma.c, gamma.d, budget)?;
    let chi = unit(re_h).conj();
    let rhs = j * chi * base.value;
    let phase_err = std::f64::consts::TAU * spec.twist().tolerance() * (j.norm() * base.value.norm());
    Ok(Residual {
        residual: (lhs.value - rhs).norm(),
        error_bound: lhs.error_bound + j.norm() * base.error_bound + phase_err,
    })
}

/// `max_{m <= M} |Im (2 pi i)^{-k} R_m|`.
pub fn reality_check(spec: &EisensteinSpec, m: usize, budget: &PrecisionBudget) -> Result<Residual> {
    let s = fourier_coeffs(spec, m, budget)?;
    Ok(reality_of(&s, m))
}

pub(crate) fn reality_of(s: &FourierSeries, m: usize) -> Residual {
    let mut r = Residual { residual: 0.0, error_bound: 0.0 };
    for j in 0..=m.min(s.precision()) {
        r = r.max(Residual { residual: s.coefficient(j).im.abs(), error_bound: s.error_bounds()[j] });
    }
    r
}

/// `max_{m <= M} |R_m(E_{k,-i;h}) - (-1)^k R_m(E_{k,i;h})|` on normalized
/// coefficients.
pub fn index_flip_residual(spec: &EisensteinSpec, m: usize, budget: &PrecisionBudget) -> Result<Residual> {
    let a = fourier_coeffs(spec, m, budget)?;
    let b = fourier_coeffs(&spec.with_twist_index(-spec.twist_index()), m, budget)?;
    let sign = if spec.weight() % 2 == 0 { 1.0 } else { -1.0 };
    let mut r = Residual { residual: 0.0, error_bound: 0.0 };
    for j in 0..=a.precision() {
        r = r.max(Residual {
            residual: (b.coefficient(j) - a.coefficient(j) * sign).norm(),
            error_bound: a.error_bounds()[j] + b.error_bounds()[j],
        });
    }
    Ok(r)
}
