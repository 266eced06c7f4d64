
use super::DirichletCharacter;
use crate::sum::ComplexSum;
use crate::{Error, Estimate, PrecisionBudget, Result};

/// `L(chi, k) = sum_{n > 0, gcd(n, l) = 1} chi(n) n^{-k}` by direct summation.
///
/// The series is cut at the first `N` with `N^{1-k}/(k-1)` below half the
/// target; the remaining half absorbs roundoff.
pub fn dirichlet_l(chi: &DirichletCharacter, k: i64, budget: &PrecisionBudget) -> Result<Estimate> {
    if k < 2 {
        return Err(Error::UnsupportedWeight(k));
    }
    let target = budget.target_abs_error;
    let kf = k as f64;
    let tail = |n: f64| n.powf(1.0 - kf) / (kf - 1.0);
    let n_needed = ((kf - 1.0) * target / 2.0).powf(-1.0 / (kf - 1.0)).ceil().max(1.0);
    if n_needed > budget.max_lattice_radius as f64 {
        let cap = budget.max_lattice_radius as f64;
        return Err(Error::unreachable(format!("L-value of weight {k}"), tail(cap), target));
    }
    let n_max = n_needed as i64;

    let mut acc = ComplexSum::new();
    let mut abs_sum = 0.0;
    for n in (1..=n_max).rev() {
        let v = chi.value(n);
        if v.re == 0.0 && v.im == 0.0 {
            continue;
        }
        let w = (n as f64).powi(-(k as i32));
        abs_sum += w;
        acc.add(v * w);
    }
    let roundoff = 8.0 * f64::EPSILON * abs_sum;
    Ok(Estimate::new(acc.value(), tail(n_max as f64) + roundoff))
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::characters_mod;
    use std::f64::consts::PI;

    fn budget() -> PrecisionBudget {
        PrecisionBudget::with_target(1e-11)
    }

    #[test]
    fn zeta_four() {
        let chi = DirichletCharacter::trivial(1);
        let v = dirichlet_l(&chi, 4, &budget()).unwrap();
        assert!((v.value.re - PI.powi(4) / 90.0).abs() < 1e-10);
        assert!((v.value.re - 1.0823232337).abs() < 1e-10);
        assert!(v.error_bound <= 1e-11);
    }

    #[test]
    fn euler_factor_at_two() {
        let chi = DirichletCharacter::trivial(2);
        let v = dirichlet_l(&chi, 4, &budget()).unwrap();
        let expected = PI.powi(4) / 90.0 * (1.0 - 2f64.powi(-4));
        assert!((v.value.re - expected).abs() < 1e-10);
        assert!((v.value.re - 1.0146780316).abs() < 1e-10);
    }

    #[test]
    fn odd_quadratic_character_mod_four() {
        let chi = &characters_mod(4)[1];
        let v = dirichlet_l(chi, 3, &budget()).unwrap();
        assert!((v.value.re - PI.powi(3) / 32.0).abs() < 1e-10);
        assert!((v.value.re - 0.9689461463).abs() < 1e-10);
        assert!(v.value.im.abs() < 1e-15);
    }

    #[test]
    fn budget_cap_is_reported() {
        let chi = DirichletCharacter::trivial(1);
        let tight = PrecisionBudget {
            target_abs_error: 1e-14,
            max_lattice_radius: 1000,
            ..Default::default()
        };
        assert!(matches!(
            dirichlet_l(&chi, 3, &tight),
            Err(Error::PrecisionUnreachable { .. })
        ));
        assert!(matches!(dirichlet_l(&chi, 1, &budget()), Err(Error::UnsupportedWeight(1))));
    }
}
