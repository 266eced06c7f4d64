//! The twisted series evaluated two ways: as a lattice sum and from its
//! q-expansion. Coefficient targets loosen with `m` as `|q|^m` shrinks.

use std::f64::consts::TAU;

use twisted_eisenstein::cuspform::{eta_product_weight2, HalfPlanePoint};
use twisted_eisenstein::eisenstein::{coefficients_with_targets, eval_direct, eval_via_fourier, EisensteinSpec};
use twisted_eisenstein::PrecisionBudget;

fn main() -> twisted_eisenstein::Result<()> {
    let h = eta_product_weight2(11, 60_000)?;
    let spec = EisensteinSpec::new(11, 4, 1, h)?;
    let budget = PrecisionBudget::with_target(1e-8);
    // (2 pi)^4 |q|^m times the normalized target, |q| <= e^{-2 pi}
    let scale = TAU.powi(4);
    let targets: Vec<f64> = (0..=8).map(|m| 1e-8 / scale * (TAU * m as f64).exp() / 9.0).collect();
    let coeffs = coefficients_with_targets(&spec, &targets, &budget)?;
    for (x, y) in [(0.0, 1.0), (0.31, 1.2), (-0.4, 1.5)] {
        let tau = HalfPlanePoint::new(x, y)?;
        let d = eval_direct(&spec, tau, &budget)?;
        let f = eval_via_fourier(&coeffs, tau);
        println!(
            "tau={tau:<10} direct {:.10} (+-{:.1e})  fourier {:.10} (+-{:.1e})  gap {:.1e}",
            d.value, d.error_bound, f.value, f.error_bound, (d.value - f.value).norm()
        );
    }
    Ok(())
}
