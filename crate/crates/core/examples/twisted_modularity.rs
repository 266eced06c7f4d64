//! Transformation law of `E_{4,1;h}` under the generators of `Gamma_0(11)`,
//! with `tau = (-d + i)/c` so that both `tau` and `gamma tau` sit at height
//! `1/|c|`. Also reality and the index flip of the coefficients.

use twisted_eisenstein::cuspform::{eta_product_weight2, gamma0_generators, HalfPlanePoint};
use twisted_eisenstein::eisenstein::{index_flip_residual, modularity_residual, reality_check, EisensteinSpec};
use twisted_eisenstein::PrecisionBudget;

fn main() -> twisted_eisenstein::Result<()> {
    let h = eta_product_weight2(11, 200_000)?;
    let spec = EisensteinSpec::new(11, 4, 1, h)?;
    let budget = PrecisionBudget::with_target(2e-6);
    for g in gamma0_generators(11).iter().filter(|g| g.c != 0) {
        let c = g.c as f64;
        let tau = HalfPlanePoint::new(-g.d as f64 / c, 1.0 / c.abs())?;
        let r = modularity_residual(&spec, g, tau, &budget)?;
        println!("{g:<14} E(i -> {}i): residual {:.2e} (bound {:.2e})", g.a, r.residual, r.error_bound);
    }
    let b = budget.target(1e-6);
    println!("max |Im R_m|, m <= 10: {:.2e}", reality_check(&spec, 10, &b)?.residual);
    println!("index flip, m <= 10:   {:.2e}", index_flip_residual(&spec, 10, &b)?.residual);
    Ok(())
}
