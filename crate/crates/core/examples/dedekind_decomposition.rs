//! `E_{4,i;h}` against its decomposition into character series
//! `sum_j r_{i,j} L(chi_j, 4) E^_{4,chi_j;h}`, untwisted and twisted.

use twisted_eisenstein::arith::{characters_mod, dirichlet_l, gauss_coefficient};
use twisted_eisenstein::cuspform::{eta_product_weight2, FourierSeries, HalfPlanePoint};
use twisted_eisenstein::eisenstein::dedekind_check;
use twisted_eisenstein::PrecisionBudget;

fn main() -> twisted_eisenstein::Result<()> {
    let budget = PrecisionBudget::with_target(1e-7);
    let even: Vec<_> = characters_mod(11).into_iter().filter(|c| !c.is_odd()).collect();
    for chi in &even {
        let l = dirichlet_l(chi, 4, &budget)?;
        println!("chi exponents {:?}: r_1 = {:.6}  L(chi,4) = {:.12}", chi.exponents(), gauss_coefficient(1, chi), l.value);
    }
    let tau = HalfPlanePoint::new(0.2, 1.3)?;
    for (name, h) in [("zero", FourierSeries::zero(11)), ("eta", eta_product_weight2(11, 20_000)?)] {
        for i in [0, 1] {
            let r = dedekind_check(11, 4, i, &h, tau, &budget)?;
            println!("h={name:<4} i={i}: residual {:.2e} (numerical bound {:.2e})", r.residual, r.error_bound);
        }
    }
    Ok(())
}
