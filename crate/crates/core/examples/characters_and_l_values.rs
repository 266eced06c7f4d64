//! Dirichlet characters modulo 11, their L-values at `s = 4`, and rational
//! reconstruction of `L(1, 4) = pi^4/90` scaled back to a fraction.

use std::f64::consts::PI;

use twisted_eisenstein::arith::{characters_mod, dirichlet_l, rational_reconstruct};
use twisted_eisenstein::PrecisionBudget;

fn main() -> twisted_eisenstein::Result<()> {
    let budget = PrecisionBudget::with_target(1e-13);
    for chi in characters_mod(11) {
        let l = dirichlet_l(&chi, 4, &budget)?;
        println!("{:?} odd={:<5} L(chi,4) = {:.13}", chi.exponents(), chi.is_odd(), l.value);
    }
    let zeta4 = dirichlet_l(&characters_mod(1)[0], 4, &budget)?.value.re;
    println!("zeta(4)/pi^4 = {:?}", rational_reconstruct(zeta4 / PI.powi(4), 1e-12, 1000));
    Ok(())
}
