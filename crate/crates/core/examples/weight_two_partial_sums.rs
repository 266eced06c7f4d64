//! Experimental: weight-two coefficient sums regrouped by `c`-shells. The
//! lattice sum does not converge absolutely at `k = 2`, so these partial
//! sums come without error bounds; watch whether they settle. Without a
//! twist only shells with `c/11` dividing `m` contribute.

use twisted_eisenstein::cuspform::{eta_product_weight2, FourierSeries};
use twisted_eisenstein::eisenstein::weight2_partial_sums;
use twisted_eisenstein::PrecisionBudget;

fn main() -> twisted_eisenstein::Result<()> {
    let cutoffs = [10, 40, 160, 640];
    let budget = PrecisionBudget::default();
    for (name, h) in [("zero", FourierSeries::zero(11)), ("eta", eta_product_weight2(11, 60_000)?)] {
        for m in 1..=3 {
            let sums = weight2_partial_sums(&h, 11, 1, m, &cutoffs, &budget)?;
            let shown: Vec<String> = sums.iter().map(|s| format!("{:+.9}", s.re)).collect();
            println!("h={name:<4} m={m}: {}", shown.join("  "));
        }
    }
    Ok(())
}
