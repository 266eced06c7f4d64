//! Normalized coefficients of the untwisted series `E_{4,i;0}` on
//! `Gamma_1(11)`: exact rationals next to the numeric lattice pipeline.

use twisted_eisenstein::arith::rational_to_f64;
use twisted_eisenstein::eisenstein::{fourier_coeffs, untwisted_series, EisensteinSpec};
use twisted_eisenstein::PrecisionBudget;

fn main() -> twisted_eisenstein::Result<()> {
    let budget = PrecisionBudget::with_target(1e-12);
    for i in 0..3 {
        let exact = untwisted_series(11, 4, i, 6)?;
        let numeric = fourier_coeffs(&EisensteinSpec::untwisted(11, 4, i)?, 6, &budget)?;
        println!("E_{{4,{i};0}}");
        for (m, q) in exact.iter().enumerate() {
            let diff = (numeric.coefficient(m).re - rational_to_f64(q)).abs();
            println!("  m={m:<2} {q:>24}  numeric {:+.15e}  |diff| {diff:.1e}", numeric.coefficient(m).re);
        }
    }
    // level one recovers the classical E_4: 1/720 + q/6 + ...
    let e4 = untwisted_series(1, 4, 0, 2)?;
    println!("level 1: {} {} {}", e4[0], e4[1], e4[2]);
    Ok(())
}
