//! Real periods of the level-11 newform `h = eta(tau)^2 eta(11 tau)^2` and
//! the scalars `lambda` for which `lambda h` twists trivially.

use twisted_eisenstein::cuspform::eta_product_weight2;
use twisted_eisenstein::jacobian::{is_trivial_twist, trivialization_scalars, Trivialization, TwistPoint};
use twisted_eisenstein::PrecisionBudget;

fn main() -> twisted_eisenstein::Result<()> {
    let h = eta_product_weight2(11, 4000)?;
    let p = TwistPoint::new(h, &PrecisionBudget::with_target(1e-12))?;
    let data = p.periods();
    for ((g, r), e) in data.generators.iter().zip(&data.re_periods).zip(&data.error_bounds) {
        println!("{g:<16} Re H = {r:+.15} +- {e:.1e}");
    }
    println!("h trivial: {}", is_trivial_twist(&p, 1e-9)?.trivial);
    if let Trivialization::Discrete { generator, scalars } = trivialization_scalars(&p, 10.0, 1e-9)? {
        println!("lambda* = {generator:.12}, multiples up to 10: {scalars:.6?}");
        println!("lambda* h trivial: {}", is_trivial_twist(&p.scaled(generator), 1e-9)?.trivial);
        println!("0.37 h trivial: {}", is_trivial_twist(&p.scaled(0.37), 1e-9)?.trivial);
    }
    Ok(())
}
