//! The unitary character `gamma -> exp(2 pi i Re H(-d/c))` on `Gamma_0(11)`:
//! multiplicativity on a few products, and independence of the completion.

use twisted_eisenstein::cuspform::{
    completion, eta_product_weight2, gamma0_generators, h_cusp_with_completion, twist_character, GroupElement,
};
use twisted_eisenstein::PrecisionBudget;

fn main() -> twisted_eisenstein::Result<()> {
    let h = eta_product_weight2(11, 20_000)?;
    let budget = PrecisionBudget::with_target(1e-11);
    let gens = gamma0_generators(11);
    for a in &gens {
        for b in &gens[2..] {
            let ab = a.mul(b);
            let lhs = twist_character(&h, &ab, &budget)?;
            let rhs = twist_character(&h, a, &budget)? * twist_character(&h, b, &budget)?;
            println!("chi({a} {b}) vs product: {:.1e}", (lhs - rhs).norm());
        }
    }
    // H(-d/c) does not see which completion of (c, d) is used
    let g = completion(55, 13)?;
    for t in [-2, 0, 5] {
        let gt = GroupElement::new(g.a + t * g.c, g.b + t * g.d, g.c, g.d)?;
        let v = h_cusp_with_completion(&h, &gt, &budget)?;
        println!("completion {gt}: H = {:.12} +- {:.1e}", v.value, v.error_bound);
    }
    Ok(())
}
