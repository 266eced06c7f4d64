//! Rationality scan of the quotients `E_{4,i;h} / E_{4,j;h}` at level 11.
//! For `h = 0` every series-quotient coefficient is rational; for `0.37 h_0`
//! the table is only an observation.

use twisted_eisenstein::cuspform::eta_product_weight2;
use twisted_eisenstein::jacobian::{rationality_scan, ScanReport, TwistPoint};
use twisted_eisenstein::PrecisionBudget;

fn summarize(name: &str, r: &ScanReport) {
    let total: usize = r.pairs.iter().map(|p| p.series.len()).sum();
    let rational: usize = r.pairs.iter().flat_map(|p| &p.series).filter(|v| v.verdict.is_rational()).count();
    println!("{name}: {} pairs, {rational}/{total} series coefficients rational", r.pairs.len());
    if let Some(p) = r.pair(1, 2) {
        for v in p.series.iter().take(4) {
            let q = v.rational.as_ref().map_or("-".to_string(), |q| q.to_string());
            println!("  (1,2) m={} {:+.12e} -> {q} [{}]", v.m, v.value.re, v.verdict.tag());
        }
    }
}

fn main() -> twisted_eisenstein::Result<()> {
    let zero = TwistPoint::zero(11)?;
    let r = rationality_scan(&zero, 4, 10, 1_000_000, 1e-11, &PrecisionBudget::with_target(1e-13))?;
    summarize("h = 0", &r);

    let h = eta_product_weight2(11, 60_000)?;
    let p = TwistPoint::new(h, &PrecisionBudget::with_target(1e-12))?.scaled(0.37);
    let r = rationality_scan(&p, 4, 6, 1_000_000, 1e-9, &PrecisionBudget::with_target(1e-7))?;
    summarize("h = 0.37 h_0", &r);
    Ok(())
}
