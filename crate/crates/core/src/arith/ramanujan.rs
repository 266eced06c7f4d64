use super::{divisors, gcd, mobius};

/// Ramanujan sum `c_l(s) = sum over units j mod l of e^{2 pi i j s / l}`,
/// evaluated exactly as `sum_{d | gcd(l, s)} mu(l/d) d`.
pub fn ramanujan_sum(l: u64, s: i64) -> i64 {
    assert!(l >= 1, "modulus must be positive");
    let g = gcd(l as i64, s) as u64;
    divisors(g)
        .into_iter()
        .map(|d| mobius(l / d) * d as i64)
        .sum()
}
