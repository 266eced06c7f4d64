use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{bernoulli_polynomial, divisors, mobius, ramanujan_sum, Rational};
use crate::Result;

use super::check_weight;

fn factorial(n: i64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, j| acc * BigInt::from(j))
}

/// `sum_{r | m} r^{k-1} (c_l(i - r) + (-1)^k c_l(i + r))` with `c_l` the
/// Ramanujan sum.
pub fn untwisted_exact_integer(l: u64, k: i64, i: i64, m: u64) -> Result<BigInt> {
    check_weight(k)?;
    let sign = if k % 2 == 0 { 1 } else { -1 };
    let mut s = BigInt::zero();
    for r in divisors(m) {
        let ri = r as i64;
        let c = ramanujan_sum(l, i - ri) + sign * ramanujan_sum(l, i + ri);
        s += BigInt::from(r).pow((k - 1) as u32) * BigInt::from(c);
    }
    Ok(s)
}

/// Exact `(2 pi i)^{-k} R_m` of `E_{k,i;0}` for `m >= 1`: the integer of
/// [`untwisted_exact_integer`] times `(-1)^k / (l^k (k-1)!)`.
pub fn untwisted_exact(l: u64, k: i64, i: i64, m: u64) -> Result<Rational> {
    let s = untwisted_exact_integer(l, k, i, m)?;
    let den = BigInt::from(l).pow(k as u32) * factorial(k - 1);
    let v = Rational::new(s, den);
    Ok(if k % 2 == 0 { v } else { -v })
}

/// Exact `(2 pi i)^{-k} R_0 = -(1/k!) sum_{e | l} mu(e) e^{-k} B_k({-e i / l})`.
pub fn untwisted_constant_exact(l: u64, k: i64, i: i64) -> Result<Rational> {
    check_weight(k)?;
    let mut acc = Rational::zero();
    for e in divisors(l) {
        let mu = mobius(e);
        if mu == 0 {
            continue;
        }
        let x = Rational::new(
            BigInt::from((-(e as i64) * i).rem_euclid(l as i64)),
            BigInt::from(l),
        );
        let b = bernoulli_polynomial(k as u64, &x);
        acc += b * Rational::new(BigInt::from(mu), BigInt::from(e).pow(k as u32));
    }
    Ok(-acc / Rational::from_integer(factorial(k)))
}

/// Exact normalized coefficients `m = 0..=n` of `E_{k,i;0}`.
pub fn untwisted_series(l: u64, k: i64, i: i64, n: u64) -> Result<Vec<Rational>> {
    let mut out = vec![untwisted_constant_exact(l, k, i)?];
    for m in 1..=n {
        out.push(untwisted_exact(l, k, i, m)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational_to_f64;
    use crate::Error;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn documented_values() {
        assert_eq!(untwisted_exact_integer(11, 4, 1, 1).unwrap(), BigInt::from(9));
        assert_eq!(untwisted_exact(11, 4, 1, 1).unwrap(), q(3, 29282));
        assert_eq!(untwisted_exact_integer(1, 4, 0, 1).unwrap(), BigInt::from(2));
        assert_eq!(untwisted_exact_integer(11, 3, 0, 1).unwrap(), BigInt::zero());
        assert_eq!(untwisted_constant_exact(1, 4, 0).unwrap(), q(1, 720));
        assert!(matches!(untwisted_exact(11, 2, 1, 1), Err(Error::UnsupportedWeight(2))));
    }

    #[test]
    fn level_one_is_the_classical_series() {
        // (2 pi i)^{-k} 2 zeta(k) E_k has coefficients 2 sigma_{k-1}(m) / (k-1)!
        // up to sign, and constant -B_k / k!
        for k in [4i64, 6, 8] {
            let c0 = untwisted_constant_exact(1, k, 0).unwrap();
            assert_eq!(c0, -crate::arith::bernoulli_number(k as u64) / Rational::from_integer(factorial(k)));
            for m in 1..12u64 {
                let sigma: u64 = divisors(m).iter().map(|r| r.pow(k as u32 - 1)).sum();
                let expected = Rational::new(BigInt::from(2 * sigma), factorial(k - 1));
                assert_eq!(untwisted_exact(1, k, 0, m).unwrap(), expected);
            }
        }
    }

    #[test]
    fn constant_term_matches_direct_sum() {
        // (2 pi i)^{-k} sum_{d != 0, (d, l) = 1} d^{-k} e^{-2 pi i d i / l}
        use num_complex::Complex64;
        use std::f64::consts::TAU;
        for (l, k, i) in [(11u64, 4i64, 1i64), (11, 3, 1), (4, 5, 1), (6, 4, 5), (1, 3, 0)] {
            let mut s = Complex64::new(0.0, 0.0);
            for d in (1..200_000i64).rev() {
                if crate::arith::gcd(d, l as i64) != 1 {
                    continue;
                }
                let e = Complex64::from_polar(1.0, -TAU * ((d * i).rem_euclid(l as i64)) as f64 / l as f64);
                s += (e + e.conj() * if k % 2 == 0 { 1.0 } else { -1.0 }) * (d as f64).powi(-(k as i32));
            }
            let norm = Complex64::new(0.0, TAU).powi(-(k as i32));
            let v = s * norm;
            let exact = rational_to_f64(&untwisted_constant_exact(l, k, i).unwrap());
            assert!((v.re - exact).abs() < 1e-10 && v.im.abs() < 1e-10, "{l} {k} {i}: {v} vs {exact}");
        }
    }
}
