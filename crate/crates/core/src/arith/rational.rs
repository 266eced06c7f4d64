use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// Exact rationals: reduced, positive denominator.
pub type Rational = BigRational;

pub fn rational_to_f64(r: &Rational) -> f64 {
    // Scale down oversized numerators/denominators before converting.
    match (r.numer().to_f64(), r.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            let shift = r.numer().bits().max(r.denom().bits()).saturating_sub(1000);
            let n = (r.numer() >> shift).to_f64().unwrap_or(f64::NAN);
            let d = (r.denom() >> shift).to_f64().unwrap_or(f64::NAN);
            n / d
        }
    }
}

/// The continued-fraction convergent of `x` with the smallest denominator
/// such that `|x - p/q| < tol` and `q <= max_den`, if there is one.
pub fn rational_reconstruct(x: f64, tol: f64, max_den: u64) -> Option<Rational> {
    if !x.is_finite() || !(tol > 0.0) {
        return None;
    }
    let (mut p_prev, mut p) = (0i128, 1i128);
    let (mut q_prev, mut q) = (1i128, 0i128);
    let mut r = x;
    for _ in 0..80 {
        let a = r.floor();
        if a.abs() > 1e30 {
            return None;
        }
        let a = a as i128;
        let p_next = a.checked_mul(p)?.checked_add(p_prev)?;
        let q_next = a.checked_mul(q)?.checked_add(q_prev)?;
        (p_prev, p) = (p, p_next);
        (q_prev, q) = (q, q_next);
        if q > max_den as i128 {
            return None;
        }
        if (x - p as f64 / q as f64).abs() < tol {
            return Some(BigRational::new(BigInt::from(p), BigInt::from(q)));
        }
        let frac = r - a as f64;
        if frac == 0.0 {
            return None;
        }
        r = 1.0 / frac;
    }
    None
}

fn binomial(n: u64, k: u64) -> BigInt {
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    acc
}

/// Bernoulli number `B_n` with `B_1 = -1/2`.
pub fn bernoulli_number(n: u64) -> Rational {
    let mut b: Vec<Rational> = Vec::with_capacity(n as usize + 1);
    b.push(Rational::one());
    for m in 1..=n {
        // sum_{j=0}^{m} C(m+1, j) B_j = 0
        let mut s = Rational::zero();
        for (j, bj) in b.iter().enumerate() {
            s += Rational::from_integer(binomial(m + 1, j as u64)) * bj;
        }
        b.push(-s / Rational::from_integer(BigInt::from(m + 1)));
    }
    b.pop().unwrap()
}

/// Bernoulli polynomial `B_n(x) = sum_j C(n, j) B_j x^{n-j}`.
pub fn bernoulli_polynomial(n: u64, x: &Rational) -> Rational {
    let mut acc = Rational::zero();
    let mut bs = Vec::with_capacity(n as usize + 1);
    for j in 0..=n {
        bs.push(bernoulli_number(j));
    }
    for (j, bj) in bs.iter().enumerate() {
        let j = j as u64;
        let term = Rational::from_integer(binomial(n, j)) * bj * pow_rational(x, n - j);
        acc += term;
    }
    acc
}

fn pow_rational(x: &Rational, e: u64) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..e {
        acc *= x;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn documented_reconstructions() {
        assert_eq!(rational_reconstruct(0.5, 1e-9, 10), Some(rat(1, 2)));
        assert_eq!(rational_reconstruct(0.333333333, 1e-6, 10), Some(rat(1, 3)));
        assert_eq!(rational_reconstruct(std::f64::consts::PI, 1e-9, 1000), None);
    }

    #[test]
    fn pi_best_error_below_thousand() {
        // Oracle for the pi example: brute-force best approximation with q <= 1000.
        let pi = std::f64::consts::PI;
        let best = (1..=1000)
            .map(|q| ((pi * q as f64).round() / q as f64 - pi).abs())
            .fold(f64::INFINITY, f64::min);
        assert!(best > 1e-9 && best < 3e-7);
        assert_eq!(rational_reconstruct(pi, 3e-7, 1000), Some(rat(355, 113)));
    }

    #[test]
    fn negative_values() {
        assert_eq!(rational_reconstruct(-0.75, 1e-12, 100), Some(rat(-3, 4)));
        assert_eq!(rational_reconstruct(-7.0, 1e-12, 1), Some(rat(-7, 1)));
        assert_eq!(rational_reconstruct(f64::NAN, 1e-12, 1), None);
    }

    #[test]
    fn bernoulli_values() {
        assert_eq!(bernoulli_number(0), rat(1, 1));
        assert_eq!(bernoulli_number(1), rat(-1, 2));
        assert_eq!(bernoulli_number(2), rat(1, 6));
        assert_eq!(bernoulli_number(4), rat(-1, 30));
        assert_eq!(bernoulli_number(5), rat(0, 1));
        assert_eq!(bernoulli_number(12), rat(-691, 2730));
        // B_4(x) = x^4 - 2x^3 + x^2 - 1/30
        let x = rat(3, 11);
        let direct = pow_rational(&x, 4) - rat(2, 1) * pow_rational(&x, 3) + pow_rational(&x, 2)
            - rat(1, 30);
        assert_eq!(bernoulli_polynomial(4, &x), direct);
    }

    proptest! {
        #[test]
        fn idempotent_on_small_rationals(p in -100_000i64..100_000, q in 1i64..1000) {
            let x = p as f64 / q as f64;
            let r = rational_reconstruct(x, 1e-12, 1000).expect("reconstructs");
            prop_assert_eq!(r, rat(p, q));
        }
    }
}
