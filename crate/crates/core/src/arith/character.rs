use std::f64::consts::TAU;
use std::fmt;

use num_complex::Complex64;
use num_integer::Integer;

use super::{euler_phi, factorize, gcd, mod_inverse};

/// A character of `(Z/lZ)^*`, stored as its value table on residues mod `l`
/// (zero on non-units).
///
/// `exponents` labels the character by the images of the cyclic generators
/// of the unit group: the `j`-th generator `g_j` of order `n_j` is sent to
/// `e^{2 pi i exponents[j] / n_j}`.
#[derive(Clone, PartialEq)]
pub struct DirichletCharacter {
    modulus: u64,
    exponents: Vec<u64>,
    values: Vec<Complex64>,
}

impl fmt::Debug for DirichletCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DirichletCharacter")
            .field("modulus", &self.modulus)
            .field("exponents", &self.exponents)
            .finish()
    }
}

impl DirichletCharacter {
    pub fn trivial(modulus: u64) -> Self {
        assert!(modulus >= 1);
        let values = (0..modulus)
            .map(|d| {
                if gcd(d as i64, modulus as i64) == 1 {
                    Complex64::new(1.0, 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            })
            .collect();
        DirichletCharacter {
            modulus,
            exponents: Vec::new(),
            values,
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    pub fn is_trivial(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }

    /// `chi(d)`, with `d` reduced mod `l`; zero when `gcd(d, l) > 1`.
    #[inline]
    pub fn value(&self, d: i64) -> Complex64 {
        self.values[d.rem_euclid(self.modulus as i64) as usize]
    }

    /// Values on `0..l` (zero on non-units).
    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// `chi^{-1} = conj(chi)`.
    pub fn inverse(&self) -> Self {
        DirichletCharacter {
            modulus: self.modulus,
            exponents: Vec::new(),
            values: self.values.iter().map(|v| v.conj()).collect(),
        }
    }

    /// Pointwise product.
    pub fn mul(&self, other: &DirichletCharacter) -> Self {
        assert_eq!(self.modulus, other.modulus);
        DirichletCharacter {
            modulus: self.modulus,
            exponents: Vec::new(),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a * b)
                .collect(),
        }
    }

    /// Whether `chi(-1) = -1`.
    pub fn is_odd(&self) -> bool {
        self.value(-1).re < 0.0
    }
}

/// Cyclic decomposition of `(Z/lZ)^*`: generators lifted to residues mod `l`
/// and their orders.
struct UnitGroup {
    modulus: u64,
    generators: Vec<u64>,
    orders: Vec<u64>,
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = (r as u128 * b as u128 % m as u128) as u64;
        }
        b = (b as u128 * b as u128 % m as u128) as u64;
        e >>= 1;
    }
    r
}

fn multiplicative_order(a: u64, m: u64) -> u64 {
    let mut x = a % m;
    let mut k = 1;
    while x != 1 % m {
        x = (x as u128 * a as u128 % m as u128) as u64;
        k += 1;
    }
    k
}

/// Smallest primitive root modulo the odd prime power `p^e`.
fn primitive_root_prime_power(p: u64, e: u32) -> u64 {
    let q = p.pow(e);
    let phi = q / p * (p - 1);
    (2..q)
        .find(|&g| g % p != 0 && multiplicative_order(g, q) == phi)
        .unwrap_or(1)
}

impl UnitGroup {
    fn new(l: u64) -> Self {
        let mut local: Vec<(u64, u64, u64)> = Vec::new(); // (prime power, generator, order)
        for (p, e) in factorize(l) {
            let q = p.pow(e);
            if p == 2 {
                match e {
                    1 => {}
                    2 => local.push((q, 3, 2)),
                    _ => {
                        local.push((q, q - 1, 2));
                        local.push((q, 5, q / 4));
                    }
                }
            } else {
                local.push((q, primitive_root_prime_power(p, e), q / p * (p - 1)));
            }
        }
        // Lift each local generator to a residue mod l that is 1 at the other primes.
        let generators = local
            .iter()
            .map(|&(q, g, _)| {
                let rest = l / q;
                // x = g mod q, x = 1 mod rest
                let inv = mod_inverse(rest as i64, q as i64).unwrap_or(0) as u64;
                let t = ((g + q - 1) % q) as u128 * inv as u128 % q as u128;
                ((1 + rest as u128 * t) % l as u128) as u64
            })
            .collect();
        UnitGroup {
            modulus: l,
            generators,
            orders: local.iter().map(|&(_, _, n)| n).collect(),
        }
    }

    /// Exponent vectors for every unit: `table[u] = Some(e)` with
    /// `u = prod g_j^{e_j} mod l`.
    fn discrete_logs(&self) -> Vec<Option<Vec<u64>>> {
        let l = self.modulus;
        let mut table = vec![None; l as usize];
        let total: u64 = self.orders.iter().product();
        let mut exps = vec![0u64; self.orders.len()];
        for _ in 0..total {
            let u = self
                .generators
                .iter()
                .zip(&exps)
                .fold(1 % l, |acc, (&g, &e)| {
                    (acc as u128 * pow_mod(g, e, l) as u128 % l as u128) as u64
                });
            table[u as usize] = Some(exps.clone());
            for (e, &n) in exps.iter_mut().zip(&self.orders) {
                *e += 1;
                if *e < n {
                    break;
                }
                *e = 0;
            }
        }
        if l == 1 {
            table[0] = Some(Vec::new());
        }
        table
    }
}

/// All `phi(l)` characters mod `l`: the trivial character first, then in
/// lexicographic order of their exponent labels.
pub fn characters_mod(l: u64) -> Vec<DirichletCharacter> {
    assert!(l >= 1, "modulus must be positive");
    let group = UnitGroup::new(l);
    let logs = group.discrete_logs();
    let exponent = group.orders.iter().fold(1u64, |a, &n| a.lcm(&n));
    let count = euler_phi(l);

    let mut labels: Vec<Vec<u64>> = Vec::with_capacity(count as usize);
    let mut t = vec![0u64; group.orders.len()];
    for _ in 0..count {
        labels.push(t.clone());
        // Lexicographic: last coordinate varies fastest.
        for j in (0..t.len()).rev() {
            t[j] += 1;
            if t[j] < group.orders[j] {
                break;
            }
            t[j] = 0;
        }
    }

    labels
        .into_iter()
        .map(|label| {
            let values = logs
                .iter()
                .map(|log| match log {
                    None => Complex64::new(0.0, 0.0),
                    Some(e) => {
                        let num = label
                            .iter()
                            .zip(e)
                            .zip(&group.orders)
                            .map(|((&t, &e), &n)| t * e % n * (exponent / n))
                            .sum::<u64>()
                            % exponent;
                        Complex64::from_polar(1.0, TAU * num as f64 / exponent as f64)
                    }
                })
                .collect();
            DirichletCharacter {
                modulus: l,
                exponents: label,
                values,
            }
        })
        .collect()
}

/// `r_{i,chi} = (1/phi(l)) sum_{t unit} e^{-2 pi i t i / l} conj(chi(t))`, the
/// coefficient of `chi` in the expansion of `d -> e^{-2 pi i d i / l}` on
/// units.
pub fn gauss_coefficient(i: i64, chi: &DirichletCharacter) -> Complex64 {
    let l = chi.modulus() as i64;
    let mut acc = Complex64::new(0.0, 0.0);
    for t in 0..l {
        let v = chi.value(t);
        if v == Complex64::new(0.0, 0.0) {
            continue;
        }
        let angle = -TAU * ((t * i).rem_euclid(l)) as f64 / l as f64;
        acc += Complex64::from_polar(1.0, angle) * v.conj();
    }
    acc / euler_phi(l as u64) as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() < tol
    }

    #[test]
    fn trivial_group() {
        let chars = characters_mod(1);
        assert_eq!(chars.len(), 1);
        assert!(chars[0].is_trivial());
        assert_eq!(chars[0].value(0), Complex64::new(1.0, 0.0));
        assert_eq!(chars[0].value(17), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn modulus_four() {
        let chars = characters_mod(4);
        assert_eq!(chars.len(), 2);
        assert!(chars[0].is_trivial());
        assert!(close(chars[1].value(3), Complex64::new(-1.0, 0.0), 1e-15));
        assert!(chars[1].is_odd());
    }

    #[test]
    fn modulus_eleven_is_cyclic_generated_by_two() {
        // brute force: powers of 2 exhaust the units mod 11
        let mut seen: Vec<i64> = (0..10).map(|e| pow_mod(2, e, 11) as i64).collect();
        seen.sort();
        assert_eq!(seen, (1..=10).collect::<Vec<_>>());

        let chars = characters_mod(11);
        assert_eq!(chars.len(), 10);
        let zeta10 = Complex64::from_polar(1.0, TAU / 10.0);
        assert!(chars.iter().any(|c| close(c.value(2), zeta10, 1e-14)));
        // chars[1] is the generator of the character group
        let gen = &chars[1];
        for (e, c) in chars.iter().enumerate() {
            for d in 1..11 {
                assert!(close(c.value(d), gen.value(d).powu(e as u32), 1e-12));
            }
        }
    }

    #[test]
    fn full_set_properties_up_to_thirty() {
        for l in 1..=30u64 {
            let chars = characters_mod(l);
            let phi = euler_phi(l) as usize;
            assert_eq!(chars.len(), phi, "l={l}");
            for chi in &chars {
                assert!(close(chi.value(1), Complex64::new(1.0, 0.0), 1e-12));
                for a in 0..l as i64 {
                    let va = chi.value(a);
                    if gcd(a, l as i64) == 1 {
                        assert!((va.norm() - 1.0).abs() < 1e-12);
                    } else {
                        assert_eq!(va, Complex64::new(0.0, 0.0));
                    }
                    for b in 0..l as i64 {
                        let lhs = chi.value(a * b);
                        assert!(close(lhs, va * chi.value(b), 1e-12), "l={l} a={a} b={b}");
                    }
                }
            }
            // orthogonality
            for (ia, ca) in chars.iter().enumerate() {
                for (ib, cb) in chars.iter().enumerate() {
                    let s: Complex64 = (0..l as i64)
                        .map(|t| ca.value(t) * cb.value(t).conj())
                        .sum::<Complex64>()
                        / phi as f64;
                    let expected = if ia == ib { 1.0 } else { 0.0 };
                    assert!(close(s, Complex64::new(expected, 0.0), 1e-10), "l={l}");
                }
            }
            // closed under products: each product equals some member
            for ca in &chars {
                for cb in &chars {
                    let p = ca.mul(cb);
                    assert!(chars.iter().any(|c| {
                        (0..l as i64).all(|t| close(c.value(t), p.value(t), 1e-10))
                    }));
                }
            }
        }
    }

    #[test]
    fn deterministic_order() {
        assert_eq!(characters_mod(24), characters_mod(24));
        let labels: Vec<_> = characters_mod(15)
            .iter()
            .map(|c| c.exponents().to_vec())
            .collect();
        let mut sorted = labels.clone();
        sorted.sort();
        assert_eq!(labels, sorted);
    }

    #[test]
    fn gauss_coefficients_documented_values() {
        let triv = DirichletCharacter::trivial(11);
        assert!(close(gauss_coefficient(0, &triv), Complex64::new(1.0, 0.0), 1e-14));
        assert!(close(gauss_coefficient(1, &triv), Complex64::new(-0.1, 0.0), 1e-14));
        let triv1 = DirichletCharacter::trivial(1);
        assert!(close(gauss_coefficient(0, &triv1), Complex64::new(1.0, 0.0), 1e-15));
    }

    #[test]
    fn fourier_inversion_on_units() {
        for l in 1..=30u64 {
            let chars = characters_mod(l);
            for i in 0..l as i64 {
                let r: Vec<Complex64> = chars.iter().map(|c| gauss_coefficient(i, c)).collect();
                for d in 0..l as i64 {
                    if gcd(d, l as i64) != 1 {
                        continue;
                    }
                    let lhs: Complex64 = chars.iter().zip(&r).map(|(c, r)| c.value(d) * r).sum();
                    let rhs = Complex64::from_polar(
                        1.0,
                        -TAU * ((d * i).rem_euclid(l as i64)) as f64 / l as f64,
                    );
                    assert!(close(lhs, rhs, 1e-10), "l={l} i={i} d={d}");
                }
            }
        }
    }
}
