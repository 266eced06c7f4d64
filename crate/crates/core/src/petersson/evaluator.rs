use std::collections::HashMap;
use std::f64::consts::{PI, TAU};
use std::sync::{Arc, RwLock};

use num_complex::Complex64;

use crate::arith::{factorize, gcd, mod_inverse};
use crate::cuspform::{FourierSeries, GroupElement, HalfPlanePoint};
use crate::{Error, Estimate, Result};

/// A modular form of weight `k` for `Gamma_1(l)` that can be evaluated after
/// slashing by any element of `SL_2(Z)`.
pub trait SlashEvaluator: Send + Sync {
    fn level(&self) -> u64;
    fn weight(&self) -> i64;
    /// `(f|g)(tau) = f(g tau) (c tau + d)^{-k}`.
    fn slash(&self, g: &GroupElement, tau: HalfPlanePoint) -> Result<Estimate>;
}

/// The zero form.
#[derive(Clone, Copy, Debug)]
pub struct ZeroEvaluator {
    pub level: u64,
    pub weight: i64,
}

impl SlashEvaluator for ZeroEvaluator {
    fn level(&self) -> u64 {
        self.level
    }

    fn weight(&self) -> i64 {
        self.weight
    }

    fn slash(&self, _: &GroupElement, _: HalfPlanePoint) -> Result<Estimate> {
        Ok(Estimate::exact(Complex64::new(0.0, 0.0)))
    }
}

/// `sum_{n >= 0} (a + n)^{-s}` for `a > 0`, `s >= 2`, by forty terms and
/// Euler-Maclaurin through the sixth derivative.
fn hurwitz_zeta(s: i64, a: f64) -> f64 {
    let n = 40;
    let mut acc = 0.0;
    for j in (0..n).rev() {
        acc += (a + j as f64).powi(-s as i32);
    }
    let x = a + n as f64;
    let s_f = s as f64;
    acc + x.powf(1.0 - s_f) / (s_f - 1.0) + 0.5 * x.powi(-s as i32) + s_f * x.powi(-(s as i32) - 1) / 12.0
        - s_f * (s_f + 1.0) * (s_f + 2.0) * x.powi(-(s as i32) - 3) / 720.0
        + s_f * (s_f + 1.0) * (s_f + 2.0) * (s_f + 3.0) * (s_f + 4.0) * x.powi(-(s as i32) - 5) / 30240.0
}

/// Expansion of `E|g` in `q_l = e^{2 pi i tau / l}` for one class of `g` mod `l`.
struct CuspExpansion {
    constant: Complex64,
    coefficients: Vec<Complex64>,
    /// `|c_n| <= bound n^{k-1}`
    bound: f64,
}

/// The untwisted series `E_{k,i;0}`: the lattice sum with weight
/// `e^{-2 pi i d i / l}` over `c` in `lZ`, `gcd(d, l) = 1`. After slashing by
/// `g` it is again a lattice sum with a weight periodic mod `l`, whose
/// expansion at infinity follows from the Lipschitz formula.
pub struct UntwistedEisenstein {
    level: u64,
    weight: i64,
    index: i64,
    y_floor: f64,
    cache: RwLock<HashMap<[i64; 4], Arc<CuspExpansion>>>,
}

impl UntwistedEisenstein {
    /// Evaluations are accurate to about `1e-15` relative for `Im tau >= y_floor`.
    pub fn new(level: u64, weight: i64, index: i64, y_floor: f64) -> Result<Self> {
        crate::eisenstein::check_weight(weight)?;
        if level == 0 {
            return Err(Error::Invalid("level must be positive".into()));
        }
        if !(y_floor > 0.0) {
            return Err(Error::Invalid(format!("y_floor must be positive, got {y_floor}")));
        }
        Ok(UntwistedEisenstein {
            level,
            weight,
            index: index.rem_euclid(level as i64),
            y_floor,
            cache: RwLock::new(HashMap::new()),
        })
    }

    /// Floor `1/2`, below every point of the standard fundamental domain.
    pub fn standard(level: u64, weight: i64, index: i64) -> Result<Self> {
        Self::new(level, weight, index, 0.5)
    }

    fn expansion(&self, g: &GroupElement) -> Arc<CuspExpansion> {
        let li = self.level as i64;
        let key = [g.a.rem_euclid(li), g.b.rem_euclid(li), g.c.rem_euclid(li), g.d.rem_euclid(li)];
        if let Some(e) = self.cache.read().unwrap().get(&key) {
            return e.clone();
        }
        let e = Arc::new(self.build(key));
        self.cache.write().unwrap().entry(key).or_insert(e).clone()
    }

    fn build(&self, [a, b, c, d]: [i64; 4]) -> CuspExpansion {
        let l = self.level as usize;
        let li = self.level as i64;
        let k = self.weight;
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        // weight of (C, D) = weight of (C, D) g^{-1} = (C d - D c, -C b + D a)
        let phi = |cc: i64, dd: i64| -> Complex64 {
            let u = (cc * d - dd * c).rem_euclid(li);
            let v = (-cc * b + dd * a).rem_euclid(li);
            if u != 0 || gcd(v, li) != 1 {
                return Complex64::new(0.0, 0.0);
            }
            Complex64::from_polar(1.0, -TAU * ((v * self.index) % li) as f64 / li as f64)
        };
        let lk = (li as f64).powi(-(k as i32));
        let mut constant = phi(0, 0) * (1.0 + sign) * hurwitz_zeta(k, 1.0) * lk;
        for d0 in 1..li {
            let t = d0 as f64 / li as f64;
            constant += phi(0, d0) * (hurwitz_zeta(k, t) + sign * hurwitz_zeta(k, 1.0 - t)) * lk;
        }
        // psi^(C, m) = sum_{D mod l} (phi(C, D) + (-1)^k phi(-C, -D)) e^{2 pi i m D / l}
        let mut psi_hat = vec![Complex64::new(0.0, 0.0); l * l];
        for cc in 0..li {
            for m in 0..li {
                let mut s = Complex64::new(0.0, 0.0);
                for dd in 0..li {
                    let e = Complex64::from_polar(1.0, TAU * ((m * dd) % li) as f64 / li as f64);
                    s += (phi(cc, dd) + sign * phi(-cc, -dd)) * e;
                }
                psi_hat[cc as usize * l + m as usize] = s;
            }
        }
        // (-2 pi i)^k / ((k-1)! l^k)
        let fact: f64 = (1..k).map(|j| j as f64).product();
        let pref = Complex64::new(0.0, -TAU).powi(k as i32) * lk / fact;
        let bound = pref.norm() * 2.0 * li as f64 * hurwitz_zeta(k - 1, 1.0);
        let r = (-TAU * self.y_floor / li as f64).exp();
        let mut n_max = 16;
        while FourierSeries::power_tail(bound, (k - 1) as f64, r, n_max) > 1e-16 {
            n_max += 16;
        }
        let mut coefficients = vec![Complex64::new(0.0, 0.0); n_max + 1];
        for cc in 1..=n_max {
            for m in 1..=n_max / cc {
                coefficients[cc * m] +=
                    psi_hat[(cc % l) * l + m % l] * (m as f64).powi(k as i32 - 1);
            }
        }
        for c in coefficients.iter_mut() {
            *c *= pref;
        }
        CuspExpansion { constant, coefficients, bound }
    }
}

impl SlashEvaluator for UntwistedEisenstein {
    fn level(&self) -> u64 {
        self.level
    }

    fn weight(&self) -> i64 {
        self.weight
    }

    fn slash(&self, g: &GroupElement, tau: HalfPlanePoint) -> Result<Estimate> {
        if tau.y < self.y_floor {
            return Err(Error::Invalid(format!(
                "Im tau = {} is below the evaluator's floor {}",
                tau.y, self.y_floor
            )));
        }
        let e = self.expansion(g);
        let l = self.level as f64;
        let q = Complex64::from_polar((-TAU * tau.y / l).exp(), TAU * (tau.x / l).rem_euclid(1.0));
        let r = q.norm();
        let p = (self.weight - 1) as f64;
        let mut n = 16.min(e.coefficients.len() - 1);
        while n < e.coefficients.len() - 1 && FourierSeries::power_tail(e.bound, p, r, n) > 1e-17 * e.bound {
            n = (n + 16).min(e.coefficients.len() - 1);
        }
        let mut acc = Complex64::new(0.0, 0.0);
        let mut abs = 0.0;
        for c in e.coefficients[1..=n].iter().rev() {
            acc = (acc + c) * q;
            abs = (abs + c.norm()) * r;
        }
        let tail = FourierSeries::power_tail(e.bound, p, r, n);
        let roundoff = 8.0 * n as f64 * f64::EPSILON * (abs + e.constant.norm());
        Ok(Estimate::new(e.constant + acc, tail + roundoff + 1e-15 * e.constant.norm()))
    }
}

/// A cusp form on `Gamma_0(l)` with trivial character, `l` prime or 1, given
/// by its q-expansion. Slashing by `g` outside `Gamma_0(l)` goes through the
/// Fricke involution, whose eigenvalue is measured at construction.
pub struct CuspFormEvaluator {
    form: FourierSeries,
    fricke: f64,
}

impl CuspFormEvaluator {
    pub fn new(form: FourierSeries) -> Result<Self> {
        if !form.is_cusp_form() {
            return Err(Error::Invalid("the form must have a_0 = 0".into()));
        }
        let l = form.level();
        let k = form.weight();
        if k % 2 != 0 || k <= 0 {
            return Err(Error::Invalid(format!("cusp forms with trivial character need even positive weight, got {k}")));
        }
        let f = factorize(l);
        if l != 1 && !(f.len() == 1 && f[0].1 == 1) {
            return Err(Error::Invalid(format!(
                "cusp-form evaluation is implemented for prime levels (two cusps), got {l}"
            )));
        }
        // points of Im >= sqrt(3)/(2l) need about this many terms
        let r = (-PI * 3f64.sqrt() / l as f64).exp();
        let c = form.hecke_constant();
        let mut n = 16;
        while n < form.precision() && FourierSeries::power_tail(c, k as f64 / 2.0, r, n) > 1e-16 {
            n += 16;
        }
        let form = form.truncate(n.min(form.precision()));
        let fricke = if l == 1 { 1.0 } else { Self::measure_fricke(&form)? };
        Ok(CuspFormEvaluator { form, fricke })
    }

    /// `g(-1/(l z)) = eps l^{k/2} z^k g(z)` at points near the fixed point
    /// `i / sqrt(l)`; `eps` must come out as `+-1`.
    fn measure_fricke(form: &FourierSeries) -> Result<f64> {
        let l = form.level() as f64;
        let k = form.weight() as i32;
        let mut best: Option<(f64, Complex64)> = None;
        for x in [0.05, 0.13, 0.21, 0.29] {
            let z = Complex64::new(x, 1.0 / l.sqrt());
            let gz = form.evaluate(HalfPlanePoint::from_complex(z)?);
            let wz = -(z * l).inv();
            let gw = form.evaluate(HalfPlanePoint::from_complex(wz)?);
            let eps = gw.value / (gz.value * l.powf(k as f64 / 2.0) * z.powi(k));
            if best.map_or(true, |(m, _)| gz.value.norm() > m) {
                best = Some((gz.value.norm(), eps));
            }
        }
        let (mag, eps) = best.unwrap();
        let rounded = eps.re.signum();
        if mag == 0.0 || (eps - rounded).norm() > 1e-6 {
            return Err(Error::Invalid(format!(
                "the form is not a Fricke eigenform to 1e-6 (measured ratio {eps})"
            )));
        }
        Ok(rounded)
    }

    pub fn fricke_eigenvalue(&self) -> f64 {
        self.fricke
    }

    pub fn form(&self) -> &FourierSeries {
        &self.form
    }
}

impl SlashEvaluator for CuspFormEvaluator {
    fn level(&self) -> u64 {
        self.form.level()
    }

    fn weight(&self) -> i64 {
        self.form.weight()
    }

    fn slash(&self, g: &GroupElement, tau: HalfPlanePoint) -> Result<Estimate> {
        let l = self.form.level() as i64;
        if g.c % l == 0 {
            return Ok(self.form.evaluate(tau));
        }
        // g = m S T^j with m in Gamma_0(l) when l | c j - d, and
        // g|S (tau) = eps l^{-k/2} g(tau / l)
        let j = (g.d * mod_inverse(g.c.rem_euclid(l), l).expect("c is a unit mod a prime")).rem_euclid(l);
        let z = HalfPlanePoint::new((tau.x + j as f64) / l as f64, tau.y / l as f64)?;
        let s = self.fricke * (l as f64).powf(-(self.form.weight() as f64) / 2.0);
        let e = self.form.evaluate(z);
        Ok(Estimate::new(e.value * s, e.error_bound * s.abs()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cuspform::{gamma1_cosets, weight4_level11_square};
    use crate::eisenstein::{eval_direct, EisensteinSpec};
    use crate::PrecisionBudget;

    #[test]
    fn hurwitz_values() {
        assert!((hurwitz_zeta(2, 1.0) - PI * PI / 6.0).abs() < 1e-15);
        assert!((hurwitz_zeta(4, 1.0) - PI.powi(4) / 90.0).abs() < 1e-15);
        // zeta(3, 1/2) = 7 zeta(3)
        assert!((hurwitz_zeta(3, 0.5) - 7.0 * 1.2020569031595942).abs() < 1e-13);
    }

    /// `(E|g)(tau)` against the lattice sum at `g tau` times `(c tau + d)^{-k}`.
    #[test]
    fn slash_matches_direct_sum() {
        let b = PrecisionBudget::with_target(1e-7);
        let tau = HalfPlanePoint::new(0.1, 1.2).unwrap();
        for (l, k, i) in [(1u64, 4i64, 0i64), (11, 4, 1), (11, 5, 2), (11, 4, 0)] {
            let e = UntwistedEisenstein::standard(l, k, i).unwrap();
            let spec = EisensteinSpec::untwisted(l, k, i).unwrap();
            for g in gamma1_cosets(l).iter().step_by(17).take(4) {
                let gt = g.act(tau);
                if gt.y < 0.5 {
                    continue;
                }
                let want = eval_direct(&spec, gt, &b).unwrap().value * g.automorphy(tau.to_complex()).powi(-(k as i32));
                let got = e.slash(g, tau).unwrap();
                assert!((got.value - want).norm() < 1e-6, "l={l} k={k} i={i} g={g:?}: {} vs {want}", got.value);
                assert!(got.error_bound < 1e-12);
            }
        }
    }

    #[test]
    fn slash_is_consistent_along_gamma1() {
        let e = UntwistedEisenstein::standard(11, 4, 1).unwrap();
        let tau = HalfPlanePoint::new(0.2, 0.9).unwrap();
        let m = GroupElement::gamma1(23, 2, 11, 1, 11).unwrap();
        let s = GroupElement::S;
        // (E|m s)(tau) = (E|s)(tau) for m in Gamma_1(11)
        let a = e.slash(&m.mul(&s), tau).unwrap().value;
        let b = e.slash(&s, tau).unwrap().value;
        assert!((a - b).norm() < 1e-12 * b.norm().max(1.0));
        assert!(e.slash(&s, HalfPlanePoint::new(0.0, 0.1).unwrap()).is_err());
    }

    #[test]
    fn square_of_newform_is_fricke_even() {
        let g = CuspFormEvaluator::new(weight4_level11_square(300).unwrap()).unwrap();
        assert_eq!(g.fricke_eigenvalue(), 1.0);
        assert!(g.form().precision() < 300);
        // g|S(tau) = g(-1/tau) tau^{-4}, evaluated where both sides converge
        let tau = HalfPlanePoint::new(0.1, 1.0).unwrap();
        let s = GroupElement::S;
        let direct = g.form().evaluate(s.act(tau)).value * s.automorphy(tau.to_complex()).powi(-4);
        let via = g.slash(&s, tau).unwrap().value;
        assert!((direct - via).norm() < 1e-10 * via.norm(), "{direct} {via}");
    }

    #[test]
    fn rejects_unsupported_forms() {
        let g = weight4_level11_square(40).unwrap();
        let odd = FourierSeries::cusp_form(11, 3, g.coefficients().to_vec(), g.error_bounds().to_vec()).unwrap();
        assert!(CuspFormEvaluator::new(odd).is_err());
        let composite = FourierSeries::cusp_form(14, 4, g.coefficients().to_vec(), g.error_bounds().to_vec()).unwrap();
        assert!(CuspFormEvaluator::new(composite).is_err());
        // perturbing one coefficient destroys the Fricke symmetry
        let mut a = g.coefficients().to_vec();
        a[2] += 0.5;
        let bent = FourierSeries::cusp_form(11, 4, a, g.error_bounds().to_vec()).unwrap();
        assert!(matches!(CuspFormEvaluator::new(bent), Err(Error::Invalid(_))));
    }
}
