use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::{Error, Estimate, Result};

use super::HalfPlanePoint;

/// A truncated q-expansion `a_0 + a_1 q + ... + a_N q^N` with per-coefficient
/// error bounds.
#[derive(Clone, Debug, PartialEq)]
pub struct FourierSeries {
    level: u64,
    weight: i64,
    coefficients: Vec<Complex64>,
    error_bounds: Vec<f64>,
    hecke: f64,
    max_error: f64,
}

impl FourierSeries {
    fn raw(level: u64, weight: i64, coefficients: Vec<Complex64>, error_bounds: Vec<f64>) -> Self {
        let half = weight as f64 / 2.0;
        let hecke = coefficients
            .iter()
            .enumerate()
            .skip(1)
            .map(|(n, a)| a.norm() / (n as f64).powf(half))
            .fold(0.0, f64::max);
        let max_error = error_bounds.iter().copied().fold(0.0, f64::max);
        FourierSeries { level, weight, coefficients, error_bounds, hecke, max_error }
    }

    pub fn new(
        level: u64,
        weight: i64,
        coefficients: Vec<Complex64>,
        error_bounds: Vec<f64>,
    ) -> Result<Self> {
        if level == 0 {
            return Err(Error::Invalid("level must be positive".into()));
        }
        if coefficients.len() < 2 {
            return Err(Error::Invalid(
                "a q-expansion needs at least the coefficients a_0 and a_1".into(),
            ));
        }
        if coefficients.len() != error_bounds.len() {
            return Err(Error::Invalid(format!(
                "{} coefficients but {} error bounds",
                coefficients.len(),
                error_bounds.len()
            )));
        }
        if let Some(n) = coefficients.iter().position(|c| !(c.re.is_finite() && c.im.is_finite())) {
            return Err(Error::Invalid(format!("coefficient a_{n} is not finite")));
        }
        if let Some(n) = error_bounds.iter().position(|e| !(e.is_finite() && *e >= 0.0)) {
            return Err(Error::Invalid(format!(
                "error bound of a_{n} must be finite and nonnegative"
            )));
        }
        Ok(Self::raw(level, weight, coefficients, error_bounds))
    }

    /// Same as [`FourierSeries::new`], additionally requiring `a_0 = 0`.
    pub fn cusp_form(
        level: u64,
        weight: i64,
        coefficients: Vec<Complex64>,
        error_bounds: Vec<f64>,
    ) -> Result<Self> {
        let s = Self::new(level, weight, coefficients, error_bounds)?;
        if s.coefficients[0] != Complex64::new(0.0, 0.0) {
            return Err(Error::Invalid(
                "cusp form invariant violated: constant coefficient a_0 must be exactly 0".into(),
            ));
        }
        Ok(s)
    }

    /// Exact real coefficients `a_0, a_1, ...`.
    pub fn from_real(level: u64, weight: i64, coefficients: &[f64]) -> Result<Self> {
        let c = coefficients.iter().map(|&x| Complex64::new(x, 0.0)).collect::<Vec<_>>();
        let e = vec![0.0; c.len()];
        Self::new(level, weight, c, e)
    }

    /// The zero weight-two cusp form of the given level.
    pub fn zero(level: u64) -> Self {
        Self::raw(level, 2, vec![Complex64::new(0.0, 0.0); 2], vec![0.0; 2])
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn weight(&self) -> i64 {
        self.weight
    }

    /// Index `N` of the last stored coefficient.
    pub fn precision(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    pub fn error_bounds(&self) -> &[f64] {
        &self.error_bounds
    }

    pub fn coefficient(&self, n: usize) -> Complex64 {
        self.coefficients[n]
    }

    pub fn max_error_bound(&self) -> f64 {
        self.max_error
    }

    pub fn is_cusp_form(&self) -> bool {
        self.coefficients[0] == Complex64::new(0.0, 0.0)
    }

    /// All coefficients and error bounds exactly zero.
    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(|c| c.re == 0.0 && c.im == 0.0)
            && self.error_bounds.iter().all(|&e| e == 0.0)
    }

    pub fn is_real(&self) -> bool {
        self.coefficients.iter().all(|c| c.im == 0.0)
    }

    /// Empirical constant `C` in `|a_n| <= C n^{k/2}`, the maximum of
    /// `|a_n| / n^{k/2}` over the stored coefficients. Tail estimates built on
    /// it are heuristic rather than theorem-grade.
    pub fn hecke_constant(&self) -> f64 {
        self.hecke
    }

    pub fn scale(&self, lambda: Complex64) -> Self {
        Self::raw(
            self.level,
            self.weight,
            self.coefficients.iter().map(|a| a * lambda).collect(),
            self.error_bounds.iter().map(|e| e * lambda.norm()).collect(),
        )
    }

    pub fn truncate(&self, n: usize) -> Self {
        let keep = (n + 1).clamp(2, self.coefficients.len());
        Self::raw(
            self.level,
            self.weight,
            self.coefficients[..keep].to_vec(),
            self.error_bounds[..keep].to_vec(),
        )
    }

    /// Coefficientwise sum; the result is as long as the shorter input.
    pub fn add(&self, other: &FourierSeries) -> Result<Self> {
        if self.level != other.level || self.weight != other.weight {
            return Err(Error::Invalid("cannot add forms of different level or weight".into()));
        }
        let n = self.coefficients.len().min(other.coefficients.len());
        Self::new(
            self.level,
            self.weight,
            (0..n).map(|j| self.coefficients[j] + other.coefficients[j]).collect(),
            (0..n).map(|j| self.error_bounds[j] + other.error_bounds[j]).collect(),
        )
    }

    /// Cauchy product truncated at the shorter precision.
    pub fn mul(&self, other: &FourierSeries) -> Result<Self> {
        if self.level != other.level {
            return Err(Error::Invalid("cannot multiply forms of different level".into()));
        }
        let n = self.coefficients.len().min(other.coefficients.len());
        let mut c = vec![Complex64::new(0.0, 0.0); n];
        let mut e = vec![0.0; n];
        for i in 0..n {
            for j in 0..n - i {
                c[i + j] += self.coefficients[i] * other.coefficients[j];
                e[i + j] += self.error_bounds[i] * other.coefficients[j].norm()
                    + self.coefficients[i].norm() * other.error_bounds[j]
                    + self.error_bounds[i] * other.error_bounds[j];
            }
        }
        Self::new(self.level, self.weight + other.weight, c, e)
    }

    /// Bound on `C sum_{n > N} n^p r^n` for `0 <= r < 1`, or infinity when
    /// the ratio test does not apply at `N`.
    pub(crate) fn power_tail(c: f64, p: f64, r: f64, n: usize) -> f64 {
        if c == 0.0 {
            return 0.0;
        }
        let n1 = (n + 1) as f64;
        let ratio = ((n1 + 1.0) / n1).powf(p.max(0.0)) * r;
        if ratio >= 1.0 {
            return f64::INFINITY;
        }
        c * n1.powf(p) * r.powf(n1) / (1.0 - ratio)
    }

    /// `sum a_n q^n` at `tau`. Stored terms past the point where
    /// `C sum n^{k/2} |q|^n` drops below `1e-17 C` are skipped; the error bound
    /// covers them, the coefficient errors, an estimate of the unstored tail
    /// from [`FourierSeries::hecke_constant`], and roundoff.
    pub fn evaluate(&self, tau: HalfPlanePoint) -> Estimate {
        let r = (-TAU * tau.y).exp();
        let half = self.weight as f64 / 2.0;
        let n = self.precision();
        let skip_tail = |m: usize| Self::power_tail(1.0, half, r, m);
        let mut used = n;
        if skip_tail(n) < 1e-17 {
            let (mut lo, mut hi) = (0usize, 16usize.min(n));
            while skip_tail(hi) >= 1e-17 {
                lo = hi;
                hi = (2 * hi).min(n);
            }
            while hi - lo > 1 {
                let mid = lo + (hi - lo) / 2;
                if skip_tail(mid) < 1e-17 {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            used = hi;
        }
        let q = Complex64::from_polar(r, TAU * tau.x.rem_euclid(1.0));
        let mut acc = Complex64::new(0.0, 0.0);
        let mut abs = 0.0;
        let mut coeff_err = 0.0;
        for j in (0..=used).rev() {
            acc = acc * q + self.coefficients[j];
            abs = abs * r + self.coefficients[j].norm();
            coeff_err = coeff_err * r + self.error_bounds[j];
        }
        let mut tail = Self::power_tail(self.hecke, half, r, n);
        if used < n {
            tail += Self::power_tail(self.hecke, half, r, used)
                + self.max_error_bound() * r.powi(used as i32 + 1) / (1.0 - r);
        }
        let roundoff = (8.0 + 4.0 * used as f64) * f64::EPSILON * abs;
        Estimate::new(acc, coeff_err + tail + roundoff)
    }
}
