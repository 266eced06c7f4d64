//! Compensated (Neumaier) summation.
//!
//! Every sum in this crate that can accumulate more than about 10^4 terms
//! goes through these accumulators so the stated error bounds only need a
//! few-ulp roundoff allowance instead of one proportional to the term count.

use num_complex::Complex64;

#[derive(Clone, Copy, Debug, Default)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

impl Extend<f64> for CompensatedSum {
    fn extend<I: IntoIterator<Item = f64>>(&mut self, iter: I) {
        for x in iter {
            self.add(x);
        }
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = CompensatedSum::new();
        s.extend(iter);
        s
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct ComplexSum {
    re: CompensatedSum,
    im: CompensatedSum,
}

impl ComplexSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    pub fn merge(&mut self, other: &ComplexSum) {
        self.add(Complex64::new(other.re.sum, other.im.sum));
        self.add(Complex64::new(other.re.compensation, other.im.compensation));
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}

impl Extend<Complex64> for ComplexSum {
    fn extend<I: IntoIterator<Item = Complex64>>(&mut self, iter: I) {
        for z in iter {
            self.add(z);
        }
    }
}

impl FromIterator<Complex64> for ComplexSum {
    fn from_iter<I: IntoIterator<Item = Complex64>>(iter: I) -> Self {
        let mut s = ComplexSum::new();
        s.extend(iter);
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_cancelled_small_terms() {
        let terms = [1e16, 1.0, -1e16, 1.0];
        let naive: f64 = terms.iter().sum();
        let compensated: CompensatedSum = terms.iter().copied().collect();
        assert_eq!(compensated.value(), 2.0);
        assert_ne!(naive, 2.0);
    }

    #[test]
    fn harmonic_partial_sum_matches_reverse_order() {
        let n = 1_000_000u32;
        let forward: CompensatedSum = (1..=n).map(|k| 1.0 / k as f64).collect();
        let backward: f64 = (1..=n).rev().map(|k| 1.0 / k as f64).sum();
        assert!((forward.value() - backward).abs() < 1e-13);
    }

    #[test]
    fn complex_merge_keeps_compensation() {
        let mut a = ComplexSum::new();
        a.add(Complex64::new(1e16, -1e16));
        a.add(Complex64::new(1.0, 1.0));
        let mut b = ComplexSum::new();
        b.add(Complex64::new(-1e16, 1e16));
        b.add(Complex64::new(1.0, 1.0));
        a.merge(&b);
        assert_eq!(a.value(), Complex64::new(2.0, 2.0));
    }
}
