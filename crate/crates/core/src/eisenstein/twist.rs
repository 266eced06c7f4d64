use std::collections::HashMap;
use std::f64::consts::TAU;
use std::sync::{Arc, RwLock};

use num_complex::Complex64;

use crate::arith::gcd;
use crate::cuspform::{FourierSeries, PeriodTable};
use crate::{Error, PrecisionBudget, Result};

/// The twisting form `h` with a concurrent cache of period tables keyed by
/// the reduced denominator `c`.
///
/// Tables are inserted at most once per key; two threads racing on the same
/// key may both compute it, and the first insertion wins.
pub struct Twist {
    form: FourierSeries,
    trivial: bool,
    tolerance: f64,
    tables: RwLock<HashMap<u64, Arc<PeriodTable>>>,
}

impl std::fmt::Debug for Twist {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Twist")
            .field("level", &self.form.level())
            .field("trivial", &self.trivial)
            .field("tolerance", &self.tolerance)
            .finish()
    }
}

impl Twist {
    pub fn new(form: FourierSeries, tolerance: f64) -> Result<Self> {
        if form.weight() != 2 || !form.is_cusp_form() {
            return Err(Error::Invalid(
                "the twisting form must be a weight-2 cusp form (a_0 = 0)".into(),
            ));
        }
        if !(tolerance > 0.0 && tolerance.is_finite()) {
            return Err(Error::Invalid("period tolerance must be positive".into()));
        }
        Ok(Twist {
            trivial: form.is_zero(),
            form,
            tolerance,
            tables: RwLock::new(HashMap::new()),
        })
    }

    pub fn form(&self) -> &FourierSeries {
        &self.form
    }

    /// `h = 0` exactly, so every phase is `1`.
    pub fn is_trivial(&self) -> bool {
        self.trivial
    }

    /// Bound on the error of every `Re H(-d/c)` handed out.
    pub fn tolerance(&self) -> f64 {
        if self.trivial {
            0.0
        } else {
            self.tolerance
        }
    }

    /// A freshly computed table for denominator `c`, not cached.
    pub fn compute_table(&self, c: u64, budget: &PrecisionBudget) -> Result<PeriodTable> {
        let t = PeriodTable::new(&self.form, c, self.tolerance, budget)?;
        if t.error_bound() > self.tolerance {
            return Err(Error::unreachable(
                format!("periods with denominator {c}"),
                t.error_bound(),
                self.tolerance,
            ));
        }
        Ok(t)
    }

    /// The cached table for denominator `c > 0`.
    pub fn table(&self, c: u64, budget: &PrecisionBudget) -> Result<Arc<PeriodTable>> {
        if let Some(t) = self.tables.read().expect("period cache poisoned").get(&c) {
            return Ok(t.clone());
        }
        let t = Arc::new(self.compute_table(c, budget)?);
        let mut w = self.tables.write().expect("period cache poisoned");
        Ok(w.entry(c).or_insert(t).clone())
    }

    pub fn cached_tables(&self) -> usize {
        self.tables.read().expect("period cache poisoned").len()
    }

    /// `Re H(-d/c)` for `l | c`, `gcd(d, l) = 1`, reducing the fraction first.
    pub fn re_h(&self, c: i64, d: i64, budget: &PrecisionBudget) -> Result<f64> {
        if self.trivial || c == 0 {
            return Ok(0.0);
        }
        let g = gcd(c, d);
        let (mut c, mut d) = (c / g, d / g);
        if c < 0 {
            c = -c;
            d = -d;
        }
        Ok(self.table(c as u64, budget)?.re(d))
    }

    /// `e^{2 pi i Re H(-d/c)}`.
    pub fn phase(&self, c: i64, d: i64, budget: &PrecisionBudget) -> Result<Complex64> {
        if self.trivial || c == 0 {
            return Ok(Complex64::new(1.0, 0.0));
        }
        Ok(unit(self.re_h(c, d, budget)?))
    }
}

pub(crate) fn unit(re_h: f64) -> Complex64 {
    Complex64::from_polar(1.0, TAU * re_h.rem_euclid(1.0))
}
