use num_complex::Complex64;
use num_traits::Zero;
use rayon::prelude::*;

use super::TwistPoint;
use crate::arith::{rational_reconstruct, rational_to_f64, Rational};
use crate::cuspform::FourierSeries;
use crate::eisenstein::{fourier_coeffs, EisensteinSpec};
use crate::{Error, PrecisionBudget, Result};

/// How a coefficient was recognized.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// The value is known to better than `tol` and reconstructs to the
    /// unique nearby fraction with denominator at most `max_den`.
    Rational,
    /// Both series reconstruct coefficientwise, and the exact quotient of
    /// the reconstructions agrees with the value within its error bound.
    Lifted,
    /// No fraction was found and the value is known to better than `tol`.
    NotFound,
    /// No fraction was found and the error bound exceeds `tol`.
    Imprecise,
    /// Coefficientwise quotient with a denominator indistinguishable from 0.
    Undefined,
}

impl Verdict {
    pub fn tag(self) -> &'static str {
        match self {
            Verdict::Rational => "rational",
            Verdict::Lifted => "lifted",
            Verdict::NotFound => "not_found",
            Verdict::Imprecise => "imprecise",
            Verdict::Undefined => "undefined",
        }
    }

    pub fn is_rational(self) -> bool {
        matches!(self, Verdict::Rational | Verdict::Lifted)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientVerdict {
    pub m: usize,
    pub value: Complex64,
    pub error_bound: f64,
    pub rational: Option<Rational>,
    pub verdict: Verdict,
}

/// Quotients of `E_{k,i;h}` by `E_{k,j;h}`.
#[derive(Clone, Debug, PartialEq)]
pub struct PairScan {
    pub i: i64,
    pub j: i64,
    /// Coefficients of the power series `f_i / f_j`.
    pub series: Vec<CoefficientVerdict>,
    /// `a_m(f_i) / a_m(f_j)`.
    pub coefficientwise: Vec<CoefficientVerdict>,
}

impl PairScan {
    /// Share of series-quotient coefficients recognized as rational.
    pub fn reconstructed_fraction(&self) -> f64 {
        self.series.iter().filter(|c| c.verdict.is_rational()).count() as f64 / self.series.len() as f64
    }

    /// Largest `max(|p|, q)` among the recognized series-quotient coefficients.
    pub fn max_height(&self) -> Option<num_bigint::BigInt> {
        self.series
            .iter()
            .filter_map(|c| c.rational.as_ref())
            .map(|r| {
                let p = num_traits::Signed::abs(r.numer());
                p.max(r.denom().clone())
            })
            .max()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanReport {
    pub level: u64,
    pub weight: i64,
    pub terms: usize,
    pub max_den: u64,
    pub tol: f64,
    /// Indices `j` whose series vanish within their error bounds.
    pub vanishing: Vec<i64>,
    pub pairs: Vec<PairScan>,
}

impl ScanReport {
    pub fn pair(&self, i: i64, j: i64) -> Option<&PairScan> {
        self.pairs.iter().find(|p| p.i == i && p.j == j)
    }
}

/// `a / c` as power series with first-order error propagation; fails when
/// `|c_0|` does not exceed its error bound.
fn divide(a: &FourierSeries, c: &FourierSeries, n: usize) -> Option<(Vec<Complex64>, Vec<f64>)> {
    let (ca, ea) = (a.coefficients(), a.error_bounds());
    let (cc, ec) = (c.coefficients(), c.error_bounds());
    let d = cc[0].norm() - ec[0];
    if !(d > 0.0) {
        return None;
    }
    let mut b: Vec<Complex64> = Vec::with_capacity(n + 1);
    let mut eb: Vec<f64> = Vec::with_capacity(n + 1);
    for m in 0..=n {
        let mut num = ca[m];
        let mut en = ea[m];
        for t in 1..=m {
            num -= cc[t] * b[m - t];
            en += ec[t] * (b[m - t].norm() + eb[m - t]) + cc[t].norm() * eb[m - t];
        }
        let v = num / cc[0];
        en += 4.0 * (m + 1) as f64 * f64::EPSILON * num.norm();
        eb.push((en + v.norm() * ec[0]) / d);
        b.push(v);
    }
    Some((b, eb))
}

fn divide_exact(a: &[Rational], c: &[Rational]) -> Option<Vec<Rational>> {
    if c[0].is_zero() {
        return None;
    }
    let mut b: Vec<Rational> = Vec::with_capacity(a.len());
    for m in 0..a.len() {
        let mut num = a[m].clone();
        for t in 1..=m {
            num -= &c[t] * &b[m - t];
        }
        b.push(num / &c[0]);
    }
    Some(b)
}

fn reconstruct(value: Complex64, tol: f64, max_den: u64) -> Option<Rational> {
    if value.im.abs() > tol {
        return None;
    }
    rational_reconstruct(value.re, tol, max_den)
}

/// Every coefficient of `f` as a fraction, if possible.
fn reconstruct_series(f: &FourierSeries, n: usize, tol: f64, max_den: u64) -> Option<Vec<Rational>> {
    (0..=n)
        .map(|m| {
            if f.error_bounds()[m] >= tol {
                return None;
            }
            reconstruct(f.coefficient(m), tol, max_den)
        })
        .collect()
}

fn judge(
    m: usize,
    value: Complex64,
    error_bound: f64,
    lifted: Option<&Rational>,
    tol: f64,
    max_den: u64,
) -> CoefficientVerdict {
    // a fraction p/q within tol of the value is only meaningful when the
    // value is known to tol and no other fraction with denominator <= q is
    // that close, i.e. 2 tol q^2 < 1
    let direct = (error_bound < tol)
        .then(|| reconstruct(value, tol, max_den))
        .flatten()
        .filter(|r| {
            let q = rational_to_f64(&Rational::from_integer(r.denom().clone()));
            2.0 * tol * q * q < 1.0
        });
    let lifted = lifted.filter(|r| {
        (value - Complex64::new(rational_to_f64(r), 0.0)).norm() <= error_bound + tol * (1.0 + value.norm())
    });
    let (rational, verdict) = match (direct, lifted) {
        (Some(d), Some(l)) if &d == l => (Some(d), Verdict::Rational),
        (_, Some(l)) => (Some(l.clone()), Verdict::Lifted),
        (Some(d), None) => (Some(d), Verdict::Rational),
        (None, None) if error_bound >= tol => (None, Verdict::Imprecise),
        (None, None) => (None, Verdict::NotFound),
    };
    CoefficientVerdict { m, value, error_bound, rational, verdict }
}

/// Rationality scan of the quotients `E_{k,i;h} / E_{k,j;h}` for all
/// `i != j` in `0..l`, with `E_{k,j;h}` not vanishing, up to `q^M`.
///
/// Each series-quotient coefficient is recognized either directly, by
/// [`rational_reconstruct`] with `tol` and `max_den`, or by reconstructing
/// the coefficients of both series the same way and dividing exactly. The
/// second route recovers quotients whose denominators are far beyond
/// `max_den`, which is the typical case: the denominators grow like powers
/// of the numerator of the leading coefficient of `E_{k,j;h}`.
pub fn rationality_scan(
    p: &TwistPoint,
    k: i64,
    terms: usize,
    max_den: u64,
    tol: f64,
    budget: &PrecisionBudget,
) -> Result<ScanReport> {
    if !(tol > 0.0) || max_den == 0 {
        return Err(Error::Invalid("tol and max_den must be positive".into()));
    }
    let l = p.level();
    let base = EisensteinSpec::new(l, k, 0, p.form().clone())?;
    let n = terms.max(1);
    let series: Vec<FourierSeries> = (0..l as i64)
        .map(|i| fourier_coeffs(&base.with_twist_index(i), n, budget))
        .collect::<Result<_>>()?;
    let vanishing: Vec<i64> = (0..l as i64)
        .filter(|&j| {
            let s = &series[j as usize];
            (0..=n).all(|m| s.coefficient(m).norm() <= s.error_bounds()[m])
        })
        .collect();
    let exact: Vec<Option<Vec<Rational>>> =
        series.par_iter().map(|s| reconstruct_series(s, n, tol, max_den)).collect();

    let pairs: Vec<(i64, i64)> = (0..l as i64)
        .flat_map(|i| (0..l as i64).map(move |j| (i, j)))
        .filter(|(i, j)| i != j && !vanishing.contains(j))
        .collect();
    let results: Vec<Result<PairScan>> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let (a, c) = (&series[i as usize], &series[j as usize]);
            let (b, eb) = divide(a, c, n).ok_or_else(|| {
                Error::DivisionDegenerate(format!(
                    "leading coefficient {} of E_{{{k},{j};h}} is within its error bound {:.3e}",
                    c.coefficient(0),
                    c.error_bounds()[0]
                ))
            })?;
            let lifted = match (&exact[i as usize], &exact[j as usize]) {
                (Some(x), Some(y)) => divide_exact(x, y),
                _ => None,
            };
            let series_verdicts = (0..=n)
                .map(|m| judge(m, b[m], eb[m], lifted.as_ref().map(|v| &v[m]), tol, max_den))
                .collect();
            let coefficientwise = (0..=n)
                .map(|m| {
                    let (x, y) = (a.coefficient(m), c.coefficient(m));
                    let (ex, ey) = (a.error_bounds()[m], c.error_bounds()[m]);
                    if !(y.norm() > ey) {
                        return CoefficientVerdict {
                            m,
                            value: Complex64::new(f64::NAN, f64::NAN),
                            error_bound: f64::INFINITY,
                            rational: None,
                            verdict: Verdict::Undefined,
                        };
                    }
                    let v = x / y;
                    let e = (ex + v.norm() * ey) / (y.norm() - ey) + 4.0 * f64::EPSILON * v.norm();
                    let exact_ratio = match (&exact[i as usize], &exact[j as usize]) {
                        (Some(p), Some(q)) if !q[m].is_zero() => Some(&p[m] / &q[m]),
                        _ => None,
                    };
                    judge(m, v, e, exact_ratio.as_ref(), tol, max_den)
                })
                .collect();
            Ok(PairScan { i, j, series: series_verdicts, coefficientwise })
        })
        .collect();
    Ok(ScanReport {
        level: l,
        weight: k,
        terms: n,
        max_den,
        tol,
        vanishing,
        pairs: results.into_iter().collect::<Result<_>>()?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eisenstein::untwisted_series;

    #[test]
    fn series_division_inverts_multiplication() {
        let a = FourierSeries::from_real(11, 4, &[2.0, 1.0, -3.0, 0.5]).unwrap();
        let c = FourierSeries::from_real(11, 4, &[1.0, 4.0, 0.0, 2.0]).unwrap();
        let prod = a.mul(&c).unwrap();
        let (b, eb) = divide(&prod, &c, 3).unwrap();
        for m in 0..=3 {
            assert!((b[m] - a.coefficient(m)).norm() < 1e-13);
            assert!(eb[m] < 1e-12);
        }
        let zero_lead = FourierSeries::from_real(11, 4, &[0.0, 1.0]).unwrap();
        assert!(divide(&a, &zero_lead, 1).is_none());
    }

    #[test]
    fn untwisted_scan_matches_exact_quotients() {
        let p = TwistPoint::zero(11).unwrap();
        let b = PrecisionBudget::with_target(1e-13);
        let r = rationality_scan(&p, 4, 6, 1_000_000, 1e-11, &b).unwrap();
        assert!(r.vanishing.is_empty());
        assert_eq!(r.pairs.len(), 110);
        for pair in &r.pairs {
            let a = untwisted_series(11, 4, pair.i, 6).unwrap();
            let c = untwisted_series(11, 4, pair.j, 6).unwrap();
            let want = divide_exact(&a, &c).unwrap();
            for (v, w) in pair.series.iter().zip(&want) {
                assert!(v.verdict.is_rational(), "({}, {}) m={} {:?}", pair.i, pair.j, v.m, v);
                assert_eq!(v.rational.as_ref(), Some(w));
            }
            assert_eq!(pair.reconstructed_fraction(), 1.0);
        }
        // E_{4,-i} = E_{4,i}
        let sym = r.pair(3, 8).unwrap();
        assert!(sym
            .series
            .iter()
            .all(|c| c.rational == Some(Rational::from_integer(if c.m == 0 { 1 } else { 0 }.into()))));
    }

    #[test]
    fn odd_weight_skips_vanishing_series() {
        let p = TwistPoint::zero(11).unwrap();
        let r = rationality_scan(&p, 3, 2, 1000, 1e-9, &PrecisionBudget::with_target(1e-12)).unwrap();
        // E_{3,0} = -E_{3,0}
        assert_eq!(r.vanishing, vec![0]);
        assert!(r.pairs.iter().all(|p| p.j != 0));
    }
}
