use crate::{Error, Result};

use super::FourierSeries;

/// `prod_{n>=1} (1 - q^n)` up to `q^n_max`, from Euler's pentagonal numbers.
fn euler_product(n_max: usize) -> Vec<(usize, i64)> {
    let mut terms = vec![(0usize, 1i64)];
    for k in 1.. {
        let p1 = k * (3 * k - 1) / 2;
        if p1 > n_max {
            break;
        }
        let sign = if k % 2 == 1 { -1 } else { 1 };
        terms.push((p1, sign));
        let p2 = k * (3 * k + 1) / 2;
        if p2 <= n_max {
            terms.push((p2, sign));
        }
    }
    terms
}

/// Multiplies a dense series by the sparse series `sum s_j q^{m e_j}`.
fn mul_sparse(dense: &[i64], sparse: &[(usize, i64)], m: usize) -> Vec<i64> {
    let n = dense.len();
    let mut out = vec![0i64; n];
    for &(e, s) in sparse {
        let shift = e * m;
        if shift >= n {
            continue;
        }
        for (o, &v) in out[shift..].iter_mut().zip(dense) {
            *o += s * v;
        }
    }
    out
}

/// The exact integer coefficients `a_0..a_n` of the weight-two eta quotient
/// newform of level 11, 14 or 15.
pub(crate) fn eta_product_coefficients(l: u64, n: usize) -> Result<Vec<i64>> {
    let scales: &[usize] = match l {
        11 => &[1, 1, 11, 11],
        14 => &[1, 2, 7, 14],
        15 => &[1, 3, 5, 15],
        _ => return Err(Error::UnsupportedLevel(l)),
    };
    // coefficients of prod (...) up to q^{n-1}, then shift by q
    let mut series = vec![0i64; n];
    if n > 0 {
        series[0] = 1;
    }
    let e = euler_product(n);
    for &m in scales {
        series = mul_sparse(&series, &e, m);
    }
    let mut out = vec![0i64; n + 1];
    out[1..].copy_from_slice(&series);
    Ok(out)
}

/// The weight-two newform of level `l` in {11, 14, 15} written as an eta
/// product, e.g. `q prod (1 - q^n)^2 (1 - q^{11n})^2` for `l = 11`, with
/// coefficients `a_0..a_n` computed in integer arithmetic.
pub fn eta_product_weight2(l: u64, n: usize) -> Result<FourierSeries> {
    if n == 0 {
        return Err(Error::Invalid("need at least one coefficient beyond a_0".into()));
    }
    let a = eta_product_coefficients(l, n)?;
    let re: Vec<f64> = a.iter().map(|&x| x as f64).collect();
    FourierSeries::from_real(l, 2, &re)
}

/// The square of the level-11 weight-two newform, a weight-four cusp form on
/// `Gamma_0(11)` with exact integer coefficients `a_0..a_n`.
pub fn weight4_level11_square(n: usize) -> Result<FourierSeries> {
    let a = eta_product_coefficients(11, n.max(1))?;
    let mut sq = vec![0i64; n + 1];
    for i in 1..=n {
        for j in 1..=n - i {
            sq[i + j] += a[i] * a[j];
        }
    }
    let re: Vec<f64> = sq.iter().map(|&x| x as f64).collect();
    FourierSeries::from_real(11, 4, &re)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Naive product expansion, one factor `(1 - q^j)` at a time.
    fn naive(l: u64, n: usize) -> Vec<i64> {
        let scales: Vec<usize> = match l {
            11 => vec![1, 1, 11, 11],
            14 => vec![1, 2, 7, 14],
            15 => vec![1, 3, 5, 15],
            _ => unreachable!(),
        };
        let mut p = vec![0i64; n + 1];
        p[1] = 1;
        for m in scales {
            let mut j = m;
            while j <= n {
                for t in (j..=n).rev() {
                    p[t] -= p[t - j];
                }
                j += m;
            }
        }
        p
    }

    #[test]
    fn documented_coefficients() {
        let f = eta_product_weight2(11, 5).unwrap();
        let a: Vec<f64> = f.coefficients().iter().map(|c| c.re).collect();
        assert_eq!(a, vec![0.0, 1.0, -2.0, -1.0, 2.0, 1.0]);
        let f = eta_product_weight2(11, 1).unwrap();
        assert_eq!(f.coefficients().len(), 2);
        assert_eq!(f.coefficient(1).re, 1.0);
        assert!(matches!(eta_product_weight2(7, 5), Err(Error::UnsupportedLevel(7))));
    }

    #[test]
    fn pentagonal_matches_naive_product() {
        for l in [11, 14, 15] {
            assert_eq!(eta_product_coefficients(l, 400).unwrap(), naive(l, 400));
        }
    }

    #[test]
    fn known_hecke_eigenvalues() {
        // a_p = p + 1 - #E(F_p) for the curves 11a, 14a, 15a
        let a = eta_product_coefficients(11, 13).unwrap();
        assert_eq!((a[2], a[3], a[5], a[7], a[13]), (-2, -1, 1, -2, 4));
        let a = eta_product_coefficients(14, 5).unwrap();
        assert_eq!((a[2], a[3], a[5]), (-1, -2, 0));
        let a = eta_product_coefficients(15, 7).unwrap();
        assert_eq!((a[2], a[3], a[7]), (-1, -1, 0));
    }

    #[test]
    fn hecke_bound_holds_on_long_expansion() {
        let a = eta_product_coefficients(11, 20_000).unwrap();
        for (n, &x) in a.iter().enumerate().skip(1) {
            let dn = (1..=n).filter(|d| n % d == 0).count() as f64;
            assert!((x as f64).abs() <= dn * (n as f64).sqrt() + 1e-9, "n = {n}");
        }
    }

    #[test]
    fn square_is_a_cusp_form_of_weight_four() {
        let g = weight4_level11_square(6).unwrap();
        assert_eq!(g.weight(), 4);
        let a: Vec<f64> = g.coefficients().iter().map(|c| c.re).collect();
        // (q - 2q^2 - q^3 + 2q^4 + q^5)^2
        assert_eq!(a, vec![0.0, 0.0, 1.0, -4.0, 2.0, 8.0, -5.0]);
    }
}
