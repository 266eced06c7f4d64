//! Acceptance suite: one line per criterion, `PASS` or `FAIL`, then a single
//! assertion over all of them. Run with `--nocapture` to see the table.

use std::f64::consts::TAU;
use std::path::Path;
use std::time::{Duration, Instant};

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use twisted_eisenstein::arith::{gcd, rational_to_f64, Rational};
use twisted_eisenstein::cuspform::format::read_cusp_form;
use twisted_eisenstein::cuspform::{
    completion, eta_product_weight2, gamma0_generators, h_cusp_with_completion, twist_character, FourierSeries,
    GroupElement, HalfPlanePoint,
};
use twisted_eisenstein::eisenstein::{
    coefficients_with_targets, dedekind_check, eval_direct, eval_via_fourier, fourier_coeffs, modularity_residual,
    reality_check, untwisted_series, EisensteinSpec,
};
use twisted_eisenstein::jacobian::{rationality_scan, trivialization_scalars, Trivialization, TwistPoint};
use twisted_eisenstein::petersson::{inner, CuspFormEvaluator, QuadratureGrid, UntwistedEisenstein};
use twisted_eisenstein::PrecisionBudget;

type Outcome = Result<(bool, String), twisted_eisenstein::Error>;

/// Enough coefficients of the level-11 newform for period tables with
/// denominators up to about 40000.
const ETA_TERMS: usize = 200_000;

fn eta() -> FourierSeries {
    eta_product_weight2(11, ETA_TERMS).unwrap()
}

fn c1_oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let budget = PrecisionBudget::with_target(1e-9);
    let mut worst = 0.0f64;
    for l in [1u64, 11] {
        for k in [3, 4, 5] {
            for i in [0, 1, 2] {
                let numeric = fourier_coeffs(&EisensteinSpec::untwisted(l, k, i)?, 20, &budget)?;
                let exact = untwisted_series(l, k, i, 20)?;
                for (m, q) in exact.iter().enumerate() {
                    worst = worst.max((numeric.coefficient(m) - rational_to_f64(q)).norm());
                }
            }
        }
    }
    let t = start.elapsed();
    Ok((worst < 1e-8 && t < Duration::from_secs(60), format!("max diff {worst:.2e} (< 1e-8), {t:.1?} (< 60s)")))
}

fn c2_spot_values() -> Outcome {
    let b = PrecisionBudget::with_target(1e-12);
    let a = fourier_coeffs(&EisensteinSpec::untwisted(1, 4, 0)?, 1, &b)?.coefficient(0);
    let c = fourier_coeffs(&EisensteinSpec::untwisted(11, 4, 1)?, 1, &b)?.coefficient(1);
    let (da, dc) = ((a - 1.0 / 720.0).norm(), (c - 3.0 / 29282.0).norm());
    Ok((da < 1e-10 && dc < 1e-10, format!("|R_0 - 1/720| {da:.1e}, |R_1 - 3/29282| {dc:.1e} (< 1e-10)")))
}

fn c3_pipeline_cross_check() -> Outcome {
    let start = Instant::now();
    let points = [(0.0, 1.0), (0.13, 1.1), (-0.37, 1.25), (0.5, 1.6), (0.27, 2.3)];
    let budget = PrecisionBudget::with_target(1e-7);
    // raw coefficient error times |q|^m <= e^{-2 pi m}, split over m = 0..=8
    let scale = TAU.powi(4);
    let targets: Vec<f64> = (0..=8).map(|m| 1e-7 / scale * (TAU * m as f64).exp() / 9.0).collect();
    let mut worst = 0.0f64;
    for h in [FourierSeries::zero(11), eta()] {
        for i in [0, 1] {
            let spec = EisensteinSpec::new(11, 4, i, h.clone())?;
            let coeffs = coefficients_with_targets(&spec, &targets, &budget)?;
            for &(x, y) in &points {
                let tau = HalfPlanePoint::new(x, y)?;
                let d = eval_direct(&spec, tau, &budget)?;
                worst = worst.max((d.value - eval_via_fourier(&coeffs, tau).value).norm());
            }
        }
    }
    let t = start.elapsed();
    Ok((worst < 1e-6 && t < Duration::from_secs(300), format!("max gap {worst:.2e} (< 1e-6), {t:.1?} (< 300s)")))
}

/// A random element with bottom row `(c, d)`, `c = +-11`.
fn random_gamma(rng: &mut ChaCha8Rng, gamma1: bool) -> GroupElement {
    loop {
        let c = if rng.gen::<bool>() { 11 } else { -11 };
        let d: i64 = rng.gen_range(-60..=60);
        if gcd(c, d) != 1 || (gamma1 && d.rem_euclid(11) != 1) {
            continue;
        }
        let g = completion(c, d).unwrap();
        if gamma1 && !g.in_gamma1(11) {
            // a d = 1 mod 11 already; only the sign of (a, d) can differ
            continue;
        }
        return g;
    }
}

fn c4_transformation_law() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let spec = EisensteinSpec::new(11, 4, 1, eta())?;
    let budget = PrecisionBudget::with_target(4e-6);
    let mut worst = 0.0f64;
    let mut count = 0;
    for gamma1 in [false, true] {
        for _ in 0..10 {
            let g = random_gamma(&mut rng, gamma1);
            // tau = (-d + i)/c, gamma tau = (a + i)/c
            let c = g.c as f64;
            let tau = HalfPlanePoint::new(-g.d as f64 / c, 1.0 / c.abs())?;
            worst = worst.max(modularity_residual(&spec, &g, tau, &budget)?.residual);
            count += 1;
        }
    }
    Ok((worst < 1e-5, format!("{count} elements (10 Gamma_0, 10 Gamma_1), max residual {worst:.2e} (< 1e-5)")))
}

fn random_word(rng: &mut ChaCha8Rng, gens: &[GroupElement], len: usize) -> GroupElement {
    let mut g = GroupElement::translation(0);
    for _ in 0..len {
        let x = gens[rng.gen_range(0..gens.len())];
        g = g.mul(&if rng.gen::<bool>() { x } else { x.inverse() });
    }
    g
}

fn c5_character() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let h = eta();
    let b = PrecisionBudget::with_target(1e-11);
    let gens = gamma0_generators(11);
    let (mut hom, mut modulus, mut trans) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..100 {
        let a = random_word(&mut rng, &gens, 2);
        let c = random_word(&mut rng, &gens, 2);
        let (xa, xc) = (twist_character(&h, &a, &b)?, twist_character(&h, &c, &b)?);
        let xac = twist_character(&h, &a.mul(&c), &b)?;
        hom = hom.max((xac - xa * xc).norm());
        modulus = modulus.max((xa.norm() - 1.0).abs()).max((xac.norm() - 1.0).abs());
    }
    for n in [-7, -1, 1, 3, 12] {
        trans = trans.max((twist_character(&h, &GroupElement::translation(n), &b)? - 1.0).norm());
    }
    Ok((
        hom < 1e-8 && modulus < 1e-15 && trans == 0.0,
        format!("homomorphism {hom:.1e} (< 1e-8), | |chi| - 1 | {modulus:.1e}, translations {trans:.0e}"),
    ))
}

fn c6_completion_shifts() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let h = eta();
    let b = PrecisionBudget::with_target(1e-10);
    let mut worst = 0.0f64;
    let mut n = 0;
    while n < 50 {
        let c = 11 * rng.gen_range(1..=40i64);
        let d = rng.gen_range(-3 * c..=3 * c);
        if gcd(c, d) != 1 {
            continue;
        }
        let g = completion(c, d)?;
        let base = h_cusp_with_completion(&h, &g, &b)?;
        let t = rng.gen_range(1..=9i64) * if rng.gen::<bool>() { 1 } else { -1 };
        let shifted = GroupElement::new(g.a + t * g.c, g.b + t * g.d, g.c, g.d)?;
        let v = h_cusp_with_completion(&h, &shifted, &b)?;
        worst = worst.max((v.value - base.value).norm());
        n += 1;
    }
    let limit = 2.0 * b.target_abs_error;
    Ok((worst <= limit, format!("50 bottom rows, c <= 440: max shift {worst:.1e} (<= {limit:.0e})")))
}

fn c7_dedekind() -> Outcome {
    let b = PrecisionBudget::with_target(1e-6);
    let mut worst = 0.0f64;
    for h in [FourierSeries::zero(11), eta()] {
        for i in [0, 1] {
            for (x, y) in [(0.2, 1.3), (-0.31, 0.9), (0.45, 2.0)] {
                let r = dedekind_check(11, 4, i, &h, HalfPlanePoint::new(x, y)?, &b)?;
                worst = worst.max(r.residual);
            }
        }
    }
    Ok((worst < 1e-5, format!("max residual {worst:.2e} (< 1e-5)")))
}

fn c8_reality() -> Outcome {
    let b = PrecisionBudget::with_target(1e-7);
    let spec = EisensteinSpec::new(11, 4, 1, eta())?;
    let mut worst = 0.0f64;
    for i in 0..11 {
        worst = worst.max(reality_check(&spec.with_twist_index(i), 10, &b)?.residual);
    }
    Ok((worst < 1e-6, format!("max |Im R_m|, m <= 10, all i: {worst:.1e} (< 1e-6)")))
}

fn c9_trivialization() -> Outcome {
    let h = eta();
    let p = TwistPoint::new(h.clone(), &PrecisionBudget::with_target(1e-12))?;
    let Trivialization::Discrete { generator, .. } = trivialization_scalars(&p, 10.0, 1e-9)? else {
        return Ok((false, "no discrete trivialization found".into()));
    };
    let b = PrecisionBudget::with_target(1e-6);
    let scaled = h.scale(generator.into());
    let (mut worst, mut worst_ratio) = (0.0f64, 0.0f64);
    for i in [0, 1] {
        let twisted = fourier_coeffs(&EisensteinSpec::new(11, 4, i, scaled.clone())?, 10, &b)?;
        let exact = untwisted_series(11, 4, i, 10)?;
        for (m, q) in exact.iter().enumerate() {
            let d = (twisted.coefficient(m) - rational_to_f64(q)).norm();
            worst = worst.max(d);
            worst_ratio = worst_ratio.max(d / twisted.error_bounds()[m]);
        }
    }
    Ok((
        worst_ratio <= 1.0,
        format!("lambda* = {generator:.9}: max diff {worst:.1e}, at most {worst_ratio:.2} of the bound"),
    ))
}

fn c10_petersson() -> Outcome {
    let start = Instant::now();
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/level11_weight4_cusp.json");
    let g = CuspFormEvaluator::new(read_cusp_form(&path)?)?;
    let e = UntwistedEisenstein::standard(11, 4, 1)?;
    let grid = QuadratureGrid::for_level(11);
    let gg = inner(&g, &g, &grid)?;
    let gg_fine = inner(&g, &g, &grid.refined())?;
    let eg = inner(&e, &g, &grid)?;
    let norm = gg.value.re;
    let ratio = eg.value.norm() / norm;
    let drift = (gg_fine.value - gg.value).norm() / norm;
    let t = start.elapsed();
    Ok((
        ratio < 1e-3 && norm > 0.0 && gg.value.im.abs() < 1e-12 && drift < 1e-6 && t < Duration::from_secs(600),
        format!("<g,g> = {norm:.9e}, |<E,g>|/<g,g> = {ratio:.1e} (< 1e-3), refinement drift {drift:.1e}, {t:.1?}"),
    ))
}

fn exact_quotient(a: &[Rational], c: &[Rational]) -> Vec<Rational> {
    let mut b: Vec<Rational> = Vec::with_capacity(a.len());
    for m in 0..a.len() {
        let mut num = a[m].clone();
        for t in 1..=m {
            num -= &c[t] * &b[m - t];
        }
        b.push(num / &c[0]);
    }
    b
}

fn c11_scan() -> Outcome {
    let report = rationality_scan(&TwistPoint::zero(11)?, 4, 10, 1_000_000, 1e-11, &PrecisionBudget::with_target(1e-13))?;
    let series: Vec<Vec<Rational>> = (0..11).map(|i| untwisted_series(11, 4, i, 10)).collect::<Result<_, _>>()?;
    let (mut total, mut good) = (0, 0);
    for p in &report.pairs {
        let want = exact_quotient(&series[p.i as usize], &series[p.j as usize]);
        for v in &p.series {
            total += 1;
            if v.verdict.is_rational() && v.rational.as_ref() == Some(&want[v.m]) {
                good += 1;
            }
        }
    }
    let nonvanishing = series.iter().all(|s| !s[0].is_zero());
    Ok((
        good == total && total == 110 * 11 && nonvanishing,
        format!("{good}/{total} series-quotient coefficients equal the exact quotient"),
    ))
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("untwisted oracle equivalence", c1_oracle_equivalence),
        ("spot values", c2_spot_values),
        ("direct vs Fourier", c3_pipeline_cross_check),
        ("transformation law", c4_transformation_law),
        ("twist character", c5_character),
        ("completion shifts", c6_completion_shifts),
        ("Dedekind decomposition", c7_dedekind),
        ("reality", c8_reality),
        ("twist trivialization", c9_trivialization),
        ("Petersson", c10_petersson),
        ("rationality scan, h = 0", c11_scan),
    ];
    let mut failed = Vec::new();
    for (n, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (ok, detail) = match check() {
            Ok(r) => r,
            Err(e) => (false, format!("error: {e}")),
        };
        let tag = if ok { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {tag} {name}: {detail} [{:.1?}]", n + 1, start.elapsed());
        if !ok {
            failed.push(n + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

