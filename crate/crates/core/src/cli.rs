//! The `twisted-eisenstein` command line.
//!
//! Subcommands: `qexp` (normalized q-expansions), `eval` (direct values),
//! `periods` (real periods and triviality), `scan` (rationality scan) and
//! `check` (the identity suite). Output goes to `--out` or stdout, as JSON
//! or CSV; see [`crate::report`] for the layout.
//!
//! Exit codes: 0 success, 1 a check failed, 2 invalid configuration,
//! 3 precision unreachable or inconclusive, 4 I/O.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

use crate::arith::rational_to_f64;
use crate::cuspform::format::{read_cusp_form, FormFile};
use crate::cuspform::{
    eta_product_weight2, gamma0_generators, period_data, FourierSeries, GroupElement,
    HalfPlanePoint,
};
use crate::eisenstein::{
    dedekind_check, eval_direct, fourier_coeffs, index_flip_residual, modularity_residual, reality_check,
    to_raw, untwisted_series, weight2_partial_sums, EisensteinSpec, Normalization, Residual,
};
use crate::jacobian::{is_trivial_twist, rationality_scan, trivialization_scalars, Trivialization, TwistPoint};
use crate::report::{decimal, emit, OutputFormat, Report};
use crate::{Error, PrecisionBudget, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_PRECISION: i32 = 3;
pub const EXIT_IO: i32 = 4;

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::PrecisionUnreachable { .. } | Error::Inconclusive(_) | Error::DivisionDegenerate(_) => EXIT_PRECISION,
        Error::Io { .. } => EXIT_IO,
        Error::UnsupportedLevel(_)
        | Error::UnsupportedWeight(_)
        | Error::Invalid(_)
        | Error::NonconvergentIntegrand(_)
        | Error::Parse(_) => EXIT_INVALID,
    }
}

#[derive(Parser, Debug)]
#[command(name = "twisted-eisenstein", version, about = "Eisenstein series twisted by weight-two cusp forms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Normalized q-expansion coefficients (2 pi i)^{-k} R_m, m = 0..=terms.
    Qexp {
        #[command(flatten)]
        common: Common,
        /// Emit R_m instead of (2 pi i)^{-k} R_m.
        #[arg(long)]
        raw: bool,
        /// Weight-two partial sums over c-shells, without error bounds.
        #[arg(long)]
        experimental_k2: bool,
        /// Shell cutoffs for --experimental-k2.
        #[arg(long, value_delimiter = ',', default_value = "10,20,40,80")]
        cutoffs: Vec<u64>,
    },
    /// Direct lattice-sum values at --tau.
    Eval {
        #[command(flatten)]
        common: Common,
    },
    /// Real periods of the twisting form and its trivializing scalars.
    Periods {
        #[command(flatten)]
        common: Common,
        /// Tolerance for integrality of periods.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Largest trivializing scalar listed.
        #[arg(long, default_value_t = 10.0)]
        max_height: f64,
    },
    /// Rationality scan of quotients E_{k,i;h} / E_{k,j;h}.
    Scan {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 1_000_000)]
        max_den: u64,
        #[arg(long, default_value_t = 1e-11)]
        tol: f64,
        /// Multiplies the twisting form by this scalar.
        #[arg(long, default_value_t = 1.0)]
        scale: f64,
    },
    /// Identity suite; exits 1 if a residual exceeds --threshold.
    Check {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 1e-5)]
        threshold: f64,
    },
}

#[derive(Args, Debug, Clone)]
struct Common {
    #[arg(long, default_value_t = 11)]
    level: u64,
    #[arg(long, default_value_t = 4)]
    weight: i64,
    /// Comma-separated twist indices i.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "1")]
    twist_index: Vec<i64>,
    /// A form file path, or one of eta11, eta14, eta15, zero.
    #[arg(long, default_value = "zero")]
    form: String,
    /// Coefficients computed for built-in eta products.
    #[arg(long, default_value_t = 200_000)]
    form_terms: usize,
    /// Largest m (qexp, scan, check).
    #[arg(long, default_value_t = 10)]
    terms: usize,
    /// Absolute error target; commands pick a default when absent.
    #[arg(long)]
    target_error: Option<f64>,
    #[arg(long)]
    max_c: Option<u64>,
    #[arg(long, default_value = "0.2+1.3i")]
    tau: String,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value = "json")]
    format: String,
    /// Worker threads; 0 uses all cores.
    #[arg(long, default_value_t = 0)]
    threads: usize,
}

/// Validated settings shared by every subcommand.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub level: u64,
    pub weight: i64,
    pub twist_indices: Vec<i64>,
    pub form_source: String,
    pub form: FourierSeries,
    pub terms: usize,
    pub budget: PrecisionBudget,
    pub tau: HalfPlanePoint,
    pub out: Option<PathBuf>,
    pub format: OutputFormat,
}

impl RunConfig {
    fn from_common(c: &Common, default_target: f64) -> Result<Self> {
        if c.level == 0 {
            return Err(Error::Invalid("level must be positive".into()));
        }
        if c.twist_index.is_empty() {
            return Err(Error::Invalid("at least one twist index is required".into()));
        }
        let mut budget = PrecisionBudget::with_target(c.target_error.unwrap_or(default_target));
        if let Some(m) = c.max_c {
            budget.max_c_terms = m;
        }
        budget.validate()?;
        let form = load_form(&c.form, c.level, c.form_terms)?;
        Ok(RunConfig {
            level: c.level,
            weight: c.weight,
            twist_indices: c.twist_index.clone(),
            form_source: c.form.clone(),
            form,
            terms: c.terms,
            budget,
            tau: HalfPlanePoint::parse(&c.tau)?,
            out: c.out.clone(),
            format: OutputFormat::parse(&c.format)?,
        })
    }

    fn base_report(&self, command: &str, columns: &[&str]) -> Report {
        let mut r = Report::new(command, columns);
        r.parameter("level", self.level)
            .parameter("weight", self.weight)
            .parameter("form", &self.form_source)
            .parameter("target_error", decimal(self.budget.target_abs_error))
            .parameter("max_c", self.budget.max_c_terms);
        if !self.form.is_zero() {
            // tails of the twisting form assume |a_n| <= C n with C read off
            // the stored coefficients
            r.parameter("form_tail_bound", "heuristic");
        }
        r
    }

    fn spec(&self, i: i64) -> Result<EisensteinSpec> {
        EisensteinSpec::new(self.level, self.weight, i, self.form.clone())
    }

    fn emit(&self, text: &str) -> Result<()> {
        emit(text, self.out.as_deref())
    }
}

/// A twisting form from a file path or a built-in tag.
pub fn load_form(source: &str, level: u64, terms: usize) -> Result<FourierSeries> {
    let builtin = |l: u64| -> Result<FourierSeries> {
        if l != level {
            return Err(Error::Invalid(format!("form {source} has level {l} but --level is {level}")));
        }
        eta_product_weight2(l, terms)
    };
    let form = match source {
        "zero" => return Ok(FourierSeries::zero(level)),
        "eta11" => builtin(11)?,
        "eta14" => builtin(14)?,
        "eta15" => builtin(15)?,
        path => {
            let f = read_cusp_form(Path::new(path))?;
            if f.level() != level {
                return Err(Error::Invalid(format!(
                    "{path} holds a form of level {} but --level is {level}",
                    f.level()
                )));
            }
            f
        }
    };
    if form.weight() != 2 {
        return Err(Error::Invalid(format!("the twisting form must have weight 2, got {}", form.weight())));
    }
    Ok(form)
}

/// Runs the command line and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
        }
    };
    let threads = match &cli.command {
        Command::Qexp { common, .. }
        | Command::Eval { common }
        | Command::Periods { common, .. }
        | Command::Scan { common, .. }
        | Command::Check { common, .. } => common.threads,
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: cannot start worker pool: {e}");
            return EXIT_INVALID;
        }
    };
    match pool.install(|| run(cli.command)) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn run(command: Command) -> Result<i32> {
    match command {
        Command::Qexp { common, raw, experimental_k2, cutoffs } => {
            let cfg = RunConfig::from_common(&common, 1e-8)?;
            if experimental_k2 {
                cmd_qexp_k2(&cfg, &cutoffs)
            } else {
                cmd_qexp(&cfg, raw)
            }
        }
        Command::Eval { common } => cmd_eval(&RunConfig::from_common(&common, 1e-8)?),
        Command::Periods { common, tol, max_height } => {
            cmd_periods(&RunConfig::from_common(&common, 1e-12)?, tol, max_height)
        }
        Command::Scan { common, max_den, tol, scale } => {
            cmd_scan(&RunConfig::from_common(&common, 1e-13)?, max_den, tol, scale)
        }
        Command::Check { common, threshold } => {
            let cfg = RunConfig::from_common(&common, threshold / 10.0)?;
            cmd_check(&cfg, threshold)
        }
    }
}

/// Normalized coefficients of `E_{k,i;h}`; the untwisted case comes from the
/// exact formula with error bound zero.
pub fn expansion(cfg: &RunConfig, i: i64) -> Result<FourierSeries> {
    let spec = cfg.spec(i)?;
    if cfg.form.is_zero() {
        let exact = untwisted_series(cfg.level, cfg.weight, i, cfg.terms.max(1) as u64)?;
        let values: Vec<Complex64> = exact.iter().map(|q| Complex64::new(rational_to_f64(q), 0.0)).collect();
        let n = values.len();
        return FourierSeries::new(cfg.level, cfg.weight, values, vec![0.0; n]);
    }
    fourier_coeffs(&spec, cfg.terms, &cfg.budget)
}

pub fn cmd_qexp(cfg: &RunConfig, raw: bool) -> Result<i32> {
    let normalization = if raw { Normalization::Raw } else { Normalization::TwoPiIPowK };
    let mut files = Vec::new();
    for &i in &cfg.twist_indices {
        let s = expansion(cfg, i)?;
        let s = if raw {
            // rounding of the scaled values
            let r = to_raw(&s);
            let bounds = r.error_bounds().iter().zip(r.coefficients()).map(|(e, c)| e + 4.0 * f64::EPSILON * c.norm()).collect();
            FourierSeries::new(r.level(), r.weight(), r.coefficients().to_vec(), bounds)?
        } else {
            s
        };
        let mut f = FormFile::from_series(&s);
        f.twist_index = Some(i.rem_euclid(cfg.level as i64));
        f.normalization = Some(normalization.tag().to_string());
        files.push(f);
    }
    let text = match cfg.format {
        OutputFormat::Json if files.len() == 1 => files[0].to_json(),
        OutputFormat::Json => serde_json::to_string_pretty(&files).expect("form files serialize") + "\n",
        OutputFormat::Csv => {
            let mut r = Report::new("qexp", &["twist_index", "m", "re", "im", "error_bound"]);
            for f in &files {
                let bounds = f.error_bounds.as_ref().expect("set by from_series");
                for (m, ([re, im], e)) in f.coefficients.iter().zip(bounds).enumerate() {
                    r.row(vec![f.twist_index.unwrap().to_string(), m.to_string(), re.clone(), im.clone(), e.clone()]);
                }
            }
            r.to_csv()
        }
    };
    cfg.emit(&text)?;
    Ok(EXIT_OK)
}

/// Experimental weight-two partial sums; `error_bound` is reported as
/// `none` since no bound is known.
pub fn cmd_qexp_k2(cfg: &RunConfig, cutoffs: &[u64]) -> Result<i32> {
    if cfg.weight != 2 {
        return Err(Error::Invalid("--experimental-k2 needs --weight 2".into()));
    }
    if cutoffs.is_empty() || cutoffs.contains(&0) {
        return Err(Error::Invalid("cutoffs must be positive".into()));
    }
    let mut r = cfg.base_report("qexp-k2", &["twist_index", "m", "cutoff", "re", "im", "error_bound"]);
    r.parameter("experimental", "true");
    for &i in &cfg.twist_indices {
        for m in 1..=cfg.terms.max(1) as u64 {
            let sums = weight2_partial_sums(&cfg.form, cfg.level, i, m, cutoffs, &cfg.budget)?;
            for (c, v) in cutoffs.iter().zip(sums) {
                r.row(vec![i.to_string(), m.to_string(), c.to_string(), decimal(v.re), decimal(v.im), "none".into()]);
            }
        }
    }
    cfg.emit(&r.render(cfg.format))?;
    Ok(EXIT_OK)
}

pub fn cmd_eval(cfg: &RunConfig) -> Result<i32> {
    let mut r = cfg.base_report("eval", &["twist_index", "re", "im", "error_bound"]);
    r.parameter("tau", cfg.tau);
    for &i in &cfg.twist_indices {
        let v = eval_direct(&cfg.spec(i)?, cfg.tau, &cfg.budget)?;
        r.row(vec![i.to_string(), decimal(v.value.re), decimal(v.value.im), decimal(v.error_bound)]);
    }
    cfg.emit(&r.render(cfg.format))?;
    Ok(EXIT_OK)
}

pub fn cmd_periods(cfg: &RunConfig, tol: f64, max_height: f64) -> Result<i32> {
    let data = period_data(&cfg.form, cfg.level, &cfg.budget)?;
    let mut r = cfg.base_report("periods", &["generator", "re_period", "error_bound"]);
    for ((g, p), e) in data.generators.iter().zip(&data.re_periods).zip(&data.error_bounds) {
        r.row(vec![g.to_string(), decimal(*p), decimal(*e)]);
    }
    r.parameter("tol", decimal(tol)).parameter("max_height", decimal(max_height));
    let point = TwistPoint::new(cfg.form.clone(), &cfg.budget)?;
    match is_trivial_twist(&point, tol) {
        Ok(w) => {
            r.summary("trivial", w.trivial);
        }
        Err(Error::Inconclusive(_)) => {
            r.summary("trivial", "inconclusive");
        }
        Err(e) => return Err(e),
    }
    match trivialization_scalars(&point, max_height, tol) {
        Ok(Trivialization::Dense) => {
            r.summary("trivialization", "dense");
        }
        Ok(Trivialization::OnlyZero) => {
            r.summary("trivialization", "only_zero");
        }
        Ok(Trivialization::Discrete { generator, scalars }) => {
            r.summary("trivialization", "discrete")
                .summary("generator", decimal(generator))
                .summary("scalars", scalars.iter().map(|s| decimal(*s)).collect::<Vec<_>>().join(" "));
        }
        Err(Error::Inconclusive(_)) => {
            r.summary("trivialization", "inconclusive");
        }
        Err(e) => return Err(e),
    }
    cfg.emit(&r.render(cfg.format))?;
    Ok(EXIT_OK)
}

pub fn cmd_scan(cfg: &RunConfig, max_den: u64, tol: f64, scale: f64) -> Result<i32> {
    let form = cfg.form.scale(scale.into());
    let point = TwistPoint::new(form, &cfg.budget)?;
    let scan = rationality_scan(&point, cfg.weight, cfg.terms, max_den, tol, &cfg.budget)?;
    let mut r = cfg.base_report(
        "scan",
        &["i", "j", "kind", "m", "re", "im", "error_bound", "rational", "verdict"],
    );
    r.parameter("terms", cfg.terms)
        .parameter("max_den", max_den)
        .parameter("tol", decimal(tol))
        .parameter("scale", decimal(scale));
    let (mut total, mut rational) = (0usize, 0usize);
    for p in &scan.pairs {
        for (kind, list) in [("series", &p.series), ("coefficientwise", &p.coefficientwise)] {
            for v in list {
                if kind == "series" {
                    total += 1;
                    rational += v.verdict.is_rational() as usize;
                }
                r.row(vec![
                    p.i.to_string(),
                    p.j.to_string(),
                    kind.into(),
                    v.m.to_string(),
                    decimal(v.value.re),
                    decimal(v.value.im),
                    decimal(v.error_bound),
                    v.rational.as_ref().map_or("null".into(), |q| q.to_string()),
                    v.verdict.tag().into(),
                ]);
            }
        }
    }
    let vanishing: Vec<String> = scan.vanishing.iter().map(|j| j.to_string()).collect();
    r.summary("pairs", scan.pairs.len())
        .summary("vanishing", vanishing.join(" "))
        .summary("series_coefficients", total)
        .summary("series_rational", rational)
        .summary("all_rational", total == rational);
    cfg.emit(&r.render(cfg.format))?;
    Ok(EXIT_OK)
}

/// `tau = (-d + i)/c`, so that `gamma tau = (a + i)/c`: both points sit at
/// height `1/|c|`.
fn generator_point(g: &GroupElement) -> Result<HalfPlanePoint> {
    let c = g.c as f64;
    HalfPlanePoint::new(-g.d as f64 / c, 1.0 / c.abs())
}

pub fn cmd_check(cfg: &RunConfig, threshold: f64) -> Result<i32> {
    if !(threshold > 0.0) {
        return Err(Error::Invalid(format!("threshold must be positive, got {threshold}")));
    }
    let mut r = cfg.base_report("check", &["check", "twist_index", "detail", "residual", "error_bound", "pass"]);
    r.parameter("threshold", decimal(threshold)).parameter("terms", cfg.terms).parameter("tau", cfg.tau);
    let mut all = true;
    let mut record = |r: &mut Report, name: &str, i: i64, detail: String, res: Residual| {
        let pass = res.below(threshold);
        all &= pass;
        r.row(vec![name.into(), i.to_string(), detail, decimal(res.residual), decimal(res.error_bound), pass.to_string()]);
    };
    let b = &cfg.budget;
    for &i in &cfg.twist_indices {
        let spec = cfg.spec(i)?;
        if cfg.form.is_zero() {
            let numeric = fourier_coeffs(&spec, cfg.terms, b)?;
            let exact = untwisted_series(cfg.level, cfg.weight, i, numeric.precision() as u64)?;
            let mut worst = Residual { residual: 0.0, error_bound: 0.0 };
            for (m, q) in exact.iter().enumerate() {
                let d = (numeric.coefficient(m) - rational_to_f64(q)).norm();
                if d >= worst.residual {
                    worst = Residual { residual: d, error_bound: numeric.error_bounds()[m] };
                }
            }
            record(&mut r, "oracle", i, format!("m<={}", cfg.terms), worst);
        }
        record(&mut r, "reality", i, format!("m<={}", cfg.terms), reality_check(&spec, cfg.terms, b)?);
        record(&mut r, "index_flip", i, format!("m<={}", cfg.terms), index_flip_residual(&spec, cfg.terms, b)?);
        for g in gamma0_generators(cfg.level).iter().filter(|g| g.c != 0) {
            let tau = generator_point(g)?;
            record(&mut r, "modularity", i, g.to_string(), modularity_residual(&spec, g, tau, b)?);
        }
        let res = dedekind_check(cfg.level, cfg.weight, i, &cfg.form, cfg.tau, b)?;
        record(&mut r, "dedekind", i, cfg.tau.to_string(), res);
    }
    r.summary("pass", all);
    cfg.emit(&r.render(cfg.format))?;
    Ok(if all { EXIT_OK } else { EXIT_CHECK_FAILED })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> i32 {
        main_with_args(std::iter::once("twisted-eisenstein").chain(args.iter().copied()))
    }

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Error::UnsupportedWeight(2)), EXIT_INVALID);
        assert_eq!(exit_code(&Error::unreachable("x", 1.0, 0.1)), EXIT_PRECISION);
        assert_eq!(run_args(&["qexp", "--weight", "2"]), EXIT_INVALID);
        assert_eq!(run_args(&["eval", "--form", "/nonexistent/form.json"]), EXIT_IO);
        assert_eq!(run_args(&["bogus"]), EXIT_INVALID);
    }

    #[test]
    fn forms_must_match_the_level() {
        assert!(load_form("eta11", 14, 10).is_err());
        assert_eq!(load_form("eta14", 14, 10).unwrap().level(), 14);
        assert!(load_form("zero", 5, 10).unwrap().is_zero());
    }

    #[test]
    fn exact_expansion_for_the_zero_form() {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().join("e.json");
        let code = run_args(&["qexp", "--level", "11", "--weight", "4", "--twist-index", "1", "--terms", "10", "--out", out.to_str().unwrap()]);
        assert_eq!(code, EXIT_OK);
        let f = crate::cuspform::format::read_form_file(&out).unwrap();
        assert_eq!(f.coefficients[1][0], decimal(3.0 / 29282.0));
        assert_eq!(f.error_bounds.as_ref().unwrap()[1], "0");
        assert_eq!(f.normalization.as_deref(), Some("2pii_pow_k"));
    }
}
