use std::path::PathBuf;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// The requested accuracy needs more terms than the budget allows.
    #[error("precision unreachable for {what}: achievable error {achievable:.3e}, target {target:.3e}")]
    PrecisionUnreachable {
        what: String,
        achievable: f64,
        target: f64,
    },

    #[error("unsupported level {0} for a built-in eta-product form (supported: 11, 14, 15)")]
    UnsupportedLevel(u64),

    #[error(
        "unsupported weight {0}: the twisted lattice sums converge absolutely only for k >= 3 \
         (absolute convergence just barely fails for k = 2)"
    )]
    UnsupportedWeight(i64),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("integrand does not decay at the cusps: {0}")]
    NonconvergentIntegrand(String),

    #[error("series division is degenerate: {0}")]
    DivisionDegenerate(String),

    #[error("inconclusive: {0}")]
    Inconclusive(String),

    #[error("cannot access {}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("malformed form file: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn unreachable(what: impl Into<String>, achievable: f64, target: f64) -> Self {
        Error::PrecisionUnreachable {
            what: what.into(),
            achievable,
            target,
        }
    }
}
