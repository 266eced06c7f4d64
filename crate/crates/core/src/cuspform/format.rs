//! Text format for q-expansions: a JSON document whose numbers are decimal
//! strings, so files are exact across platforms.
//!
//! ```json
//! {
//!   "level": 11,
//!   "weight": 2,
//!   "coefficients": [["0", "0"], ["1", "0"], ["-2", "0"]],
//!   "error_bound": "0"
//! }
//! ```
//!
//! Optional fields: `error_bounds` (one decimal string per coefficient,
//! overriding `error_bound`), `twist_index`, `normalization`
//! (`"2pii_pow_k"` or `"raw"`).

use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

use super::FourierSeries;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FormFile {
    pub level: u64,
    pub weight: i64,
    pub coefficients: Vec<[String; 2]>,
    pub error_bound: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error_bounds: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub twist_index: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub normalization: Option<String>,
}

/// Shortest round-trip-safe decimal: integers plainly, otherwise 17
/// significant digits.
pub fn decimal(x: f64) -> String {
    if x == 0.0 {
        "0".to_string()
    } else if x.fract() == 0.0 && x.abs() < 1e15 {
        format!("{}", x as i64)
    } else {
        format!("{:.16e}", x)
    }
}

fn parse_decimal(s: &str, what: &str) -> Result<f64> {
    let v: f64 = s
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("{what}: {s:?} is not a decimal number")))?;
    if !v.is_finite() {
        return Err(Error::Parse(format!("{what}: {s:?} is not finite")));
    }
    Ok(v)
}

impl FormFile {
    pub fn from_series(f: &FourierSeries) -> Self {
        FormFile {
            level: f.level(),
            weight: f.weight(),
            coefficients: f.coefficients().iter().map(|c| [decimal(c.re), decimal(c.im)]).collect(),
            error_bound: decimal(f.max_error_bound()),
            error_bounds: Some(f.error_bounds().iter().map(|&e| decimal(e)).collect()),
            twist_index: None,
            normalization: None,
        }
    }

    /// Decodes the coefficients; the validation of [`FourierSeries::new`]
    /// applies.
    pub fn to_series(&self) -> Result<FourierSeries> {
        let coefficients = self
            .coefficients
            .iter()
            .enumerate()
            .map(|(n, [re, im])| {
                Ok(Complex64::new(
                    parse_decimal(re, &format!("real part of a_{n}"))?,
                    parse_decimal(im, &format!("imaginary part of a_{n}"))?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        let bounds = match &self.error_bounds {
            Some(list) => list
                .iter()
                .enumerate()
                .map(|(n, s)| parse_decimal(s, &format!("error bound of a_{n}")))
                .collect::<Result<Vec<_>>>()?,
            None => vec![parse_decimal(&self.error_bound, "error_bound")?; coefficients.len()],
        };
        FourierSeries::new(self.level, self.weight, coefficients, bounds)
    }

    /// As [`FormFile::to_series`], additionally requiring `a_0 = 0`.
    pub fn to_cusp_form(&self) -> Result<FourierSeries> {
        let s = self.to_series()?;
        FourierSeries::cusp_form(s.level(), s.weight(), s.coefficients().to_vec(), s.error_bounds().to_vec())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("form file serializes") + "\n"
    }
}

pub fn read_form_file(path: &Path) -> Result<FormFile> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

/// Reads a cusp form (with `a_0 = 0`) from a form file.
pub fn read_cusp_form(path: &Path) -> Result<FourierSeries> {
    read_form_file(path)?.to_cusp_form()
}

pub fn write_form_file(path: &Path, file: &FormFile) -> Result<()> {
    std::fs::write(path, file.to_json()).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}
