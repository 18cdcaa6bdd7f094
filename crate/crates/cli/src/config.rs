//! JSON system definitions.
//!
//! ```json
//! {
//!   "kind": "canonical",
//!   "m": 3,
//!   "a": 0.4, "d": -4.0, "mu_hat": 0.8,
//!   "b": [1.0, 0.5, 0.6], "e": [0.5, 1.0, 1.0],
//!   "block": [[0.4, 0.0, 0.0], [0.0, 0.5, 0.0], [0.0, 0.0, 0.6]],
//!   "h_y": [1.0, 0.0, 1.0]
//! }
//! ```
//!
//! or `"kind": "plrnn"` with `m`, `a_diag`, `w` (rows), `h` and an optional
//! `relaxed_diagonal`. For `m = 0` the vector fields of a canonical system
//! may be omitted.

use std::fmt;
use std::path::Path;

use nalgebra::{DMatrix, DVector};
use pwl_cycles::plrnn::PlrnnSystem;
use pwl_cycles::CanonicalSystem;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SystemConfig {
    Canonical(CanonicalConfig),
    Plrnn(PlrnnConfig),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CanonicalConfig {
    pub m: usize,
    pub a: f64,
    pub d: f64,
    pub mu_hat: f64,
    #[serde(default)]
    pub b: Vec<f64>,
    #[serde(default)]
    pub e: Vec<f64>,
    #[serde(default)]
    pub block: Vec<Vec<f64>>,
    #[serde(default)]
    pub h_y: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlrnnConfig {
    pub m: usize,
    pub a_diag: Vec<f64>,
    pub w: Vec<Vec<f64>>,
    pub h: Vec<f64>,
    #[serde(default)]
    pub relaxed_diagonal: bool,
}

#[derive(Debug)]
pub enum ConfigError {
    Io {
        path: String,
        source: std::io::Error,
    },
    Syntax(serde_json::Error),
    Field {
        field: String,
        message: String,
    },
    /// The values are well-formed but violate a system invariant.
    System(pwl_cycles::Error),
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfigError::Io { path, source } => write!(f, "cannot read {path}: {source}"),
            ConfigError::Syntax(e) => write!(f, "config: {e}"),
            ConfigError::Field { field, message } => write!(f, "config field `{field}`: {message}"),
            ConfigError::System(e) => write!(f, "{}: {e}", e.name()),
        }
    }
}

fn field_err(field: impl Into<String>, message: impl Into<String>) -> ConfigError {
    ConfigError::Field {
        field: field.into(),
        message: message.into(),
    }
}

fn check_len(field: &str, v: &[f64], m: usize) -> Result<(), ConfigError> {
    if v.len() != m {
        return Err(field_err(
            field,
            format!("expected {m} entries, got {}", v.len()),
        ));
    }
    Ok(())
}

fn check_rows(field: &str, rows: &[Vec<f64>], m: usize) -> Result<DMatrix<f64>, ConfigError> {
    if rows.len() != m {
        return Err(field_err(
            field,
            format!("expected {m} rows, got {}", rows.len()),
        ));
    }
    for (i, row) in rows.iter().enumerate() {
        if row.len() != m {
            return Err(field_err(
                format!("{field}[{i}]"),
                format!("expected {m} entries, got {}", row.len()),
            ));
        }
    }
    Ok(DMatrix::from_fn(m, m, |r, c| rows[r][c]))
}

fn matrix_rows(m: &DMatrix<f64>) -> Vec<Vec<f64>> {
    m.row_iter().map(|r| r.iter().copied().collect()).collect()
}

impl CanonicalConfig {
    pub fn build(&self) -> Result<CanonicalSystem, ConfigError> {
        let m = self.m;
        check_len("b", &self.b, m)?;
        check_len("e", &self.e, m)?;
        check_len("h_y", &self.h_y, m)?;
        let block = check_rows("block", &self.block, m)?;
        CanonicalSystem::new(
            self.a,
            self.d,
            DVector::from_vec(self.b.clone()),
            DVector::from_vec(self.e.clone()),
            block,
            DVector::from_vec(self.h_y.clone()),
            self.mu_hat,
        )
        .map_err(ConfigError::System)
    }

    pub fn from_system(sys: &CanonicalSystem) -> CanonicalConfig {
        CanonicalConfig {
            m: sys.block_dim(),
            a: sys.a,
            d: sys.d,
            mu_hat: sys.mu_hat,
            b: sys.b.iter().copied().collect(),
            e: sys.e.iter().copied().collect(),
            block: matrix_rows(&sys.block),
            h_y: sys.h_y.iter().copied().collect(),
        }
    }
}

impl PlrnnConfig {
    pub fn build(&self) -> Result<PlrnnSystem, ConfigError> {
        let m = self.m;
        check_len("a_diag", &self.a_diag, m)?;
        check_len("h", &self.h, m)?;
        let w = check_rows("w", &self.w, m)?;
        PlrnnSystem::new(
            DVector::from_vec(self.a_diag.clone()),
            w,
            DVector::from_vec(self.h.clone()),
            self.relaxed_diagonal,
        )
        .map_err(ConfigError::System)
    }
}

impl SystemConfig {
    pub fn parse(text: &str) -> Result<SystemConfig, ConfigError> {
        serde_json::from_str(text).map_err(ConfigError::Syntax)
    }

    pub fn load(path: &Path) -> Result<SystemConfig, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text)
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("config serializes");
        out.push('\n');
        out
    }
}
