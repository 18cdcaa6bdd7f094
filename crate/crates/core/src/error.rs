use thiserror::Error;

/// Errors produced by the analysis routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parameter `{name}` is not finite ({value})")]
    NonFinite { name: &'static str, value: f64 },

    #[error("dimension mismatch for `{field}`: expected {expected}, got {actual}")]
    DimensionMismatch {
        field: &'static str,
        expected: usize,
        actual: usize,
    },

    #[error("invalid cycle length {n} (need n >= {min})")]
    InvalidCycleLength { n: usize, min: usize },

    #[error("offset mu_hat is zero; the origin is a fixed point and no cycle is defined")]
    DegenerateOffset,

    #[error("singular denominator: |1 - a^(n-1) d| = {value:e} is below {tol:e}")]
    SingularDenominator { value: f64, tol: f64 },

    #[error("candidate cycle is not admissible: x = {xs:?} does not match sequence {sequence}")]
    NotAdmissible { xs: Vec<f64>, sequence: String },

    #[error(
        "linear part has an eigenvalue within {tol:e} of 1 (lambda = {re} + {im}i, power {power})"
    )]
    EigenvalueOne {
        re: f64,
        im: f64,
        power: usize,
        tol: f64,
    },

    #[error("block matrix is not diagonal (entry ({row}, {col}) = {value})")]
    NotDiagonal { row: usize, col: usize, value: f64 },

    #[error("invalid symbol {0:?} in sequence")]
    InvalidSymbol(char),

    #[error("empty symbolic sequence")]
    EmptySequence,

    #[error("cycle closure residual {residual:e} exceeds tolerance {tol:e}")]
    ClosureFailure { residual: f64, tol: f64 },

    #[error("orbit diverged at step {step} (|z| > {threshold:e})")]
    Diverged { step: usize, threshold: f64 },

    #[error("regions are identical")]
    SameRegion,

    #[error("regions are not adjacent (they differ in {hamming} coordinates)")]
    NotAdjacent { hamming: usize },

    #[error(
        "connection matrix has nonzero diagonal entry w[{index}][{index}] = {value} in strict mode"
    )]
    DiagonalWeight { index: usize, value: f64 },

    #[error("row {row} of W has nonzero off-diagonal entries {entries:?}")]
    StructureViolation {
        row: usize,
        entries: Vec<(usize, f64)>,
    },

    #[error("region ordinal {ordinal} out of range for dimension {dim}")]
    RegionOutOfRange { ordinal: usize, dim: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Name of the violated condition, e.g. `"EigenvalueOne"`.
    pub fn name(&self) -> &'static str {
        match self {
            Error::NonFinite { .. } => "NonFinite",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::InvalidCycleLength { .. } => "InvalidCycleLength",
            Error::DegenerateOffset => "DegenerateOffset",
            Error::SingularDenominator { .. } => "SingularDenominator",
            Error::NotAdmissible { .. } => "NotAdmissible",
            Error::EigenvalueOne { .. } => "EigenvalueOne",
            Error::NotDiagonal { .. } => "NotDiagonal",
            Error::InvalidSymbol(_) => "InvalidSymbol",
            Error::EmptySequence => "EmptySequence",
            Error::ClosureFailure { .. } => "ClosureFailure",
            Error::Diverged { .. } => "Diverged",
            Error::SameRegion => "SameRegion",
            Error::NotAdjacent { .. } => "NotAdjacent",
            Error::DiagonalWeight { .. } => "DiagonalWeight",
            Error::StructureViolation { .. } => "StructureViolation",
            Error::RegionOutOfRange { .. } => "RegionOutOfRange",
            Error::InvalidArgument(_) => "InvalidArgument",
        }
    }
}
