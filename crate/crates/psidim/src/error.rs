//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// A score vector (or class tensor used as one) has fewer than the
    /// required three categories.
    #[error("at least 3 categories are required, got Q = {0}")]
    TooFewCategories(usize),

    /// A non-finite value where a finite real is required.
    #[error("non-finite value in {context}")]
    NonFinite { context: &'static str },

    /// A category label outside the configured range.
    #[error("label {label} out of range for {q} categories")]
    LabelOutOfRange { label: usize, q: usize },

    /// A numeric parameter violated its domain constraint.
    #[error("parameter `{name}` must satisfy {requirement}, got {value}")]
    InvalidParameter {
        name: &'static str,
        requirement: &'static str,
        value: f64,
    },

    /// An operation that needs at least one sample got none.
    #[error("empty sample")]
    EmptySample,

    /// An index into a class tensor, model or dataset is out of range.
    #[error("{what} index {index} out of range (len {len})")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        len: usize,
    },

    /// Shapes of two objects that must agree do not.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// An exhaustive search would exceed its caller-supplied budget.
    /// Searches never fall back to approximations; they stop here.
    #[error("search budget exceeded: {needed} {unit} needed, budget is {budget}")]
    Overbudget {
        needed: u128,
        budget: u64,
        unit: &'static str,
    },

    /// A shattering notion was applied to a class it does not fit.
    #[error("notion mismatch: {0}")]
    NotionMismatch(String),

    /// Structured input (tensor, model, certificate, dataset) failed to parse.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// Certificate replay failed a definitional check.
    #[error("certificate replay failed: {0}")]
    CertificateInvalid(String),

    /// A configuration file contained a key this tool does not know.
    #[error("unknown configuration key `{0}`")]
    UnknownConfigKey(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn non_positive(name: &'static str, value: f64) -> Self {
        Error::InvalidParameter {
            name,
            requirement: "> 0",
            value,
        }
    }
}
