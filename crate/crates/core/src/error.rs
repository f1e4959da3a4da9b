use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degenerate form: {0}")]
    DegenerateForm(String),
    #[error("Gram matrix is not symmetric")]
    NonSymmetric,
    #[error("unsupported field: {0}")]
    UnsupportedField(String),
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("input must be nonzero")]
    ZeroInput,
    #[error("element has no stored diagonal representative")]
    NonCanonicalInput,
    #[error("undecided: {0}")]
    Undecided(String),
    #[error("unknown generator `{name}` for {context}")]
    UnknownGenerator { name: String, context: String },
    #[error("presentation mismatch: {0} vs {1}")]
    PresentationMismatch(String, String),
    #[error("denominator is not homogeneous of positive degree: {0}")]
    NonHomogeneousDenominator(String),
    #[error("character exponent must be positive")]
    NonPositiveExponent,
    #[error("unsupported representation: {0}")]
    UnsupportedIrrep(String),
    #[error("normal Euler class is not invertible after localization: {0}")]
    NonInvertibleNormalEuler(String),
    #[error("unsupported residue field: {0}")]
    UnsupportedResidueField(String),
    #[error("inconsistent field: {0}")]
    InconsistentField(String),
    #[error("bad dimension: {0}")]
    BadDimension(String),
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("unsupported operation: {0}")]
    Unsupported(String),
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("integer overflow: {0}")]
    Overflow(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn syntax(offset: usize, message: impl Into<String>) -> Self {
        Error::Syntax { offset, message: message.into() }
    }
}
