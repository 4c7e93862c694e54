use thiserror::Error;

/// Errors produced by field construction, subspace calculus and the decoders.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("base field order {0} is not prime")]
    NonPrimeOrder(u16),

    #[error("extension degree must be at least 1")]
    ZeroDegree,

    #[error("field parameters out of supported range: {0}")]
    SizeLimit(String),

    #[error("operands belong to different fields")]
    FieldMismatch,

    #[error("zero has no multiplicative inverse")]
    ZeroInverse,

    #[error("scaling a subspace by zero is not invertible")]
    ZeroScalar,

    #[error("requested dimension {requested} exceeds ambient dimension {ambient}")]
    DimensionTooLarge { requested: usize, ambient: usize },

    #[error("enumeration of {size} elements exceeds cap {cap}")]
    EnumerationTooLarge { size: u128, cap: u64 },

    #[error("candidate multiset of {size} entries exceeds cap {cap}")]
    CandidateCap { size: u128, cap: u64 },

    #[error("vector length {got} does not match expected length {want}")]
    LengthMismatch { got: usize, want: usize },

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("failed to sample a full-rank parity-check matrix after {0} attempts")]
    RankSampling(u32),

    #[error("fixture parse error: {0}")]
    Parse(String),
}

impl Error {
    /// True for failures caused by resource bounds (enumeration and
    /// candidate caps, sampling budgets) rather than bad arguments.
    pub fn is_resource_limit(&self) -> bool {
        matches!(
            self,
            Error::EnumerationTooLarge { .. } | Error::CandidateCap { .. } | Error::RankSampling(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
