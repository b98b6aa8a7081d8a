use thiserror::Error;

/// Error type shared by the whole workspace.
///
/// `Input`, `Unsupported`, `Resonance`, `Ambiguous` and `Degenerate` are
/// problems with what the caller handed in; `PropertyViolation`,
/// `ConstructionBug` and `SearchExhausted` mean a certified check failed.
#[derive(Debug, Error)]
pub enum VortexError {
    #[error("invalid input: {0}")]
    Input(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("resonance at n = {n}: the divisor e^(2πi nα) - e^(2πi β) vanishes")]
    Resonance { n: i64 },

    #[error("ambiguous classification: {0}")]
    Ambiguous(String),

    #[error("degenerate isometry: {0}")]
    Degenerate(String),

    #[error("property violation [{property}]: {detail}")]
    PropertyViolation { property: String, detail: String },

    #[error("construction bug: {0}")]
    ConstructionBug(String),

    #[error("search exhausted: {0}")]
    SearchExhausted(String),
}

impl VortexError {
    pub fn input(msg: impl Into<String>) -> Self {
        VortexError::Input(msg.into())
    }

    pub fn violation(property: impl Into<String>, detail: impl Into<String>) -> Self {
        VortexError::PropertyViolation {
            property: property.into(),
            detail: detail.into(),
        }
    }

    /// Exit code the CLI maps this error to (input-class 1, check-class 2).
    pub fn exit_code(&self) -> i32 {
        match self {
            VortexError::Input(_)
            | VortexError::Unsupported(_)
            | VortexError::Resonance { .. }
            | VortexError::Ambiguous(_)
            | VortexError::Degenerate(_) => 1,
            VortexError::PropertyViolation { .. }
            | VortexError::ConstructionBug(_)
            | VortexError::SearchExhausted(_) => 2,
        }
    }

    /// Short machine-readable kind tag for diagnostic output.
    pub fn kind(&self) -> &'static str {
        match self {
            VortexError::Input(_) => "input",
            VortexError::Unsupported(_) => "unsupported",
            VortexError::Resonance { .. } => "resonance",
            VortexError::Ambiguous(_) => "ambiguous",
            VortexError::Degenerate(_) => "degenerate",
            VortexError::PropertyViolation { .. } => "property-violation",
            VortexError::ConstructionBug(_) => "construction-bug",
            VortexError::SearchExhausted(_) => "search-exhausted",
        }
    }
}

pub type Result<T> = std::result::Result<T, VortexError>;
