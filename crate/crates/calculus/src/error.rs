use thiserror::Error;

/// Errors raised by the calculus.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CalcError {
    /// The input text is not a term.
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse {
        /// 1-based line.
        line: usize,
        /// 1-based column.
        col: usize,
        /// What went wrong.
        msg: String,
    },
    /// A typing rule failed.
    #[error("type error ({rule}): {msg}")]
    Type {
        /// The rule whose premises failed.
        rule: &'static str,
        /// Details.
        msg: String,
    },
    /// Normalisation ran out of fuel.
    #[error("fuel exhausted after {steps} steps")]
    FuelExhausted {
        /// Steps performed.
        steps: usize,
    },
    /// A reduction step changed the denotation.
    #[error("soundness violation at step {step} ({rule}): {detail}")]
    SoundnessViolation {
        /// Index of the step in the trace.
        step: usize,
        /// The rule that fired.
        rule: String,
        /// The first differing atom.
        detail: String,
    },
    /// The semantic engine failed (usually a budget cap).
    #[error("semantics: {0}")]
    Semantics(#[from] cohdiff::Error),
}

/// Result alias for the calculus.
pub type Result<T> = std::result::Result<T, CalcError>;

pub(crate) fn type_err<T>(rule: &'static str, msg: impl Into<String>) -> Result<T> {
    Err(CalcError::Type { rule, msg: msg.into() })
}
