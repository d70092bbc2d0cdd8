use thiserror::Error;

use crate::atom::Atom;

/// Errors raised by the semantic engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An enumeration or evaluation hit the `max_atoms` cap.
    #[error("budget exceeded: enumerating {what} produced more than {limit} atoms")]
    BudgetExceeded {
        /// What was being enumerated.
        what: String,
        /// The cap that was hit.
        limit: usize,
    },
    /// An atom does not have the shape required by a space.
    #[error("malformed atom {atom} for space {space}")]
    MalformedAtom {
        /// The offending atom.
        atom: String,
        /// The space it was checked against.
        space: String,
    },
    /// Two morphisms are not summable.
    #[error("{0}")]
    NotSummable(NotSummable),
    /// A space description is inconsistent.
    #[error("invalid space: {0}")]
    InvalidSpace(String),
    /// Spaces of different model kinds were combined.
    #[error("kind mismatch: {0}")]
    KindMismatch(String),
    /// A textual input could not be parsed.
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse {
        /// 1-based line.
        line: usize,
        /// 1-based column.
        col: usize,
        /// What went wrong.
        msg: String,
    },
}

/// Why a pair of morphisms has no summability witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NotSummable {
    /// Human-readable reason.
    pub reason: String,
    /// The violating pair: an element of the first morphism and one of the
    /// second (as `input ↦ output` pairs).
    pub left: (Atom, Atom),
    /// See [`NotSummable::left`].
    pub right: (Atom, Atom),
}

impl std::fmt::Display for NotSummable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "not summable ({}): {} ↦ {} vs {} ↦ {}",
            self.reason, self.left.0, self.left.1, self.right.0, self.right.1
        )
    }
}

/// Result alias for this crate.
pub type Result<T> = std::result::Result<T, Error>;
