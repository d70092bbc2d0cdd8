//! A coherent differential PCF: simply typed λ-calculus with a derivative
//! operator `D`, the summability constructs `π`, `ι`, `σ`, `c`, finite sums,
//! ground numerals and a fixpoint, together with
//!
//! * a parser and printer ([`parse`]),
//! * a bidirectional type checker ([`typing`]),
//! * deterministic reduction with `∂let` ([`reduce`]),
//! * a relational denotation used to check soundness ([`denot`]).

pub mod corpus;
pub mod denot;
pub mod error;
pub mod parse;
pub mod reduce;
pub mod syntax;
pub mod typing;

pub use denot::{
    check_step, interp_term, interp_type, soundness_check, validate_rules, SemEnv, SemRel, SoundnessReport,
};
pub use error::{CalcError, Result};
pub use parse::{parse, parse_judgment, parse_ty};
pub use reduce::{dlet, normalize, trace, Reducer, Rule};
pub use syntax::{Constant, Context, Term, Ty};
pub use typing::{check, has_type, typecheck};
