//! Relational models of linear logic — coherence spaces, non-uniform
//! coherence spaces and plain relations — equipped with the summability
//! functor `S` and a coherent differentiation `∂ : !S → S!`.
//!
//! Morphisms are finite relations between webs of structural [`Atom`]s.
//! Infinite webs (those of `!E`) are explored up to a [`Budget`] on nested
//! multiset degree; composites are evaluated lazily through [`expr::Expr`]
//! so that truncated results are exact.

pub mod atom;
pub mod differential;
pub mod error;
pub mod exponential;
pub mod expr;
pub mod lawcheck;
pub mod rel;
pub mod space;
pub mod summability;
pub mod text;

pub use atom::{mset_sum, multisets_up_to, Atom, AtomKind, Multiset};
pub use error::{Error, NotSummable, Result};
pub use rel::{rel_compose, rel_equal_on, Budget, Counterexample, Rel};
pub use space::{Kind, Space, Verdict};
