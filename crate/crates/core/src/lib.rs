//! Workbench for permutation patterns and finite permutation classes.
//!
//! The crate is organized around a handful of small value types:
//!
//! - [`Permutation`]: one-line notation over `1..=n`, with containment,
//!   direct sums, reversal, composition, inflation, and monotone-subsequence
//!   statistics.
//! - [`ClassExpr`] / [`FiniteClass`]: a small expression language for
//!   permutation classes (`Av(..)`, `G(..)`, inflations, merges,
//!   compositions, unions) together with a length-capped realization of the
//!   class it denotes.
//! - [`Coloring`]: position colorings certifying merges and splits.
//! - [`VerificationReport`]: deterministic, machine-readable outcome of a
//!   named check.
//!
//! Everything is immutable after construction and all operations are pure,
//! so values can be shared freely across threads.

pub mod budget;
pub mod checks;
pub mod class;
pub mod compose;
pub mod error;
pub mod merge;
pub mod perm;
pub mod report;

pub use budget::Meter;
pub use class::expr::ClassExpr;
pub use class::finite::FiniteClass;
pub use class::realize::{realize, realize_with};
pub use error::{Error, Result};
pub use merge::Coloring;
pub use perm::{all_permutations, Embedding, Permutation, MAX_LEN};
pub use report::{Counterexample, Verdict, VerificationReport};
