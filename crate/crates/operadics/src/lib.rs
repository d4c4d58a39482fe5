//! A computational kernel for planar (non-symmetric) operads over finite
//! graded sets.
//!
//! Everything in this crate is finite and truncated. A graded set lists its
//! elements level by level up to a bound, an operad is an explicit table of
//! partial compositions, and every claimed identity is checked by exhaustive
//! enumeration within the truncation:
//!
//! * [`graded`]: graded sets and maps, the composition product, the graded
//!   cartesian product, and the distributive isomorphism between them.
//! * [`tree`]: planar rooted trees, their numerical invariants, and bounded
//!   enumeration.
//! * [`free_operad`]: labeled trees, grafting, free operads on a graded set,
//!   and the pointed variant obtained by splicing out a basepoint.
//! * [`table`]: finite truncated operads as composition tables, axiom and
//!   homomorphism verification, the associative operad, and endomorphism
//!   operads of finite sets.
//! * [`coproduct`]: operad coproducts by rewriting labeled trees to unique
//!   alternating identity-free normal forms, the branch-count census with its
//!   pushout recursion, and an independent congruence-closure oracle.
//! * [`modules`]: right modules and bimodules, the Hochschild resolution,
//!   enveloping operads of free pointed bimodules, the splitting resolution of
//!   a free operad, and endomorphism operads of right modules.
//! * [`cosimplicial`]: the cosimplicial object of a multiplicative operad,
//!   identity verification, discrete limits, and the comparison with maps out
//!   of the bar resolution.
//! * [`cli`]: the `operadics` command line front end.
//!
//! The [`acceptance`] module bundles the verification suite run both by
//! `operadics selftest` and by the `acceptance` integration test target.

pub mod acceptance;
pub mod cli;
pub mod coproduct;
pub mod cosimplicial;
pub mod elem;
pub mod free_operad;
pub mod graded;
pub mod modules;
pub mod report;
pub mod schema;
pub mod simplicial;
pub mod table;
pub mod tree;
pub(crate) mod util;

pub use elem::Elem;
pub use free_operad::LabeledTree;
pub use graded::{GradedMap, GradedSet};
pub use report::{Check, Report};
pub use table::{Multiplication, OpRef, OperadMap, TableOperad};
pub use tree::Tree;

/// Errors shared by all modules.
///
/// `TruncationExceeded` is kept separate from the other variants because the
/// command line maps it to its own exit code: an identity that cannot even be
/// stated inside the truncation is not a verification failure.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("truncation exceeded: {what} needs level {needed} > bound {bound}")]
    TruncationExceeded {
        what: String,
        needed: u32,
        bound: u32,
    },
    #[error("arity mismatch: {what} expected {expected}, got {got}")]
    ArityMismatch {
        what: String,
        expected: usize,
        got: usize,
    },
    #[error("invalid element: {0}")]
    InvalidElement(String),
    #[error("schema error: {0}")]
    Schema(String),
    #[error("enumeration too large: {0}")]
    Blowup(String),
}

pub type Result<T> = std::result::Result<T, Error>;
