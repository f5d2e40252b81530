//! Engine for localizations of finite categories and finite strict 2-categories.
//!
//! The crate is organized bottom-up:
//!
//! * [`fincat`] — finite categories as explicit tables, validation, a brute-force
//!   pullback oracle, and the shared fixture corpus.
//! * [`cf_fractions`] — the right calculus of fractions (axioms CF1–CF4), the
//!   category of fractions built from spans, and the strong-fiber-product
//!   conditions (d)/(e) in the localization.
//! * [`bicat`] — finite bicategories (strict 2-categories on the input side,
//!   localizations with explicit associator tables on the output side), adjoint
//!   equivalences, and the weak-fiber-product checker with its transport moves.
//! * [`bf_fractions`] — the right bicalculus of fractions (axioms BF1–BF5), the
//!   choice table, and the concrete bicategory of fractions with quintuple 2-cells.
//! * [`wfp_fractions`] — the finite conditions (a)/(b)/(c) equivalent to the
//!   existence of weak fiber products in the localization, the unit-square and
//!   general-square builders, and the cross-checking theorem suite.
//! * [`frontend`] — the `.cat` declarative format, its parser, and the CLI.
//!
//! Everything is immutable after construction and every operation is a pure
//! function, so the library is safe to call from multiple threads.

pub mod bf_fractions;
pub mod bicat;
pub mod cf_fractions;
pub mod fincat;
pub mod frontend;
pub mod suite;
pub mod wfp_fractions;

use thiserror::Error;

/// Crate-wide error type.
///
/// Structural malformation (dangling indices, missing table entries, size
/// overflows) is a hard error, kept distinct from *law violations*, which are
/// reported as data (see the `ValidationReport` types) rather than errors.
#[derive(Debug, Error)]
pub enum Error {
    /// A table is structurally malformed (dangling index, duplicate name,
    /// missing composite, ill-typed entry).
    #[error("structural error: {0}")]
    Structure(String),
    /// A pair of morphisms/cells was composed without matching endpoints.
    #[error("non-composable: {0}")]
    NonComposable(String),
    /// Input exceeds the supported size caps.
    #[error("size limit exceeded: {0}")]
    SizeLimit(String),
    /// An operation requiring the CF axioms was run on a class violating them.
    #[error("calculus-of-fractions axioms fail: {0}")]
    CfViolation(String),
    /// An operation requiring the BF axioms was run on a class violating them.
    #[error("bicalculus-of-fractions axioms fail: {0}")]
    BfViolation(String),
    /// A precondition of an operation does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// A search that is guaranteed to succeed under the preconditions failed;
    /// this indicates a bug in the engine, not bad input.
    #[error("engine defect: {0}")]
    Defect(String),
    /// Unknown fixture name.
    #[error("unknown fixture: {0}")]
    UnknownFixture(String),
    /// Parse error from the frontend (carries position info).
    #[error("{0}")]
    Parse(#[from] frontend::ParseError),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
