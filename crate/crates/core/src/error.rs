//! Error type shared by every module in the crate.
//!
//! The variants are deliberately coarse: callers (and the CLI) mostly care
//! about three classes of failure — bad input (`Domain`, `Range`, `Shape`,
//! `Precondition`, `Parse`, …), resource limits (`Window`, `Cap`, `Budget`,
//! `Timeout`), and honest negative results that are *not* failures of the
//! requested computation but of its mathematical hypotheses (`Degenerate`,
//! `CollisionNotFound`, `BaselineMismatch`).

use thiserror::Error;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Checked `i64` arithmetic overflowed while computing set elements,
    /// window bounds, or walk sums.
    #[error("integer overflow while {context}")]
    Overflow { context: String },

    /// A 1-D or grid dynamic program would need more window cells than the
    /// configured cap allows.
    #[error("DP window of {cells} cells exceeds cap of {cap}")]
    Window { cells: u128, cap: u64 },

    /// An enumeration (progression volume, grid box, …) is larger than the
    /// configured cap.
    #[error("{what} of size {size} exceeds cap of {cap}")]
    Cap {
        what: &'static str,
        size: u128,
        cap: u64,
    },

    /// A counting task (subset census, collision scan, exact Monte Carlo)
    /// would examine more cases than the configured budget.
    #[error("{what} would examine {size} cases, over budget of {cap}")]
    Budget {
        what: &'static str,
        size: u128,
        cap: u64,
    },

    /// An exhaustive search ran out of decision nodes before reaching a
    /// conclusion. Distinct from a certified negative answer.
    #[error("search exhausted node budget ({nodes} of {limit} nodes used)")]
    Timeout { nodes: u64, limit: u64 },

    /// A parameter is outside the supported range (e.g. selecting more
    /// elements than the set has).
    #[error("range error: {what}")]
    Range { what: String },

    /// A value violates a domain requirement (e.g. nonpositive elements
    /// where positive ones are required).
    #[error("domain error: {what}")]
    Domain { what: String },

    /// A structural requirement on the input shape is violated (wrong rank,
    /// wrong dimension, mismatched lengths, missing box, odd cardinality).
    #[error("shape error: {what}")]
    Shape { what: String },

    /// A documented mathematical precondition of the operation fails for
    /// this input.
    #[error("precondition violated: {what}")]
    Precondition { what: String },

    /// The input is too small or too degenerate for the operation to make
    /// progress (e.g. fewer than two unused elements left to draw from).
    #[error("degenerate input: {what}")]
    Degenerate { what: String },

    /// A required intermediate object turned out empty.
    #[error("empty {what}")]
    Empty { what: &'static str },

    /// A collision witness was requested for parameters that admit none in
    /// the searched range.
    #[error("no collision exists in the searched range")]
    CollisionNotFound,

    /// The modulus passed to a prime-indexed construction is not prime.
    #[error("{p} is not prime")]
    NotPrime { p: u64 },

    /// A freshly computed certified value disagrees with the recorded
    /// baseline.
    #[error("baseline mismatch for {kind}(k={k}, r={r}): recorded {recorded}, computed {computed}")]
    BaselineMismatch {
        kind: String,
        k: u64,
        r: u32,
        recorded: u64,
        computed: u64,
    },

    /// A text input (set file, progression descriptor, grid file, coloring
    /// string) failed to parse.
    #[error("parse error: {what}")]
    Parse { what: String },

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Shorthand constructors keep call sites compact.
    pub fn overflow(context: impl Into<String>) -> Self {
        Error::Overflow {
            context: context.into(),
        }
    }

    pub fn range(what: impl Into<String>) -> Self {
        Error::Range { what: what.into() }
    }

    pub fn domain(what: impl Into<String>) -> Self {
        Error::Domain { what: what.into() }
    }

    pub fn shape(what: impl Into<String>) -> Self {
        Error::Shape { what: what.into() }
    }

    pub fn precondition(what: impl Into<String>) -> Self {
        Error::Precondition { what: what.into() }
    }

    pub fn degenerate(what: impl Into<String>) -> Self {
        Error::Degenerate { what: what.into() }
    }

    pub fn parse(what: impl Into<String>) -> Self {
        Error::Parse { what: what.into() }
    }

    /// True for failures caused by resource limits rather than by the input
    /// being invalid. The CLI maps these to a dedicated exit code.
    pub fn is_resource_limit(&self) -> bool {
        matches!(
            self,
            Error::Window { .. } | Error::Cap { .. } | Error::Budget { .. } | Error::Timeout { .. }
        )
    }
}
