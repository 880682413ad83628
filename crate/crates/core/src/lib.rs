//! Exact computations on small sets of integers: restricted sumsets,
//! generalized arithmetic progressions, grid (multi-dimensional) sumsets,
//! colorings avoiding monochromatic structures, small Ramsey-type numbers
//! for progressions and additive cubes, and a constructive growth procedure
//! for subset sums of Sidon sets.
//!
//! Everything here is deterministic and allocation-bounded: operations that
//! build bit-vector windows or enumerate combinatorial families take explicit
//! caps and fail with a typed error instead of exhausting memory, and the
//! exhaustive searches count decision nodes against a budget instead of
//! running open-ended. Arithmetic on set elements is checked `i64`; overflow
//! is reported as an error, never wrapped.
//!
//! The crate is organized bottom-up:
//!
//! * [`bits`] — offset bit-vector windows, the kernel behind every 1-D
//!   subset-sum style dynamic program;
//! * [`intset`] — sorted integer sets, progression witnesses, text parsing;
//! * [`sumset`] — restricted/iterated sumsets, chain witnesses, longest
//!   progression search, Sidon checks;
//! * [`gap`] — generalized arithmetic progressions of small rank, their
//!   enumeration, a six-part decomposition of symmetric rank-2 progressions,
//!   collision witnesses for improper ones, and covering progressions;
//! * [`grid`] — sets of lattice points in a box, iterated restricted sumsets
//!   in up to four dimensions, stack/dyadic decompositions, replacement-walk
//!   witnesses, and a rank-lowering embedding;
//! * [`coloring`] — finite colorings, product colorings, detectors and
//!   backtracking searches for monochromatic progressions and cubes, and
//!   Monte Carlo estimation;
//! * [`ramsey`] — certified smallest-`n` computations for progressions and
//!   cubes, a census of subset-sum sizes, and baseline bookkeeping;
//! * [`sidon`] — Sidon set constructions and the two-phase growth procedure
//!   that drives subset-sum counts to cubic size;
//! * [`verify`] — batch self-check suites over randomized inputs, reusable
//!   from both the test suite and the command line.

pub mod bits;
pub mod budget;
pub mod coloring;
pub mod error;
pub mod gap;
pub mod grid;
pub mod intset;
pub mod ramsey;
pub mod rng;
pub mod sidon;
pub mod sumset;
pub mod verify;

pub use budget::{Caps, SearchBudget, SearchStats};
pub use error::{Error, Result};
pub use intset::{ApWitness, IntSet};
