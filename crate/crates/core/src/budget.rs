//! Resource caps and search budgets.
//!
//! Every operation that allocates memory proportional to a numeric range, or
//! enumerates a combinatorial family, is bounded by an explicit cap and
//! fails with a typed error instead of exhausting the machine. Exhaustive
//! searches count decision nodes against a [`SearchBudget`] so a too-hard
//! instance surfaces as [`crate::Error::Timeout`], distinguishable from a
//! certified negative answer.

use serde::Serialize;
use std::time::Instant;

use crate::error::{Error, Result};

/// Memory and enumeration caps for the non-search operations.
///
/// The defaults are sized for interactive desk use: a full 1-D window at the
/// default cap is 2³⁰ cells = 128 MiB of bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Caps {
    /// Maximum number of cells (bit positions) in any DP window, 1-D or
    /// multi-dimensional.
    pub window_cells: u64,
    /// Maximum volume of a generalized progression that `enumerate` will
    /// expand.
    pub gap_volume: u64,
    /// Maximum number of subsets a census is allowed to walk.
    pub census_subsets: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            window_cells: 1 << 30,
            gap_volume: 1 << 24,
            census_subsets: 50_000_000,
        }
    }
}

impl Caps {
    /// Checks a prospective window size against the cap.
    pub fn check_window(&self, cells: u128) -> Result<()> {
        if cells > self.window_cells as u128 {
            Err(Error::Window {
                cells,
                cap: self.window_cells,
            })
        } else {
            Ok(())
        }
    }
}

/// Node budget for exhaustive searches. One node = one attempted assignment
/// or extension decision.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SearchBudget {
    pub node_limit: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            node_limit: 1_000_000_000,
        }
    }
}

impl SearchBudget {
    pub fn new(node_limit: u64) -> Self {
        SearchBudget { node_limit }
    }
}

/// Effort accounting attached to search results.
#[derive(Debug, Clone, Copy, Default, Serialize)]
pub struct SearchStats {
    /// Decision nodes actually explored.
    pub nodes: u64,
    /// Wall-clock time of the search in milliseconds.
    pub wall_ms: u128,
}

/// Internal node counter used by the searches. Incrementing past the budget
/// returns a `Timeout` error carrying the counts.
pub(crate) struct NodeCounter {
    nodes: u64,
    limit: u64,
    started: Instant,
}

impl NodeCounter {
    pub fn new(budget: &SearchBudget) -> Self {
        NodeCounter {
            nodes: 0,
            limit: budget.node_limit,
            started: Instant::now(),
        }
    }

    #[inline]
    pub fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.limit {
            Err(Error::Timeout {
                nodes: self.nodes,
                limit: self.limit,
            })
        } else {
            Ok(())
        }
    }

    pub fn stats(&self) -> SearchStats {
        SearchStats {
            nodes: self.nodes,
            wall_ms: self.started.elapsed().as_millis(),
        }
    }
}
