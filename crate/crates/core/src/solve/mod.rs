//! Exact solvers.
//!
//! Domination numbers are found by iterative deepening over the target size
//! with a coverage branch-and-bound ([`solve_domination`]). The 2-packing
//! number combines a diameter shortcut, counting bounds, an exact search over
//! Venn-region intersection patterns and a maximum-clique search on the
//! compatibility graph ([`solve_rho2`]). Slow brute-force oracles live in
//! [`brute_force_domination`].

mod bitset;
mod brute;
mod clique;
mod domination;
mod packing;
mod pattern;
mod threshold;

use std::fmt;
use std::time::{Duration, Instant};

use serde::Serialize;

pub use brute::{brute_force_domination, BRUTE_FORCE_MAX_SIZE, BRUTE_FORCE_MAX_VERTICES};
pub use domination::{domination_lower_bound, solve_domination};
pub use packing::{counting_upper_bound, solve_rho2};
pub use pattern::{pattern_packing, PatternOutcome, PATTERN_MAX_MEMBERS};
pub use threshold::{corollary_prediction, threshold_predictions};

use crate::certify::InvariantKind;
use crate::error::{param_err, Result};
use crate::kneser::{default_vertex_ceiling, KneserParams, VertexFamily};

#[derive(Clone, Debug)]
pub struct SolverConfig {
    pub timeout: Duration,
    pub thread_count: usize,
    /// Fix the first chosen vertex to [1..r].
    pub symmetry_breaking: bool,
    /// Ceiling on `binomial(n, r)` for anything that enumerates vertices.
    pub vertex_ceiling: u64,
    /// Largest vertex set on which adjacency bit sets are built.
    pub search_vertex_limit: usize,
    /// Use closed-form bounds and witnesses inside their proven hypotheses.
    pub theorem_bounds: bool,
    /// Use the intersection-pattern search for 2-packings.
    pub pattern_search: bool,
    /// Largest packing size the pattern search is asked about.
    pub pattern_max_members: u32,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            timeout: Duration::from_secs(60),
            thread_count: 1,
            symmetry_breaking: true,
            vertex_ceiling: default_vertex_ceiling(),
            search_vertex_limit: 20_000,
            theorem_bounds: true,
            pattern_search: true,
            pattern_max_members: 6,
        }
    }
}

impl SolverConfig {
    pub fn with_timeout(mut self, timeout: Duration) -> Self {
        self.timeout = timeout;
        self
    }

    /// Plain search: no closed-form bounds and no pattern search.
    pub fn search_only(mut self) -> Self {
        self.theorem_bounds = false;
        self.pattern_search = false;
        self
    }

    pub(crate) fn validate(&self) -> Result<()> {
        if self.timeout.is_zero() {
            return param_err("timeout must be positive");
        }
        if self.thread_count == 0 {
            return param_err("thread count must be positive");
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SolveStatus {
    Optimal,
    /// The search stopped early; the true value lies in `lo..=hi`.
    Bounds {
        lo: u64,
        hi: u64,
    },
    /// The invariant does not exist for these parameters.
    Undefined,
}

impl fmt::Display for SolveStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolveStatus::Optimal => f.write_str("optimal"),
            SolveStatus::Bounds { lo, hi } => write!(f, "bounds [{lo}, {hi}]"),
            SolveStatus::Undefined => f.write_str("undefined"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SolveStats {
    pub nodes: u64,
    pub elapsed_ms: u128,
    pub timed_out: bool,
    /// What closed the gap or produced the upper bound, e.g. `"search"`.
    pub bound_source: Option<&'static str>,
}

#[derive(Clone, Debug)]
pub struct SolveResult {
    pub params: KneserParams,
    pub kind: InvariantKind,
    /// 0 for the 2-packing number.
    pub k: u32,
    /// Exact value when optimal; otherwise the size of the best witness.
    pub value: Option<u64>,
    pub witness: Option<VertexFamily>,
    pub status: SolveStatus,
    pub stats: SolveStats,
}

impl SolveResult {
    pub fn is_optimal(&self) -> bool {
        self.status == SolveStatus::Optimal
    }

    /// The exact value, if the solver proved one.
    pub fn optimum(&self) -> Option<u64> {
        self.is_optimal().then_some(self.value).flatten()
    }

    pub(crate) fn undefined(params: KneserParams, kind: InvariantKind, k: u32, start: Instant) -> Self {
        SolveResult {
            params,
            kind,
            k,
            value: None,
            witness: None,
            status: SolveStatus::Undefined,
            stats: SolveStats {
                elapsed_ms: start.elapsed().as_millis(),
                ..Default::default()
            },
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct Deadline(Instant);

impl Deadline {
    pub fn after(timeout: Duration) -> Self {
        let now = Instant::now();
        Deadline(
            now.checked_add(timeout)
                .unwrap_or(now + Duration::from_secs(86400 * 365)),
        )
    }

    pub fn expired(&self) -> bool {
        Instant::now() >= self.0
    }
}
