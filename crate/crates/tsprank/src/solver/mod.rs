//! Exact open-path solvers over an adjacency matrix.
//!
//! Three interchangeable backends share one contract: the returned tour is a
//! feasible open path over all nodes and its score is the global maximum over
//! all permutations. Ties are broken towards the lexicographically smallest
//! node sequence (brute force and Held-Karp guarantee this; branch and bound
//! is deterministic and prefers the lexicographically smaller tour among
//! incumbents of bit-equal score).

mod brute;
mod held_karp;
pub mod milp;
mod simplex;

pub use brute::brute_force_all;
pub use held_karp::held_karp;
pub use milp::{build_milp, MilpInstance};

use std::time::Duration;

use crate::error::{Error, Result};
use crate::model::{tour_score, AdjacencyMatrix, EdgeSelection, Tour};
use crate::scalar::Real;

pub const BRUTE_FORCE_MAX_NODES: usize = 10;
pub const HELD_KARP_MAX_NODES: usize = 22;
/// Default wall-clock budget for one MILP solve.
pub const DEFAULT_MILP_BUDGET: Duration = Duration::from_secs(10);

/// Which exact algorithm runs underneath [`solve`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum BackendKind {
    BruteForce,
    HeldKarp,
    BranchAndBoundMilp,
}

impl BackendKind {
    pub fn name(self) -> &'static str {
        match self {
            BackendKind::BruteForce => "brute-force",
            BackendKind::HeldKarp => "held-karp",
            BackendKind::BranchAndBoundMilp => "milp",
        }
    }

    /// Hard node limit, if the backend has one.
    pub fn max_nodes(self) -> Option<usize> {
        match self {
            BackendKind::BruteForce => Some(BRUTE_FORCE_MAX_NODES),
            BackendKind::HeldKarp => Some(HELD_KARP_MAX_NODES),
            BackendKind::BranchAndBoundMilp => None,
        }
    }
}

/// Backend choice plus its optional wall-clock budget (MILP only).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolverBackend {
    pub kind: BackendKind,
    pub time_budget: Option<Duration>,
}

impl SolverBackend {
    pub fn new(kind: BackendKind) -> Self {
        Self {
            kind,
            time_budget: None,
        }
    }

    pub fn brute_force() -> Self {
        Self::new(BackendKind::BruteForce)
    }

    pub fn held_karp() -> Self {
        Self::new(BackendKind::HeldKarp)
    }

    pub fn milp() -> Self {
        Self::new(BackendKind::BranchAndBoundMilp)
    }

    pub fn with_budget(mut self, budget: Duration) -> Self {
        self.time_budget = Some(budget);
        self
    }

    /// Fastest exact backend for a group of `n` entities: Held-Karp up to its
    /// limit, branch-and-bound MILP beyond.
    pub fn auto_for(n: usize) -> Self {
        if n <= HELD_KARP_MAX_NODES {
            Self::held_karp()
        } else {
            Self::milp()
        }
    }

    /// Rejects requests beyond the backend's node limit before any work.
    pub fn check_capacity(&self, n: usize) -> Result<()> {
        if let Some(max) = self.kind.max_nodes() {
            if n > max {
                return Err(Error::Capacity {
                    backend: self.kind.name(),
                    n,
                    max,
                });
            }
        }
        Ok(())
    }
}

/// A solver answer: the tour, its exact score (recomputed from the adjacency
/// matrix), and whether optimality was proven.
#[derive(Debug, Clone, PartialEq)]
pub struct SolveOutcome<F: Real> {
    pub tour: Tour,
    pub score: F,
    pub optimal: bool,
    /// Upper bound minus incumbent score when `optimal` is false.
    pub gap: F,
}

/// Finds the maximum-score open path. Errors on capacity violations and, for
/// the MILP backend, on an exceeded time budget (the error carries the best
/// incumbent). Use [`solve_lenient`] to accept flagged non-optimal incumbents.
pub fn solve<F: Real>(
    adj: &AdjacencyMatrix<F>,
    backend: SolverBackend,
) -> Result<(Tour, F)> {
    let outcome = solve_lenient(adj, backend)?;
    if !outcome.optimal {
        return Err(Error::Timeout {
            tour: outcome.tour,
            score: outcome.score.as_f64(),
            gap: outcome.gap.as_f64(),
        });
    }
    Ok((outcome.tour, outcome.score))
}

/// Like [`solve`], but a timed-out MILP run returns its incumbent flagged
/// `optimal = false` instead of failing.
pub fn solve_lenient<F: Real>(
    adj: &AdjacencyMatrix<F>,
    backend: SolverBackend,
) -> Result<SolveOutcome<F>> {
    let n = adj.n();
    backend.check_capacity(n)?;
    if n == 1 {
        return Ok(SolveOutcome {
            tour: Tour::new(vec![0])?,
            score: F::zero(),
            optimal: true,
            gap: F::zero(),
        });
    }
    match backend.kind {
        BackendKind::BruteForce => {
            let (tour, score) = brute::brute_force_best(adj)?;
            Ok(SolveOutcome {
                tour,
                score,
                optimal: true,
                gap: F::zero(),
            })
        }
        BackendKind::HeldKarp => {
            let (tour, score) = held_karp(adj)?;
            Ok(SolveOutcome {
                tour,
                score,
                optimal: true,
                gap: F::zero(),
            })
        }
        BackendKind::BranchAndBoundMilp => {
            let instance = build_milp(adj)?;
            let budget = backend.time_budget.unwrap_or(DEFAULT_MILP_BUDGET);
            let (selection, _, optimal, gap) = milp::branch_and_bound(&instance, budget)?;
            let tour = selection.to_tour()?;
            // Report the exact adjacency re-summation, not the LP objective.
            let score = tour_score(adj, &tour)?;
            Ok(SolveOutcome {
                tour,
                score,
                optimal,
                gap,
            })
        }
    }
}

/// Margin-augmented weights for loss-augmented inference: every off-diagonal
/// edge absent from the gold path gains `+1`; gold edges are unchanged.
/// Solving the augmented matrix maximises `margin(x, gold) + x . A`.
pub fn loss_augment<F: Real>(
    adj: &AdjacencyMatrix<F>,
    gold: &EdgeSelection,
) -> Result<AdjacencyMatrix<F>> {
    if gold.n() != adj.n() {
        return Err(Error::DimensionMismatch {
            context: "loss_augment gold selection",
            expected: adj.n(),
            got: gold.n(),
        });
    }
    gold.validate_path().map_err(Error::InvalidSelection)?;
    let mut out = adj.clone();
    for i in 0..adj.n() {
        for j in 0..adj.n() {
            if i != j && !gold.contains(i, j) {
                out.set(i, j, adj.get(i, j) + F::one());
            }
        }
    }
    Ok(out)
}
