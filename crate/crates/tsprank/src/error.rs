//! Crate-wide error type.

use thiserror::Error;

use crate::model::Tour;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch in {context}: expected {expected}, got {got}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("invalid ranking group `{group}`: {reason}")]
    InvalidGroup { group: String, reason: String },

    #[error("group `{0}` has no gold ranks")]
    MissingGoldRanks(String),

    #[error("invalid edge selection: {0}")]
    InvalidSelection(#[from] SelectionViolation),

    #[error("{backend} backend supports at most {max} nodes, got {n}")]
    Capacity {
        backend: &'static str,
        n: usize,
        max: usize,
    },

    /// The MILP backend ran out of time. Carries the best incumbent found so
    /// far together with the remaining bound gap.
    #[error("solver time budget exceeded; incumbent score {score}, remaining gap {gap}")]
    Timeout { tour: Tour, score: f64, gap: f64 },

    #[error("MILP formulation error: {0}")]
    Formulation(String),

    #[error("{metric} undefined: {reason}")]
    UndefinedMetric {
        metric: &'static str,
        reason: String,
    },

    #[error("{path}:{line}: {message}")]
    Parse {
        path: String,
        line: usize,
        message: String,
    },

    #[error("model file error: {0}")]
    ModelFile(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Ways an edge set can fail the single-open-path requirement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum SelectionViolation {
    #[error("expected {expected} edges, found {found}")]
    EdgeCount { expected: usize, found: usize },
    #[error("node {0} has more than one outgoing edge")]
    OutDegree(usize),
    #[error("node {0} has more than one incoming edge")]
    InDegree(usize),
    #[error("edge set contains a cycle")]
    Cycle,
    #[error("edge set does not form a single connected path")]
    Disconnected,
}
