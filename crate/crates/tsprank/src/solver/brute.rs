//! Exhaustive permutation oracle for small instances.

use itertools::Itertools;

use crate::error::Result;
use crate::model::{tour_score, AdjacencyMatrix, Tour};
use crate::scalar::Real;
use crate::solver::{SolverBackend, BRUTE_FORCE_MAX_NODES};

/// Enumerates every permutation and returns `(tour, score)` pairs sorted by
/// score descending, ties broken by lexicographic tour order.
pub fn brute_force_all<F: Real>(adj: &AdjacencyMatrix<F>) -> Result<Vec<(Tour, F)>> {
    check(adj.n())?;
    let mut all = Vec::new();
    for perm in (0..adj.n()).permutations(adj.n()) {
        let tour = Tour::new(perm)?;
        let score = tour_score(adj, &tour)?;
        all.push((tour, score));
    }
    // Permutations come out in lexicographic order; a stable sort by
    // descending score therefore keeps lexicographic order within ties.
    all.sort_by(|a, b| b.1.partial_cmp(&a.1).expect("finite scores"));
    Ok(all)
}

/// Best tour only, without materialising the full enumeration. Keeps the
/// first (lexicographically smallest) tour among equal-score optima.
pub fn brute_force_best<F: Real>(adj: &AdjacencyMatrix<F>) -> Result<(Tour, F)> {
    check(adj.n())?;
    let mut best: Option<(Tour, F)> = None;
    for perm in (0..adj.n()).permutations(adj.n()) {
        let tour = Tour::new(perm)?;
        let score = tour_score(adj, &tour)?;
        match &best {
            Some((_, s)) if score <= *s => {}
            _ => best = Some((tour, score)),
        }
    }
    Ok(best.expect("n >= 1"))
}

fn check(n: usize) -> Result<()> {
    SolverBackend::brute_force().check_capacity(n)
}
