//! Held-Karp dynamic program over node subsets.
//!
//! `g[mask][j]` is the best score of an open path that starts at `j` and
//! visits exactly the nodes in `mask` (which contains `j`). The optimum is
//! `max_j g[full][j]`; a tour is reconstructed front-to-back by re-deriving
//! the argmax at each step, which also yields the lexicographically smallest
//! optimal tour without storing parent links.
//!
//! Memory is `O(2^n * n)` scores, which is why the backend caps `n` at 22.

use crate::error::Result;
use crate::model::{tour_score, AdjacencyMatrix, Tour};
use crate::scalar::Real;
use crate::solver::SolverBackend;

pub fn held_karp<F: Real>(adj: &AdjacencyMatrix<F>) -> Result<(Tour, F)> {
    let n = adj.n();
    SolverBackend::held_karp().check_capacity(n)?;
    if n == 1 {
        return Ok((Tour::new(vec![0])?, F::zero()));
    }

    let full: usize = (1 << n) - 1;
    let neg_inf = F::neg_infinity();
    // g[mask * n + j]: best path starting at j covering exactly `mask`.
    let mut g = vec![neg_inf; (full + 1) * n];
    for j in 0..n {
        g[(1 << j) * n + j] = F::zero();
    }
    for mask in 1..=full {
        if mask.count_ones() < 2 {
            continue;
        }
        for j in 0..n {
            if mask & (1 << j) == 0 {
                continue;
            }
            let rest = mask & !(1 << j);
            let mut best = neg_inf;
            for k in 0..n {
                if rest & (1 << k) == 0 {
                    continue;
                }
                let cand = adj.get(j, k) + g[rest * n + k];
                if cand > best {
                    best = cand;
                }
            }
            g[mask * n + j] = best;
        }
    }

    let mut best = neg_inf;
    for j in 0..n {
        if g[full * n + j] > best {
            best = g[full * n + j];
        }
    }

    // Front-to-back reconstruction: at each step take the smallest node whose
    // remaining-path value matches exactly, which yields the lexicographically
    // smallest optimal tour.
    let mut order = Vec::with_capacity(n);
    let mut mask = full;
    let start = (0..n)
        .find(|&j| mask & (1 << j) != 0 && g[mask * n + j] == best)
        .expect("some start node attains the optimum");
    order.push(start);
    let mut current = start;
    mask &= !(1 << start);
    while mask != 0 {
        let value = g[(mask | (1 << current)) * n + current];
        let next = (0..n)
            .find(|&k| {
                mask & (1 << k) != 0 && adj.get(current, k) + g[mask * n + k] == value
            })
            .expect("dp argmax must be reproducible");
        order.push(next);
        current = next;
        mask &= !(1 << next);
    }

    let tour = Tour::new(order)?;
    // Return the plain left-to-right re-summation of the reconstructed tour.
    let score = tour_score(adj, &tour)?;
    Ok((tour, score))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::brute_force_all;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn random_adj(n: usize, rng: &mut impl Rng) -> AdjacencyMatrix<f64> {
        let mut adj = AdjacencyMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    adj.set(i, j, rng.gen_range(-1.0..1.0));
                }
            }
        }
        adj
    }

    #[test]
    fn two_nodes_takes_the_better_direction() {
        let mut adj = AdjacencyMatrix::zeros(2);
        adj.set(0, 1, -0.25);
        adj.set(1, 0, 0.75);
        let (tour, score) = held_karp(&adj).unwrap();
        assert_eq!(tour.order(), &[1, 0]);
        assert_eq!(score, 0.75);
    }

    #[test]
    fn uniform_weights_score_and_lexicographic_tie_break() {
        for n in 1..=6 {
            let mut adj = AdjacencyMatrix::zeros(n);
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        adj.set(i, j, -0.5);
                    }
                }
            }
            let (tour, score) = held_karp(&adj).unwrap();
            assert_eq!(score, -0.5 * (n as f64 - 1.0));
            let expected: Vec<usize> = (0..n).collect();
            assert_eq!(tour.order(), &expected[..]);
        }
    }

    #[test]
    fn matches_brute_force_on_random_instances() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let n = rng.gen_range(2..=7);
            let adj = random_adj(n, &mut rng);
            let oracle = brute_force_all(&adj).unwrap();
            let (tour, score) = held_karp(&adj).unwrap();
            assert!(
                (score - oracle[0].1).abs() <= 1e-9,
                "hk {score} vs brute {}",
                oracle[0].1
            );
            assert_eq!(tour, oracle[0].0, "lexicographic tie-break must agree");
        }
    }

    #[test]
    fn capacity_error_above_limit() {
        let adj = AdjacencyMatrix::<f64>::zeros(23);
        assert!(held_karp(&adj).is_err());
    }
}
