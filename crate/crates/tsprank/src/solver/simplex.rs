//! Dense two-phase primal simplex.
//!
//! Solves `max c'x  s.t.  A x {<=,=} b, x >= 0` with `b >= 0`, which is the
//! form every branch-and-bound node relaxation takes after fixed variables
//! have been substituted out. Dantzig pricing with a Bland's-rule fallback
//! guards against cycling on the (highly degenerate) degree polytopes.

use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowKind {
    Le,
    Eq,
}

#[derive(Debug, Clone)]
pub struct LpRow<F> {
    pub coeffs: Vec<F>,
    pub kind: RowKind,
    pub rhs: F,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome<F> {
    Optimal { x: Vec<F>, objective: F },
    Infeasible,
    Unbounded,
    /// Iteration cap exceeded; treated as a numerical failure by callers.
    Stalled,
}

const TOL: f64 = 1e-9;
const STALL_SWITCH: usize = 64;

struct Tableau<F> {
    rows: usize,
    cols: usize, // structural + slack + artificial, excluding rhs
    data: Vec<F>,
    obj: Vec<F>, // reduced costs, plus negated objective value at index `cols`
    basis: Vec<usize>,
}

impl<F: Real> Tableau<F> {
    #[inline]
    fn at(&self, r: usize, c: usize) -> F {
        self.data[r * (self.cols + 1) + c]
    }

    #[inline]
    fn at_mut(&mut self, r: usize, c: usize) -> &mut F {
        &mut self.data[r * (self.cols + 1) + c]
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let width = self.cols + 1;
        let pivot = self.at(row, col);
        let inv = F::one() / pivot;
        for c in 0..width {
            *self.at_mut(row, c) = self.at(row, c) * inv;
        }
        for r in 0..self.rows {
            if r == row {
                continue;
            }
            let factor = self.at(r, col);
            if factor == F::zero() {
                continue;
            }
            for c in 0..width {
                let delta = factor * self.at(row, c);
                *self.at_mut(r, c) = self.at(r, c) - delta;
            }
        }
        let factor = self.obj[col];
        if factor != F::zero() {
            for c in 0..width {
                let delta = factor * self.at(row, c);
                self.obj[c] = self.obj[c] - delta;
            }
        }
        self.basis[row] = col;
    }

    /// Runs simplex iterations until optimal/unbounded, skipping banned columns.
    fn iterate(&mut self, banned_from: usize) -> Option<LpOutcome<F>> {
        let tol = F::real(TOL);
        let max_iters = 1000 + 20 * (self.rows + self.cols);
        let mut since_improvement = 0usize;
        let mut last_value = self.obj[self.cols];
        for _ in 0..max_iters {
            let bland = since_improvement > STALL_SWITCH;
            let mut entering = None;
            if bland {
                for j in 0..banned_from {
                    if self.obj[j] > tol {
                        entering = Some(j);
                        break;
                    }
                }
            } else {
                let mut best = tol;
                for j in 0..banned_from {
                    if self.obj[j] > best {
                        best = self.obj[j];
                        entering = Some(j);
                    }
                }
            }
            let Some(col) = entering else {
                return None; // optimal
            };

            let mut leaving: Option<(usize, F)> = None;
            for r in 0..self.rows {
                let a = self.at(r, col);
                if a > tol {
                    let ratio = self.at(r, self.cols) / a;
                    match leaving {
                        Some((lr, lratio)) => {
                            if ratio < lratio - tol
                                || (ratio < lratio + tol && self.basis[r] < self.basis[lr])
                            {
                                leaving = Some((r, ratio));
                            }
                        }
                        None => leaving = Some((r, ratio)),
                    }
                }
            }
            let Some((row, _)) = leaving else {
                return Some(LpOutcome::Unbounded);
            };
            self.pivot(row, col);

            let value = self.obj[self.cols];
            if value < last_value - tol {
                // Objective cell holds the negated value, so progress moves it down.
                last_value = value;
                since_improvement = 0;
            } else {
                since_improvement += 1;
            }
        }
        Some(LpOutcome::Stalled)
    }
}

/// Maximizes `objective . x` subject to `rows`, `x >= 0`. Every `rhs` must be
/// nonnegative (callers normalise their rows first).
pub fn maximize<F: Real>(objective: &[F], rows: &[LpRow<F>]) -> LpOutcome<F> {
    let n_struct = objective.len();
    let m = rows.len();
    for row in rows {
        assert_eq!(row.coeffs.len(), n_struct, "row width mismatch");
        assert!(row.rhs >= F::zero(), "rows must be normalised to rhs >= 0");
    }

    let n_slack = rows.iter().filter(|r| r.kind == RowKind::Le).count();
    let n_art = m - n_slack;
    let cols = n_struct + n_slack + n_art;
    let width = cols + 1;

    let mut t = Tableau {
        rows: m,
        cols,
        data: vec![F::zero(); m * width],
        obj: vec![F::zero(); width],
        basis: vec![0; m],
    };

    let mut slack_idx = n_struct;
    let mut art_idx = n_struct + n_slack;
    let mut artificial_rows = Vec::new();
    for (r, row) in rows.iter().enumerate() {
        for (j, &c) in row.coeffs.iter().enumerate() {
            *t.at_mut(r, j) = c;
        }
        *t.at_mut(r, cols) = row.rhs;
        match row.kind {
            RowKind::Le => {
                *t.at_mut(r, slack_idx) = F::one();
                t.basis[r] = slack_idx;
                slack_idx += 1;
            }
            RowKind::Eq => {
                *t.at_mut(r, art_idx) = F::one();
                t.basis[r] = art_idx;
                artificial_rows.push(r);
                art_idx += 1;
            }
        }
    }

    let art_start = n_struct + n_slack;
    let tol = F::real(TOL);

    // Phase 1: maximize -sum(artificials); feasible iff the optimum is 0.
    if n_art > 0 {
        for j in 0..width {
            let mut z = F::zero();
            for &r in &artificial_rows {
                z = z + t.at(r, j);
            }
            t.obj[j] = z; // c_j - z_j with c = -1 on artificials, shifted by +1 per basic
        }
        for j in art_start..cols {
            t.obj[j] = t.obj[j] - F::one();
        }
        if let Some(outcome) = t.iterate(cols) {
            match outcome {
                LpOutcome::Unbounded => unreachable!("phase 1 objective is bounded"),
                other => return other,
            }
        }
        // obj cell = -(-sum art) = sum art
        if t.obj[cols].abs() > F::real(1e-7) {
            return LpOutcome::Infeasible;
        }
        // Drive remaining artificials out of the basis, or recognise the row
        // as redundant when no real column is available.
        for r in 0..m {
            if t.basis[r] >= art_start {
                let col = (0..art_start).find(|&j| t.at(r, j).abs() > tol);
                if let Some(col) = col {
                    t.pivot(r, col);
                }
            }
        }
    }

    // Phase 2 objective row, rebuilt from scratch for the true costs.
    for j in 0..width {
        t.obj[j] = F::zero();
    }
    for (j, &c) in objective.iter().enumerate() {
        t.obj[j] = c;
    }
    for r in 0..m {
        let b = t.basis[r];
        let cost = if b < n_struct {
            objective[b]
        } else {
            F::zero()
        };
        if cost != F::zero() {
            for j in 0..width {
                let delta = cost * t.at(r, j);
                t.obj[j] = t.obj[j] - delta;
            }
        }
    }

    if let Some(outcome) = t.iterate(art_start) {
        return outcome;
    }

    let mut x = vec![F::zero(); n_struct];
    for r in 0..m {
        if t.basis[r] < n_struct {
            x[t.basis[r]] = t.at(r, cols);
        }
    }
    let objective_value = -t.obj[cols];
    LpOutcome::Optimal {
        x,
        objective: objective_value,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn le(coeffs: &[f64], rhs: f64) -> LpRow<f64> {
        LpRow {
            coeffs: coeffs.to_vec(),
            kind: RowKind::Le,
            rhs,
        }
    }

    fn eq(coeffs: &[f64], rhs: f64) -> LpRow<f64> {
        LpRow {
            coeffs: coeffs.to_vec(),
            kind: RowKind::Eq,
            rhs,
        }
    }

    #[test]
    fn box_constraints() {
        let out = maximize(&[1.0, 1.0], &[le(&[1.0, 0.0], 2.0), le(&[0.0, 1.0], 3.0)]);
        match out {
            LpOutcome::Optimal { x, objective } => {
                assert!((objective - 5.0).abs() < 1e-9);
                assert!((x[0] - 2.0).abs() < 1e-9);
                assert!((x[1] - 3.0).abs() < 1e-9);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn two_constraint_polytope() {
        let out = maximize(
            &[3.0, 2.0],
            &[le(&[1.0, 1.0], 4.0), le(&[1.0, 3.0], 6.0)],
        );
        match out {
            LpOutcome::Optimal { objective, .. } => assert!((objective - 12.0).abs() < 1e-9),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn equality_constraint() {
        let out = maximize(&[1.0, 0.0], &[eq(&[1.0, 1.0], 1.0)]);
        match out {
            LpOutcome::Optimal { x, objective } => {
                assert!((objective - 1.0).abs() < 1e-9);
                assert!((x[0] - 1.0).abs() < 1e-9);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn detects_infeasibility() {
        let out = maximize(&[1.0, 1.0], &[eq(&[1.0, 1.0], 2.0), le(&[1.0, 1.0], 1.0)]);
        assert_eq!(out, LpOutcome::Infeasible);
    }

    #[test]
    fn redundant_equalities_are_tolerated() {
        let out = maximize(
            &[1.0, 0.0],
            &[eq(&[1.0, 1.0], 1.0), eq(&[2.0, 2.0], 2.0)],
        );
        match out {
            LpOutcome::Optimal { objective, .. } => assert!((objective - 1.0).abs() < 1e-9),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn detects_unboundedness() {
        let out = maximize(&[1.0, 0.0], &[le(&[0.0, 1.0], 1.0)]);
        assert_eq!(out, LpOutcome::Unbounded);
    }

    #[test]
    fn degenerate_transport_like_system() {
        // Assignment-style equalities with a fractional-friendly objective.
        let n = 3;
        let mut rows = Vec::new();
        for i in 0..n {
            let mut c = vec![0.0; n * n];
            for j in 0..n {
                c[i * n + j] = 1.0;
            }
            rows.push(eq(&c, 1.0));
        }
        for j in 0..n {
            let mut c = vec![0.0; n * n];
            for i in 0..n {
                c[i * n + j] = 1.0;
            }
            rows.push(eq(&c, 1.0));
        }
        let mut obj = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                obj[i * n + j] = ((i * 7 + j * 3) % 5) as f64;
            }
        }
        match maximize(&obj, &rows) {
            LpOutcome::Optimal { x, objective } => {
                // Birkhoff polytope: optimum is attained at a permutation.
                let mut best = f64::NEG_INFINITY;
                let perms = [
                    [0, 1, 2],
                    [0, 2, 1],
                    [1, 0, 2],
                    [1, 2, 0],
                    [2, 0, 1],
                    [2, 1, 0],
                ];
                for p in perms {
                    let v: f64 = (0..n).map(|i| obj[i * n + p[i]]).sum();
                    best = best.max(v);
                }
                assert!((objective - best).abs() < 1e-9);
                let total: f64 = x.iter().sum();
                assert!((total - n as f64).abs() < 1e-9);
            }
            other => panic!("{other:?}"),
        }
    }
}
