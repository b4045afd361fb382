//! Dense two-phase primal simplex.
//!
//! Problems are stated as `maximize c·x` subject to equality rows, `≤` rows,
//! `x ≥ 0` and optional per-variable upper bounds. Entering columns follow the
//! largest reduced cost; after a run of degenerate pivots the solver switches
//! to Bland's rule for the rest of the phase. Both rules break ties by lowest
//! index, so a given input always produces the same pivot sequence.
//!
//! The tableau is `rows × columns` with no auxiliary copies, which keeps the
//! short-and-wide equilibrium programs (a handful of rows, thousands of
//! columns) cheap.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::Scalar;

/// Consecutive degenerate pivots tolerated before falling back to Bland's rule.
const DEGENERATE_RUN_LIMIT: usize = 50;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct Constraint<T> {
    pub coefficients: Vec<T>,
    pub rhs: T,
}

/// `maximize objective·x` s.t. `eq_constraints`, `ineq_constraints` (`≤`),
/// `0 ≤ x_k ≤ upper_bounds[k]` where a bound is present.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct LinearProgram<T> {
    pub objective: Vec<T>,
    pub eq_constraints: Vec<Constraint<T>>,
    pub ineq_constraints: Vec<Constraint<T>>,
    pub upper_bounds: Vec<Option<T>>,
}

impl<T: Scalar> LinearProgram<T> {
    pub fn maximize(objective: Vec<T>) -> Self {
        let n = objective.len();
        Self {
            objective,
            eq_constraints: Vec::new(),
            ineq_constraints: Vec::new(),
            upper_bounds: vec![None; n],
        }
    }

    pub fn variable_count(&self) -> usize {
        self.objective.len()
    }

    /// Adds `coefficients·x = rhs`.
    pub fn eq(mut self, coefficients: Vec<T>, rhs: T) -> Self {
        self.eq_constraints.push(Constraint { coefficients, rhs });
        self
    }

    /// Adds `coefficients·x ≤ rhs`.
    pub fn le(mut self, coefficients: Vec<T>, rhs: T) -> Self {
        self.ineq_constraints.push(Constraint { coefficients, rhs });
        self
    }

    /// Adds `coefficients·x ≥ rhs`, stored as a negated `≤` row.
    pub fn ge(self, coefficients: Vec<T>, rhs: T) -> Self {
        let negated = coefficients.into_iter().map(|a| -a).collect();
        self.le(negated, -rhs)
    }

    pub fn upper_bound(mut self, var: usize, bound: T) -> Self {
        self.upper_bounds[var] = Some(bound);
        self
    }

    pub fn with_upper_bounds(mut self, bound: T) -> Self {
        self.upper_bounds.iter_mut().for_each(|b| *b = Some(bound));
        self
    }

    fn check(&self) -> Result<(), LpError> {
        let n = self.objective.len();
        if n == 0 {
            return Err(LpError::Malformed("program has no variables".into()));
        }
        if self.objective.iter().any(|c| !c.is_finite()) {
            return Err(LpError::Malformed("objective has non-finite coefficients".into()));
        }
        if self.upper_bounds.len() != n {
            return Err(LpError::Malformed(format!(
                "{} upper bounds for {n} variables",
                self.upper_bounds.len()
            )));
        }
        if self.upper_bounds.iter().flatten().any(|u| u.is_nan()) {
            return Err(LpError::Malformed("NaN upper bound".into()));
        }
        let rows = self.eq_constraints.iter().chain(&self.ineq_constraints);
        for (r, row) in rows.enumerate() {
            if row.coefficients.len() != n {
                return Err(LpError::Malformed(format!(
                    "row {r} has width {}, expected {n}",
                    row.coefficients.len()
                )));
            }
            if !row.rhs.is_finite() || row.coefficients.iter().any(|a| !a.is_finite()) {
                return Err(LpError::Malformed(format!("row {r} has non-finite entries")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct LpSolution<T> {
    pub status: LpStatus,
    /// Primal point; meaningful only when `status` is `Optimal`.
    pub x: Vec<T>,
    pub objective_value: T,
    /// Pivots performed across both phases.
    pub iterations: usize,
}

impl<T: Scalar> LpSolution<T> {
    fn without_point(status: LpStatus, n: usize, iterations: usize) -> Self {
        let objective_value = match status {
            LpStatus::Unbounded => T::infinity(),
            _ => T::neg_infinity(),
        };
        Self {
            status,
            x: vec![T::zero(); n],
            objective_value,
            iterations,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LpError {
    #[error("malformed linear program: {0}")]
    Malformed(String),
    #[error("simplex exceeded {0} pivots")]
    IterationLimit(usize),
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum RowKind {
    Le,
    Ge,
    Eq,
}

enum PhaseOutcome {
    Optimal,
    Unbounded,
}

struct Tableau<T> {
    /// Row-major, `width` entries per row; the last entry is the right-hand side.
    cells: Vec<T>,
    width: usize,
    rows: usize,
    basis: Vec<usize>,
    iterations: usize,
    limit: usize,
}

impl<T: Scalar> Tableau<T> {
    fn row(&self, r: usize) -> &[T] {
        &self.cells[r * self.width..(r + 1) * self.width]
    }

    fn at(&self, r: usize, c: usize) -> T {
        self.cells[r * self.width + c]
    }

    fn rhs(&self, r: usize) -> T {
        self.cells[r * self.width + self.width - 1]
    }

    fn pivot(&mut self, pr: usize, pc: usize, reduced: &mut [T]) {
        let w = self.width;
        let inv = T::one() / self.at(pr, pc);
        for v in &mut self.cells[pr * w..(pr + 1) * w] {
            *v *= inv;
        }
        let (before, rest) = self.cells.split_at_mut(pr * w);
        let (pivot_row, after) = rest.split_at_mut(w);
        for row in before.chunks_exact_mut(w).chain(after.chunks_exact_mut(w)) {
            let factor = row[pc];
            if factor != T::zero() {
                for (v, &p) in row.iter_mut().zip(pivot_row.iter()) {
                    *v -= factor * p;
                }
                row[pc] = T::zero();
            }
        }
        let factor = reduced[pc];
        if factor != T::zero() {
            for (v, &p) in reduced.iter_mut().zip(pivot_row.iter()) {
                *v -= factor * p;
            }
            reduced[pc] = T::zero();
        }
        self.basis[pr] = pc;
    }

    fn remove_row(&mut self, r: usize) {
        let w = self.width;
        self.cells.drain(r * w..(r + 1) * w);
        self.basis.remove(r);
        self.rows -= 1;
    }

    /// Reduced costs `c_j - c_B·B⁻¹a_j`; the last entry is `-c_B·B⁻¹b`.
    fn reduced_costs(&self, costs: &[T]) -> Vec<T> {
        let mut reduced = costs.to_vec();
        reduced.push(T::zero());
        for r in 0..self.rows {
            let cb = costs[self.basis[r]];
            if cb != T::zero() {
                for (v, &a) in reduced.iter_mut().zip(self.row(r)) {
                    *v -= cb * a;
                }
            }
        }
        reduced
    }

    /// Runs primal simplex iterations on `reduced` until optimal or unbounded.
    fn optimize(&mut self, reduced: &mut [T], allowed: &[bool]) -> Result<PhaseOutcome, LpError> {
        let cols = self.width - 1;
        let opt_tol = T::optimality_tol();
        let piv_tol = T::pivot_tol();
        let mut bland = false;
        let mut degenerate_run = 0usize;
        loop {
            let entering = if bland {
                (0..cols).find(|&j| allowed[j] && reduced[j] > opt_tol)
            } else {
                let mut best: Option<usize> = None;
                for j in (0..cols).filter(|&j| allowed[j] && reduced[j] > opt_tol) {
                    if best.is_none_or(|b| reduced[j] > reduced[b]) {
                        best = Some(j);
                    }
                }
                best
            };
            let Some(pc) = entering else {
                return Ok(PhaseOutcome::Optimal);
            };

            let mut leaving: Option<(usize, T)> = None;
            for r in 0..self.rows {
                let a = self.at(r, pc);
                if a <= piv_tol {
                    continue;
                }
                let ratio = self.rhs(r).max(T::zero()) / a;
                leaving = match leaving {
                    None => Some((r, ratio)),
                    Some((br, best)) => {
                        let slack = T::of(1e-12) * T::one().max(best.abs());
                        if ratio < best - slack
                            || (ratio <= best + slack && self.basis[r] < self.basis[br])
                        {
                            Some((r, ratio))
                        } else {
                            Some((br, best))
                        }
                    }
                };
            }
            let Some((pr, step)) = leaving else {
                return Ok(PhaseOutcome::Unbounded);
            };

            if step <= T::feasibility_tol() {
                degenerate_run += 1;
                if degenerate_run > DEGENERATE_RUN_LIMIT {
                    bland = true;
                }
            } else {
                degenerate_run = 0;
            }

            self.pivot(pr, pc, reduced);
            self.iterations += 1;
            if self.iterations > self.limit {
                return Err(LpError::IterationLimit(self.limit));
            }
        }
    }
}

/// If an equality row with nonnegative coefficients already caps `x_k` at or
/// below `bound`, the explicit bound row is unnecessary.
fn bound_is_implied<T: Scalar>(lp: &LinearProgram<T>, var: usize, bound: T) -> bool {
    lp.eq_constraints.iter().any(|row| {
        let a = row.coefficients[var];
        a > T::zero()
            && row.rhs >= T::zero()
            && row.coefficients.iter().all(|&c| c >= T::zero())
            && row.rhs / a <= bound
    })
}

/// Solves `lp` to optimality, or reports it infeasible or unbounded.
pub fn solve_lp<T: Scalar>(lp: &LinearProgram<T>) -> Result<LpSolution<T>, LpError> {
    lp.check()?;
    let n = lp.variable_count();

    let mut rows: Vec<(Vec<T>, T, RowKind)> = Vec::new();
    for row in &lp.eq_constraints {
        rows.push((row.coefficients.clone(), row.rhs, RowKind::Eq));
    }
    for row in &lp.ineq_constraints {
        rows.push((row.coefficients.clone(), row.rhs, RowKind::Le));
    }
    for (k, bound) in lp.upper_bounds.iter().enumerate() {
        let Some(u) = *bound else { continue };
        if u < T::zero() {
            return Ok(LpSolution::without_point(LpStatus::Infeasible, n, 0));
        }
        if u.is_finite() && !bound_is_implied(lp, k, u) {
            let mut coefficients = vec![T::zero(); n];
            coefficients[k] = T::one();
            rows.push((coefficients, u, RowKind::Le));
        }
    }
    for (coefficients, rhs, kind) in &mut rows {
        if *rhs < T::zero() {
            coefficients.iter_mut().for_each(|a| *a = -*a);
            *rhs = -*rhs;
            *kind = match *kind {
                RowKind::Le => RowKind::Ge,
                RowKind::Ge => RowKind::Le,
                RowKind::Eq => RowKind::Eq,
            };
        }
    }

    let m = rows.len();
    let slack_count = rows.iter().filter(|r| r.2 != RowKind::Eq).count();
    let artificial_count = rows.iter().filter(|r| r.2 != RowKind::Le).count();
    let cols = n + slack_count + artificial_count;
    let width = cols + 1;
    let first_artificial = n + slack_count;

    let mut cells = vec![T::zero(); m * width];
    let mut basis = vec![0; m];
    let (mut next_slack, mut next_art) = (n, first_artificial);
    for (r, (coefficients, rhs, kind)) in rows.iter().enumerate() {
        let row = &mut cells[r * width..(r + 1) * width];
        row[..n].copy_from_slice(coefficients);
        row[cols] = *rhs;
        match kind {
            RowKind::Le => {
                row[next_slack] = T::one();
                basis[r] = next_slack;
                next_slack += 1;
            }
            RowKind::Ge => {
                row[next_slack] = -T::one();
                next_slack += 1;
                row[next_art] = T::one();
                basis[r] = next_art;
                next_art += 1;
            }
            RowKind::Eq => {
                row[next_art] = T::one();
                basis[r] = next_art;
                next_art += 1;
            }
        }
    }

    let mut tableau = Tableau {
        cells,
        width,
        rows: m,
        basis,
        iterations: 0,
        limit: 1000 + 50 * (m + cols),
    };

    if artificial_count > 0 {
        let mut phase_one_costs = vec![T::zero(); cols];
        phase_one_costs[first_artificial..].iter_mut().for_each(|c| *c = -T::one());
        let mut reduced = tableau.reduced_costs(&phase_one_costs);
        let allowed = vec![true; cols];
        tableau.optimize(&mut reduced, &allowed)?;

        let infeasibility: T = (0..tableau.rows)
            .filter(|&r| tableau.basis[r] >= first_artificial)
            .map(|r| tableau.rhs(r).max(T::zero()))
            .sum();
        let scale = rows.iter().map(|r| r.1).fold(T::one(), T::max);
        if infeasibility > T::feasibility_tol() * scale {
            return Ok(LpSolution::without_point(LpStatus::Infeasible, n, tableau.iterations));
        }

        // Drive zero-level artificials out of the basis; rows where that is
        // impossible are linearly dependent and dropped.
        let mut r = 0;
        while r < tableau.rows {
            if tableau.basis[r] < first_artificial {
                r += 1;
                continue;
            }
            let mut best: Option<(usize, T)> = None;
            for j in 0..first_artificial {
                let a = tableau.at(r, j).abs();
                if a > T::pivot_tol() && best.is_none_or(|(_, b)| a > b) {
                    best = Some((j, a));
                }
            }
            match best {
                Some((j, _)) => {
                    tableau.pivot(r, j, &mut reduced);
                    r += 1;
                }
                None => tableau.remove_row(r),
            }
        }
    }

    let mut costs = lp.objective.clone();
    costs.resize(cols, T::zero());
    let mut reduced = tableau.reduced_costs(&costs);
    let allowed: Vec<bool> = (0..cols).map(|j| j < first_artificial).collect();
    if let PhaseOutcome::Unbounded = tableau.optimize(&mut reduced, &allowed)? {
        return Ok(LpSolution::without_point(LpStatus::Unbounded, n, tableau.iterations));
    }

    let mut x = vec![T::zero(); n];
    for r in 0..tableau.rows {
        let b = tableau.basis[r];
        if b < n {
            x[b] = tableau.rhs(r).max(T::zero());
        }
    }
    let objective_value = lp.objective.iter().zip(&x).map(|(&c, &v)| c * v).sum();
    Ok(LpSolution {
        status: LpStatus::Optimal,
        x,
        objective_value,
        iterations: tableau.iterations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_variable_upper_bound() {
        let lp = LinearProgram::<f64>::maximize(vec![1.0]).le(vec![1.0], 1.0);
        let sol = solve_lp(&lp).unwrap();
        assert_eq!(sol.status, LpStatus::Optimal);
        assert!((sol.x[0] - 1.0).abs() < 1e-12);
        assert!((sol.objective_value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn degenerate_optimal_face() {
        let lp = LinearProgram::<f64>::maximize(vec![1.0, 1.0]).eq(vec![1.0, 1.0], 1.0);
        let sol = solve_lp(&lp).unwrap();
        assert_eq!(sol.status, LpStatus::Optimal);
        assert!((sol.objective_value - 1.0).abs() < 1e-12);
        assert!((sol.x[0] + sol.x[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn detects_infeasible_and_unbounded() {
        let infeasible = LinearProgram::<f64>::maximize(vec![1.0])
            .le(vec![1.0], 1.0)
            .ge(vec![1.0], 2.0);
        assert_eq!(solve_lp(&infeasible).unwrap().status, LpStatus::Infeasible);

        let unbounded = LinearProgram::<f64>::maximize(vec![1.0, 0.0]).le(vec![-1.0, 1.0], 1.0);
        assert_eq!(solve_lp(&unbounded).unwrap().status, LpStatus::Unbounded);

        let negative_bound = LinearProgram::<f64>::maximize(vec![1.0]).upper_bound(0, -1.0);
        assert_eq!(solve_lp(&negative_bound).unwrap().status, LpStatus::Infeasible);
    }

    #[test]
    fn explicit_upper_bounds_are_enforced() {
        let lp = LinearProgram::<f64>::maximize(vec![2.0, 1.0])
            .le(vec![1.0, 1.0], 10.0)
            .upper_bound(0, 3.0);
        let sol = solve_lp(&lp).unwrap();
        assert!((sol.x[0] - 3.0).abs() < 1e-12);
        assert!((sol.objective_value - 13.0).abs() < 1e-12);
    }

    #[test]
    fn implied_upper_bounds_add_no_rows() {
        let lp = LinearProgram::<f64>::maximize(vec![1.0, 2.0, 0.0])
            .eq(vec![1.0, 1.0, 1.0], 1.0)
            .with_upper_bounds(1.0);
        assert!((0..3).all(|k| bound_is_implied(&lp, k, 1.0)));
        let sol = solve_lp(&lp).unwrap();
        assert!((sol.x[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn redundant_equalities_are_dropped() {
        let lp = LinearProgram::<f64>::maximize(vec![1.0, 2.0])
            .eq(vec![1.0, 1.0], 1.0)
            .eq(vec![2.0, 2.0], 2.0);
        let sol = solve_lp(&lp).unwrap();
        assert_eq!(sol.status, LpStatus::Optimal);
        assert!((sol.objective_value - 2.0).abs() < 1e-12);
    }

    #[test]
    fn negative_rhs_rows_are_flipped() {
        // maximize -x - y  s.t. x + y >= 2, x <= 1.5
        let lp = LinearProgram::<f64>::maximize(vec![-1.0, -1.0])
            .ge(vec![1.0, 1.0], 2.0)
            .le(vec![1.0, 0.0], 1.5);
        let sol = solve_lp(&lp).unwrap();
        assert!((sol.objective_value + 2.0).abs() < 1e-12);
    }

    #[test]
    fn malformed_input_is_an_error() {
        let mut lp = LinearProgram::<f64>::maximize(vec![1.0, 1.0]);
        lp.ineq_constraints.push(Constraint { coefficients: vec![1.0], rhs: 1.0 });
        assert!(matches!(solve_lp(&lp), Err(LpError::Malformed(_))));
        let nan = LinearProgram::<f64>::maximize(vec![f64::NAN]);
        assert!(solve_lp(&nan).is_err());
        assert!(solve_lp(&LinearProgram::<f64>::maximize(vec![])).is_err());
    }

    #[test]
    fn beale_cycling_example_terminates() {
        // Classic example on which Dantzig's rule with naive ties cycles.
        let lp = LinearProgram::<f64>::maximize(vec![0.75, -150.0, 0.02, -6.0])
            .le(vec![0.25, -60.0, -0.04, 9.0], 0.0)
            .le(vec![0.5, -90.0, -0.02, 3.0], 0.0)
            .le(vec![0.0, 0.0, 1.0, 0.0], 1.0);
        let sol = solve_lp(&lp).unwrap();
        assert_eq!(sol.status, LpStatus::Optimal);
        assert!((sol.objective_value - 0.05).abs() < 1e-9);
    }

    #[test]
    fn single_precision_solves() {
        let lp = LinearProgram::maximize(vec![3.0f32, 2.0])
            .le(vec![1.0, 1.0], 4.0)
            .le(vec![1.0, 3.0], 6.0);
        let sol = solve_lp(&lp).unwrap();
        assert!((sol.objective_value - 12.0).abs() < 1e-4);
    }
}
