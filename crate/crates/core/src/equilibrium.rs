//! Strong Stackelberg equilibrium via one linear program per attacker action.
//!
//! For every attacker action `a` the defender solves
//!
//! ```text
//! maximize    U_d(Φ, a)
//! subject to  U_a(Φ, a) ≥ U_a(Φ, a')   for every other action a'
//!             Σ_j Φ_ij = 1,  0 ≤ Φ_ij ≤ 1
//! ```
//!
//! and the best feasible program wins. Because the attacker's response is
//! fixed per program, ties among attacker responses resolve in the defender's
//! favor automatically.

use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{GameError, Result};
use crate::game::{
    attacker_utilities, attacker_utility, defender_utility, AttackerAction, DefenderStrategy,
    GameSpec,
};
use crate::lp::{solve_lp, LinearProgram, LpStatus};
use crate::scalar::Scalar;

/// Column offset of each type's block of `Φ_i·` variables.
fn block_offsets<T: Scalar>(spec: &GameSpec<T>) -> Vec<usize> {
    spec.types
        .iter()
        .scan(0, |acc, ty| {
            let start = *acc;
            *acc += ty.honey_flow_bound + 1;
            Some(start)
        })
        .collect()
}

/// Coefficients of `U_a(Φ, action)` over the flattened strategy variables.
fn attacker_row<T: Scalar>(spec: &GameSpec<T>, offsets: &[usize], action: AttackerAction) -> Vec<T> {
    let mut row = vec![T::zero(); spec.strategy_dimension()];
    if let AttackerAction::Attack(i) = action {
        let ty = &spec.types[i];
        for j in 0..=ty.honey_flow_bound {
            row[offsets[i] + j] = ty.attack_value_at(j);
        }
    }
    row
}

/// Builds the program whose optimum is the best defender utility achievable
/// while `fixed` remains an attacker best response.
///
/// Variables are `Φ_ij` laid out type-major. The constant part of the
/// defender objective is folded in through `Σ_j Φ_ij = 1`, so the objective
/// value equals `U_d(Φ, fixed)` exactly.
pub fn build_best_response_lp<T: Scalar>(
    spec: &GameSpec<T>,
    fixed: AttackerAction,
) -> Result<LinearProgram<T>> {
    spec.check()?;
    spec.check_action(fixed)?;
    let offsets = block_offsets(spec);
    let dim = spec.strategy_dimension();

    let fixed_row = attacker_row(spec, &offsets, fixed);
    let mut objective: Vec<T> = fixed_row.iter().map(|&u| -u).collect();
    for (i, ty) in spec.types.iter().enumerate() {
        for j in 0..=ty.honey_flow_bound {
            objective[offsets[i] + j] -= T::count(j) * ty.honey_flow_cost;
        }
    }

    let mut lp = LinearProgram::maximize(objective);
    for (i, ty) in spec.types.iter().enumerate() {
        let mut row = vec![T::zero(); dim];
        row[offsets[i]..=offsets[i] + ty.honey_flow_bound]
            .iter_mut()
            .for_each(|v| *v = T::one());
        lp = lp.eq(row, T::one());
    }
    for other in spec.actions().into_iter().filter(|&a| a != fixed) {
        let row = attacker_row(spec, &offsets, other)
            .into_iter()
            .zip(&fixed_row)
            .map(|(o, &f)| o - f)
            .collect();
        lp = lp.le(row, T::zero());
    }
    Ok(lp.with_upper_bounds(T::one()))
}

/// Outcome of one per-action program.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct ActionLpValue<T> {
    pub action: AttackerAction,
    pub status: LpStatus,
    /// Defender value of the program; `None` unless optimal.
    pub value: Option<T>,
    pub iterations: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct Equilibrium<T> {
    pub strategy: DefenderStrategy<T>,
    pub attacker_action: AttackerAction,
    pub defender_value: T,
    pub attacker_value: T,
    pub per_action_lp_values: Vec<ActionLpValue<T>>,
    pub solve_time: Duration,
}

/// Splits an LP point back into per-type marginals, clipping round-off below
/// zero and renormalizing each block.
fn strategy_from_point<T: Scalar>(spec: &GameSpec<T>, x: &[T]) -> DefenderStrategy<T> {
    let offsets = block_offsets(spec);
    let marginals = spec
        .types
        .iter()
        .zip(offsets)
        .map(|(ty, start)| {
            let mut m: Vec<T> = x[start..=start + ty.honey_flow_bound]
                .iter()
                .map(|&p| p.max(T::zero()))
                .collect();
            let total: T = m.iter().copied().sum();
            m.iter_mut().for_each(|p| *p /= total);
            m
        })
        .collect();
    DefenderStrategy::from_marginals_unchecked(marginals)
}

/// Computes the strong Stackelberg equilibrium by enumerating attacker actions.
///
/// The per-action programs run in parallel on the current rayon pool; the
/// reduction walks them in canonical action order, so the winner does not
/// depend on scheduling. A later action replaces the incumbent only when it
/// is strictly better beyond the probability tolerance.
pub fn solve_stackelberg<T: Scalar>(spec: &GameSpec<T>) -> Result<Equilibrium<T>> {
    spec.check()?;
    let started = Instant::now();

    let outcomes = spec
        .actions()
        .into_par_iter()
        .map(|action| {
            let lp = build_best_response_lp(spec, action)?;
            let sol = solve_lp(&lp).map_err(|e| GameError::Solver(format!("{action}: {e}")))?;
            Ok((action, sol))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut best: Option<(usize, T)> = None;
    for (k, (_, sol)) in outcomes.iter().enumerate() {
        if sol.status != LpStatus::Optimal {
            continue;
        }
        let v = sol.objective_value;
        let better = match best {
            None => true,
            Some((_, incumbent)) => v > incumbent + T::prob_tol() * T::one().max(incumbent.abs()),
        };
        if better {
            best = Some((k, v));
        }
    }
    let Some((winner, _)) = best else {
        return Err(GameError::Solver(
            "every per-action program is infeasible or unbounded".into(),
        ));
    };

    let (attacker_action, sol) = &outcomes[winner];
    let strategy = strategy_from_point(spec, &sol.x);
    let defender_value = defender_utility(spec, &strategy, *attacker_action)?;
    let attacker_value = attacker_utility(spec, &strategy, *attacker_action)?;
    let per_action_lp_values = outcomes
        .iter()
        .map(|(action, sol)| ActionLpValue {
            action: *action,
            status: sol.status,
            value: (sol.status == LpStatus::Optimal).then_some(sol.objective_value),
            iterations: sol.iterations,
        })
        .collect();

    Ok(Equilibrium {
        strategy,
        attacker_action: *attacker_action,
        defender_value,
        attacker_value,
        per_action_lp_values,
        solve_time: started.elapsed(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

const BEST_RESPONSE_TOL: f64 = 1e-6;
const VALUE_TOL: f64 = 1e-6;

/// Independently recomputes every quantity claimed by `eq`.
///
/// Checks: `shape`, `normalization`, `best_response`, `defender_value`,
/// `attacker_value`. Failures are reported, never raised.
pub fn verify_equilibrium<T: Scalar>(spec: &GameSpec<T>, eq: &Equilibrium<T>) -> VerificationReport {
    let to_f64 = |v: T| v.to_f64().unwrap_or(f64::NAN);
    let mut checks = Vec::new();
    let mut push = |name: &str, residual: f64, tol: f64| {
        checks.push(CheckResult {
            name: name.to_string(),
            passed: residual.is_finite() && residual <= tol,
            residual,
        })
    };

    if eq.strategy.check_shape(spec).is_err() {
        push("shape", 1.0, 0.0);
        for name in ["normalization", "best_response", "defender_value", "attacker_value"] {
            push(name, f64::INFINITY, 0.0);
        }
        return VerificationReport { checks };
    }
    push("shape", 0.0, 0.0);

    let normalization = eq
        .strategy
        .marginals()
        .iter()
        .map(|m| {
            let sum: T = m.iter().copied().sum();
            let negative = m.iter().fold(T::zero(), |acc, &p| acc.max(-p));
            to_f64((sum - T::one()).abs().max(negative))
        })
        .fold(0.0, f64::max);
    push("normalization", normalization, to_f64(T::prob_tol()));

    let best_response = match (
        attacker_utilities(spec, &eq.strategy),
        attacker_utility(spec, &eq.strategy, eq.attacker_action),
    ) {
        (Ok(all), Ok(chosen)) => {
            let best = all.iter().map(|&(_, u)| u).fold(T::neg_infinity(), T::max);
            to_f64(best - chosen).max(0.0)
        }
        _ => f64::INFINITY,
    };
    push("best_response", best_response, BEST_RESPONSE_TOL);

    let defender = defender_utility(spec, &eq.strategy, eq.attacker_action)
        .map(|v| to_f64((v - eq.defender_value).abs()))
        .unwrap_or(f64::INFINITY);
    push("defender_value", defender, VALUE_TOL);

    let attacker = attacker_utility(spec, &eq.strategy, eq.attacker_action)
        .map(|v| to_f64((v - eq.attacker_value).abs()))
        .unwrap_or(f64::INFINITY);
    push("attacker_value", attacker, VALUE_TOL);

    VerificationReport { checks }
}

#[cfg(test)]
mod tests {
    use super::*;

    type Vt = crate::game::VulnerabilityType<f64>;

    fn worked_example() -> GameSpec<f64> {
        GameSpec::new(vec![
            Vt::new(10.0, -5.0, 5, 2, 1.0),
            Vt::new(20.0, -10.0, 5, 3, 0.5),
        ])
    }

    #[test]
    fn lp_shape_for_worked_example() {
        let lp = build_best_response_lp(&worked_example(), AttackerAction::Attack(1)).unwrap();
        assert_eq!(lp.variable_count(), 7);
        assert_eq!(lp.eq_constraints.len(), 2);
        assert_eq!(lp.ineq_constraints.len(), 2);
        assert!(lp.upper_bounds.iter().all(|b| *b == Some(1.0)));
    }

    #[test]
    fn single_type_lp_has_only_the_abstain_row() {
        let spec = GameSpec::new(vec![Vt::new(4.0, 1.0, 3, 2, 0.1)]);
        let lp = build_best_response_lp(&spec, AttackerAction::Attack(0)).unwrap();
        assert_eq!(lp.ineq_constraints.len(), 1);
        // -U_a(Φ, 0) ≤ 0
        let row = &lp.ineq_constraints[0].coefficients;
        assert!((row[0] + 4.0).abs() < 1e-12);
    }

    #[test]
    fn no_attack_lp_objective_is_negative_cost() {
        let spec = worked_example();
        let lp = build_best_response_lp(&spec, AttackerAction::NoAttack).unwrap();
        assert_eq!(lp.objective, vec![0.0, -1.0, -2.0, 0.0, -0.5, -1.0, -1.5]);
        assert_eq!(lp.ineq_constraints.len(), 2);
        assert!((lp.ineq_constraints[1].coefficients[6] - 8.75).abs() < 1e-12);
    }

    #[test]
    fn objective_equals_defender_utility_on_strategies() {
        let spec = worked_example();
        let phi = DefenderStrategy::new(vec![vec![0.0, 0.5, 0.5], vec![0.0, 0.0, 0.0, 1.0]]).unwrap();
        let x: Vec<f64> = phi.marginals().concat();
        for action in spec.actions() {
            let lp = build_best_response_lp(&spec, action).unwrap();
            let v: f64 = lp.objective.iter().zip(&x).map(|(c, x)| c * x).sum();
            assert!((v - defender_utility(&spec, &phi, action).unwrap()).abs() < 1e-12);
        }
    }

    #[test]
    fn no_deception_possible_means_full_loss() {
        let spec = GameSpec::new(vec![Vt::new(1.0, 0.0, 4, 0, 0.1)]);
        let eq = solve_stackelberg(&spec).unwrap();
        assert_eq!(eq.attacker_action, AttackerAction::Attack(0));
        assert!((eq.defender_value + 1.0).abs() < 1e-12);
    }

    #[test]
    fn worked_example_improves_on_reference_strategy() {
        let eq = solve_stackelberg(&worked_example()).unwrap();
        assert!(eq.defender_value >= -11.75);
        assert!((eq.defender_value + 10.75).abs() < 1e-9);
        assert_eq!(eq.per_action_lp_values.len(), 3);
        assert!(verify_equilibrium(&worked_example(), &eq).passed());
    }

    #[test]
    fn unattractive_game_ends_in_abstention() {
        let spec = GameSpec::new(vec![
            Vt::new(-1.0, -2.0, 3, 2, 0.5),
            Vt::new(0.0, -1.0, 3, 2, 0.5),
        ]);
        let eq = solve_stackelberg(&spec).unwrap();
        assert!(eq.defender_value.abs() < 1e-12);
        assert!(verify_equilibrium(&spec, &eq).passed());
    }

    #[test]
    fn verification_flags_perturbations() {
        let spec = worked_example();
        let eq = solve_stackelberg(&spec).unwrap();

        let mut marginals = eq.strategy.clone().into_marginals();
        marginals[0][0] += 0.1;
        let broken = Equilibrium {
            strategy: DefenderStrategy::from_marginals_unchecked(marginals),
            ..eq.clone()
        };
        let report = verify_equilibrium(&spec, &broken);
        let norm = report.check("normalization").unwrap();
        assert!(!norm.passed);
        assert!((norm.residual - 0.1).abs() < 1e-9);

        let abstain = Equilibrium {
            attacker_action: AttackerAction::NoAttack,
            ..eq.clone()
        };
        assert!(!verify_equilibrium(&spec, &abstain).check("best_response").unwrap().passed);

        let wrong_shape = Equilibrium {
            strategy: DefenderStrategy::new(vec![vec![1.0]]).unwrap(),
            ..eq
        };
        assert!(!verify_equilibrium(&spec, &wrong_shape).passed());
    }
}
