//! Ratio-rule honey-flow allocator.
//!
//! A closed-form rule of thumb: the honey count for a type is a multiple of
//! its real-flow count, chosen by how valuable a fake target is relative to
//! a real one. Cheaper fakes call for more cover traffic.

use serde::{Deserialize, Serialize};

use crate::equilibrium::solve_stackelberg;
use crate::error::{GameError, Result};
use crate::game::{DefenderStrategy, GameSpec};
use crate::scalar::Scalar;
use crate::strategies::{evaluate_matchup, AttackerModel};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct HeuristicInput<T> {
    pub real_values: Vec<T>,
    pub fake_values: Vec<T>,
    pub real_flow_counts: Vec<usize>,
}

impl<T: Scalar> HeuristicInput<T> {
    pub fn new(real_values: Vec<T>, fake_values: Vec<T>, real_flow_counts: Vec<usize>) -> Result<Self> {
        if real_values.len() != fake_values.len() || real_values.len() != real_flow_counts.len() {
            return Err(GameError::invalid(
                None,
                "real_values, fake_values and real_flow_counts must have equal lengths",
            ));
        }
        for (i, (&rv, &fv)) in real_values.iter().zip(&fake_values).enumerate() {
            if rv <= T::zero() || !rv.is_finite() {
                return Err(GameError::invalid(i, "real value must be positive"));
            }
            if fv < T::zero() || !fv.is_finite() {
                return Err(GameError::invalid(i, "fake value must be nonnegative"));
            }
        }
        Ok(Self {
            real_values,
            fake_values,
            real_flow_counts,
        })
    }

    /// Reads values and real-flow counts off a game.
    pub fn from_game(spec: &GameSpec<T>) -> Result<Self> {
        Self::new(
            spec.types.iter().map(|t| t.attacker_real_value).collect(),
            spec.types.iter().map(|t| t.attacker_honey_value).collect(),
            spec.types.iter().map(|t| t.real_flow_count).collect(),
        )
    }
}

/// Honey-to-real multiplier, in percent, for one type.
fn multiplier_percent<T: Scalar>(rv: T, fv: T) -> usize {
    if fv >= T::of(0.85) * rv && fv <= rv {
        130
    } else if fv >= T::of(0.5) * rv && fv < T::of(0.85) * rv {
        150
    } else if fv < T::of(0.5) * rv && fv > T::of(0.3) * rv {
        165
    } else {
        200
    }
}

/// Recommended honey-flow count per type, rounded half up.
pub fn recommend_honey_flows<T: Scalar>(input: &HeuristicInput<T>) -> Vec<usize> {
    input
        .real_values
        .iter()
        .zip(&input.fake_values)
        .zip(&input.real_flow_counts)
        .map(|((&rv, &fv), &numrf)| (multiplier_percent(rv, fv) * numrf + 50) / 100)
        .collect()
}

/// The heuristic as a deterministic strategy, each count clipped to `H_i`.
pub fn heuristic_strategy<T: Scalar>(spec: &GameSpec<T>) -> Result<DefenderStrategy<T>> {
    let counts: Vec<usize> = recommend_honey_flows(&HeuristicInput::from_game(spec)?)
        .into_iter()
        .zip(&spec.types)
        .map(|(hf, ty)| hf.min(ty.honey_flow_bound))
        .collect();
    DefenderStrategy::point_mass(spec, &counts)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct HeuristicComparison<T> {
    pub honey_counts: Vec<usize>,
    pub heuristic_value: T,
    pub exact_value: T,
    /// `exact_value - heuristic_value`; nonnegative up to solver tolerance.
    pub gap: T,
}

/// Scores the heuristic against a rational attacker next to the exact optimum.
pub fn compare_with_exact<T: Scalar>(spec: &GameSpec<T>) -> Result<HeuristicComparison<T>> {
    let strategy = heuristic_strategy(spec)?;
    let heuristic = evaluate_matchup(spec, &strategy, "heuristic", AttackerModel::Rational)?;
    let exact = solve_stackelberg(spec)?;
    let honey_counts = strategy
        .marginals()
        .iter()
        .map(|m| m.iter().position(|&p| p == T::one()).unwrap_or(0))
        .collect();
    Ok(HeuristicComparison {
        honey_counts,
        heuristic_value: heuristic.defender_value,
        exact_value: exact.defender_value,
        gap: exact.defender_value - heuristic.defender_value,
    })
}
