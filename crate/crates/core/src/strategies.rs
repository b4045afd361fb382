//! Baseline defenders, naive attackers and the matchup evaluator.

use serde::{Deserialize, Serialize};

use crate::equilibrium::solve_stackelberg;
use crate::error::{GameError, Result};
use crate::game::{
    attacker_utilities, attacker_utility, defender_utility, utility_vs_mixed_attacker,
    AttackerAction, DefenderStrategy, GameSpec, MixedAttack,
};
use crate::scalar::Scalar;

/// The defender never creates honey flows.
pub fn no_deception_strategy<T: Scalar>(spec: &GameSpec<T>) -> DefenderStrategy<T> {
    let marginals = spec
        .types
        .iter()
        .map(|ty| {
            let mut m = vec![T::zero(); ty.honey_flow_bound + 1];
            m[0] = T::one();
            m
        })
        .collect();
    DefenderStrategy::from_marginals_unchecked(marginals)
}

/// Every honey count in `[0, H_i]` equally likely, independently per type.
pub fn uniform_random_strategy<T: Scalar>(spec: &GameSpec<T>) -> DefenderStrategy<T> {
    let marginals = spec
        .types
        .iter()
        .map(|ty| {
            let n = ty.honey_flow_bound + 1;
            vec![T::one() / T::count(n); n]
        })
        .collect();
    DefenderStrategy::from_marginals_unchecked(marginals)
}

/// Exact defender best response to a fixed attacker distribution.
///
/// With the attacker fixed the objective is linear in the strategy and
/// separates by type, so a point mass per type is optimal. Each type scans
/// `j ∈ [0, H_i]`; ties go to the smaller count.
pub fn best_response_defender<T: Scalar>(
    spec: &GameSpec<T>,
    attacker: &MixedAttack<T>,
) -> Result<DefenderStrategy<T>> {
    attacker.check(spec)?;
    let counts: Vec<usize> = spec
        .types
        .iter()
        .enumerate()
        .map(|(i, ty)| {
            let q = attacker.probability(AttackerAction::Attack(i));
            let value = |j: usize| -q * ty.attack_value_at(j) - T::count(j) * ty.honey_flow_cost;
            let mut best = (0, value(0));
            for j in 1..=ty.honey_flow_bound {
                let v = value(j);
                if v > best.1 {
                    best = (j, v);
                }
            }
            best.0
        })
        .collect();
    DefenderStrategy::point_mass(spec, &counts)
}

/// Naive attacker that assumes every type carries its maximum `H_i` honey
/// flows and attacks the type that looks best under that assumption. It
/// abstains when every such estimate is negative.
pub fn greedy_attacker<T: Scalar>(spec: &GameSpec<T>) -> AttackerAction {
    let mut best: Option<(usize, T)> = None;
    for i in spec.attackable() {
        let ty = &spec.types[i];
        let u = ty.attack_value_at(ty.honey_flow_bound);
        if best.is_none_or(|(_, b)| u > b) {
            best = Some((i, u));
        }
    }
    match best {
        Some((i, u)) if u >= T::zero() => AttackerAction::Attack(i),
        _ => AttackerAction::NoAttack,
    }
}

/// Naive attacker spreading attacks evenly over every attackable type.
pub fn uniform_attacker<T: Scalar>(spec: &GameSpec<T>) -> Result<MixedAttack<T>> {
    let targets: Vec<usize> = spec.attackable().collect();
    if targets.is_empty() {
        return Err(GameError::EmptyActionSet);
    }
    let p = T::one() / T::count(targets.len());
    let mut attack = vec![T::zero(); spec.type_count()];
    for i in targets {
        attack[i] = p;
    }
    MixedAttack::new(spec, T::zero(), attack)
}

/// Fully informed attacker best response.
///
/// Actions within the probability tolerance of the best attacker utility are
/// considered tied; ties go to the action that is best for the defender,
/// then to canonical order (lowest id, abstaining last).
pub fn rational_attacker<T: Scalar>(
    spec: &GameSpec<T>,
    strategy: &DefenderStrategy<T>,
) -> Result<AttackerAction> {
    let utilities = attacker_utilities(spec, strategy)?;
    let best = utilities.iter().map(|&(_, u)| u).fold(T::neg_infinity(), T::max);
    let tie = T::prob_tol() * T::one().max(best.abs());

    let mut chosen: Option<(AttackerAction, T)> = None;
    for &(action, u) in &utilities {
        if u < best - tie {
            continue;
        }
        let d = defender_utility(spec, strategy, action)?;
        let replace = match chosen {
            None => true,
            Some((_, incumbent)) => d > incumbent + T::prob_tol() * T::one().max(incumbent.abs()),
        };
        if replace {
            chosen = Some((action, d));
        }
    }
    Ok(chosen.map(|(a, _)| a).unwrap_or(AttackerAction::NoAttack))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AttackerModel {
    Rational,
    UniformRandom,
    Greedy,
}

impl AttackerModel {
    pub const ALL: [AttackerModel; 3] = [
        AttackerModel::Rational,
        AttackerModel::UniformRandom,
        AttackerModel::Greedy,
    ];

    pub fn label(self) -> &'static str {
        match self {
            AttackerModel::Rational => "rational",
            AttackerModel::UniformRandom => "uniform",
            AttackerModel::Greedy => "greedy",
        }
    }
}

/// Defender strategies the evaluators know how to construct.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DefenderPolicy {
    Stackelberg,
    UniformRandom,
    NoDeception,
}

impl DefenderPolicy {
    pub const ALL: [DefenderPolicy; 3] = [
        DefenderPolicy::Stackelberg,
        DefenderPolicy::UniformRandom,
        DefenderPolicy::NoDeception,
    ];

    pub fn label(self) -> &'static str {
        match self {
            DefenderPolicy::Stackelberg => "stackelberg",
            DefenderPolicy::UniformRandom => "uniform",
            DefenderPolicy::NoDeception => "no_deception",
        }
    }

    pub fn strategy<T: Scalar>(self, spec: &GameSpec<T>) -> Result<DefenderStrategy<T>> {
        Ok(match self {
            DefenderPolicy::Stackelberg => solve_stackelberg(spec)?.strategy,
            DefenderPolicy::UniformRandom => uniform_random_strategy(spec),
            DefenderPolicy::NoDeception => no_deception_strategy(spec),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", bound = "T: Scalar")]
pub enum AttackerBehavior<T> {
    Pure(AttackerAction),
    Mixed(MixedAttack<T>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct MatchupResult<T> {
    pub defender_value: T,
    pub attacker_value: T,
    pub attacker_behavior: AttackerBehavior<T>,
    pub defender_strategy_label: String,
}

/// Plays `strategy` against the attacker `model` and scores it analytically.
pub fn evaluate_matchup<T: Scalar>(
    spec: &GameSpec<T>,
    strategy: &DefenderStrategy<T>,
    label: &str,
    model: AttackerModel,
) -> Result<MatchupResult<T>> {
    strategy.check_shape(spec)?;
    let behavior = match model {
        AttackerModel::Rational => AttackerBehavior::Pure(rational_attacker(spec, strategy)?),
        AttackerModel::Greedy => AttackerBehavior::Pure(greedy_attacker(spec)),
        AttackerModel::UniformRandom => AttackerBehavior::Mixed(uniform_attacker(spec)?),
    };
    let (defender_value, attacker_value) = match &behavior {
        AttackerBehavior::Pure(action) => (
            defender_utility(spec, strategy, *action)?,
            attacker_utility(spec, strategy, *action)?,
        ),
        AttackerBehavior::Mixed(dist) => utility_vs_mixed_attacker(spec, strategy, dist)?,
    };
    Ok(MatchupResult {
        defender_value,
        attacker_value,
        attacker_behavior: behavior,
        defender_strategy_label: label.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    type Vt = crate::game::VulnerabilityType<f64>;
    use crate::game::honey_cost;

    fn worked_example() -> GameSpec<f64> {
        GameSpec::new(vec![
            Vt::new(10.0, -5.0, 5, 2, 1.0),
            Vt::new(20.0, -10.0, 5, 3, 0.5),
        ])
    }

    fn reference_strategy() -> DefenderStrategy<f64> {
        DefenderStrategy::new(vec![vec![0.0, 0.5, 0.5], vec![0.0, 0.0, 0.0, 1.0]]).unwrap()
    }

    #[test]
    fn no_deception_baseline() {
        let spec = worked_example();
        let s = no_deception_strategy(&spec);
        assert_eq!(honey_cost(&spec, &s).unwrap(), 0.0);
        assert_eq!(rational_attacker(&spec, &s).unwrap(), AttackerAction::Attack(1));
        assert_eq!(attacker_utility(&spec, &s, AttackerAction::Attack(1)).unwrap(), 20.0);
        let r = evaluate_matchup(&spec, &s, "none", AttackerModel::Rational).unwrap();
        assert_eq!(r.defender_value, -20.0);
    }

    #[test]
    fn uniform_baseline() {
        let spec = worked_example();
        let s = uniform_random_strategy(&spec);
        for p in s.marginal(0) {
            assert!((p - 1.0 / 3.0).abs() < 1e-15);
        }
        let cost_type_2: f64 = s.marginal(1).iter().enumerate().map(|(j, p)| p * j as f64).sum::<f64>() * 0.5;
        assert!((cost_type_2 - 0.75).abs() < 1e-12);

        let flat = GameSpec::new(vec![Vt::new(1.0, 0.0, 1, 0, 0.0)]);
        assert_eq!(uniform_random_strategy(&flat), no_deception_strategy(&flat));
    }

    #[test]
    fn best_response_to_abstention_creates_nothing() {
        let spec = worked_example();
        let q = MixedAttack::point(&spec, AttackerAction::NoAttack).unwrap();
        let s = best_response_defender(&spec, &q).unwrap();
        assert_eq!(s, no_deception_strategy(&spec));
    }

    #[test]
    fn free_deception_is_maxed_out() {
        let spec = GameSpec::new(vec![Vt::new(2.0, 0.0, 3, 7, 0.0)]);
        let q = MixedAttack::point(&spec, AttackerAction::Attack(0)).unwrap();
        let s = best_response_defender(&spec, &q).unwrap();
        assert_eq!(s.marginal(0)[7], 1.0);
    }

    #[test]
    fn greedy_examples() {
        let spec = worked_example();
        assert_eq!(greedy_attacker(&spec), AttackerAction::Attack(1));
        let u1 = spec.types[0].attack_value_at(2);
        assert!((u1 - (5.0 / 7.0 * 10.0 - 2.0 / 7.0 * 5.0)).abs() < 1e-12);
        assert!((spec.types[1].attack_value_at(3) - 8.75).abs() < 1e-12);

        let hostile = GameSpec::new(vec![
            Vt::new(-1.0, -2.0, 1, 1, 0.0),
            Vt::new(-0.5, -3.0, 1, 1, 0.0),
        ]);
        assert_eq!(greedy_attacker(&hostile), AttackerAction::NoAttack);

        let no_honey = GameSpec::new(vec![
            Vt::new(3.0, 0.0, 1, 0, 0.0),
            Vt::new(5.0, 0.0, 1, 0, 0.0),
            Vt::new(5.0, 0.0, 1, 0, 0.0),
        ]);
        assert_eq!(greedy_attacker(&no_honey), AttackerAction::Attack(1));
    }

    #[test]
    fn uniform_attacker_examples() {
        let five = GameSpec::new(vec![Vt::new(1.0, 0.0, 5, 5, 0.0); 5]);
        let q = uniform_attacker(&five).unwrap();
        assert!(q.attack.iter().all(|&p| (p - 0.2).abs() < 1e-15));
        assert_eq!(q.no_attack, 0.0);

        let one = GameSpec::new(vec![
            Vt::new(1.0, 0.0, 0, 0, 0.0),
            Vt::new(1.0, 0.0, 5, 5, 0.0),
        ]);
        assert_eq!(uniform_attacker(&one).unwrap().attack, vec![0.0, 1.0]);

        let none = GameSpec::new(vec![Vt::new(1.0, 0.0, 0, 0, 0.0)]);
        assert_eq!(uniform_attacker(&none), Err(GameError::EmptyActionSet));
    }

    #[test]
    fn rational_attacker_examples() {
        let spec = worked_example();
        assert_eq!(
            rational_attacker(&spec, &reference_strategy()).unwrap(),
            AttackerAction::Attack(1)
        );

        let hostile = GameSpec::new(vec![
            Vt::new(-1.0, -2.0, 1, 1, 0.0),
            Vt::new(0.0, -3.0, 1, 1, 0.0),
        ]);
        let s = uniform_random_strategy(&hostile);
        assert_eq!(rational_attacker(&hostile, &s).unwrap(), AttackerAction::NoAttack);

        let twins = GameSpec::new(vec![Vt::new(2.0, 0.0, 2, 1, 0.0); 2]);
        let s = no_deception_strategy(&twins);
        assert_eq!(rational_attacker(&twins, &s).unwrap(), AttackerAction::Attack(0));
    }

    #[test]
    fn rational_ties_resolve_to_canonical_order() {
        // The attack component is zero-sum, so attacker ties are also defender
        // ties and the canonical order decides.
        let spec = GameSpec::new(vec![
            Vt::new(2.0, 0.0, 1, 1, 0.0),
            Vt::new(1.0, 1.0, 1, 0, 0.0),
        ]);
        let s = DefenderStrategy::point_mass(&spec, &[1, 0]).unwrap();
        assert_eq!(rational_attacker(&spec, &s).unwrap(), AttackerAction::Attack(0));

        let zero = GameSpec::new(vec![Vt::new(0.0, 0.0, 1, 0, 0.0)]);
        let s = no_deception_strategy(&zero);
        assert_eq!(rational_attacker(&zero, &s).unwrap(), AttackerAction::Attack(0));
    }

    #[test]
    fn matchup_matches_reference_values() {
        let spec = worked_example();
        let r = evaluate_matchup(&spec, &reference_strategy(), "reference", AttackerModel::Rational).unwrap();
        assert!((r.defender_value + 11.75).abs() < 1e-9);
        assert!((r.attacker_value - 8.75).abs() < 1e-9);
        assert_eq!(r.attacker_behavior, AttackerBehavior::Pure(AttackerAction::Attack(1)));
        assert_eq!(r.defender_strategy_label, "reference");
    }

    #[test]
    fn stackelberg_against_greedy_is_recorded_not_ordered() {
        let spec = worked_example();
        let s = DefenderPolicy::Stackelberg.strategy(&spec).unwrap();
        let rational = evaluate_matchup(&spec, &s, "sse", AttackerModel::Rational).unwrap();
        let greedy = evaluate_matchup(&spec, &s, "sse", AttackerModel::Greedy).unwrap();
        // Greedy attacks type 2, which is a tied best response under the
        // equilibrium strategy: both must equal the equilibrium value here.
        assert_eq!(greedy.attacker_behavior, AttackerBehavior::Pure(AttackerAction::Attack(1)));
        assert!((rational.defender_value + 10.75).abs() < 1e-9);
        assert!((greedy.defender_value + 10.75).abs() < 1e-9);
        assert!((greedy.attacker_value - 8.75).abs() < 1e-9);
    }
}
