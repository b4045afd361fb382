//! Game data model and the closed-form utilities of the honey-flow game.
//!
//! The defender commits to a distribution over how many honey flows of each
//! vulnerability type to inject; the attacker picks one type (or abstains)
//! and draws a flow of that type uniformly at random.

use serde::{Deserialize, Serialize};

use crate::error::{GameError, Result};
use crate::scalar::Scalar;

/// One vulnerability type. Its id is its position in [`GameSpec::types`].
///
/// Defender values are the negated attacker values and are not stored.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, bound = "T: Scalar")]
pub struct VulnerabilityType<T> {
    /// Attacker gain when the drawn flow is real.
    pub attacker_real_value: T,
    /// Attacker gain when the drawn flow is honey; may be zero or negative.
    pub attacker_honey_value: T,
    #[serde(rename = "real_flows")]
    pub real_flow_count: usize,
    pub honey_flow_bound: usize,
    #[serde(rename = "cost_per_flow")]
    pub honey_flow_cost: T,
}

impl<T: Scalar> VulnerabilityType<T> {
    pub fn new(
        attacker_real_value: T,
        attacker_honey_value: T,
        real_flow_count: usize,
        honey_flow_bound: usize,
        honey_flow_cost: T,
    ) -> Self {
        Self {
            attacker_real_value,
            attacker_honey_value,
            real_flow_count,
            honey_flow_bound,
            honey_flow_cost,
        }
    }

    /// Probability that a uniformly drawn flow is real when `honey` honey
    /// flows are mixed in. Zero when the type has no real flows.
    pub fn real_draw_probability(&self, honey: usize) -> T {
        if self.real_flow_count == 0 {
            return T::zero();
        }
        let real = T::count(self.real_flow_count);
        real / (real + T::count(honey))
    }

    /// Attacker's expected gain from attacking this type while exactly
    /// `honey` honey flows are present.
    pub fn attack_value_at(&self, honey: usize) -> T {
        let p = self.real_draw_probability(honey);
        p * self.attacker_real_value + (T::one() - p) * self.attacker_honey_value
    }

    /// A type with neither real nor possible honey flows offers nothing to draw.
    pub fn is_attackable(&self) -> bool {
        self.real_flow_count + self.honey_flow_bound > 0
    }
}

/// A complete game instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, bound = "T: Scalar")]
pub struct GameSpec<T> {
    pub types: Vec<VulnerabilityType<T>>,
}

impl<T: Scalar> GameSpec<T> {
    pub fn new(types: Vec<VulnerabilityType<T>>) -> Self {
        Self { types }
    }

    pub fn type_count(&self) -> usize {
        self.types.len()
    }

    pub fn is_attackable(&self, id: usize) -> bool {
        self.types.get(id).is_some_and(VulnerabilityType::is_attackable)
    }

    /// Ids of the types the attacker may target, ascending.
    pub fn attackable(&self) -> impl Iterator<Item = usize> + '_ {
        self.types
            .iter()
            .enumerate()
            .filter(|(_, t)| t.is_attackable())
            .map(|(i, _)| i)
    }

    /// Every attacker action in canonical order: attacks by ascending id, then
    /// [`AttackerAction::NoAttack`].
    pub fn actions(&self) -> Vec<AttackerAction> {
        self.attackable()
            .map(AttackerAction::Attack)
            .chain(std::iter::once(AttackerAction::NoAttack))
            .collect()
    }

    /// Total number of `(type, honey count)` cells, i.e. the dimension of a
    /// defender strategy.
    pub fn strategy_dimension(&self) -> usize {
        self.types.iter().map(|t| t.honey_flow_bound + 1).sum()
    }

    pub fn validate(self) -> Result<Self> {
        validate_game(self)
    }

    /// Borrowing form of [`validate_game`].
    pub fn check(&self) -> Result<()> {
        if self.types.is_empty() {
            return Err(GameError::invalid(None, "at least one vulnerability type is required"));
        }
        for (id, ty) in self.types.iter().enumerate() {
            if !ty.attacker_real_value.is_finite() || !ty.attacker_honey_value.is_finite() {
                return Err(GameError::invalid(id, "attacker values must be finite"));
            }
            if ty.attacker_honey_value > ty.attacker_real_value {
                return Err(GameError::invalid(
                    id,
                    "attacker_honey_value must not exceed attacker_real_value",
                ));
            }
            if !ty.honey_flow_cost.is_finite() || ty.honey_flow_cost < T::zero() {
                return Err(GameError::invalid(id, "cost_per_flow must be finite and nonnegative"));
            }
        }
        Ok(())
    }

    pub(crate) fn check_action(&self, action: AttackerAction) -> Result<()> {
        match action {
            AttackerAction::NoAttack => Ok(()),
            AttackerAction::Attack(i) if self.is_attackable(i) => Ok(()),
            AttackerAction::Attack(i) if i < self.types.len() => {
                Err(GameError::invalid(i, "type has no flows and cannot be attacked"))
            }
            AttackerAction::Attack(i) => Err(GameError::invalid(i, "unknown type id")),
        }
    }
}

/// Checks every structural invariant of a game and returns it unchanged.
pub fn validate_game<T: Scalar>(spec: GameSpec<T>) -> Result<GameSpec<T>> {
    spec.check()?;
    Ok(spec)
}

/// A pure attacker action.
///
/// The derived ordering (attacks by id, then `NoAttack`) is the tie-break
/// order used everywhere.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AttackerAction {
    Attack(usize),
    NoAttack,
}

impl std::fmt::Display for AttackerAction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AttackerAction::Attack(i) => write!(f, "attack({i})"),
            AttackerAction::NoAttack => f.write_str("no_attack"),
        }
    }
}

/// Defender mixed strategy stored as per-type marginals over honey counts:
/// `marginals[i][j]` is the probability of creating exactly `j` honey flows
/// of type `i`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct DefenderStrategy<T> {
    marginals: Vec<Vec<T>>,
}

impl<T: Scalar> DefenderStrategy<T> {
    /// Builds a strategy, checking that every marginal is a probability vector.
    pub fn new(marginals: Vec<Vec<T>>) -> Result<Self> {
        let tol = T::prob_tol();
        for (i, m) in marginals.iter().enumerate() {
            if m.is_empty() {
                return Err(GameError::Distribution(format!("type {i}: empty marginal")));
            }
            if let Some(p) = m.iter().find(|p| !p.is_finite() || **p < -tol || **p > T::one() + tol) {
                return Err(GameError::Distribution(format!(
                    "type {i}: probability {p} outside [0, 1]"
                )));
            }
            let total: T = m.iter().copied().sum();
            if (total - T::one()).abs() > tol {
                return Err(GameError::Distribution(format!(
                    "type {i}: marginal sums to {total}, expected 1"
                )));
            }
        }
        Ok(Self { marginals })
    }

    /// Wraps marginals without any checks. Intended for diagnostics that need
    /// to represent broken strategies.
    pub fn from_marginals_unchecked(marginals: Vec<Vec<T>>) -> Self {
        Self { marginals }
    }

    /// Deterministic strategy creating exactly `counts[i]` honey flows of type `i`.
    pub fn point_mass(spec: &GameSpec<T>, counts: &[usize]) -> Result<Self> {
        if counts.len() != spec.type_count() {
            return Err(GameError::invalid(
                None,
                format!("expected {} honey counts, got {}", spec.type_count(), counts.len()),
            ));
        }
        let marginals = spec
            .types
            .iter()
            .zip(counts)
            .enumerate()
            .map(|(i, (ty, &j))| {
                if j > ty.honey_flow_bound {
                    return Err(GameError::invalid(
                        i,
                        format!("honey count {j} exceeds bound {}", ty.honey_flow_bound),
                    ));
                }
                let mut m = vec![T::zero(); ty.honey_flow_bound + 1];
                m[j] = T::one();
                Ok(m)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { marginals })
    }

    pub fn marginals(&self) -> &[Vec<T>] {
        &self.marginals
    }

    pub fn marginal(&self, type_id: usize) -> &[T] {
        &self.marginals[type_id]
    }

    pub fn into_marginals(self) -> Vec<Vec<T>> {
        self.marginals
    }

    /// Expected number of honey flows of each type.
    pub fn expected_honey_counts(&self) -> Vec<T> {
        self.marginals
            .iter()
            .map(|m| m.iter().enumerate().map(|(j, &p)| p * T::count(j)).sum())
            .collect()
    }

    /// Errors with [`GameError::Shape`] unless this strategy matches `spec`.
    pub fn check_shape(&self, spec: &GameSpec<T>) -> Result<()> {
        for (i, ty) in spec.types.iter().enumerate() {
            let found = self.marginals.get(i).map_or(0, Vec::len);
            if found != ty.honey_flow_bound + 1 {
                return Err(GameError::Shape {
                    type_id: i,
                    expected: ty.honey_flow_bound + 1,
                    found,
                });
            }
        }
        if self.marginals.len() > spec.type_count() {
            let i = spec.type_count();
            return Err(GameError::Shape {
                type_id: i,
                expected: 0,
                found: self.marginals[i].len(),
            });
        }
        Ok(())
    }
}

/// Attacker mixed behavior: a probability for abstaining plus one per type.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct MixedAttack<T> {
    pub no_attack: T,
    pub attack: Vec<T>,
}

impl<T: Scalar> MixedAttack<T> {
    /// Validated distribution over `NoAttack` and the attackable types of `spec`.
    pub fn new(spec: &GameSpec<T>, no_attack: T, attack: Vec<T>) -> Result<Self> {
        let dist = Self { no_attack, attack };
        dist.check(spec)?;
        Ok(dist)
    }

    pub fn point(spec: &GameSpec<T>, action: AttackerAction) -> Result<Self> {
        spec.check_action(action)?;
        let mut attack = vec![T::zero(); spec.type_count()];
        let mut no_attack = T::zero();
        match action {
            AttackerAction::Attack(i) => attack[i] = T::one(),
            AttackerAction::NoAttack => no_attack = T::one(),
        }
        Ok(Self { no_attack, attack })
    }

    pub fn probability(&self, action: AttackerAction) -> T {
        match action {
            AttackerAction::Attack(i) => self.attack.get(i).copied().unwrap_or_else(T::zero),
            AttackerAction::NoAttack => self.no_attack,
        }
    }

    /// `(action, probability)` pairs in canonical action order, zeros included.
    pub fn iter(&self) -> impl Iterator<Item = (AttackerAction, T)> + '_ {
        self.attack
            .iter()
            .enumerate()
            .map(|(i, &p)| (AttackerAction::Attack(i), p))
            .chain(std::iter::once((AttackerAction::NoAttack, self.no_attack)))
    }

    pub fn check(&self, spec: &GameSpec<T>) -> Result<()> {
        let tol = T::prob_tol();
        if self.attack.len() != spec.type_count() {
            return Err(GameError::Distribution(format!(
                "expected {} attack probabilities, got {}",
                spec.type_count(),
                self.attack.len()
            )));
        }
        let mut total = T::zero();
        for (action, p) in self.iter() {
            if !p.is_finite() || p < T::zero() {
                return Err(GameError::Distribution(format!("{action}: probability {p} is negative")));
            }
            if let AttackerAction::Attack(i) = action {
                if p > T::zero() && !spec.is_attackable(i) {
                    return Err(GameError::Distribution(format!(
                        "{action}: type is not attackable"
                    )));
                }
            }
            total += p;
        }
        if (total - T::one()).abs() > tol {
            return Err(GameError::Distribution(format!("probabilities sum to {total}, expected 1")));
        }
        Ok(())
    }
}

/// Probability that an attack on `type_id` draws a real flow under `strategy`.
pub fn real_attack_probability<T: Scalar>(
    spec: &GameSpec<T>,
    type_id: usize,
    strategy: &DefenderStrategy<T>,
) -> Result<T> {
    strategy.check_shape(spec)?;
    spec.check_action(AttackerAction::Attack(type_id))?;
    Ok(real_probability_unchecked(spec, type_id, strategy))
}

fn real_probability_unchecked<T: Scalar>(
    spec: &GameSpec<T>,
    type_id: usize,
    strategy: &DefenderStrategy<T>,
) -> T {
    let ty = &spec.types[type_id];
    strategy
        .marginal(type_id)
        .iter()
        .enumerate()
        .map(|(j, &p)| p * ty.real_draw_probability(j))
        .sum()
}

/// Expected total honey-flow generation cost of `strategy`.
pub fn honey_cost<T: Scalar>(spec: &GameSpec<T>, strategy: &DefenderStrategy<T>) -> Result<T> {
    strategy.check_shape(spec)?;
    Ok(honey_cost_unchecked(spec, strategy))
}

fn honey_cost_unchecked<T: Scalar>(spec: &GameSpec<T>, strategy: &DefenderStrategy<T>) -> T {
    spec.types
        .iter()
        .zip(strategy.marginals())
        .map(|(ty, m)| {
            let per_type: T = m.iter().enumerate().map(|(j, &p)| p * T::count(j)).sum();
            per_type * ty.honey_flow_cost
        })
        .sum()
}

/// Attack component of the utilities: `(defender, attacker)` excluding cost.
fn attack_component<T: Scalar>(
    spec: &GameSpec<T>,
    strategy: &DefenderStrategy<T>,
    action: AttackerAction,
) -> (T, T) {
    match action {
        AttackerAction::NoAttack => (T::zero(), T::zero()),
        AttackerAction::Attack(i) => {
            let ty = &spec.types[i];
            let p = real_probability_unchecked(spec, i, strategy);
            let q = T::one() - p;
            let defender = p * -ty.attacker_real_value + q * -ty.attacker_honey_value;
            let attacker = p * ty.attacker_real_value + q * ty.attacker_honey_value;
            (defender, attacker)
        }
    }
}

/// Defender expected utility. Against `NoAttack` only the honey cost remains.
pub fn defender_utility<T: Scalar>(
    spec: &GameSpec<T>,
    strategy: &DefenderStrategy<T>,
    action: AttackerAction,
) -> Result<T> {
    strategy.check_shape(spec)?;
    spec.check_action(action)?;
    let (defender, _) = attack_component(spec, strategy, action);
    Ok(defender - honey_cost_unchecked(spec, strategy))
}

/// Attacker expected utility; exactly zero for `NoAttack`.
pub fn attacker_utility<T: Scalar>(
    spec: &GameSpec<T>,
    strategy: &DefenderStrategy<T>,
    action: AttackerAction,
) -> Result<T> {
    strategy.check_shape(spec)?;
    spec.check_action(action)?;
    Ok(attack_component(spec, strategy, action).1)
}

/// Attacker utility of every action in canonical order.
pub fn attacker_utilities<T: Scalar>(
    spec: &GameSpec<T>,
    strategy: &DefenderStrategy<T>,
) -> Result<Vec<(AttackerAction, T)>> {
    strategy.check_shape(spec)?;
    Ok(spec
        .actions()
        .into_iter()
        .map(|a| (a, attack_component(spec, strategy, a).1))
        .collect())
}

/// Expected `(defender, attacker)` utilities against a mixed attacker. The
/// honey cost is charged once, independent of the attacker's choice.
pub fn utility_vs_mixed_attacker<T: Scalar>(
    spec: &GameSpec<T>,
    strategy: &DefenderStrategy<T>,
    attacker: &MixedAttack<T>,
) -> Result<(T, T)> {
    strategy.check_shape(spec)?;
    attacker.check(spec)?;
    let (mut defender, mut att) = (T::zero(), T::zero());
    for (action, q) in attacker.iter() {
        if q == T::zero() {
            continue;
        }
        let (d, a) = attack_component(spec, strategy, action);
        defender += q * d;
        att += q * a;
    }
    Ok((defender - honey_cost_unchecked(spec, strategy), att))
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

    fn example_strategy() -> DefenderStrategy<f64> {
        DefenderStrategy::new(vec![vec![0.0, 0.5, 0.5], vec![0.0, 0.0, 0.0, 1.0]]).unwrap()
    }

    #[test]
    fn validation_accepts_example_and_rejects_negative_cost() {
        assert!(validate_game(worked_example()).is_ok());

        let mut bad = worked_example();
        bad.types[1].honey_flow_cost = -1.0;
        match validate_game(bad) {
            Err(GameError::Validation { type_id, .. }) => assert_eq!(type_id, Some(1)),
            other => panic!("unexpected {other:?}"),
        }

        let mut inverted = worked_example();
        inverted.types[0].attacker_honey_value = 11.0;
        assert!(validate_game(inverted).is_err());

        assert!(validate_game(GameSpec::<f64>::new(vec![])).is_err());
    }

    #[test]
    fn real_probability_examples() {
        let spec = worked_example();
        let s = example_strategy();
        assert!((real_attack_probability(&spec, 1, &s).unwrap() - 0.625).abs() < 1e-12);
        let p0 = real_attack_probability(&spec, 0, &s).unwrap();
        assert!((p0 - (0.5 * 5.0 / 6.0 + 0.5 * 5.0 / 7.0)).abs() < 1e-12);
        assert!((p0 - 0.773810).abs() < 1e-6);

        let none = DefenderStrategy::point_mass(&spec, &[0, 0]).unwrap();
        assert_eq!(real_attack_probability(&spec, 0, &none).unwrap(), 1.0);
    }

    #[test]
    fn zero_real_flows_means_every_draw_is_honey() {
        let spec = GameSpec::new(vec![Vt::new(3.0, 1.0, 0, 2, 0.0)]);
        let s = DefenderStrategy::new(vec![vec![0.2, 0.3, 0.5]]).unwrap();
        assert_eq!(real_attack_probability(&spec, 0, &s).unwrap(), 0.0);
        assert_eq!(attacker_utility(&spec, &s, AttackerAction::Attack(0)).unwrap(), 1.0);
    }

    #[test]
    fn unattackable_type_is_excluded() {
        let spec = GameSpec::new(vec![
            Vt::new(3.0, 1.0, 0, 0, 0.0),
            Vt::new(3.0, 1.0, 1, 0, 0.0),
        ]);
        assert_eq!(spec.attackable().collect::<Vec<_>>(), vec![1]);
        assert_eq!(
            spec.actions(),
            vec![AttackerAction::Attack(1), AttackerAction::NoAttack]
        );
        let s = DefenderStrategy::point_mass(&spec, &[0, 0]).unwrap();
        assert!(attacker_utility(&spec, &s, AttackerAction::Attack(0)).is_err());
    }

    #[test]
    fn honey_cost_examples() {
        let spec = worked_example();
        assert!((honey_cost(&spec, &example_strategy()).unwrap() - 3.0).abs() < 1e-12);
        let none = DefenderStrategy::point_mass(&spec, &[0, 0]).unwrap();
        assert_eq!(honey_cost(&spec, &none).unwrap(), 0.0);

        let single = GameSpec::new(vec![Vt::new(1.0, 0.0, 3, 1, 0.1)]);
        let one = DefenderStrategy::point_mass(&single, &[1]).unwrap();
        assert!((honey_cost(&single, &one).unwrap() - 0.1).abs() < 1e-15);
    }

    #[test]
    fn utility_examples() {
        let spec = worked_example();
        let s = example_strategy();
        let a2 = AttackerAction::Attack(1);
        assert!((attacker_utility(&spec, &s, a2).unwrap() - 8.75).abs() < 1e-9);
        assert!((defender_utility(&spec, &s, a2).unwrap() + 11.75).abs() < 1e-9);
        assert_eq!(attacker_utility(&spec, &s, AttackerAction::NoAttack).unwrap(), 0.0);
        assert!((defender_utility(&spec, &s, AttackerAction::NoAttack).unwrap() + 3.0).abs() < 1e-12);
        let u1 = attacker_utility(&spec, &s, AttackerAction::Attack(0)).unwrap();
        assert!((u1 - 6.607_142_857_142_857).abs() < 1e-9);

        let none = DefenderStrategy::point_mass(&spec, &[0, 0]).unwrap();
        assert_eq!(defender_utility(&spec, &none, AttackerAction::Attack(0)).unwrap(), -10.0);
    }

    #[test]
    fn shape_errors() {
        let spec = worked_example();
        let short = DefenderStrategy::new(vec![vec![1.0, 0.0], vec![1.0, 0.0, 0.0, 0.0]]).unwrap();
        assert_eq!(
            honey_cost(&spec, &short),
            Err(GameError::Shape { type_id: 0, expected: 3, found: 2 })
        );
        let missing = DefenderStrategy::new(vec![vec![1.0, 0.0, 0.0]]).unwrap();
        assert!(matches!(
            defender_utility(&spec, &missing, AttackerAction::Attack(0)),
            Err(GameError::Shape { type_id: 1, .. })
        ));
    }

    #[test]
    fn strategy_construction_rejects_non_distributions() {
        assert!(DefenderStrategy::new(vec![vec![0.5, 0.6]]).is_err());
        assert!(DefenderStrategy::new(vec![vec![-0.1, 1.1]]).is_err());
        assert!(DefenderStrategy::<f64>::new(vec![vec![]]).is_err());
        assert!(DefenderStrategy::new(vec![vec![0.5, 0.5 + 1e-12]]).is_ok());
    }

    #[test]
    fn mixed_attacker_reduces_to_pure_and_rejects_bad_mass() {
        let spec = worked_example();
        let s = example_strategy();
        let point = MixedAttack::point(&spec, AttackerAction::Attack(1)).unwrap();
        let (d, a) = utility_vs_mixed_attacker(&spec, &s, &point).unwrap();
        assert!((d + 11.75).abs() < 1e-9 && (a - 8.75).abs() < 1e-9);

        let half = MixedAttack::new(&spec, 0.0, vec![0.5, 0.5]).unwrap();
        let (d, _) = utility_vs_mixed_attacker(&spec, &s, &half).unwrap();
        let d1 = defender_utility(&spec, &s, AttackerAction::Attack(0)).unwrap();
        let d2 = defender_utility(&spec, &s, AttackerAction::Attack(1)).unwrap();
        assert!((d - (d1 + d2) / 2.0).abs() < 1e-12);

        assert!(MixedAttack::new(&spec, 0.0, vec![0.5, 0.6]).is_err());
        assert!(MixedAttack::new(&spec, 0.5, vec![-0.5, 1.0]).is_err());
        assert!(MixedAttack::new(&spec, 1.0, vec![0.0]).is_err());
    }

    #[test]
    fn json_schema_is_exact() {
        let json = r#"{"types":[{"attacker_real_value":10,"attacker_honey_value":-5,
            "real_flows":5,"honey_flow_bound":2,"cost_per_flow":1}]}"#;
        let spec: GameSpec<f64> = serde_json::from_str(json).unwrap();
        assert_eq!(spec.types[0].real_flow_count, 5);
        assert_eq!(spec.types[0].honey_flow_cost, 1.0);

        let unknown = r#"{"types":[{"attacker_real_value":10,"attacker_honey_value":-5,
            "real_flows":5,"honey_flow_bound":2,"cost_per_flow":1,"extra":0}]}"#;
        assert!(serde_json::from_str::<GameSpec<f64>>(unknown).is_err());
        let negative = r#"{"types":[{"attacker_real_value":10,"attacker_honey_value":-5,
            "real_flows":-5,"honey_flow_bound":2,"cost_per_flow":1}]}"#;
        assert!(serde_json::from_str::<GameSpec<f64>>(negative).is_err());
    }

    #[test]
    fn single_precision_matches_example() {
        let spec: GameSpec<f32> = GameSpec::new(vec![
            VulnerabilityType::new(10.0, -5.0, 5, 2, 1.0),
            VulnerabilityType::new(20.0, -10.0, 5, 3, 0.5),
        ]);
        let s = DefenderStrategy::new(vec![vec![0.0, 0.5, 0.5], vec![0.0, 0.0, 0.0, 1.0]]).unwrap();
        let u = attacker_utility(&spec, &s, AttackerAction::Attack(1)).unwrap();
        assert!((u - 8.75).abs() < 1e-5);
    }
}
