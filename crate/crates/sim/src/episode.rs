use honeyflow_core::strategies::{greedy_attacker, rational_attacker};
use honeyflow_core::{AttackerAction, DefenderStrategy, GameSpec};
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Result, SimError};
use crate::flows::{FlowRecord, Observation};
use crate::topology::NetworkModel;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutcomeKind {
    Success,
    Noop,
    Defeat,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EpisodeOutcome {
    pub kind: OutcomeKind,
    /// Type attacked, `None` when the attacker held back.
    pub type_id: Option<usize>,
    /// Destination of the drawn flow.
    pub target: Option<usize>,
    pub attacker_payoff: f64,
    pub defender_payoff: f64,
}

impl EpisodeOutcome {
    fn noop(type_id: Option<usize>, target: Option<usize>) -> Self {
        EpisodeOutcome { kind: OutcomeKind::Noop, type_id, target, attacker_payoff: 0.0, defender_payoff: 0.0 }
    }
}

/// How the attacker picks a type from what it observed. Policies only ever
/// see per-type totals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AttackPolicy {
    Fixed(usize),
    /// Uniform over types with at least one observed flow.
    UniformRandom,
    Abstain,
}

impl AttackPolicy {
    pub fn from_action(action: AttackerAction) -> Self {
        match action {
            AttackerAction::Attack(t) => AttackPolicy::Fixed(t),
            AttackerAction::NoAttack => AttackPolicy::Abstain,
        }
    }

    pub fn greedy(spec: &GameSpec) -> Self {
        Self::from_action(greedy_attacker(spec))
    }

    pub fn rational(spec: &GameSpec, strategy: &DefenderStrategy) -> Result<Self> {
        Ok(Self::from_action(rational_attacker(spec, strategy)?))
    }

    pub fn choose<R: Rng + ?Sized>(&self, totals: &[usize], rng: &mut R) -> Option<usize> {
        match *self {
            AttackPolicy::Fixed(t) => Some(t),
            AttackPolicy::Abstain => None,
            AttackPolicy::UniformRandom => {
                let live: Vec<usize> = (0..totals.len()).filter(|&t| totals[t] > 0).collect();
                live.choose(rng).copied()
            }
        }
    }
}

/// Single-shot attack: pick a type, draw one observed flow of it uniformly,
/// exploit its destination.
pub fn attacker_episode<R: Rng + ?Sized>(
    net: &NetworkModel,
    flows: &[FlowRecord],
    observation: &Observation,
    policy: AttackPolicy,
    rng: &mut R,
) -> Result<EpisodeOutcome> {
    let Some(t) = policy.choose(&observation.totals(), rng) else {
        return Ok(EpisodeOutcome::noop(None, None));
    };
    let candidates = observation
        .per_type
        .get(t)
        .map(|o| o.flows.as_slice())
        .filter(|f| !f.is_empty())
        .ok_or(SimError::EmptyObservation { type_id: t })?;
    let flow = &flows[*candidates.choose(rng).expect("nonempty")];
    let target = net
        .endpoint(flow.destination)
        .ok_or_else(|| SimError::Topology(format!("flow targets unknown endpoint {}", flow.destination)))?;

    Ok(if flow.is_honey {
        EpisodeOutcome {
            kind: OutcomeKind::Defeat,
            type_id: Some(t),
            target: Some(target.id),
            attacker_payoff: target.attacker_value,
            defender_payoff: -target.attacker_value,
        }
    } else if flow.info.is_some_and(|i| target.weaknesses.contains(&i)) {
        EpisodeOutcome {
            kind: OutcomeKind::Success,
            type_id: Some(t),
            target: Some(target.id),
            attacker_payoff: target.attacker_value,
            defender_payoff: -target.defender_value,
        }
    } else {
        EpisodeOutcome::noop(Some(t), Some(target.id))
    })
}
