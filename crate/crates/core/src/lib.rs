//! Optimal honey-traffic allocation against a passive-reconnaissance attacker.
//!
//! The defender injects fake flows advertising vulnerability types; the
//! attacker observes all traffic, picks a type, and exploits a random flow of
//! it. [`equilibrium::solve_stackelberg`] computes the defender's optimal
//! commitment, [`strategies`] holds baselines and naive attackers, and
//! [`heuristics`] a closed-form allocator.
//!
//! All numerical code is generic over [`Scalar`] (`f32` or `f64`). The
//! aliases exported at the crate root fix the scalar to `f64`, which is what
//! the rest of the workspace uses.

pub mod equilibrium;
pub mod error;
pub mod game;
pub mod heuristics;
pub mod lp;
pub mod scalar;
pub mod strategies;

pub use error::GameError;
pub use game::AttackerAction;
pub use lp::{LpError, LpStatus};
pub use scalar::Scalar;
pub use strategies::{AttackerModel, DefenderPolicy};

pub type Real = f64;

pub type VulnerabilityType = game::VulnerabilityType<Real>;
pub type GameSpec = game::GameSpec<Real>;
pub type DefenderStrategy = game::DefenderStrategy<Real>;
pub type MixedAttack = game::MixedAttack<Real>;
pub type LinearProgram = lp::LinearProgram<Real>;
pub type LpSolution = lp::LpSolution<Real>;
pub type Equilibrium = equilibrium::Equilibrium<Real>;
pub type MatchupResult = strategies::MatchupResult<Real>;
pub type AttackerBehavior = strategies::AttackerBehavior<Real>;
pub type HeuristicInput = heuristics::HeuristicInput<Real>;
pub type HeuristicComparison = heuristics::HeuristicComparison<Real>;

/// The two-type game used throughout the documentation and tests:
/// values (10, 20) real and (-5, -10) fake, costs (1, 0.5), five real flows
/// each, honey bounds (2, 3).
pub fn worked_example() -> GameSpec {
    game::GameSpec::new(vec![
        game::VulnerabilityType::new(10.0, -5.0, 5, 2, 1.0),
        game::VulnerabilityType::new(20.0, -10.0, 5, 3, 0.5),
    ])
}
