//! Flow-level simulation of honey traffic.
//!
//! A [`NetworkModel`] routes flows between endpoints over fixed shortest
//! switch paths. The attacker sees every flow crossing a compromised switch,
//! picks a vulnerability type, draws one of its flows and attacks the
//! destination. Drawing a honey flow exposes the attacker.

pub mod episode;
pub mod error;
pub mod fixtures;
pub mod flows;
pub mod topology;
pub mod trials;

pub use episode::{attacker_episode, AttackPolicy, EpisodeOutcome, OutcomeKind};
pub use error::SimError;
pub use flows::{generate_flows, generate_flows_with, honey_traffic_rate, observe, FlowRecord, Observation};
pub use topology::{build_network, NetworkModel, NodeConfig, TopologyConfig};
pub use trials::{analytic_game, run_trials, write_reports_csv, FlowConfig, HoneyPlan, SimulationReport};
