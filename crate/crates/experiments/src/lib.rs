//! Study harnesses: seeded random games, cost sweeps, attacker matchups,
//! honey/real ratio analysis, solver timing and the ratio-rule gap.
//!
//! Every harness returns an [`ExperimentReport`] whose rows serialize to CSV
//! and whose [`Metadata`] goes to a JSON sidecar. Apart from the benchmark,
//! rows depend only on the parameters and seed.

pub mod bench;
pub mod error;
pub mod generator;
pub mod harness;
pub mod report;

pub use bench::{is_monotone, scalability_bench, BenchDimension, BenchParams, BenchRow};
pub use error::ExperimentError;
pub use generator::{random_game, trial_seed, CountRange, GeneratorParams, ValueMode};
pub use harness::{
    cost_sweep, heuristic_gap, matchup_grid, optimal_ratios, ratio_analysis, ratio_spread, score_defenders,
    CostRow, DefenderScores, HeuristicParams, HeuristicRow, MatchupRow, RatioParams, RatioRow, DEFAULT_COSTS,
    DEFAULT_TRIALS,
};
pub use report::{ExperimentReport, Machine, Metadata};
