use honeyflow_core::equilibrium::solve_stackelberg;
use honeyflow_core::strategies::{evaluate_matchup, no_deception_strategy, uniform_random_strategy};
use honeyflow_core::{
    heuristics, AttackerModel, DefenderPolicy, DefenderStrategy, GameSpec, VulnerabilityType,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{ExperimentError, Result};
use crate::generator::{random_game, trial_seed, CountRange, GeneratorParams};
use crate::report::{ExperimentReport, Metadata};

pub const DEFAULT_COSTS: [f64; 5] = [1e-5, 1e-4, 1e-3, 1e-2, 1e-1];
pub const DEFAULT_TRIALS: usize = 100;

/// The three defenders scored against a rational attacker on one game.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DefenderScores {
    pub stackelberg_def: f64,
    pub stackelberg_att: f64,
    pub uniform_def: f64,
    pub uniform_att: f64,
    pub no_deception_def: f64,
    pub no_deception_att: f64,
}

pub fn score_defenders(spec: &GameSpec) -> Result<DefenderScores> {
    let eq = solve_stackelberg(spec)?;
    let uniform = evaluate_matchup(spec, &uniform_random_strategy(spec), "uniform", AttackerModel::Rational)?;
    let none = evaluate_matchup(spec, &no_deception_strategy(spec), "none", AttackerModel::Rational)?;
    Ok(DefenderScores {
        stackelberg_def: eq.defender_value,
        stackelberg_att: eq.attacker_value,
        uniform_def: uniform.defender_value,
        uniform_att: uniform.attacker_value,
        no_deception_def: none.defender_value,
        no_deception_att: none.attacker_value,
    })
}

fn mean(xs: impl Iterator<Item = f64>) -> f64 {
    let (sum, n) = xs.fold((0.0, 0usize), |(s, n), x| (s + x, n + 1));
    if n == 0 {
        0.0
    } else {
        sum / n as f64
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CostRow {
    pub cost: f64,
    pub trials: usize,
    pub stackelberg_def: f64,
    pub uniform_def: f64,
    pub no_deception_def: f64,
    pub stackelberg_att: f64,
    pub uniform_att: f64,
    pub no_deception_att: f64,
    /// Smallest per-game `stackelberg - uniform` defender value.
    pub min_margin_uniform: f64,
    /// Smallest per-game `stackelberg - no_deception` defender value.
    pub min_margin_no_deception: f64,
}

#[derive(Serialize)]
struct SweepEcho<'a> {
    generator: &'a GeneratorParams,
    costs: &'a [f64],
}

/// Game `k` is drawn from `trial_seed(seed, k)` for every cost, so costs are
/// compared on the same instances.
pub fn cost_sweep(
    params: &GeneratorParams,
    costs: &[f64],
    trials: usize,
    seed: u64,
) -> Result<ExperimentReport<CostRow>> {
    if costs.is_empty() {
        return Err(ExperimentError::Config("cost list is empty".into()));
    }
    if trials == 0 {
        return Err(ExperimentError::Config("trial count must be at least 1".into()));
    }
    let mut rows = Vec::with_capacity(costs.len());
    for &cost in costs {
        let p = params.with_cost(cost);
        let scores: Vec<DefenderScores> = (0..trials as u64)
            .into_par_iter()
            .map(|k| score_defenders(&random_game(&p, trial_seed(seed, k))?))
            .collect::<Result<_>>()?;
        let min = |f: fn(&DefenderScores) -> f64| scores.iter().map(f).fold(f64::INFINITY, f64::min);
        rows.push(CostRow {
            cost,
            trials,
            stackelberg_def: mean(scores.iter().map(|s| s.stackelberg_def)),
            uniform_def: mean(scores.iter().map(|s| s.uniform_def)),
            no_deception_def: mean(scores.iter().map(|s| s.no_deception_def)),
            stackelberg_att: mean(scores.iter().map(|s| s.stackelberg_att)),
            uniform_att: mean(scores.iter().map(|s| s.uniform_att)),
            no_deception_att: mean(scores.iter().map(|s| s.no_deception_att)),
            min_margin_uniform: min(|s| s.stackelberg_def - s.uniform_def),
            min_margin_no_deception: min(|s| s.stackelberg_def - s.no_deception_def),
        });
    }
    Ok(ExperimentReport {
        metadata: Metadata::new("cost_sweep", seed, trials, &SweepEcho { generator: params, costs })?,
        rows,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatchupRow {
    pub defender: String,
    pub attacker: String,
    pub trials: usize,
    pub mean_def: f64,
    pub mean_att: f64,
}

/// Every defender policy against every attacker model, averaged over games.
pub fn matchup_grid(params: &GeneratorParams, trials: usize, seed: u64) -> Result<ExperimentReport<MatchupRow>> {
    if trials == 0 {
        return Err(ExperimentError::Config("trial count must be at least 1".into()));
    }
    let per_trial: Vec<Vec<(f64, f64)>> = (0..trials as u64)
        .into_par_iter()
        .map(|k| {
            let spec = random_game(params, trial_seed(seed, k))?;
            let mut cells = Vec::with_capacity(9);
            for policy in DefenderPolicy::ALL {
                let strategy = policy.strategy(&spec)?;
                for model in AttackerModel::ALL {
                    let m = evaluate_matchup(&spec, &strategy, policy.label(), model)?;
                    cells.push((m.defender_value, m.attacker_value));
                }
            }
            Ok(cells)
        })
        .collect::<Result<_>>()?;

    let mut rows = Vec::with_capacity(9);
    let mut cell = 0;
    for policy in DefenderPolicy::ALL {
        for model in AttackerModel::ALL {
            rows.push(MatchupRow {
                defender: policy.label().to_string(),
                attacker: model.label().to_string(),
                trials,
                mean_def: mean(per_trial.iter().map(|c| c[cell].0)),
                mean_att: mean(per_trial.iter().map(|c| c[cell].1)),
            });
            cell += 1;
        }
    }
    Ok(ExperimentReport { metadata: Metadata::new("matchup_grid", seed, trials, params)?, rows })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatioParams {
    pub real_values: Vec<f64>,
    pub fake_values: Vec<f64>,
    pub cost: f64,
    /// Honey-to-real ratios to evaluate, each applied to every type.
    pub ratios: Vec<f64>,
    pub real_flow_counts: Vec<usize>,
}

impl Default for RatioParams {
    /// Four types worth 10/20/30/40 with fakes worth 9/18/27/32, cost 0.1,
    /// ratios 0 to 3 in steps of 0.05.
    fn default() -> Self {
        RatioParams {
            real_values: vec![10.0, 20.0, 30.0, 40.0],
            fake_values: vec![9.0, 18.0, 27.0, 32.0],
            cost: 0.1,
            ratios: (0..=60).map(|k| k as f64 / 20.0).collect(),
            real_flow_counts: vec![10, 15, 30],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatioRow {
    pub real_flows: usize,
    pub ratio: f64,
    pub honey_flows: usize,
    pub defender_value: f64,
    pub attacker_value: f64,
    /// Stackelberg value for this real-flow count.
    pub exact_value: f64,
    /// Stackelberg expected honey flows over real flows, averaged over types.
    pub exact_ratio: f64,
}

fn round_half_up(x: f64) -> usize {
    // the epsilon absorbs products like 0.15 * 10 = 1.4999999999999998
    (x + 0.5 + 1e-9).floor().max(0.0) as usize
}

/// The game for one real-flow count, with bounds large enough for every ratio.
pub fn ratio_game(params: &RatioParams, real_flows: usize) -> Result<GameSpec> {
    if params.real_values.len() != params.fake_values.len() {
        return Err(ExperimentError::Config("real and fake value vectors differ in length".into()));
    }
    let max_ratio = params.ratios.iter().copied().fold(0.0, f64::max);
    let bound = round_half_up(max_ratio * real_flows as f64);
    let types = params
        .real_values
        .iter()
        .zip(&params.fake_values)
        .map(|(&rv, &fv)| VulnerabilityType::new(rv, fv, real_flows, bound, params.cost))
        .collect();
    Ok(GameSpec::new(types).validate()?)
}

/// Point-mass allocations `round(ratio * R)` against the rational attacker.
pub fn ratio_analysis(params: &RatioParams) -> Result<ExperimentReport<RatioRow>> {
    if params.ratios.iter().any(|r| !(r.is_finite() && *r >= 0.0)) {
        return Err(ExperimentError::Config("ratios must be finite and nonnegative".into()));
    }
    let mut rows = Vec::new();
    for &real_flows in &params.real_flow_counts {
        let spec = ratio_game(params, real_flows)?;
        let eq = solve_stackelberg(&spec)?;
        let exact_ratio = if real_flows == 0 {
            0.0
        } else {
            mean(eq.strategy.expected_honey_counts().iter().map(|h| h / real_flows as f64))
        };
        for &ratio in &params.ratios {
            let honey = round_half_up(ratio * real_flows as f64);
            let strategy = DefenderStrategy::point_mass(&spec, &vec![honey; spec.type_count()])?;
            let m = evaluate_matchup(&spec, &strategy, "ratio", AttackerModel::Rational)?;
            rows.push(RatioRow {
                real_flows,
                ratio,
                honey_flows: honey,
                defender_value: m.defender_value,
                attacker_value: m.attacker_value,
                exact_value: eq.defender_value,
                exact_ratio,
            });
        }
    }
    Ok(ExperimentReport { metadata: Metadata::new("ratio_analysis", 0, 1, params)?, rows })
}

/// Best ratio per real-flow count (first maximum on the grid).
pub fn optimal_ratios(rows: &[RatioRow]) -> Vec<(usize, f64)> {
    let mut out: Vec<(usize, f64, f64)> = Vec::new();
    for r in rows {
        match out.iter_mut().find(|o| o.0 == r.real_flows) {
            Some(o) if r.defender_value > o.2 => {
                o.1 = r.ratio;
                o.2 = r.defender_value;
            }
            Some(_) => {}
            None => out.push((r.real_flows, r.ratio, r.defender_value)),
        }
    }
    out.into_iter().map(|(n, r, _)| (n, r)).collect()
}

/// `max - min` of the optimal ratios.
pub fn ratio_spread(rows: &[RatioRow]) -> f64 {
    let best = optimal_ratios(rows);
    let hi = best.iter().map(|b| b.1).fold(f64::NEG_INFINITY, f64::max);
    let lo = best.iter().map(|b| b.1).fold(f64::INFINITY, f64::min);
    if best.is_empty() {
        0.0
    } else {
        hi - lo
    }
}

/// Games where the ratio rule is meant to apply: one fake/real value ratio
/// shared by all types, cost within `[cost_lo, cost_hi]`, and honey bounds
/// of twice the real flows so the rule is never clipped.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HeuristicParams {
    pub games: usize,
    pub type_count: usize,
    pub real_flows: CountRange,
    pub real_value: (f64, f64),
    pub fake_ratio: (f64, f64),
    pub cost: (f64, f64),
}

impl Default for HeuristicParams {
    fn default() -> Self {
        HeuristicParams {
            games: 20,
            type_count: 3,
            real_flows: CountRange::new(5, 20),
            real_value: (0.5, 1.0),
            fake_ratio: (0.0, 1.0),
            cost: (0.001, 0.1),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HeuristicRow {
    pub game: usize,
    pub cost: f64,
    pub fake_ratio: f64,
    /// Per-type honey counts joined by `;`.
    pub honey_counts: String,
    pub heuristic_value: f64,
    pub exact_value: f64,
    pub gap: f64,
}

pub fn heuristic_game(params: &HeuristicParams, seed: u64) -> Result<(GameSpec, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ratio = rng.gen_range(params.fake_ratio.0..=params.fake_ratio.1);
    let cost = rng.gen_range(params.cost.0..=params.cost.1);
    let types = (0..params.type_count)
        .map(|_| {
            let rv = rng.gen_range(params.real_value.0..=params.real_value.1);
            let r = rng.gen_range(params.real_flows.lo..=params.real_flows.hi);
            VulnerabilityType::new(rv, ratio * rv, r, 2 * r, cost)
        })
        .collect();
    Ok((GameSpec::new(types).validate()?, ratio))
}

pub fn heuristic_gap(params: &HeuristicParams, seed: u64) -> Result<ExperimentReport<HeuristicRow>> {
    let bad = |m: &str| Err(ExperimentError::Config(m.into()));
    if params.real_flows.lo > params.real_flows.hi {
        return bad("real flow range has lo > hi");
    }
    if !(params.real_value.0 > 0.0 && params.real_value.0 <= params.real_value.1) {
        return bad("real values must be positive with lo <= hi");
    }
    if !(0.0 <= params.fake_ratio.0 && params.fake_ratio.0 <= params.fake_ratio.1 && params.fake_ratio.1 <= 1.0) {
        return bad("fake ratio range must lie in [0, 1]");
    }
    if !(0.0 <= params.cost.0 && params.cost.0 <= params.cost.1) {
        return bad("cost range must be nonnegative with lo <= hi");
    }
    let rows = (0..params.games)
        .into_par_iter()
        .map(|g| {
            let (spec, fake_ratio) = heuristic_game(params, trial_seed(seed, g as u64))?;
            let cmp = heuristics::compare_with_exact(&spec)?;
            Ok(HeuristicRow {
                game: g,
                cost: spec.types[0].honey_flow_cost,
                fake_ratio,
                honey_counts: cmp.honey_counts.iter().map(usize::to_string).collect::<Vec<_>>().join(";"),
                heuristic_value: cmp.heuristic_value,
                exact_value: cmp.exact_value,
                gap: cmp.gap,
            })
        })
        .collect::<Result<_>>()?;
    Ok(ExperimentReport { metadata: Metadata::new("heuristic_gap", seed, params.games, params)?, rows })
}
