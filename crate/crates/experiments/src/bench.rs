use std::time::Instant;

use honeyflow_core::equilibrium::solve_stackelberg;
use serde::{Deserialize, Serialize};

use crate::error::{ExperimentError, Result};
use crate::generator::{random_game, trial_seed, CountRange, GeneratorParams, ValueMode};
use crate::report::{ExperimentReport, Machine, Metadata};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BenchDimension {
    /// Vary the number of types at a fixed honey bound.
    Types,
    /// Vary every type's honey bound at a fixed number of types.
    HoneyBounds,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchParams {
    pub dimension: BenchDimension,
    pub sizes: Vec<usize>,
    pub trials: usize,
    /// Type count used when sweeping honey bounds.
    pub type_count: usize,
    /// Honey bound used when sweeping type counts.
    pub honey_bound: usize,
    pub real_flows: usize,
    pub cost: f64,
}

impl BenchParams {
    pub fn new(dimension: BenchDimension, sizes: Vec<usize>, trials: usize) -> Self {
        BenchParams { dimension, sizes, trials, type_count: 5, honey_bound: 100, real_flows: 500, cost: 1e-4 }
    }

    fn generator(&self, size: usize) -> GeneratorParams {
        let (types, bound) = match self.dimension {
            BenchDimension::Types => (size, self.honey_bound),
            BenchDimension::HoneyBounds => (self.type_count, size),
        };
        GeneratorParams {
            type_count: types,
            real_flows: CountRange::fixed(self.real_flows),
            honey_bound: CountRange::fixed(bound),
            value_mode: ValueMode::FakeZeroRealOne,
            cost: self.cost,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub dimension: BenchDimension,
    pub size: usize,
    pub trials: usize,
    pub variables: usize,
    pub median_ms: f64,
    pub min_ms: f64,
    pub max_ms: f64,
}

fn median(sorted: &[f64]) -> f64 {
    let n = sorted.len();
    if n % 2 == 1 {
        sorted[n / 2]
    } else {
        (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0
    }
}

/// Wall-clock solve time per size. Game generation is outside the timed
/// region; LP construction and all solves are inside. Trials run one after
/// another so they do not compete for cores.
pub fn scalability_bench(params: &BenchParams, seed: u64) -> Result<ExperimentReport<BenchRow>> {
    if params.trials == 0 {
        return Err(ExperimentError::Config("trial count must be at least 1".into()));
    }
    if params.sizes.is_empty() || params.sizes.windows(2).any(|w| w[0] > w[1]) {
        return Err(ExperimentError::Config("sizes must be nonempty and ascending".into()));
    }
    let mut rows = Vec::with_capacity(params.sizes.len());
    for &size in &params.sizes {
        let generator = params.generator(size);
        let mut times = Vec::with_capacity(params.trials);
        let mut variables = 0;
        for k in 0..params.trials as u64 {
            let spec = random_game(&generator, trial_seed(seed, k))?;
            variables = spec.strategy_dimension();
            let start = Instant::now();
            solve_stackelberg(&spec)?;
            times.push(start.elapsed().as_secs_f64() * 1e3);
        }
        times.sort_by(f64::total_cmp);
        rows.push(BenchRow {
            dimension: params.dimension,
            size,
            trials: params.trials,
            variables,
            median_ms: median(&times),
            min_ms: times[0],
            max_ms: times[times.len() - 1],
        });
    }
    let mut metadata = Metadata::new("scalability_bench", seed, params.trials, params)?;
    metadata.machine = Some(Machine::current());
    Ok(ExperimentReport { metadata, rows })
}

/// Medians never drop by more than `noise` (relative) from one size to the
/// next.
pub fn is_monotone(rows: &[BenchRow], noise: f64) -> bool {
    rows.windows(2).all(|w| w[1].median_ms >= (1.0 - noise) * w[0].median_ms)
}
