use honeyflow_core::{GameSpec, VulnerabilityType};
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{ExperimentError, Result};

/// Inclusive integer range; `lo == hi` for a fixed count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountRange {
    pub lo: usize,
    pub hi: usize,
}

impl CountRange {
    pub fn fixed(n: usize) -> Self {
        CountRange { lo: n, hi: n }
    }

    pub fn new(lo: usize, hi: usize) -> Self {
        CountRange { lo, hi }
    }

    fn sample(&self, rng: &mut impl Rng) -> usize {
        rng.gen_range(self.lo..=self.hi)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum ValueMode {
    /// Every real system worth 1 to the attacker, every fake one 0.
    FakeZeroRealOne,
    /// Per type, one value drawn uniformly from `[lo, hi]` and used for both
    /// the real and the fake system.
    FakeEqualsRealRandom { lo: f64, hi: f64 },
    Explicit { real: Vec<f64>, fake: Vec<f64> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorParams {
    pub type_count: usize,
    pub real_flows: CountRange,
    pub honey_bound: CountRange,
    pub value_mode: ValueMode,
    pub cost: f64,
}

impl GeneratorParams {
    /// Five types, 500 real flows each, honey bounds drawn from [500, 1000].
    pub fn large(value_mode: ValueMode, cost: f64) -> Self {
        GeneratorParams {
            type_count: 5,
            real_flows: CountRange::fixed(500),
            honey_bound: CountRange::new(500, 1000),
            value_mode,
            cost,
        }
    }

    pub fn with_cost(&self, cost: f64) -> Self {
        GeneratorParams { cost, ..self.clone() }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(ExperimentError::Config(m.to_string()));
        if self.type_count == 0 {
            return bad("type_count must be at least 1");
        }
        if self.real_flows.lo > self.real_flows.hi || self.honey_bound.lo > self.honey_bound.hi {
            return bad("count range has lo > hi");
        }
        if !(self.cost.is_finite() && self.cost >= 0.0) {
            return bad("cost must be finite and nonnegative");
        }
        match &self.value_mode {
            ValueMode::FakeZeroRealOne => {}
            ValueMode::FakeEqualsRealRandom { lo, hi } => {
                if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
                    return bad("value range must be finite with lo <= hi");
                }
            }
            ValueMode::Explicit { real, fake } => {
                if real.len() != self.type_count || fake.len() != self.type_count {
                    return bad("explicit value vectors must have type_count entries");
                }
            }
        }
        Ok(())
    }
}

/// Seed for trial `k` of a run seeded with `seed`.
pub fn trial_seed(seed: u64, k: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(k);
    rng.next_u64()
}

pub fn random_game(params: &GeneratorParams, seed: u64) -> Result<GameSpec> {
    params.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let types = (0..params.type_count)
        .map(|i| {
            let real_flows = params.real_flows.sample(&mut rng);
            let bound = params.honey_bound.sample(&mut rng);
            let (real, fake) = match &params.value_mode {
                ValueMode::FakeZeroRealOne => (1.0, 0.0),
                ValueMode::FakeEqualsRealRandom { lo, hi } => {
                    let v = rng.gen_range(*lo..=*hi);
                    (v, v)
                }
                ValueMode::Explicit { real, fake } => (real[i], fake[i]),
            };
            VulnerabilityType::new(real, fake, real_flows, bound, params.cost)
        })
        .collect();
    Ok(GameSpec::new(types).validate()?)
}
