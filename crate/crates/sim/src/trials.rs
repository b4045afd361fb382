use std::io::Write;

use honeyflow_core::{DefenderStrategy, GameSpec, VulnerabilityType};
use rand::distributions::{Distribution, WeightedIndex};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::episode::{attacker_episode, AttackPolicy, EpisodeOutcome, OutcomeKind};
use crate::error::{Result, SimError};
use crate::flows::{generate_flows_with, observe, FlowRecord};
use crate::topology::NetworkModel;

/// Honey counts per type: either fixed, or drawn each episode from a mixed
/// defender strategy.
#[derive(Debug, Clone, PartialEq)]
pub enum HoneyPlan {
    Fixed(Vec<usize>),
    Sampled(DefenderStrategy),
}

#[derive(Debug, Clone, PartialEq)]
pub struct FlowConfig {
    pub real_counts: Vec<usize>,
    pub honey: HoneyPlan,
}

impl FlowConfig {
    pub fn fixed(real_counts: Vec<usize>, honey_counts: Vec<usize>) -> Self {
        FlowConfig { real_counts, honey: HoneyPlan::Fixed(honey_counts) }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TypeBreakdown {
    pub type_id: usize,
    pub episodes: usize,
    pub mean_def: f64,
    pub mean_att: f64,
    pub stderr_def: f64,
    pub stderr_att: f64,
    pub detect_rate: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationReport {
    pub seed: u64,
    pub episodes: usize,
    /// Mean honey flows per type over all episodes.
    pub honey_counts: Vec<f64>,
    pub mean_def: f64,
    pub mean_att: f64,
    pub stderr_def: f64,
    pub stderr_att: f64,
    pub detect_rate: f64,
    pub success_rate: f64,
    pub noop_rate: f64,
    /// `(switch, honey share of its traffic)`, ascending by switch id.
    pub switch_honey_rate: Vec<(usize, f64)>,
    pub per_type: Vec<TypeBreakdown>,
}

/// Sample mean and standard error of the mean.
fn mean_stderr(xs: impl Iterator<Item = f64> + Clone) -> (f64, f64) {
    let n = xs.clone().count();
    if n == 0 {
        return (0.0, 0.0);
    }
    let mean = xs.clone().sum::<f64>() / n as f64;
    if n == 1 {
        return (mean, 0.0);
    }
    let var = xs.map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
    (mean, (var / n as f64).sqrt())
}

fn episode_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn switch_counts(net: &NetworkModel, flows: &[FlowRecord]) -> Vec<(usize, usize)> {
    net.switches()
        .map(|s| {
            let through = flows.iter().filter(|f| f.passes(s));
            let total = through.clone().count();
            (through.filter(|f| f.is_honey).count(), total)
        })
        .collect()
}

fn sample_counts(strategy: &DefenderStrategy, rng: &mut ChaCha8Rng) -> Result<Vec<usize>> {
    strategy
        .marginals()
        .iter()
        .map(|m| {
            let dist = WeightedIndex::new(m).map_err(|e| SimError::Config(format!("strategy marginal: {e}")))?;
            Ok(dist.sample(rng))
        })
        .collect()
}

struct EpisodeRecord {
    outcome: EpisodeOutcome,
    honey: Vec<usize>,
    switches: Option<Vec<(usize, usize)>>,
}

/// Runs `n` independent episodes. Episode `k` draws from its own stream of
/// the seeded generator, so results do not depend on scheduling.
pub fn run_trials(
    net: &NetworkModel,
    config: &FlowConfig,
    policy: AttackPolicy,
    n: usize,
    seed: u64,
) -> Result<SimulationReport> {
    if n == 0 {
        return Err(SimError::Config("episode count must be at least 1".into()));
    }
    let shared = match &config.honey {
        HoneyPlan::Fixed(counts) => {
            let flows = generate_flows_with(net, &config.real_counts, counts, &mut episode_rng(seed, 0))?;
            let obs = observe(net, &flows);
            Some((counts.clone(), flows, obs))
        }
        HoneyPlan::Sampled(strategy) => {
            if strategy.marginals().len() != config.real_counts.len() {
                return Err(SimError::Config(format!(
                    "strategy covers {} types, flow config {}",
                    strategy.marginals().len(),
                    config.real_counts.len()
                )));
            }
            None
        }
    };

    let records: Vec<EpisodeRecord> = (0..n as u64)
        .into_par_iter()
        .map(|k| -> Result<EpisodeRecord> {
            let mut rng = episode_rng(seed, k + 1);
            match (&shared, &config.honey) {
                (Some((counts, flows, obs)), _) => Ok(EpisodeRecord {
                    outcome: attacker_episode(net, flows, obs, policy, &mut rng)?,
                    honey: counts.clone(),
                    switches: None,
                }),
                (None, HoneyPlan::Sampled(strategy)) => {
                    let counts = sample_counts(strategy, &mut rng)?;
                    let flows = generate_flows_with(net, &config.real_counts, &counts, &mut rng)?;
                    let obs = observe(net, &flows);
                    Ok(EpisodeRecord {
                        outcome: attacker_episode(net, &flows, &obs, policy, &mut rng)?,
                        switches: Some(switch_counts(net, &flows)),
                        honey: counts,
                    })
                }
                (None, HoneyPlan::Fixed(_)) => unreachable!(),
            }
        })
        .collect::<Result<_>>()?;

    let switch_totals: Vec<(usize, usize)> = match &shared {
        Some((_, flows, _)) => switch_counts(net, flows),
        None => records.iter().fold(vec![(0, 0); net.switches().count()], |mut acc, r| {
            for (a, b) in acc.iter_mut().zip(r.switches.as_deref().unwrap_or_default()) {
                a.0 += b.0;
                a.1 += b.1;
            }
            acc
        }),
    };
    let switch_honey_rate = net
        .switches()
        .zip(switch_totals)
        .map(|(s, (h, t))| (s, if t == 0 { 0.0 } else { h as f64 / t as f64 }))
        .collect();

    let types = config.real_counts.len();
    let mut honey_counts = vec![0.0; types];
    for r in &records {
        for (acc, &h) in honey_counts.iter_mut().zip(&r.honey) {
            *acc += h as f64;
        }
    }
    honey_counts.iter_mut().for_each(|h| *h /= n as f64);

    let outcomes: Vec<EpisodeOutcome> = records.iter().map(|r| r.outcome).collect();
    let rate = |kind: OutcomeKind, of: &[&EpisodeOutcome]| {
        if of.is_empty() {
            0.0
        } else {
            of.iter().filter(|o| o.kind == kind).count() as f64 / of.len() as f64
        }
    };
    let all: Vec<&EpisodeOutcome> = outcomes.iter().collect();
    let (mean_def, stderr_def) = mean_stderr(all.iter().map(|o| o.defender_payoff));
    let (mean_att, stderr_att) = mean_stderr(all.iter().map(|o| o.attacker_payoff));

    let max_type = outcomes.iter().filter_map(|o| o.type_id).max().map_or(0, |t| t + 1);
    let per_type = (0..max_type)
        .filter_map(|t| {
            let of: Vec<&EpisodeOutcome> = outcomes.iter().filter(|o| o.type_id == Some(t)).collect();
            if of.is_empty() {
                return None;
            }
            let (mean_def, stderr_def) = mean_stderr(of.iter().map(|o| o.defender_payoff));
            let (mean_att, stderr_att) = mean_stderr(of.iter().map(|o| o.attacker_payoff));
            Some(TypeBreakdown {
                type_id: t,
                episodes: of.len(),
                mean_def,
                mean_att,
                stderr_def,
                stderr_att,
                detect_rate: rate(OutcomeKind::Defeat, &of),
            })
        })
        .collect();

    Ok(SimulationReport {
        seed,
        episodes: n,
        honey_counts,
        mean_def,
        mean_att,
        stderr_def,
        stderr_att,
        detect_rate: rate(OutcomeKind::Defeat, &all),
        success_rate: rate(OutcomeKind::Success, &all),
        noop_rate: rate(OutcomeKind::Noop, &all),
        switch_honey_rate,
        per_type,
    })
}

#[derive(Debug, Serialize)]
struct CsvRow {
    honey_count: f64,
    #[serde(rename = "type")]
    type_label: String,
    mean_def: f64,
    mean_att: f64,
    stderr_def: f64,
    stderr_att: f64,
    detect_rate: f64,
}

/// Writes one `all` row per report followed by its per-type rows. The
/// `honey_count` of an `all` row is the total over types.
pub fn write_reports_csv<W: Write>(reports: &[SimulationReport], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in reports {
        w.serialize(CsvRow {
            honey_count: r.honey_counts.iter().sum(),
            type_label: "all".into(),
            mean_def: r.mean_def,
            mean_att: r.mean_att,
            stderr_def: r.stderr_def,
            stderr_att: r.stderr_att,
            detect_rate: r.detect_rate,
        })?;
        for t in &r.per_type {
            w.serialize(CsvRow {
                honey_count: r.honey_counts.get(t.type_id).copied().unwrap_or(0.0),
                type_label: t.type_id.to_string(),
                mean_def: t.mean_def,
                mean_att: t.mean_att,
                stderr_def: t.stderr_def,
                stderr_att: t.stderr_att,
                detect_rate: t.detect_rate,
            })?;
        }
    }
    w.flush().map_err(|e| SimError::Csv(e.into()))?;
    Ok(())
}

/// The game a fully observed flow mix corresponds to: per type, the value of
/// its real hosts and of the fake hosts its honey flows reach. Errors when a
/// type's real (or fake) hosts disagree on value.
pub fn analytic_game(
    net: &NetworkModel,
    real_counts: &[usize],
    honey_bounds: &[usize],
    cost: f64,
) -> Result<GameSpec> {
    if real_counts.len() != honey_bounds.len() {
        return Err(SimError::Config("real and honey vectors differ in length".into()));
    }
    let single = |values: Vec<f64>, what: &str, t: usize| -> Result<f64> {
        match values.split_first() {
            None => Ok(0.0),
            Some((first, rest)) if rest.iter().all(|v| v == first) => Ok(*first),
            _ => Err(SimError::Config(format!("{what} hosts of type {t} differ in attacker value"))),
        }
    };
    let types = (0..real_counts.len())
        .map(|t| {
            let real: Vec<f64> = net
                .real_pairs()
                .iter()
                .filter_map(|&(_, d)| net.endpoint(d))
                .filter(|e| e.weaknesses.contains(&t))
                .map(|e| e.attacker_value)
                .collect();
            let mut fake: Vec<f64> =
                net.fake_endpoints().filter(|e| e.weaknesses.contains(&t)).map(|e| e.attacker_value).collect();
            if fake.is_empty() {
                fake = net.fake_endpoints().filter(|e| e.weaknesses.is_empty()).map(|e| e.attacker_value).collect();
            }
            Ok(VulnerabilityType::new(
                single(real, "real", t)?,
                single(fake, "fake", t)?,
                real_counts[t],
                honey_bounds[t],
                cost,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GameSpec::new(types).validate()?)
}
