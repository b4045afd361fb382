use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Result, SimError};
use crate::topology::NetworkModel;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlowRecord {
    pub origin: usize,
    pub destination: usize,
    /// Advertised vulnerability type.
    pub info: Option<usize>,
    /// Switches traversed, in order.
    pub path: Vec<usize>,
    pub is_honey: bool,
}

impl FlowRecord {
    pub fn passes(&self, switch: usize) -> bool {
        self.path.contains(&switch)
    }
}

/// Generates `real_counts[t]` real and `honey_counts[t]` honey flows of each
/// type `t`, seeded.
pub fn generate_flows(
    net: &NetworkModel,
    real_counts: &[usize],
    honey_counts: &[usize],
    seed: u64,
) -> Result<Vec<FlowRecord>> {
    generate_flows_with(net, real_counts, honey_counts, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Real flows of type `t` run over a real pair whose destination has weakness
/// `t`. Honey flows of type `t` go to a fake endpoint advertising `t` (or to
/// any fake endpoint that advertises nothing specific), preferably from
/// another fake endpoint.
pub fn generate_flows_with<R: Rng + ?Sized>(
    net: &NetworkModel,
    real_counts: &[usize],
    honey_counts: &[usize],
    rng: &mut R,
) -> Result<Vec<FlowRecord>> {
    let mut flows = Vec::with_capacity(real_counts.iter().sum::<usize>() + honey_counts.iter().sum::<usize>());

    for (t, &count) in real_counts.iter().enumerate() {
        if count == 0 {
            continue;
        }
        let pairs: Vec<(usize, usize)> = net
            .real_pairs()
            .iter()
            .copied()
            .filter(|&(_, d)| net.endpoint(d).is_some_and(|e| e.weaknesses.contains(&t)))
            .collect();
        if pairs.is_empty() {
            return Err(SimError::Config(format!("no real host carries weakness {t}")));
        }
        for _ in 0..count {
            let &(o, d) = pairs.choose(rng).expect("nonempty");
            flows.push(record(net, o, d, t, false));
        }
    }

    for (t, &count) in honey_counts.iter().enumerate() {
        if count == 0 {
            continue;
        }
        if net.fake_endpoints().next().is_none() {
            return Err(SimError::Config("honey flows requested but no fake endpoint exists".into()));
        }
        let mut targets: Vec<usize> =
            net.fake_endpoints().filter(|e| e.weaknesses.contains(&t)).map(|e| e.id).collect();
        if targets.is_empty() {
            targets = net.fake_endpoints().filter(|e| e.weaknesses.is_empty()).map(|e| e.id).collect();
        }
        if targets.is_empty() {
            return Err(SimError::Config(format!("no fake endpoint advertises type {t}")));
        }
        let pairs: Vec<(usize, usize)> = targets
            .iter()
            .flat_map(|&d| {
                let reachable: Vec<usize> =
                    net.endpoints().map(|e| e.id).filter(|&o| o != d && net.path(o, d).is_some()).collect();
                let fake: Vec<usize> =
                    reachable.iter().copied().filter(|&o| net.endpoint(o).is_some_and(|e| e.fake)).collect();
                let origins = if fake.is_empty() { reachable } else { fake };
                origins.into_iter().map(move |o| (o, d))
            })
            .collect();
        for _ in 0..count {
            let &(o, d) = pairs.choose(rng).expect("fake endpoints are reachable");
            flows.push(record(net, o, d, t, true));
        }
    }
    Ok(flows)
}

fn record(net: &NetworkModel, origin: usize, destination: usize, t: usize, is_honey: bool) -> FlowRecord {
    FlowRecord {
        origin,
        destination,
        info: Some(t),
        path: net.path(origin, destination).expect("validated pair").to_vec(),
        is_honey,
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObservedType {
    /// Indices into the flow list.
    pub flows: Vec<usize>,
    pub real: usize,
    pub honey: usize,
}

impl ObservedType {
    pub fn total(&self) -> usize {
        self.flows.len()
    }
}

/// What the compromised switches see, grouped by advertised type.
///
/// The real/honey split is kept for validation only; attacker policies
/// receive [`Observation::totals`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Observation {
    pub per_type: Vec<ObservedType>,
}

impl Observation {
    pub fn totals(&self) -> Vec<usize> {
        self.per_type.iter().map(ObservedType::total).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.per_type.iter().all(|t| t.flows.is_empty())
    }
}

pub fn observe(net: &NetworkModel, flows: &[FlowRecord]) -> Observation {
    let types = flows
        .iter()
        .filter_map(|f| f.info.map(|t| t + 1))
        .max()
        .unwrap_or(0)
        .max(net.type_count());
    let mut per_type = vec![ObservedType::default(); types];
    let compromised = net.compromised();
    for (k, flow) in flows.iter().enumerate() {
        let Some(t) = flow.info else { continue };
        if !flow.path.iter().any(|s| compromised.contains(s)) {
            continue;
        }
        let slot = &mut per_type[t];
        slot.flows.push(k);
        if flow.is_honey {
            slot.honey += 1;
        } else {
            slot.real += 1;
        }
    }
    Observation { per_type }
}

/// Share of the flows through `switch` that are honey; 0 when nothing passes.
pub fn honey_traffic_rate(flows: &[FlowRecord], switch: usize) -> f64 {
    let (mut honey, mut total) = (0usize, 0usize);
    for f in flows.iter().filter(|f| f.passes(switch)) {
        total += 1;
        honey += usize::from(f.is_honey);
    }
    if total == 0 {
        0.0
    } else {
        honey as f64 / total as f64
    }
}
