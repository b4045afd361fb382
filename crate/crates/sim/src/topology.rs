use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Result, SimError};

/// Topology description as read from JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TopologyConfig {
    pub nodes: Vec<NodeConfig>,
    pub links: Vec<[usize; 2]>,
    #[serde(default)]
    pub compromised: Vec<usize>,
    /// Origin/destination pairs allowed to carry real traffic. When absent,
    /// any ordered pair of distinct real endpoints may.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub real_pairs: Option<Vec<[usize; 2]>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum NodeConfig {
    Endpoint {
        id: usize,
        #[serde(default)]
        fake: bool,
        defender_value: f64,
        attacker_value: f64,
        /// Vulnerability types present on a real host, or advertised by a
        /// fake one.
        #[serde(default)]
        weaknesses: Vec<usize>,
    },
    Switch {
        id: usize,
    },
}

impl NodeConfig {
    pub fn id(&self) -> usize {
        match self {
            NodeConfig::Endpoint { id, .. } | NodeConfig::Switch { id } => *id,
        }
    }
}

impl TopologyConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Endpoint {
    pub id: usize,
    pub fake: bool,
    pub defender_value: f64,
    pub attacker_value: f64,
    pub weaknesses: BTreeSet<usize>,
}

/// Validated topology with a fixed switch path for every routable endpoint
/// pair.
#[derive(Debug, Clone)]
pub struct NetworkModel {
    endpoints: BTreeMap<usize, Endpoint>,
    switches: BTreeSet<usize>,
    compromised: BTreeSet<usize>,
    paths: BTreeMap<(usize, usize), Vec<usize>>,
    real_pairs: Vec<(usize, usize)>,
    type_count: usize,
}

pub fn build_network(config: &TopologyConfig) -> Result<NetworkModel> {
    let topo = |msg: String| SimError::Topology(msg);
    let mut endpoints = BTreeMap::new();
    let mut switches = BTreeSet::new();
    for node in &config.nodes {
        let id = node.id();
        if endpoints.contains_key(&id) || switches.contains(&id) {
            return Err(topo(format!("duplicate node id {id}")));
        }
        match node {
            NodeConfig::Switch { .. } => {
                switches.insert(id);
            }
            NodeConfig::Endpoint { fake, defender_value, attacker_value, weaknesses, .. } => {
                if !defender_value.is_finite() || !attacker_value.is_finite() {
                    return Err(topo(format!("endpoint {id} has a non-finite value")));
                }
                endpoints.insert(
                    id,
                    Endpoint {
                        id,
                        fake: *fake,
                        defender_value: *defender_value,
                        attacker_value: *attacker_value,
                        weaknesses: weaknesses.iter().copied().collect(),
                    },
                );
            }
        }
    }
    if endpoints.len() < 2 {
        return Err(topo(format!("need at least two endpoints, found {}", endpoints.len())));
    }
    if switches.is_empty() {
        return Err(topo("need at least one switch".into()));
    }

    let mut adjacency: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    for &[a, b] in &config.links {
        for n in [a, b] {
            if !endpoints.contains_key(&n) && !switches.contains(&n) {
                return Err(topo(format!("link references unknown node {n}")));
            }
        }
        if a == b {
            return Err(topo(format!("self-loop on node {a}")));
        }
        if endpoints.contains_key(&a) && endpoints.contains_key(&b) {
            return Err(topo(format!("link {a}-{b} joins two endpoints without a switch")));
        }
        adjacency.entry(a).or_default().insert(b);
        adjacency.entry(b).or_default().insert(a);
    }

    for &s in &config.compromised {
        if !switches.contains(&s) {
            return Err(topo(format!("compromised node {s} is not a switch")));
        }
    }

    let mut paths = BTreeMap::new();
    for &origin in endpoints.keys() {
        for (dest, path) in shortest_paths(origin, &adjacency, &switches) {
            if endpoints.contains_key(&dest) {
                paths.insert((origin, dest), path);
            }
        }
    }

    let real_pairs: Vec<(usize, usize)> = match &config.real_pairs {
        Some(pairs) => {
            let mut out = Vec::with_capacity(pairs.len());
            for &[o, d] in pairs {
                for n in [o, d] {
                    match endpoints.get(&n) {
                        Some(e) if !e.fake => {}
                        _ => return Err(topo(format!("real pair {o}->{d}: {n} is not a real endpoint"))),
                    }
                }
                if o == d {
                    return Err(topo(format!("real pair {o}->{d} has identical ends")));
                }
                if !paths.contains_key(&(o, d)) {
                    return Err(topo(format!("no path between endpoints {o} and {d}")));
                }
                out.push((o, d));
            }
            out
        }
        None => {
            let ids: Vec<usize> = endpoints.keys().copied().collect();
            for &o in &ids {
                for &d in &ids {
                    if o != d && !paths.contains_key(&(o, d)) {
                        return Err(topo(format!("no path between endpoints {o} and {d}")));
                    }
                }
            }
            let real: Vec<usize> = endpoints.values().filter(|e| !e.fake).map(|e| e.id).collect();
            real.iter()
                .flat_map(|&o| real.iter().filter(move |&&d| d != o).map(move |&d| (o, d)))
                .collect()
        }
    };
    for e in endpoints.values().filter(|e| e.fake) {
        if !paths.keys().any(|&(o, d)| d == e.id && o != e.id) {
            return Err(topo(format!("fake endpoint {} is unreachable", e.id)));
        }
    }

    let type_count = endpoints
        .values()
        .flat_map(|e| e.weaknesses.iter().map(|w| w + 1))
        .max()
        .unwrap_or(0);

    Ok(NetworkModel {
        endpoints,
        switches,
        compromised: config.compromised.iter().copied().collect(),
        paths,
        real_pairs,
        type_count,
    })
}

/// BFS from `origin`, only passing through switches. Neighbours are visited
/// in ascending id order, so among equal-length paths the first found wins.
fn shortest_paths(
    origin: usize,
    adjacency: &BTreeMap<usize, BTreeSet<usize>>,
    switches: &BTreeSet<usize>,
) -> Vec<(usize, Vec<usize>)> {
    let mut parent: BTreeMap<usize, usize> = BTreeMap::new();
    let mut queue = VecDeque::from([origin]);
    let mut seen = BTreeSet::from([origin]);
    let mut reached = Vec::new();
    while let Some(node) = queue.pop_front() {
        if node != origin && !switches.contains(&node) {
            reached.push(node);
            continue;
        }
        for &next in adjacency.get(&node).into_iter().flatten() {
            if seen.insert(next) {
                parent.insert(next, node);
                queue.push_back(next);
            }
        }
    }
    reached
        .into_iter()
        .map(|dest| {
            let mut path = Vec::new();
            let mut cur = parent[&dest];
            while cur != origin {
                path.push(cur);
                cur = parent[&cur];
            }
            path.reverse();
            (dest, path)
        })
        .collect()
}

impl NetworkModel {
    pub fn endpoints(&self) -> impl Iterator<Item = &Endpoint> {
        self.endpoints.values()
    }

    pub fn endpoint(&self, id: usize) -> Option<&Endpoint> {
        self.endpoints.get(&id)
    }

    pub fn fake_endpoints(&self) -> impl Iterator<Item = &Endpoint> {
        self.endpoints.values().filter(|e| e.fake)
    }

    pub fn switches(&self) -> impl Iterator<Item = usize> + '_ {
        self.switches.iter().copied()
    }

    pub fn compromised(&self) -> &BTreeSet<usize> {
        &self.compromised
    }

    /// Replaces the compromised set. Unknown ids are rejected.
    pub fn set_compromised(&mut self, switches: impl IntoIterator<Item = usize>) -> Result<()> {
        let set: BTreeSet<usize> = switches.into_iter().collect();
        if let Some(bad) = set.iter().find(|s| !self.switches.contains(s)) {
            return Err(SimError::Topology(format!("compromised node {bad} is not a switch")));
        }
        self.compromised = set;
        Ok(())
    }

    pub fn path(&self, origin: usize, destination: usize) -> Option<&[usize]> {
        self.paths.get(&(origin, destination)).map(Vec::as_slice)
    }

    pub fn real_pairs(&self) -> &[(usize, usize)] {
        &self.real_pairs
    }

    /// One more than the largest weakness id mentioned by any endpoint.
    pub fn type_count(&self) -> usize {
        self.type_count
    }
}
