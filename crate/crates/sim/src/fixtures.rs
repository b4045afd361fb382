//! Built-in topologies.

use crate::topology::{NodeConfig, TopologyConfig};

fn host(id: usize, fake: bool, value: f64, weaknesses: &[usize]) -> NodeConfig {
    NodeConfig::Endpoint {
        id,
        fake,
        defender_value: value,
        attacker_value: value,
        weaknesses: weaknesses.to_vec(),
    }
}

/// Two clients and two servers across a chain of three switches, plus two
/// fake clients at either end advertising types 0 and 1. Only the middle
/// switch is compromised. Real hosts are worth 1, fake hosts 0.
///
/// ```text
///  c1(10) c2(11) f1(12)          s1(20) s2(21) f2(13)
///        \   |   /                   \   |   /
///          sw1 ------- sw2 ------- sw3
/// ```
pub fn testbed() -> TopologyConfig {
    TopologyConfig {
        nodes: vec![
            NodeConfig::Switch { id: 1 },
            NodeConfig::Switch { id: 2 },
            NodeConfig::Switch { id: 3 },
            host(10, false, 1.0, &[]),
            host(11, false, 1.0, &[]),
            host(12, true, 0.0, &[0]),
            host(13, true, 0.0, &[1]),
            host(20, false, 1.0, &[0]),
            host(21, false, 1.0, &[1]),
        ],
        links: vec![[10, 1], [11, 1], [12, 1], [1, 2], [2, 3], [20, 3], [21, 3], [13, 3]],
        compromised: vec![2],
        real_pairs: Some(vec![[10, 20], [11, 21]]),
    }
}

/// Three switches in a line. Real traffic a(10) -> c(12) crosses all three;
/// a -> b(11) and every honey flow (between the fakes 13 and 14) stay on
/// the first switch. The middle switch is compromised.
pub fn chain() -> TopologyConfig {
    TopologyConfig {
        nodes: vec![
            NodeConfig::Switch { id: 1 },
            NodeConfig::Switch { id: 2 },
            NodeConfig::Switch { id: 3 },
            host(10, false, 1.0, &[]),
            host(11, false, 2.0, &[1]),
            host(12, false, 3.0, &[0]),
            host(13, true, 0.0, &[0]),
            host(14, true, 0.0, &[1]),
        ],
        links: vec![[10, 1], [11, 1], [13, 1], [14, 1], [1, 2], [2, 3], [12, 3]],
        compromised: vec![2],
        real_pairs: Some(vec![[10, 12], [10, 11]]),
    }
}
