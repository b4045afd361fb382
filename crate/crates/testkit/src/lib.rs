//! Brute-force reference computations used by the test suites.
//!
//! Nothing here calls the LP backend or the equilibrium engine. Every oracle
//! works from raw type parameters with its own arithmetic so that agreement
//! with the solver is meaningful.
//!
//! Both Stackelberg oracles rely on the attack component being zero-sum:
//! the defender's payoff against any attack is `-U_a - C`, so the defender
//! value of a strategy is `-(max(0, max_i U_a(i)) + C)` regardless of how the
//! attacker breaks ties. Minimizing that over strategies separates by type
//! once a cap `t` on the attacker's best payoff is fixed.

use honeyflow_core::GameSpec;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleType {
    pub real_value: f64,
    pub honey_value: f64,
    pub real_flows: usize,
    pub honey_bound: usize,
    pub cost: f64,
}

impl OracleType {
    fn real_share(&self, honey: usize) -> f64 {
        if self.real_flows == 0 {
            0.0
        } else {
            self.real_flows as f64 / (self.real_flows + honey) as f64
        }
    }

    /// Attacker payoff against exactly `honey` honey flows.
    pub fn payoff(&self, honey: usize) -> f64 {
        let p = self.real_share(honey);
        p * self.real_value + (1.0 - p) * self.honey_value
    }

    fn attackable(&self) -> bool {
        self.real_flows + self.honey_bound > 0
    }
}

pub fn types_of(spec: &GameSpec) -> Vec<OracleType> {
    spec.types
        .iter()
        .map(|t| OracleType {
            real_value: t.attacker_real_value,
            honey_value: t.attacker_honey_value,
            real_flows: t.real_flow_count,
            honey_bound: t.honey_flow_bound,
            cost: t.honey_flow_cost,
        })
        .collect()
}

/// Cheapest expected cost for one type keeping its attacker payoff `≤ cap`,
/// searching every mixture of at most two honey counts exactly. Two points
/// suffice: the per-type problem has one equality and one inequality row.
fn min_cost_two_point(ty: &OracleType, cap: f64) -> f64 {
    if !ty.attackable() {
        return 0.0;
    }
    let eps = 1e-12;
    let mut best = f64::INFINITY;
    for j in 0..=ty.honey_bound {
        let (uj, cj) = (ty.payoff(j), j as f64 * ty.cost);
        if uj <= cap + eps {
            best = best.min(cj);
        }
        for k in 0..=ty.honey_bound {
            let (uk, ck) = (ty.payoff(k), k as f64 * ty.cost);
            // mix j (below the cap) with k (above it) to land exactly on the cap
            if uj <= cap && uk > cap {
                let weight_j = (uk - cap) / (uk - uj);
                best = best.min(weight_j * cj + (1.0 - weight_j) * ck);
            }
        }
    }
    best
}

/// Exact strong-Stackelberg defender value by cap enumeration over two-point
/// mixtures. The optimal cap sits at zero or at some pure payoff.
pub fn stackelberg_value_exact(types: &[OracleType]) -> f64 {
    let mut caps: Vec<f64> = vec![0.0];
    for ty in types.iter().filter(|t| t.attackable()) {
        caps.extend((0..=ty.honey_bound).map(|j| ty.payoff(j)).filter(|&u| u >= 0.0));
    }
    let mut best = f64::INFINITY;
    for cap in caps {
        let total = cap + types.iter().map(|t| min_cost_two_point(t, cap)).sum::<f64>();
        best = best.min(total);
    }
    -best
}

/// Every point of the probability simplex over `dim` cells whose coordinates
/// are multiples of `1 / steps`, passed to `visit` as unit counts.
fn for_each_simplex_point(dim: usize, steps: usize, visit: &mut impl FnMut(&[usize])) {
    fn rec(prefix: &mut Vec<usize>, remaining: usize, dim: usize, visit: &mut impl FnMut(&[usize])) {
        if prefix.len() + 1 == dim {
            prefix.push(remaining);
            visit(prefix);
            prefix.pop();
            return;
        }
        for k in 0..=remaining {
            prefix.push(k);
            rec(prefix, remaining - k, dim, visit);
            prefix.pop();
        }
    }
    rec(&mut Vec::with_capacity(dim), steps, dim, visit);
}

/// Number of grid points [`stackelberg_value_grid`] visits for one type.
pub fn simplex_grid_size(honey_bound: usize, steps: usize) -> u128 {
    // C(steps + H, H)
    let mut acc: u128 = 1;
    for k in 1..=honey_bound as u128 {
        acc = acc * (steps as u128 + k) / k;
    }
    acc
}

/// Sorts `(payoff, cost)` points by payoff and replaces each cost with the
/// running minimum, so "cheapest point with payoff ≤ cap" is a binary search.
fn frontier(mut pts: Vec<(f64, f64)>) -> Vec<(f64, f64)> {
    pts.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut running = f64::INFINITY;
    for p in &mut pts {
        running = running.min(p.1);
        p.1 = running;
    }
    pts
}

fn cap_search(frontiers: &[Vec<(f64, f64)>]) -> f64 {
    let mut caps: Vec<f64> = vec![0.0];
    for f in frontiers {
        caps.extend(f.iter().map(|p| p.0).filter(|&u| u >= 0.0));
    }
    let mut best = f64::INFINITY;
    for cap in caps {
        let mut total = cap;
        for f in frontiers {
            let idx = f.partition_point(|p| p.0 <= cap);
            total += if idx == 0 { f64::INFINITY } else { f[idx - 1].1 };
        }
        best = best.min(total);
    }
    -best
}

/// Defender value maximized over the full per-type simplex grid with
/// resolution `1 / steps`, attacker best-responding (abstaining allowed).
pub fn stackelberg_value_grid(types: &[OracleType], steps: usize) -> f64 {
    let frontiers: Vec<_> = types
        .iter()
        .filter(|t| t.attackable())
        .map(|ty| {
            let payoffs: Vec<f64> = (0..=ty.honey_bound).map(|j| ty.payoff(j)).collect();
            let mut pts = Vec::new();
            for_each_simplex_point(ty.honey_bound + 1, steps, &mut |units| {
                let (mut u, mut c) = (0.0, 0.0);
                for (j, &n) in units.iter().enumerate() {
                    let w = n as f64 / steps as f64;
                    u += w * payoffs[j];
                    c += w * j as f64 * ty.cost;
                }
                pts.push((u, c));
            });
            frontier(pts)
        })
        .collect();
    cap_search(&frontiers)
}

/// Same search restricted to grid points supported on at most two honey
/// counts. The per-type subproblem (minimize cost under a payoff cap) has two
/// constraints, so its optimum always has such a support; this keeps the grid
/// tractable for larger bounds.
pub fn stackelberg_value_pair_grid(types: &[OracleType], steps: usize) -> f64 {
    let frontiers: Vec<_> = types
        .iter()
        .filter(|t| t.attackable())
        .map(|ty| {
            let mut pts = Vec::new();
            for j in 0..=ty.honey_bound {
                for k in j..=ty.honey_bound {
                    for n in 0..=steps {
                        let w = n as f64 / steps as f64;
                        let u = w * ty.payoff(j) + (1.0 - w) * ty.payoff(k);
                        let c = (w * j as f64 + (1.0 - w) * k as f64) * ty.cost;
                        pts.push((u, c));
                    }
                }
            }
            frontier(pts)
        })
        .collect();
    cap_search(&frontiers)
}

/// Defender payoff of a deterministic honey allocation against a mixed
/// attacker `q` (indexed by type; the remainder abstains).
pub fn pure_allocation_value(types: &[OracleType], counts: &[usize], q: &[f64]) -> f64 {
    let cost: f64 = types.iter().zip(counts).map(|(t, &j)| j as f64 * t.cost).sum();
    let attack: f64 = types
        .iter()
        .zip(counts)
        .zip(q)
        .map(|((t, &j), &p)| -p * t.payoff(j))
        .sum();
    attack - cost
}

/// Best deterministic allocation against `q` by enumerating every tuple of
/// honey counts. Returns the value only.
pub fn best_pure_allocation(types: &[OracleType], q: &[f64]) -> f64 {
    let mut counts = vec![0usize; types.len()];
    let mut best = f64::NEG_INFINITY;
    loop {
        best = best.max(pure_allocation_value(types, &counts, q));
        let mut k = 0;
        loop {
            if k == types.len() {
                return best;
            }
            if counts[k] < types[k].honey_bound {
                counts[k] += 1;
                break;
            }
            counts[k] = 0;
            k += 1;
        }
    }
}

/// `|observed - p| ≤ 3·sqrt(p(1-p)/n)`.
pub fn within_binomial_3_sigma(observed: f64, p: f64, n: usize) -> bool {
    (observed - p).abs() <= 3.0 * (p * (1.0 - p) / n as f64).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn worked() -> Vec<OracleType> {
        vec![
            OracleType { real_value: 10.0, honey_value: -5.0, real_flows: 5, honey_bound: 2, cost: 1.0 },
            OracleType { real_value: 20.0, honey_value: -10.0, real_flows: 5, honey_bound: 3, cost: 0.5 },
        ]
    }

    #[test]
    fn oracles_agree_on_worked_example() {
        let exact = stackelberg_value_exact(&worked());
        let grid = stackelberg_value_grid(&worked(), 100);
        assert!((exact + 10.75).abs() < 1e-12, "{exact}");
        assert!(grid <= exact + 1e-12);
        assert!((grid - exact).abs() < 1e-3, "{grid}");
        let pairs = stackelberg_value_pair_grid(&worked(), 100);
        assert!(pairs <= exact + 1e-12 && (pairs - exact).abs() < 1e-3);
    }

    #[test]
    fn grid_sizes() {
        assert_eq!(simplex_grid_size(2, 100), 5151);
        assert_eq!(simplex_grid_size(3, 100), 176_851);
        let mut n = 0;
        for_each_simplex_point(3, 4, &mut |_| n += 1);
        assert_eq!(n as u128, simplex_grid_size(2, 4));
    }

    #[test]
    fn pure_enumeration() {
        // q puts everything on type 2: cheapest three flows are worth it.
        let v = best_pure_allocation(&worked(), &[0.0, 1.0]);
        assert!((v - (-8.75 - 1.5)).abs() < 1e-12);
    }
}
