use honeyflow_core::game::{attacker_utilities, utility_vs_mixed_attacker};
use honeyflow_core::strategies::{
    best_response_defender, evaluate_matchup, rational_attacker, uniform_attacker,
};
use honeyflow_core::{
    worked_example, AttackerModel, DefenderStrategy, GameSpec, MixedAttack, VulnerabilityType,
};
use honeyflow_testkit::{best_pure_allocation, types_of};
use proptest::prelude::*;

fn arb_game() -> impl Strategy<Value = GameSpec> {
    prop::collection::vec(
        (-2.0..10.0f64, 0.0..12.0f64, 0usize..6, 0usize..5, 0.0..1.0f64).prop_map(
            |(real, drop, r, h, c)| VulnerabilityType::new(real, real - drop, r, h, c),
        ),
        1..4,
    )
    .prop_map(GameSpec::new)
    .prop_filter("needs a target", |s| s.attackable().count() > 0)
}

fn arb_game_and_attacker() -> impl Strategy<Value = (GameSpec, MixedAttack)> {
    arb_game().prop_flat_map(|spec| {
        let n = spec.type_count();
        (Just(spec), prop::collection::vec(0.0..1.0f64, n + 1))
    })
    .prop_map(|(spec, raw)| {
        let n = spec.type_count();
        let masked: Vec<f64> = (0..n)
            .map(|i| if spec.is_attackable(i) { raw[i] } else { 0.0 })
            .collect();
        let total: f64 = masked.iter().sum::<f64>() + raw[n];
        let q = if total > 0.0 {
            MixedAttack::new(&spec, raw[n] / total, masked.iter().map(|p| p / total).collect())
        } else {
            MixedAttack::new(&spec, 1.0, vec![0.0; n])
        }
        .unwrap();
        (spec, q)
    })
}

fn random_strategy(spec: &GameSpec, seeds: &[f64]) -> DefenderStrategy {
    let mut k = 0;
    let marginals = spec
        .types
        .iter()
        .map(|t| {
            let w: Vec<f64> = (0..=t.honey_flow_bound)
                .map(|_| {
                    k += 1;
                    seeds[k % seeds.len()] + 1e-3
                })
                .collect();
            let total: f64 = w.iter().sum();
            w.into_iter().map(|x| x / total).collect()
        })
        .collect();
    DefenderStrategy::new(marginals).unwrap()
}

proptest! {
    #[test]
    fn best_response_matches_pure_enumeration((spec, q) in arb_game_and_attacker()) {
        let s = best_response_defender(&spec, &q).unwrap();
        let (value, _) = utility_vs_mixed_attacker(&spec, &s, &q).unwrap();
        let oracle = best_pure_allocation(&types_of(&spec), &q.attack);
        prop_assert!((value - oracle).abs() < 1e-9, "{value} vs {oracle}");
    }

    #[test]
    fn rational_choice_attains_the_maximum(
        spec in arb_game(), seeds in prop::collection::vec(0.0..1.0f64, 1..16),
    ) {
        let s = random_strategy(&spec, &seeds);
        let chosen = rational_attacker(&spec, &s).unwrap();
        let all = attacker_utilities(&spec, &s).unwrap();
        let best = all.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
        let got = all.iter().find(|p| p.0 == chosen).unwrap().1;
        prop_assert!(best - got <= 1e-9 * best.abs().max(1.0));
    }

    #[test]
    fn matchups_are_pure_functions(
        spec in arb_game(), seeds in prop::collection::vec(0.0..1.0f64, 1..16),
    ) {
        let s = random_strategy(&spec, &seeds);
        for model in AttackerModel::ALL {
            let a = evaluate_matchup(&spec, &s, "x", model).unwrap();
            let b = evaluate_matchup(&spec, &s, "x", model).unwrap();
            prop_assert_eq!(a, b);
        }
    }
}

#[test]
fn best_response_against_uniform_attacker_on_worked_example() {
    let spec = worked_example();
    let q = uniform_attacker(&spec).unwrap();
    let s = best_response_defender(&spec, &q).unwrap();
    let (value, _) = utility_vs_mixed_attacker(&spec, &s, &q).unwrap();
    let oracle = best_pure_allocation(&types_of(&spec), &q.attack);
    assert!((value - oracle).abs() < 1e-9);
}
