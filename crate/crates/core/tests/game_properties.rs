use honeyflow_core::game::{
    attacker_utility, defender_utility, honey_cost, real_attack_probability,
};
use honeyflow_core::{AttackerAction, DefenderStrategy, GameSpec, VulnerabilityType};
use proptest::prelude::*;

fn arb_type() -> impl Strategy<Value = VulnerabilityType> {
    (-5.0..20.0f64, 0.0..15.0f64, 0usize..8, 0usize..6, 0.0..2.0f64).prop_map(
        |(real, drop, r, h, c)| VulnerabilityType::new(real, real - drop, r, h, c),
    )
}

fn arb_marginal(len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.0..1.0f64, len).prop_map(|w| {
        let total: f64 = w.iter().sum();
        if total <= 0.0 {
            let mut m = vec![0.0; w.len()];
            m[0] = 1.0;
            m
        } else {
            w.into_iter().map(|x| x / total).collect()
        }
    })
}

fn arb_game_and_two_strategies() -> impl Strategy<Value = (GameSpec, DefenderStrategy, DefenderStrategy)> {
    prop::collection::vec(arb_type(), 1..4)
        .prop_filter("needs a target", |types| types.iter().any(|t| t.is_attackable()))
        .prop_flat_map(|types| {
            let shapes: Vec<_> = types.iter().map(|t| arb_marginal(t.honey_flow_bound + 1)).collect();
            let shapes2: Vec<_> = types.iter().map(|t| arb_marginal(t.honey_flow_bound + 1)).collect();
            (Just(GameSpec::new(types)), shapes, shapes2)
        })
        .prop_map(|(spec, a, b)| {
            (
                spec,
                DefenderStrategy::new(a).unwrap(),
                DefenderStrategy::new(b).unwrap(),
            )
        })
}

proptest! {
    #[test]
    fn attack_component_is_zero_sum((spec, s, _) in arb_game_and_two_strategies()) {
        let cost = honey_cost(&spec, &s).unwrap();
        for i in spec.attackable() {
            let a = AttackerAction::Attack(i);
            let d = defender_utility(&spec, &s, a).unwrap();
            let u = attacker_utility(&spec, &s, a).unwrap();
            prop_assert!((d + u + cost).abs() < 1e-9);
        }
    }

    #[test]
    fn utilities_are_linear_in_the_strategy(
        (spec, s, t) in arb_game_and_two_strategies(),
        alpha in 0.0..=1.0f64,
    ) {
        let mixed: Vec<Vec<f64>> = s.marginals().iter().zip(t.marginals())
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| alpha * x + (1.0 - alpha) * y).collect())
            .collect();
        let mixed = DefenderStrategy::new(mixed).unwrap();
        for action in spec.actions() {
            let lhs = defender_utility(&spec, &mixed, action).unwrap();
            let rhs = alpha * defender_utility(&spec, &s, action).unwrap()
                + (1.0 - alpha) * defender_utility(&spec, &t, action).unwrap();
            prop_assert!((lhs - rhs).abs() < 1e-9);
            let lhs = attacker_utility(&spec, &mixed, action).unwrap();
            let rhs = alpha * attacker_utility(&spec, &s, action).unwrap()
                + (1.0 - alpha) * attacker_utility(&spec, &t, action).unwrap();
            prop_assert!((lhs - rhs).abs() < 1e-9);
        }
    }

    #[test]
    fn real_probability_falls_as_mass_moves_up(
        r in 1usize..20, h in 1usize..10, from in 0usize..10, mass in 0.0..=1.0f64,
    ) {
        let from = from % h;
        let spec = GameSpec::new(vec![VulnerabilityType::new(1.0, 0.0, r, h, 0.0)]);
        let mut base: Vec<f64> = vec![0.0; h + 1];
        base[from] = 1.0;
        let mut moved = base.clone();
        moved[from] -= mass;
        moved[from + 1] += mass;
        let p0 = real_attack_probability(&spec, 0, &DefenderStrategy::new(vec![base]).unwrap()).unwrap();
        let p1 = real_attack_probability(&spec, 0, &DefenderStrategy::new(vec![moved]).unwrap()).unwrap();
        prop_assert!(p1 <= p0 + 1e-15);
        if mass > 0.0 {
            prop_assert!(p1 < p0);
        }
    }

    #[test]
    fn real_probability_extremes((spec, s, _) in arb_game_and_two_strategies()) {
        for i in spec.attackable() {
            let p = real_attack_probability(&spec, i, &s).unwrap();
            prop_assert!((0.0..=1.0 + 1e-12).contains(&p));
            if spec.types[i].real_flow_count == 0 {
                prop_assert_eq!(p, 0.0);
            }
        }
    }

    #[test]
    fn honey_cost_ignores_type_order((spec, s, _) in arb_game_and_two_strategies()) {
        let mut types = spec.types.clone();
        let mut marginals = s.clone().into_marginals();
        types.reverse();
        marginals.reverse();
        let reversed = GameSpec::new(types);
        let rs = DefenderStrategy::new(marginals).unwrap();
        let a = honey_cost(&spec, &s).unwrap();
        let b = honey_cost(&reversed, &rs).unwrap();
        prop_assert!((a - b).abs() < 1e-9);
        prop_assert!(a >= 0.0);
    }
}
