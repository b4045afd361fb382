use honeyflow_core::lp::{solve_lp, LinearProgram, LpStatus};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `max c·x s.t. A x ≤ b, x ≥ 0` with positive `A` and `b` is always
/// feasible (x = 0) and bounded.
fn random_packing_lp(rng: &mut impl Rng) -> (Vec<Vec<f64>>, Vec<f64>, Vec<f64>) {
    let m = rng.gen_range(1..=6);
    let n = rng.gen_range(1..=12);
    let a = (0..m)
        .map(|_| (0..n).map(|_| rng.gen_range(0.1..5.0)).collect())
        .collect();
    let b = (0..m).map(|_| rng.gen_range(1.0..10.0)).collect();
    let c = (0..n).map(|_| rng.gen_range(-2.0..5.0)).collect();
    (a, b, c)
}

#[test]
fn strong_duality_on_random_programs() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for case in 0..300 {
        let (a, b, c) = random_packing_lp(&mut rng);
        let m = a.len();
        let n = c.len();

        let mut primal = LinearProgram::maximize(c.clone());
        for (row, &rhs) in a.iter().zip(&b) {
            primal = primal.le(row.clone(), rhs);
        }

        // min b·y  s.t. Aᵀy ≥ c, y ≥ 0, written as max -b·y
        let mut dual = LinearProgram::maximize(b.iter().map(|v| -v).collect());
        for j in 0..n {
            let column: Vec<f64> = (0..m).map(|i| a[i][j]).collect();
            dual = dual.ge(column, c[j]);
        }

        let p = solve_lp(&primal).unwrap();
        let d = solve_lp(&dual).unwrap();
        assert_eq!(p.status, LpStatus::Optimal);
        assert_eq!(d.status, LpStatus::Optimal);
        assert!(
            (p.objective_value + d.objective_value).abs() < 1e-6,
            "case {case}: primal {} dual {}",
            p.objective_value,
            -d.objective_value
        );
        for (row, &rhs) in a.iter().zip(&b) {
            let lhs: f64 = row.iter().zip(&p.x).map(|(a, x)| a * x).sum();
            assert!(lhs <= rhs + 1e-8);
        }
        assert!(p.x.iter().all(|&x| x >= 0.0));
    }
}

#[test]
fn resolving_is_bit_identical() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..50 {
        let (a, b, c) = random_packing_lp(&mut rng);
        let mut lp = LinearProgram::maximize(c).eq(vec![1.0; a[0].len()], 1.0);
        for (row, rhs) in a.into_iter().zip(b) {
            lp = lp.le(row, rhs);
        }
        let first = solve_lp(&lp).unwrap();
        let second = solve_lp(&lp).unwrap();
        assert_eq!(first.status, second.status);
        assert_eq!(first.iterations, second.iterations);
        assert!(first.x.iter().zip(&second.x).all(|(x, y)| x.to_bits() == y.to_bits()));
    }
}

#[test]
fn wide_programs_solve_quickly() {
    // Few rows, thousands of columns: the shape of the equilibrium programs.
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let n = 5000;
    let c: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let mut lp = LinearProgram::maximize(c).eq(vec![1.0; n], 1.0);
    for _ in 0..5 {
        lp = lp.le((0..n).map(|_| rng.gen_range(-1.0..1.0)).collect(), 0.2);
    }
    let sol = solve_lp(&lp.with_upper_bounds(1.0)).unwrap();
    assert_eq!(sol.status, LpStatus::Optimal);
    let total: f64 = sol.x.iter().sum();
    assert!((total - 1.0).abs() < 1e-9);
}
