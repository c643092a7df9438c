//! Property tests for the bilinear form, energies, separated/dense
//! agreement, and the power-method equivalence of the fixed point.

use proptest::prelude::*;

use pgd_core::dense::DenseTensor;
use pgd_core::fixed_point::{solve_rank_one, FixedPointConfig, FixedPointInit};
use pgd_core::greedy::{self, GreedyConfig};
use pgd_core::inner::{
    a_inner_dense, a_inner_expansions, a_inner_terms, energy, energy_dense, ResidualState,
};
use pgd_core::mat::Mat;
use pgd_core::operator::{Operator1D, OperatorKind};
use pgd_core::oracle;
use pgd_core::rng;
use pgd_core::separated::{Expansion, RankOneTerm, Rhs};
use pgd_core::svd::power_step;

fn random_spd(seed: u64, d: usize) -> Operator1D {
    let mut rng = rng::rng_from_seed(seed);
    let q = rng::random_orthogonal(&mut rng, d);
    let values: Vec<f64> = (0..d).map(|i| 0.5 + 0.7 * i as f64).collect();
    let raw = q.matmul(&Mat::diag(&values)).matmul(&q.transpose());
    let sym = Mat::from_fn(d, d, |i, j| 0.5 * (raw[(i, j)] + raw[(j, i)]));
    Operator1D::from_matrix(sym, OperatorKind::SymmetricPositiveDefinite).unwrap()
}

fn vec_strategy(d: usize) -> impl Strategy<Value = Vec<f64>> {
    proptest::collection::vec(-1.0..1.0f64, d)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn a_inner_is_symmetric_for_symmetric_operators(
        seed in 0u64..32,
        x1 in vec_strategy(5), x2 in vec_strategy(4),
        y1 in vec_strategy(5), y2 in vec_strategy(4),
    ) {
        let ops = vec![random_spd(seed, 5), random_spd(seed.wrapping_add(99), 4)];
        let x = RankOneTerm::from_pair(&x1, &x2);
        let y = RankOneTerm::from_pair(&y1, &y2);
        let xy = a_inner_terms(&ops, &x, &y);
        let yx = a_inner_terms(&ops, &y, &x);
        let scale = xy.abs().max(yx.abs()).max(1e-30);
        prop_assert!((xy - yx).abs() <= 1e-12 * scale);
    }

    #[test]
    fn a_inner_is_positive_definite(
        seed in 0u64..32,
        x1 in vec_strategy(5), x2 in vec_strategy(4),
    ) {
        prop_assume!(x1.iter().any(|&v| v.abs() > 1e-3));
        prop_assume!(x2.iter().any(|&v| v.abs() > 1e-3));
        let ops = vec![random_spd(seed, 5), random_spd(seed.wrapping_add(7), 4)];
        let x = RankOneTerm::from_pair(&x1, &x2);
        prop_assert!(a_inner_terms(&ops, &x, &x) > 0.0);
    }

    #[test]
    fn separated_and_dense_forms_agree(
        seed in 0u64..32,
        x1 in vec_strategy(4), x2 in vec_strategy(3),
        y1 in vec_strategy(4), y2 in vec_strategy(3),
        c in -2.0..2.0f64,
    ) {
        let ops = vec![random_spd(seed, 4), random_spd(seed.wrapping_add(3), 3)];
        let mut expansion = Expansion::from_terms(vec![
            RankOneTerm::from_pair(&x1, &x2),
            RankOneTerm::from_pair(&y1, &y2),
        ]);
        expansion.set_coefficients(vec![1.0, c]).unwrap();
        let dense = expansion.densify(&[4, 3]).unwrap();
        let sep = a_inner_expansions(&ops, &expansion, &expansion);
        let dns = a_inner_dense(&ops, &dense, &dense);
        let scale = sep.abs().max(dns.abs()).max(1e-30);
        prop_assert!((sep - dns).abs() <= 1e-12 * scale);

        let f = Rhs::dense_from_mat(&Mat::from_fn(4, 3, |i, j| ((i * 3 + j) as f64).sin()));
        let e_sep = energy(&ops, &expansion, &f);
        let e_dense = energy_dense(&ops, &dense, &f.densify().unwrap());
        let scale = e_sep.abs().max(e_dense.abs()).max(1e-30);
        prop_assert!((e_sep - e_dense).abs() <= 1e-12 * scale);
    }
}

/// Energy polarization against the oracle solution:
/// `E(U) = 1/2 ||U - G||_A^2 - 1/2 ||G||_A^2`.
#[test]
fn energy_polarization_identity() {
    for seed in 0..8u64 {
        let d = 6 + (seed as usize % 4);
        let op = random_spd(900 + seed, d);
        let ops = vec![op.clone(), op];
        let mut rng = rng::rng_from_seed(7100 + seed);
        let fm = rng::uniform_mat(&mut rng, d, d, -1.0, 1.0);
        let f = Rhs::dense_from_mat(&fm);
        let g = oracle::sylvester_dense(&ops, &fm).unwrap();
        let g_t = DenseTensor::from_mat(&g);
        let u = Expansion::from_terms(vec![
            RankOneTerm::from_pair(
                &rng::uniform_vec(&mut rng, d, -1.0, 1.0),
                &rng::uniform_vec(&mut rng, d, -1.0, 1.0),
            ),
            RankOneTerm::from_pair(
                &rng::uniform_vec(&mut rng, d, -1.0, 1.0),
                &rng::uniform_vec(&mut rng, d, -1.0, 1.0),
            ),
        ]);
        let e = energy(&ops, &u, &f);
        let mut diff = u.densify(&[d, d]).unwrap();
        diff.axpy(-1.0, &g_t);
        let polar = 0.5 * a_inner_dense(&ops, &diff, &diff)
            - 0.5 * a_inner_dense(&ops, &g_t, &g_t);
        let scale = e.abs().max(polar.abs()).max(1e-30);
        assert!(
            (e - polar).abs() <= 1e-10 * scale,
            "seed {seed}: {e} vs {polar}"
        );
    }
}

/// With identity operators the alternating fixed point reproduces the
/// explicit power recursion on the second factor at every sweep.
#[test]
fn svd_mode_matches_power_recursion_per_sweep() {
    let (p, q) = (7, 5);
    let mut rng = rng::rng_from_seed(7200);
    let g = rng::uniform_mat(&mut rng, p, q, -1.0, 1.0);
    let ops = vec![
        Operator1D::identity(p).unwrap(),
        Operator1D::identity(q).unwrap(),
    ];
    let residual = ResidualState::from_rhs(&Rhs::dense_from_mat(&g)).unwrap();
    let r0 = rng::uniform_vec(&mut rng, p, -1.0, 1.0);
    let s0 = rng::uniform_vec(&mut rng, q, -1.0, 1.0);
    let mut s_recursion = s0.clone();
    for sweeps in 1..=8usize {
        s_recursion = power_step(&g, &s_recursion).unwrap();
        let cfg = FixedPointConfig {
            max_sweeps: sweeps,
            rel_tol: 1e-300,
            init: FixedPointInit::Given(RankOneTerm::from_pair(&r0, &s0)),
            normalize_each_sweep: false,
        };
        let mut solver_rng = rng::rng_from_seed(0);
        let (term, diag) = solve_rank_one(&ops, &residual, &cfg, &mut solver_rng).unwrap();
        assert_eq!(diag.sweeps_used, sweeps);
        let s_solver = term.factor(1);
        for (a, b) in s_solver.iter().zip(&s_recursion) {
            assert!(
                (a - b).abs() <= 1e-12 * b.abs().max(1e-12),
                "sweep {sweeps}: {a} vs {b}"
            );
        }
    }
}

/// The restart tie-break is deterministic: two runs with the same seed give
/// identical expansions.
#[test]
fn greedy_runs_are_deterministic() {
    let d = 9;
    let op = Operator1D::diag_linspace(d, 1.0, 2.0).unwrap();
    let ops = vec![op.clone(), op];
    let run = || {
        let mut rng = rng::rng_from_seed(7300);
        let f = Rhs::dense_from_mat(&rng::uniform_mat(&mut rng, d, d, 0.0, 1.0));
        let cfg = GreedyConfig {
            eps: 1e-5,
            ..GreedyConfig::default()
        };
        greedy::pure_greedy(&ops, &f, &cfg, &mut rng).unwrap()
    };
    let a = run();
    let b = run();
    assert_eq!(a.trace.len(), b.trace.len());
    for (x, y) in a.trace.iter().zip(&b.trace) {
        assert_eq!(x.residual_frobenius.to_bits(), y.residual_frobenius.to_bits());
        assert_eq!(x.energy.to_bits(), y.energy.to_bits());
    }
}
