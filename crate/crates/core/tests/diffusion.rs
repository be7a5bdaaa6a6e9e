mod common;

use common::*;
use genepu::nedbit::diffusion::{balanced_diffusion, diffuse, heat_diffusion, Laplacian};
use genepu::SeedSet;
use proptest::prelude::*;

#[test]
fn heat_matches_eigendecomposition() {
    for case in 0..20u64 {
        let g = random_connected_graph(30, 0.15, case, 5);
        let seeds = random_seeds(&g, 4, case + 100);
        for t in [0.005, 0.3, 2.0] {
            let z = heat_diffusion(&g, &seeds, t).unwrap();
            let oracle = heat_oracle(&g, &seeds.score_vector(), t);
            assert!(relative_error(&z, &oracle) <= 1e-8, "case {case} t {t}");
        }
    }
}

#[test]
fn balanced_matches_dense_exponential() {
    for case in 0..20u64 {
        let g = random_connected_graph(30, 0.15, case, 5);
        let seeds = random_seeds(&g, 4, case + 200);
        for t in [0.005, 0.3, 2.0] {
            let z = balanced_diffusion(&g, &seeds, t).unwrap();
            let oracle = balanced_oracle(&g, &seeds.score_vector(), t);
            assert!(relative_error(&z, &oracle) <= 1e-8, "case {case} t {t}");
        }
    }
}

#[test]
fn long_horizon_reaches_equilibrium() {
    let g = random_connected_graph(25, 0.2, 9, 10);
    let seeds = random_seeds(&g, 3, 1);
    let v = seeds.score_vector();
    let mean = v.iter().sum::<f64>() / v.len() as f64;
    let z = heat_diffusion(&g, &seeds, 500.0).unwrap();
    assert!(z.iter().all(|x| (x - mean).abs() < 1e-9));
}

#[test]
fn two_node_balanced_closed_form() {
    let g = genepu::Graph::from_edges(&[("a", "b")]).unwrap();
    let seeds = SeedSet::new(2, [(0, 1.0)]).unwrap();
    let z = balanced_diffusion(&g, &seeds, 0.5).unwrap();
    let e = (-1.0f64).exp();
    assert!((z[0] - (1.0 + e) / 2.0).abs() < 1e-11);
    assert!((z[1] - (1.0 - e) / 2.0).abs() < 1e-11);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn heat_conserves_mass(seed in 0u64..10_000, t in 0.0f64..5.0) {
        let g = random_connected_graph(20, 0.2, seed, 3);
        let seeds = random_seeds(&g, 3, seed);
        let z = heat_diffusion(&g, &seeds, t).unwrap();
        let before: f64 = seeds.score_vector().iter().sum();
        prop_assert!((z.iter().sum::<f64>() - before).abs() <= 1e-10);
    }

    #[test]
    fn balanced_fixes_constants(seed in 0u64..10_000, t in 0.0f64..5.0, c in -3.0f64..3.0) {
        let g = random_connected_graph(20, 0.2, seed, 3);
        let z = diffuse(&g, Laplacian::RandomWalk, &vec![c; g.node_count()], t).unwrap();
        prop_assert!(z.iter().all(|x| (x - c).abs() <= 1e-10));
    }

    #[test]
    fn semigroup(seed in 0u64..10_000, t1 in 0.0f64..1.0, t2 in 0.0f64..1.0) {
        let g = random_connected_graph(15, 0.25, seed, 3);
        let seeds = random_seeds(&g, 2, seed);
        let v = seeds.score_vector();
        for op in [Laplacian::Combinatorial, Laplacian::RandomWalk] {
            let once = diffuse(&g, op, &v, t1 + t2).unwrap();
            let twice = diffuse(&g, op, &diffuse(&g, op, &v, t1).unwrap(), t2).unwrap();
            prop_assert!(max_abs_diff(&once, &twice) <= 1e-8);
        }
    }

    #[test]
    fn raising_a_score_never_lowers_any_node(seed in 0u64..10_000, t in 0.0f64..2.0, bump in 0.0f64..0.5) {
        let g = random_connected_graph(15, 0.25, seed, 3);
        let seeds = random_seeds(&g, 3, seed);
        let (first, s) = seeds.iter().next().unwrap();
        let raised = SeedSet::new(
            g.node_count(),
            seeds.iter().map(|(i, x)| if i == first { (i, (s + bump).min(1.0)) } else { (i, x) }),
        ).unwrap();
        for op in [Laplacian::Combinatorial, Laplacian::RandomWalk] {
            let a = diffuse(&g, op, &seeds.score_vector(), t).unwrap();
            let b = diffuse(&g, op, &raised.score_vector(), t).unwrap();
            prop_assert!(a.iter().zip(&b).all(|(x, y)| *y >= *x - 1e-15));
        }
    }
}
