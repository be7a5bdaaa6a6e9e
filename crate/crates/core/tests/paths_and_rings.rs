mod common;

use common::*;
use genepu::nedbit::{netring, netshort, ring_partition};
use genepu::{Graph, SeedSet};
use proptest::prelude::*;

#[test]
fn netshort_matches_floyd_warshall() {
    for case in 0..10u64 {
        let g = random_connected_graph(60, 0.08, case, 10);
        let seeds = random_seeds(&g, 6, case);
        for alpha in [0.5, 1.0] {
            let ns = netshort(&g, &seeds, alpha).unwrap();
            let oracle = netshort_oracle(&g, &seeds, alpha);
            assert!(max_abs_diff(&ns, &oracle) <= 1e-12, "case {case}");
        }
    }
}

#[test]
fn path_example() {
    let g = Graph::from_edges(&[("s", "a"), ("a", "b")]).unwrap();
    let seeds = SeedSet::new(3, [(0, 0.7)]).unwrap();
    let rp = ring_partition(&g, &seeds).unwrap();
    let r = netring(&g, &seeds, &rp, 0.5).unwrap();
    assert_eq!(r, vec![0.5, 1.75, 2.75]);
}

fn check_rings(g: &Graph, seeds: &SeedSet) -> Result<(), TestCaseError> {
    let rp = ring_partition(g, seeds).unwrap();
    prop_assert_eq!(&rp.rings[0], &seeds.members().to_vec());
    let mut seen = vec![false; g.node_count()];
    for (l, ring) in rp.rings.iter().enumerate() {
        for &i in ring {
            prop_assert!(!seen[i]);
            seen[i] = true;
            prop_assert_eq!(rp.level[i], l);
            if l > 0 {
                prop_assert!(g.neighbors(i).iter().any(|&j| rp.level[j] + 1 == l));
            }
        }
    }
    prop_assert!(seen.iter().all(|&s| s));
    let r = netring(g, seeds, &rp, 0.5).unwrap();
    for i in 0..g.node_count() {
        if !seeds.contains(i) {
            prop_assert!(r[i] >= rp.level[i] as f64);
        }
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn ring_invariants(seed in 0u64..100_000, n in 5usize..60, k in 1usize..6) {
        let g = random_connected_graph(n, 0.12, seed, 3);
        let seeds = random_seeds(&g, k, seed ^ 0xabc);
        check_rings(&g, &seeds)?;
    }

    #[test]
    fn netring_is_permutation_equivariant(seed in 0u64..100_000, k in 1usize..5) {
        let g = random_connected_graph(30, 0.15, seed, 3);
        let seeds = random_seeds(&g, k, seed);
        let (h, perm) = permuted(&g, seed);
        let moved = SeedSet::new(h.node_count(), seeds.iter().map(|(i, s)| (perm[i], s))).unwrap();
        let a = netring(&g, &seeds, &ring_partition(&g, &seeds).unwrap(), 0.5).unwrap();
        let b = netring(&h, &moved, &ring_partition(&h, &moved).unwrap(), 0.5).unwrap();
        for i in 0..g.node_count() {
            // neighbor sums may be accumulated in a different order
            prop_assert!((a[i] - b[perm[i]]).abs() <= 1e-12);
        }
    }

    #[test]
    fn netshort_is_permutation_equivariant(seed in 0u64..100_000) {
        let g = random_connected_graph(25, 0.15, seed, 3);
        let seeds = random_seeds(&g, 3, seed);
        let (h, perm) = permuted(&g, seed);
        let moved = SeedSet::new(h.node_count(), seeds.iter().map(|(i, s)| (perm[i], s))).unwrap();
        let a = netshort(&g, &seeds, 0.5).unwrap();
        let b = netshort(&h, &moved, 0.5).unwrap();
        for i in 0..g.node_count() {
            prop_assert!((a[i] - b[perm[i]]).abs() <= 1e-12);
        }
    }
}
