mod common;

use maxclique::graph::{parse_dimacs, RandomSpec};
use maxclique::{generate_random, parse_dimacs_str, read_dimacs_file, write_dimacs, Graph};
use proptest::prelude::*;

/// Edge count of G(100, 0.5) with seed 42 under the documented generator.
const GOLDEN_M_100_05_42: usize = 2476;

#[test]
fn golden_random_instance() {
    let g = generate_random(100, 0.5, 42).unwrap();
    // ±6σ of Binomial(4950, 0.5)
    assert!((2000..=2900).contains(&g.edge_count()));
    assert_eq!(g.edge_count(), GOLDEN_M_100_05_42);
    let s = g.stats();
    assert_eq!(s.density, GOLDEN_M_100_05_42 as f64 / 4950.0);
    assert!(g.is_well_formed());
}

#[test]
fn generator_is_bit_identical_across_runs() {
    for (n, p, seed) in [(50, 0.1, 0), (120, 0.5, 42), (77, 0.9, u64::MAX)] {
        let a = generate_random(n, p, seed).unwrap();
        let b = RandomSpec { n, p, seed }.generate().unwrap();
        assert_eq!(write_dimacs(&a), write_dimacs(&b));
        assert_eq!(a, b);
    }
}

#[test]
fn file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r30.clq");
    let g = generate_random(30, 0.4, 3).unwrap();
    std::fs::write(&path, write_dimacs(&g)).unwrap();
    assert_eq!(read_dimacs_file(&path).unwrap().graph, g);
    assert!(read_dimacs_file(dir.path().join("missing.clq")).is_err());
}

#[test]
fn reads_with_comments_and_blank_lines() {
    let text = "c generated\nc by hand\n\np edge 4 2\n\ne 1 2\ne 3 4\n";
    let p = parse_dimacs(text.as_bytes()).unwrap();
    assert!(p.warnings.is_empty());
    assert_eq!(p.graph.edges().collect::<Vec<_>>(), vec![(0, 1), (2, 3)]);
}

fn arb_graph() -> impl Strategy<Value = Graph> {
    (0usize..40).prop_flat_map(|n| {
        let pairs = if n < 2 { 0 } else { n * (n - 1) / 2 };
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut it = bits.into_iter();
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if it.next().unwrap() {
                        edges.push((u, v));
                    }
                }
            }
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn parse_inverts_write(g in arb_graph()) {
        let text = write_dimacs(&g);
        let back = parse_dimacs_str(&text).unwrap();
        prop_assert!(back.warnings.is_empty());
        prop_assert_eq!(&back.graph, &g);
        prop_assert_eq!(write_dimacs(&back.graph), text);
        prop_assert!(back.graph.is_well_formed());
    }

    #[test]
    fn generated_graphs_are_simple(n in 0usize..60, p in 0.0f64..=1.0, seed in any::<u64>()) {
        let g = generate_random(n, p, seed).unwrap();
        prop_assert!(g.is_well_formed());
        let s = g.stats();
        prop_assert!((0.0..=1.0).contains(&s.density));
        prop_assert!(s.degree_min <= s.degree_max);
    }
}
