mod common;

use std::time::Duration;

use common::{brute_force_omega, random_graph, rng};
use maxclique::solver::{max_clique_with_word, solve_with, Backend, Mcsa};
use maxclique::{
    generate_random, has_clique_of_size, max_clique, verify_clique, Algorithm, Bbmc, Graph, SearchConfig, SolverError,
    Status,
};
use rand_chacha::rand_core::RngCore;

fn solve(g: &Graph, a: Algorithm) -> maxclique::SearchResult {
    max_clique(g, &SearchConfig::new(a).checked()).unwrap()
}

#[test]
fn matches_exhaustive_oracle() {
    let mut r = rng(2024);
    let mut checked = 0;
    for n in 5..=14 {
        for p in [0.2, 0.5, 0.8] {
            for _ in 0..7 {
                let g = random_graph(n, p, &mut r);
                let omega = brute_force_omega(&g);
                let [m, b] = Algorithm::ALL.map(|a| solve(&g, a));
                for res in [&m, &b] {
                    assert_eq!(res.omega, omega, "n={n} p={p} {g:?}");
                    assert_eq!(res.clique.len(), omega);
                    assert!(verify_clique(&g, &res.clique).unwrap());
                    assert_eq!(res.status, Status::Complete);
                }
                assert_eq!(m.expand_calls, b.expand_calls, "n={n} p={p} {g:?}");
                checked += 1;
            }
        }
    }
    assert!(checked >= 200);
}

#[test]
fn backends_and_word_widths_agree_on_effort() {
    for (n, p, seed) in [(60, 0.5, 1), (90, 0.3, 2), (70, 0.8, 3), (130, 0.6, 4), (200, 0.5, 1)] {
        let g = generate_random(n, p, seed).unwrap();
        let cfg = |a| SearchConfig::new(a);
        let m = max_clique(&g, &cfg(Algorithm::Mcsa)).unwrap();
        let runs = [
            max_clique_with_word::<u8>(&g, &cfg(Algorithm::Bbmc)).unwrap(),
            max_clique_with_word::<u16>(&g, &cfg(Algorithm::Bbmc)).unwrap(),
            max_clique_with_word::<u32>(&g, &cfg(Algorithm::Bbmc)).unwrap(),
            max_clique_with_word::<u64>(&g, &cfg(Algorithm::Bbmc)).unwrap(),
            max_clique_with_word::<u128>(&g, &cfg(Algorithm::Bbmc)).unwrap(),
        ];
        for b in &runs {
            assert_eq!((b.omega, b.expand_calls), (m.omega, m.expand_calls), "r{n}/{p}/{seed}");
            assert!(verify_clique(&g, &b.clique).unwrap());
        }
    }
}

#[test]
fn known_clique_numbers() {
    // C5 has omega 2, the Petersen graph too, K4 + isolated vertex 4.
    let c5 = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
    let outer = (0..5).map(|i| (i, (i + 1) % 5));
    let spokes = (0..5).map(|i| (i, i + 5));
    let inner = (0..5).map(|i| (i + 5, (i + 2) % 5 + 5));
    let petersen = Graph::from_edges(10, outer.chain(spokes).chain(inner)).unwrap();
    for a in Algorithm::ALL {
        assert_eq!(solve(&c5, a).omega, 2);
        assert_eq!(solve(&petersen, a).omega, 2);
        assert_eq!(solve(&Graph::complete(4), a).omega, 4);
        assert_eq!(solve(&Graph::edgeless(1), a).omega, 1);
        assert_eq!(solve(&Graph::edgeless(0), a).omega, 0);
    }
}

#[test]
fn restrict_is_intersection_with_neighbourhood() {
    let mut r = rng(99);
    for _ in 0..40 {
        let g = random_graph(70, 0.5, &mut r);
        let mcsa = Mcsa::new(&g);
        let bbmc = Bbmc::new(&g);
        let map = bbmc.mapping().to_vec();
        let mp = mcsa.root();
        let bp = bbmc.root();
        let v = (r.next_u64() % 70) as usize;
        let mut mo = mcsa.empty_set();
        mcsa.restrict(&mp, v, &mut mo);
        let renamed_v = map.iter().position(|&o| o == v).unwrap();
        let mut bo = bbmc.empty_set();
        bbmc.restrict(&bp, renamed_v, &mut bo);
        let mut a: Vec<usize> = mo.clone();
        let mut b: Vec<usize> = bbmc.members(&bo).into_iter().map(|u| map[u]).collect();
        a.sort_unstable();
        b.sort_unstable();
        let expect: Vec<usize> = g.neighbours(v).iter().collect();
        assert_eq!(a, expect);
        assert_eq!(b, expect);
        // order of the MCSa candidate list is inherited from the parent
        let pos = |u: &usize| mp.iter().position(|x| x == u).unwrap();
        assert!(mo.windows(2).all(|w| pos(&w[0]) < pos(&w[1])));
    }
}

#[test]
fn deterministic_results() {
    let g = generate_random(120, 0.6, 8).unwrap();
    for a in Algorithm::ALL {
        let x = solve(&g, a);
        let y = solve(&g, a);
        assert_eq!(
            (x.clique, x.expand_calls, x.improvements),
            (y.clique, y.expand_calls, y.improvements)
        );
    }
}

#[test]
fn improvements_strictly_grow() {
    let g = generate_random(150, 0.7, 12).unwrap();
    for a in Algorithm::ALL {
        let res = solve(&g, a);
        assert!(!res.improvements.is_empty());
        for w in res.improvements.windows(2) {
            assert!(w[0].size < w[1].size);
            assert!(w[0].expand_calls <= w[1].expand_calls);
        }
        assert_eq!(res.improvements.last().unwrap().size, res.omega);
    }
}

#[test]
fn timeout_keeps_best_so_far() {
    let g = generate_random(400, 0.9, 1).unwrap();
    for a in Algorithm::ALL {
        let cfg = SearchConfig::new(a).with_time_limit(Duration::from_millis(30));
        let res = max_clique(&g, &cfg).unwrap();
        assert_eq!(res.status, Status::Timeout);
        assert!(res.omega > 0);
        assert!(verify_clique(&g, &res.clique).unwrap());
        assert!(res.elapsed < Duration::from_secs(2));

        let undecided = has_clique_of_size(&g, 400, &cfg).unwrap_err();
        assert!(matches!(undecided, SolverError::Undecided { .. }));
    }
}

#[test]
fn decision_variant() {
    let mut r = rng(31);
    for _ in 0..30 {
        let g = random_graph(13, 0.6, &mut r);
        let omega = brute_force_omega(&g);
        for k in 1..=13 {
            let got = has_clique_of_size(&g, k, &SearchConfig::new(Algorithm::Bbmc)).unwrap();
            assert_eq!(got, k <= omega, "k={k} omega={omega}");
        }
    }
    let g = Graph::complete(3);
    assert!(matches!(
        has_clique_of_size(&g, 0, &SearchConfig::new(Algorithm::Mcsa)),
        Err(SolverError::TargetOutOfRange { .. })
    ));
    assert!(has_clique_of_size(&g, 4, &SearchConfig::new(Algorithm::Mcsa)).is_err());
}

#[test]
fn target_stops_early() {
    let g = generate_random(120, 0.9, 5).unwrap();
    let full = solve(&g, Algorithm::Bbmc);
    let cfg = SearchConfig::new(Algorithm::Bbmc).with_target(full.omega / 2);
    let early = max_clique(&g, &cfg).unwrap();
    assert_eq!(early.status, Status::TargetReached);
    assert!(early.omega >= full.omega / 2);
    assert!(early.expand_calls < full.expand_calls);
}

#[test]
fn verify_clique_on_random_sets() {
    let mut r = rng(77);
    for _ in 0..100 {
        let g = random_graph(12, 0.5, &mut r);
        let mask = r.next_u64() as u32 & 0xfff;
        let set: Vec<usize> = (0..12).filter(|v| mask & (1 << v) != 0).collect();
        let expect = set.iter().all(|&u| set.iter().all(|&v| u == v || g.adjacent(u, v)));
        assert_eq!(verify_clique(&g, &set).unwrap(), expect);
    }
    let g = Graph::complete(3);
    assert!(!verify_clique(&g, &[0, 0]).unwrap());
    assert!(verify_clique(&g, &[0, 3]).is_err());
    assert!(verify_clique(&g, &[]).unwrap());
}

#[test]
fn solve_with_explicit_backend() {
    let g = generate_random(80, 0.5, 3).unwrap();
    let cfg = SearchConfig::new(Algorithm::Mcsa);
    let a = solve_with(Mcsa::new(&g), &cfg).unwrap();
    let b = solve_with(Bbmc::new(&g), &cfg).unwrap();
    assert_eq!((a.omega, a.expand_calls), (b.omega, b.expand_calls));
}
