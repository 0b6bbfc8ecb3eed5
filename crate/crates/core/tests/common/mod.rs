#![allow(dead_code)]

use maxclique::Graph;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;

/// Largest clique by enumerating every vertex subset. Only for n <= 20.
pub fn brute_force_omega(g: &Graph) -> usize {
    let n = g.n();
    assert!(n <= 20, "exhaustive oracle limited to 20 vertices");
    let adj: Vec<u32> = (0..n)
        .map(|u| (0..n).filter(|&v| g.adjacent(u, v)).fold(0u32, |m, v| m | (1 << v)))
        .collect();
    let mut best = 0;
    for subset in 0u32..(1u32 << n) {
        let size = subset.count_ones() as usize;
        if size <= best {
            continue;
        }
        let is_clique = (0..n)
            .filter(|&v| subset & (1 << v) != 0)
            .all(|v| subset & !(1 << v) & !adj[v] == 0);
        if is_clique {
            best = size;
        }
    }
    best
}

/// Random graph drawn independently of the library's generator.
pub fn random_graph(n: usize, p: f64, rng: &mut ChaCha20Rng) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if (rng.next_u64() as f64) / (u64::MAX as f64) < p {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

pub fn rng(seed: u64) -> ChaCha20Rng {
    ChaCha20Rng::seed_from_u64(seed)
}

/// Fisher-Yates shuffle of `0..n` followed by truncation to `k`.
pub fn random_subset_order(n: usize, k: usize, rng: &mut ChaCha20Rng) -> Vec<usize> {
    let mut v: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = (rng.next_u64() % (i as u64 + 1)) as usize;
        v.swap(i, j);
    }
    v.truncate(k);
    v
}
