//! Seeded G(n, p) generation.
//!
//! The stream is ChaCha8 (`rand_chacha::ChaCha8Rng`) keyed with
//! `SeedableRng::seed_from_u64(seed)`. Pairs `{i, j}`, `i < j`, are visited
//! row-major (`i` outer, `j` inner); each draws one `next_u64()` value `x` and
//! becomes an edge iff `x < floor(p * 2^64)`. `p = 1` makes every pair an
//! edge without consulting the threshold. Both the cipher and the seed
//! expansion are fixed by their crates' value-stability guarantees, so the
//! graph for a given `(n, p, seed)` is identical on every platform.
//!
//! Changing anything above changes every generated instance.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{Graph, GraphBuilder};
use crate::error::GraphError;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RandomSpec {
    pub n: usize,
    pub p: f64,
    pub seed: u64,
}

impl RandomSpec {
    pub fn generate(&self) -> Result<Graph, GraphError> {
        generate_random(self.n, self.p, self.seed)
    }

    /// Conventional instance name, e.g. `r100.5-s42`.
    pub fn name(&self) -> String {
        let p = format!("{}", self.p);
        let p = p.strip_prefix("0").unwrap_or(&p);
        format!("r{}{}-s{}", self.n, p, self.seed)
    }
}

pub fn generate_random(n: usize, p: f64, seed: u64) -> Result<Graph, GraphError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(GraphError::InvalidProbability(p));
    }
    let threshold = threshold(p);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut b = GraphBuilder::new(n);
    for i in 0..n {
        for j in i + 1..n {
            let x = rng.next_u64();
            if p == 1.0 || x < threshold {
                b.add_edge(i, j);
            }
        }
    }
    Ok(b.build())
}

fn threshold(p: f64) -> u64 {
    // 2^64 * p saturates to u64::MAX when p = 1, handled by the caller.
    (p * 18_446_744_073_709_551_616.0) as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn extremes() {
        assert_eq!(generate_random(10, 0.0, 1).unwrap().edge_count(), 0);
        let k10 = generate_random(10, 1.0, 1).unwrap();
        assert_eq!(k10.edge_count(), 45);
        assert_eq!(k10, Graph::complete(10));
        assert_eq!(generate_random(0, 0.5, 1).unwrap().n(), 0);
    }

    #[test]
    fn rejects_bad_probability() {
        for p in [-0.1, 1.5, f64::NAN] {
            assert!(matches!(
                generate_random(5, p, 0),
                Err(GraphError::InvalidProbability(_))
            ));
        }
    }

    #[test]
    fn deterministic_and_seed_sensitive() {
        let a = generate_random(60, 0.3, 7).unwrap();
        assert_eq!(a, generate_random(60, 0.3, 7).unwrap());
        assert_ne!(a, generate_random(60, 0.3, 8).unwrap());
        assert!(a.is_well_formed());
    }

    #[test]
    fn spec_name() {
        let s = RandomSpec {
            n: 100,
            p: 0.5,
            seed: 42,
        };
        assert_eq!(s.name(), "r100.5-s42");
    }
}
