//! Simple undirected graphs stored as one adjacency bit string per vertex.

mod dimacs;
mod random;

pub use dimacs::{parse_dimacs, parse_dimacs_str, read_dimacs_file, write_dimacs, ParsedDimacs};
pub use random::{generate_random, RandomSpec};

use serde::{Deserialize, Serialize};

use crate::error::GraphError;
use crate::BitSet;

/// Immutable simple undirected graph over vertices `0..n`.
///
/// Row `v` holds the neighbourhood of `v`. Rows are symmetric and have a
/// clear diagonal; every constructor upholds both.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    rows: Vec<BitSet>,
    edges: usize,
    /// Original 1-based labels, when they differ from `v + 1`.
    labels: Option<Vec<usize>>,
}

impl Graph {
    /// Graph with `n` vertices and no edges.
    pub fn edgeless(n: usize) -> Self {
        GraphBuilder::new(n).build()
    }

    pub fn complete(n: usize) -> Self {
        let mut b = GraphBuilder::new(n);
        for u in 0..n {
            for v in u + 1..n {
                b.add_edge(u, v);
            }
        }
        b.build()
    }

    /// Builds from 0-based edge pairs. Self-loops and repeats are dropped.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut b = GraphBuilder::new(n);
        for (u, v) in edges {
            b.try_add_edge(u, v)?;
        }
        Ok(b.build())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    #[inline]
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    /// Neighbourhood of `v` as a bit string of length `n`.
    #[inline]
    pub fn neighbours(&self, v: usize) -> &BitSet {
        &self.rows[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.rows.iter().map(BitSet::len).collect()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(u, row)| row.iter().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    /// 1-based label reported for internal vertex `v`.
    pub fn label(&self, v: usize) -> usize {
        match &self.labels {
            Some(l) => l[v],
            None => v + 1,
        }
    }

    pub fn has_custom_labels(&self) -> bool {
        self.labels.is_some()
    }

    pub(crate) fn with_labels(mut self, labels: Vec<usize>) -> Self {
        debug_assert_eq!(labels.len(), self.n());
        let identity = labels.iter().enumerate().all(|(i, &l)| l == i + 1);
        self.labels = if identity { None } else { Some(labels) };
        self
    }

    pub fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v < self.n() {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange { vertex: v, n: self.n() })
        }
    }

    pub fn stats(&self) -> GraphStats {
        let n = self.n();
        let degrees = self.degrees();
        let density = if n < 2 {
            0.0
        } else {
            2.0 * self.edges as f64 / (n as f64 * (n as f64 - 1.0))
        };
        GraphStats {
            n,
            m: self.edges,
            density,
            degree_min: degrees.iter().copied().min().unwrap_or(0),
            degree_max: degrees.iter().copied().max().unwrap_or(0),
        }
    }

    /// Symmetry, irreflexivity and cached edge count all hold.
    pub fn is_well_formed(&self) -> bool {
        let n = self.n();
        let mut pop = 0;
        for (u, row) in self.rows.iter().enumerate() {
            if row.capacity() != n || row.contains(u) {
                return false;
            }
            for v in row {
                if !self.rows[v].contains(u) {
                    return false;
                }
            }
            pop += row.len();
        }
        pop == 2 * self.edges
    }

    /// Graph induced on `vertices`, renumbered `0..vertices.len()` in the
    /// given order.
    pub fn induced(&self, vertices: &[usize]) -> Self {
        let mut b = GraphBuilder::new(vertices.len());
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.adjacent(u, v) {
                    b.add_edge(i, j);
                }
            }
        }
        b.build()
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("m", &self.edges)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

/// Accumulates edges and produces a [`Graph`].
#[derive(Debug, Clone)]
pub struct GraphBuilder {
    rows: Vec<BitSet>,
}

impl GraphBuilder {
    pub fn new(n: usize) -> Self {
        Self {
            rows: vec![BitSet::new(n); n],
        }
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    /// Adds `{u, v}`; loops are ignored. Panics on out-of-range ids.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        if u != v {
            self.rows[u].insert(v);
            self.rows[v].insert(u);
        }
    }

    pub fn try_add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        let n = self.n();
        for x in [u, v] {
            if x >= n {
                return Err(GraphError::VertexOutOfRange { vertex: x, n });
            }
        }
        self.add_edge(u, v);
        Ok(())
    }

    pub fn build(self) -> Graph {
        let pop: usize = self.rows.iter().map(BitSet::len).sum();
        Graph {
            rows: self.rows,
            edges: pop / 2,
            labels: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GraphStats {
    pub n: usize,
    pub m: usize,
    pub density: f64,
    pub degree_min: usize,
    pub degree_max: usize,
}
