//! Initial vertex ordering and graph renaming.

use crate::error::GraphError;
use crate::graph::{Graph, GraphBuilder};

/// A permutation of `0..n`; position `k` holds the vertex ranked `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexOrder(Vec<usize>);

impl VertexOrder {
    pub fn new(order: Vec<usize>) -> Result<Self, GraphError> {
        let n = order.len();
        let mut seen = vec![false; n];
        for &v in &order {
            if v >= n || std::mem::replace(&mut seen[v], true) {
                return Err(GraphError::NotAPermutation { n });
            }
        }
        Ok(Self(order))
    }

    pub fn identity(n: usize) -> Self {
        Self((0..n).collect())
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }
}

/// Non-increasing degree, ties by ascending vertex id.
pub fn degree_order(g: &Graph) -> VertexOrder {
    let degrees = g.degrees();
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by(|&a, &b| degrees[b].cmp(&degrees[a]).then(a.cmp(&b)));
    VertexOrder(order)
}

/// Renames vertices so new vertex `k` is `order[k]` in `g`.
///
/// Returns the renamed graph and the map from new id to original id. The
/// renamed graph keeps the original 1-based labels.
pub fn permute_graph(g: &Graph, order: &VertexOrder) -> Result<(Graph, Vec<usize>), GraphError> {
    let n = g.n();
    if order.len() != n {
        return Err(GraphError::NotAPermutation { n });
    }
    let ord = order.as_slice();
    let mut position = vec![0usize; n];
    for (k, &v) in ord.iter().enumerate() {
        position[v] = k;
    }
    let mut b = GraphBuilder::new(n);
    for (u, v) in g.edges() {
        b.add_edge(position[u], position[v]);
    }
    let labels = ord.iter().map(|&v| g.label(v)).collect();
    Ok((b.build().with_labels(labels), ord.to_vec()))
}
