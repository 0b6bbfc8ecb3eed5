//! Greedy sequential colourings that feed the search bound.
//!
//! Both routines colour the candidate vertices in the order given and emit a
//! stack sorted by colour, then by scan position. The vertex-at-a-time and
//! class-at-a-time formulations produce the same output for every input.

use crate::bitset::{BitSetOf, Word};
use crate::graph::Graph;
use crate::ordering::degree_order;

/// Colour-sorted vertex stack. `stack[i]` carries colour `colours[i]`;
/// colours are non-decreasing from bottom (index 0) to top.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ColouredOrder {
    pub stack: Vec<usize>,
    pub colours: Vec<usize>,
}

impl ColouredOrder {
    pub fn len(&self) -> usize {
        self.stack.len()
    }

    pub fn is_empty(&self) -> bool {
        self.stack.is_empty()
    }

    /// Highest colour used, 0 for an empty stack.
    pub fn max_colour(&self) -> usize {
        self.colours.last().copied().unwrap_or(0)
    }

    pub fn colour_of(&self, v: usize) -> Option<usize> {
        self.stack.iter().position(|&u| u == v).map(|i| self.colours[i])
    }

    /// Colour indexed by vertex over `0..n`; 0 marks vertices not stacked.
    pub fn colour_array(&self, n: usize) -> Vec<usize> {
        let mut out = vec![0; n];
        for (&v, &c) in self.stack.iter().zip(&self.colours) {
            out[v] = c;
        }
        out
    }

    /// Proper colouring of the stacked vertices with non-decreasing colours.
    pub fn is_valid_for(&self, g: &Graph) -> bool {
        if self.stack.len() != self.colours.len() || self.colours.windows(2).any(|w| w[0] > w[1]) {
            return false;
        }
        if self.colours.first().is_some_and(|&c| c == 0) {
            return false;
        }
        self.stack.iter().enumerate().all(|(i, &u)| {
            self.stack[i + 1..]
                .iter()
                .zip(&self.colours[i + 1..])
                .all(|(&v, &c)| c != self.colours[i] || !g.adjacent(u, v))
        })
    }

    pub(crate) fn clear(&mut self) {
        self.stack.clear();
        self.colours.clear();
    }
}

/// Reusable colour-class storage so the search does not reallocate per node.
#[derive(Debug, Default)]
pub(crate) struct ClassBuffer {
    classes: Vec<Vec<usize>>,
}

impl ClassBuffer {
    /// Vertex-at-a-time greedy colouring of `candidates` (in scan order).
    pub(crate) fn vertexwise(&mut self, g: &Graph, candidates: &[usize], out: &mut ColouredOrder) {
        out.clear();
        let mut used = 0usize;
        for &v in candidates {
            let row = g.neighbours(v);
            let k = self.classes[..used]
                .iter()
                .position(|class| class.iter().all(|&u| !row.contains(u)))
                .unwrap_or(used);
            if k == used {
                if self.classes.len() == used {
                    self.classes.push(Vec::new());
                }
                used += 1;
            }
            self.classes[k].push(v);
        }
        for (k, class) in self.classes[..used].iter_mut().enumerate() {
            out.stack.extend_from_slice(class);
            out.colours.extend(std::iter::repeat_n(k + 1, class.len()));
            class.clear();
        }
    }
}

/// Assign each vertex the smallest colour absent from its already-coloured
/// neighbours, visiting `candidates` in order.
pub fn colour_sort_vertexwise(g: &Graph, candidates: &[usize]) -> ColouredOrder {
    let mut out = ColouredOrder::default();
    ClassBuffer::default().vertexwise(g, candidates, &mut out);
    out
}

/// Build colour classes one at a time: class `k` takes, in scan order, every
/// still-uncoloured vertex that has no neighbour already in class `k`.
pub fn colour_sort_classwise(g: &Graph, candidates: &[usize]) -> ColouredOrder {
    let mut out = ColouredOrder::default();
    let mut remaining: Vec<usize> = candidates.to_vec();
    let mut class: Vec<usize> = Vec::new();
    let mut colour = 0;
    while !remaining.is_empty() {
        colour += 1;
        class.clear();
        remaining.retain(|&v| {
            let row = g.neighbours(v);
            if class.iter().any(|&u| row.contains(u)) {
                true
            } else {
                class.push(v);
                false
            }
        });
        out.stack.extend_from_slice(&class);
        out.colours.extend(std::iter::repeat_n(colour, class.len()));
    }
    out
}

/// Class-at-a-time colouring over bit strings, scanning in ascending vertex
/// id. `non_adjacent[v]` is the complement of `v`'s neighbourhood.
pub(crate) fn colour_sort_bits<W: Word>(
    candidates: &BitSetOf<W>,
    non_adjacent: &[BitSetOf<W>],
    uncoloured: &mut BitSetOf<W>,
    class: &mut BitSetOf<W>,
    out: &mut ColouredOrder,
) {
    out.clear();
    uncoloured.clone_from(candidates);
    let mut colour = 0;
    while let Some(first) = uncoloured.first() {
        colour += 1;
        class.clone_from(uncoloured);
        let mut word = first / W::BITS;
        while let Some(v) = class.pop_first_from(word) {
            word = v / W::BITS;
            uncoloured.remove(v);
            class.intersect_with(&non_adjacent[v]);
            out.stack.push(v);
            out.colours.push(colour);
        }
    }
}

/// Public entry to the bitset colouring for arbitrary candidate sets; scans
/// members in ascending id.
pub fn colour_sort_bitset<W: Word>(g: &Graph, candidates: &BitSetOf<W>) -> ColouredOrder {
    let n = g.n();
    let non_adjacent: Vec<BitSetOf<W>> = (0..n)
        .map(|v| {
            let mut s = BitSetOf::<W>::full(n);
            for u in g.neighbours(v) {
                s.remove(u);
            }
            s
        })
        .collect();
    let mut out = ColouredOrder::default();
    colour_sort_bits(
        candidates,
        &non_adjacent,
        &mut BitSetOf::new(n),
        &mut BitSetOf::new(n),
        &mut out,
    );
    out
}

/// Colours used by the vertex-at-a-time greedy colouring of the whole graph
/// in degree order; an upper bound on the chromatic number.
pub fn greedy_colour_count(g: &Graph) -> usize {
    colour_sort_vertexwise(g, degree_order(g).as_slice()).max_colour()
}
