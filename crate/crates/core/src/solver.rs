//! Colour-bounded branch-and-bound for maximum clique.
//!
//! A single search skeleton drives both solvers. Each backend supplies the
//! candidate-set representation together with its colouring and set
//! operations:
//!
//! * [`Mcsa`] keeps candidates as an ordered vertex list over the original
//!   graph and colours one vertex at a time.
//! * [`BbmcOf`] renames the graph into degree order, keeps candidates as bit
//!   strings, intersects with a word-wise AND and colours one class at a time.
//!
//! Both start from the same non-increasing degree order, and their colourings
//! agree on every input. The two therefore walk the same search tree and
//! report the same number of `expand` calls.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::bitset::{BitSetOf, Word};
use crate::colouring::{colour_sort_bits, ClassBuffer, ColouredOrder};
use crate::error::{GraphError, SolverError};
use crate::graph::Graph;
use crate::ordering::{degree_order, permute_graph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Mcsa,
    Bbmc,
}

impl Algorithm {
    pub const ALL: [Algorithm; 2] = [Algorithm::Mcsa, Algorithm::Bbmc];

    /// Display name used in tables.
    pub fn label(self) -> &'static str {
        match self {
            Algorithm::Mcsa => "MCSa",
            Algorithm::Bbmc => "BBMC",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "mcsa" => Ok(Algorithm::Mcsa),
            "bbmc" => Ok(Algorithm::Bbmc),
            other => Err(format!("unknown algorithm `{other}` (expected mcsa or bbmc)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    pub algorithm: Algorithm,
    pub time_limit: Option<Duration>,
    /// Stop as soon as a clique of at least this size is found.
    pub target_size: Option<usize>,
    /// Assert at every `expand` entry that all candidates are adjacent to the
    /// whole growing clique. Quadratic per node; meant for tests.
    pub check_invariants: bool,
}

impl SearchConfig {
    pub fn new(algorithm: Algorithm) -> Self {
        Self {
            algorithm,
            time_limit: None,
            target_size: None,
            check_invariants: false,
        }
    }

    pub fn with_time_limit(mut self, limit: Duration) -> Self {
        self.time_limit = Some(limit);
        self
    }

    pub fn with_target(mut self, k: usize) -> Self {
        self.target_size = Some(k);
        self
    }

    pub fn checked(mut self) -> Self {
        self.check_invariants = true;
        self
    }

    pub fn validate(&self) -> Result<(), SolverError> {
        match self.time_limit {
            Some(d) if d.is_zero() => Err(SolverError::NonPositiveTimeLimit),
            _ => Ok(()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Complete,
    Timeout,
    TargetReached,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Complete => "COMPLETE",
            Status::Timeout => "TIMEOUT",
            Status::TargetReached => "TARGET_REACHED",
        })
    }
}

impl FromStr for Status {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "COMPLETE" => Ok(Status::Complete),
            "TIMEOUT" => Ok(Status::Timeout),
            "TARGET_REACHED" => Ok(Status::TargetReached),
            other => Err(format!("unknown status `{other}`")),
        }
    }
}

/// A new champion: its size and the `expand` count when it was recorded.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Improvement {
    pub expand_calls: u64,
    pub size: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    /// Original 0-based vertex ids, ascending.
    pub clique: Vec<usize>,
    pub omega: usize,
    pub expand_calls: u64,
    pub elapsed: Duration,
    pub status: Status,
    pub improvements: Vec<Improvement>,
}

/// Candidate-set representation plus the operations the search needs.
pub trait Backend {
    type Set;

    fn vertex_count(&self) -> usize;
    /// The initial candidate set, in search order.
    fn root(&self) -> Self::Set;
    fn empty_set(&self) -> Self::Set;
    fn colour_sort(&mut self, candidates: &Self::Set, out: &mut ColouredOrder);
    /// `out ← candidates ∩ N(v)`.
    fn restrict(&self, candidates: &Self::Set, v: usize, out: &mut Self::Set);
    fn remove(&self, candidates: &mut Self::Set, v: usize);
    fn is_empty(&self, candidates: &Self::Set) -> bool;
    fn members(&self, candidates: &Self::Set) -> Vec<usize>;
    fn adjacent(&self, u: usize, v: usize) -> bool;
    /// Maps a backend vertex id to the input graph's id.
    fn original(&self, v: usize) -> usize;
}

/// Ordered-list backend over the original graph.
pub struct Mcsa<'g> {
    graph: &'g Graph,
    classes: ClassBuffer,
}

impl<'g> Mcsa<'g> {
    pub fn new(graph: &'g Graph) -> Self {
        Self {
            graph,
            classes: ClassBuffer::default(),
        }
    }
}

impl Backend for Mcsa<'_> {
    type Set = Vec<usize>;

    fn vertex_count(&self) -> usize {
        self.graph.n()
    }

    fn root(&self) -> Vec<usize> {
        degree_order(self.graph).into_vec()
    }

    fn empty_set(&self) -> Vec<usize> {
        Vec::new()
    }

    fn colour_sort(&mut self, candidates: &Vec<usize>, out: &mut ColouredOrder) {
        self.classes.vertexwise(self.graph, candidates, out);
    }

    fn restrict(&self, candidates: &Vec<usize>, v: usize, out: &mut Vec<usize>) {
        let row = self.graph.neighbours(v);
        out.clear();
        out.extend(candidates.iter().copied().filter(|&u| row.contains(u)));
    }

    fn remove(&self, candidates: &mut Vec<usize>, v: usize) {
        if let Some(i) = candidates.iter().position(|&u| u == v) {
            candidates.remove(i);
        }
    }

    fn is_empty(&self, candidates: &Vec<usize>) -> bool {
        candidates.is_empty()
    }

    fn members(&self, candidates: &Vec<usize>) -> Vec<usize> {
        candidates.clone()
    }

    fn adjacent(&self, u: usize, v: usize) -> bool {
        self.graph.adjacent(u, v)
    }

    fn original(&self, v: usize) -> usize {
        v
    }
}

/// Bit-string backend over the degree-ordered renaming of the graph.
pub struct BbmcOf<W: Word> {
    adjacency: Vec<BitSetOf<W>>,
    non_adjacency: Vec<BitSetOf<W>>,
    to_original: Vec<usize>,
    uncoloured: BitSetOf<W>,
    class: BitSetOf<W>,
}

impl<W: Word> BbmcOf<W> {
    pub fn new(graph: &Graph) -> Self {
        let order = degree_order(graph);
        let (renamed, to_original) = permute_graph(graph, &order).expect("degree order is a permutation");
        let n = renamed.n();
        let adjacency: Vec<BitSetOf<W>> = (0..n)
            .map(|v| BitSetOf::from_indices(n, renamed.neighbours(v).iter()))
            .collect();
        let non_adjacency = adjacency
            .iter()
            .map(|row| {
                let mut s = BitSetOf::full(n);
                s.difference_with(row);
                s
            })
            .collect();
        Self {
            adjacency,
            non_adjacency,
            to_original,
            uncoloured: BitSetOf::new(n),
            class: BitSetOf::new(n),
        }
    }

    /// The renamed-id to original-id map.
    pub fn mapping(&self) -> &[usize] {
        &self.to_original
    }
}

impl<W: Word> Backend for BbmcOf<W> {
    type Set = BitSetOf<W>;

    fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    fn root(&self) -> BitSetOf<W> {
        BitSetOf::full(self.vertex_count())
    }

    fn empty_set(&self) -> BitSetOf<W> {
        BitSetOf::new(self.vertex_count())
    }

    fn colour_sort(&mut self, candidates: &BitSetOf<W>, out: &mut ColouredOrder) {
        colour_sort_bits(
            candidates,
            &self.non_adjacency,
            &mut self.uncoloured,
            &mut self.class,
            out,
        );
    }

    #[inline]
    fn restrict(&self, candidates: &BitSetOf<W>, v: usize, out: &mut BitSetOf<W>) {
        out.assign_intersection(candidates, &self.adjacency[v]);
    }

    #[inline]
    fn remove(&self, candidates: &mut BitSetOf<W>, v: usize) {
        candidates.remove(v);
    }

    #[inline]
    fn is_empty(&self, candidates: &BitSetOf<W>) -> bool {
        candidates.is_empty()
    }

    fn members(&self, candidates: &BitSetOf<W>) -> Vec<usize> {
        candidates.iter().collect()
    }

    fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].contains(v)
    }

    fn original(&self, v: usize) -> usize {
        self.to_original[v]
    }
}

struct Search<B: Backend> {
    backend: B,
    clique: Vec<usize>,
    best: Vec<usize>,
    expand_calls: u64,
    deadline: Option<Instant>,
    target: Option<usize>,
    check_invariants: bool,
    stop: Option<Status>,
    improvements: Vec<Improvement>,
    orders: Vec<ColouredOrder>,
    sets: Vec<B::Set>,
}

impl<B: Backend> Search<B> {
    fn expand(&mut self, mut candidates: B::Set) {
        self.expand_calls += 1;
        if self.check_invariants {
            self.assert_candidates_extend_clique(&candidates);
        }

        let mut order = self.orders.pop().unwrap_or_default();
        self.backend.colour_sort(&candidates, &mut order);

        for i in (0..order.len()).rev() {
            if self.deadline.is_some_and(|d| Instant::now() >= d) {
                self.stop = Some(Status::Timeout);
                break;
            }
            let v = order.stack[i];
            if order.colours[i] + self.clique.len() <= self.best.len() {
                break;
            }
            self.clique.push(v);
            let mut next = self.sets.pop().unwrap_or_else(|| self.backend.empty_set());
            self.backend.restrict(&candidates, v, &mut next);
            if self.backend.is_empty(&next) {
                if self.clique.len() > self.best.len() {
                    self.record_champion();
                }
                self.sets.push(next);
            } else {
                self.expand(next);
            }
            self.clique.pop();
            self.backend.remove(&mut candidates, v);
            if self.stop.is_some() {
                break;
            }
        }

        self.orders.push(order);
        self.sets.push(candidates);
    }

    fn record_champion(&mut self) {
        self.best.clone_from(&self.clique);
        self.improvements.push(Improvement {
            expand_calls: self.expand_calls,
            size: self.best.len(),
        });
        if self.target.is_some_and(|k| self.best.len() >= k) {
            self.stop = Some(Status::TargetReached);
        }
    }

    fn assert_candidates_extend_clique(&self, candidates: &B::Set) {
        let members = self.backend.members(candidates);
        assert!(!members.is_empty(), "expand called with an empty candidate set");
        for &p in &members {
            for &c in &self.clique {
                assert!(
                    self.backend.adjacent(p, c),
                    "candidate {p} is not adjacent to clique member {c}"
                );
            }
        }
    }
}

/// Runs the search with an explicit backend.
pub fn solve_with<B: Backend>(backend: B, cfg: &SearchConfig) -> Result<SearchResult, SolverError> {
    cfg.validate()?;
    let start = Instant::now();
    let n = backend.vertex_count();
    let mut search = Search {
        backend,
        clique: Vec::with_capacity(n),
        best: Vec::new(),
        expand_calls: 0,
        deadline: cfg.time_limit.map(|d| start + d),
        target: cfg.target_size,
        check_invariants: cfg.check_invariants,
        stop: None,
        improvements: Vec::new(),
        orders: Vec::new(),
        sets: Vec::new(),
    };
    if n > 0 {
        let root = search.backend.root();
        search.expand(root);
    }
    let mut clique: Vec<usize> = search.best.iter().map(|&v| search.backend.original(v)).collect();
    clique.sort_unstable();
    Ok(SearchResult {
        omega: clique.len(),
        clique,
        expand_calls: search.expand_calls,
        elapsed: start.elapsed(),
        status: search.stop.unwrap_or(Status::Complete),
        improvements: search.improvements,
    })
}

/// Finds a maximum clique with the configured algorithm (64-bit words for
/// BBMC).
pub fn max_clique(g: &Graph, cfg: &SearchConfig) -> Result<SearchResult, SolverError> {
    max_clique_with_word::<u64>(g, cfg)
}

/// As [`max_clique`], choosing the BBMC word type.
pub fn max_clique_with_word<W: Word>(g: &Graph, cfg: &SearchConfig) -> Result<SearchResult, SolverError> {
    cfg.validate()?;
    match cfg.algorithm {
        Algorithm::Mcsa => solve_with(Mcsa::new(g), cfg),
        Algorithm::Bbmc => solve_with(BbmcOf::<W>::new(g), cfg),
    }
}

/// Decides whether `g` has a clique of at least `k` vertices.
///
/// Returns `Err(SolverError::Undecided)` if the time limit expires first.
pub fn has_clique_of_size(g: &Graph, k: usize, cfg: &SearchConfig) -> Result<bool, SolverError> {
    if k == 0 || k > g.n() {
        return Err(SolverError::TargetOutOfRange { k, n: g.n() });
    }
    let cfg = cfg.clone().with_target(k);
    let result = max_clique(g, &cfg)?;
    match result.status {
        Status::TargetReached => Ok(true),
        Status::Complete => Ok(result.omega >= k),
        Status::Timeout => Err(SolverError::Undecided { best: result.omega }),
    }
}

/// Every distinct pair in `c` is adjacent in `g`.
pub fn verify_clique(g: &Graph, c: &[usize]) -> Result<bool, GraphError> {
    for &v in c {
        g.check_vertex(v)?;
    }
    Ok(c.iter()
        .enumerate()
        .all(|(i, &u)| c[i + 1..].iter().all(|&v| u != v && g.adjacent(u, v))))
}
