//! Exact maximum clique search with colour bounds, plus the tooling to
//! benchmark it and to audit cross-machine rescaling of run times.
//!
//! The two solvers, MCSa and BBMC, share one search skeleton and differ only
//! in how candidate sets are stored and coloured; they explore identical
//! trees. The [`bench`] module runs instance grids and produces result
//! tables, and [`calibration`] derives machine-to-machine scaling factors
//! and measures how far rescaled predictions land from measured times.

pub mod bench;
pub mod bitset;
pub mod calibration;
pub mod colouring;
pub mod error;
pub mod graph;
pub mod ordering;
pub mod solver;

pub use bitset::{BitSetOf, Word};
pub use colouring::{
    colour_sort_bitset, colour_sort_classwise, colour_sort_vertexwise, greedy_colour_count, ColouredOrder,
};
pub use error::{CalibrationError, DimacsError, GraphError, ResultsError, SolverError};
pub use graph::{generate_random, parse_dimacs_str, read_dimacs_file, write_dimacs, Graph, GraphStats};
pub use ordering::{degree_order, permute_graph, VertexOrder};
pub use solver::{has_clique_of_size, max_clique, verify_clique, Algorithm, SearchConfig, SearchResult, Status};

/// Bit string over 64-bit words.
pub type BitSet = BitSetOf<u64>;
/// BBMC over 64-bit words.
pub type Bbmc = solver::BbmcOf<u64>;
/// Calibration profile with `f64` seconds.
pub type CalibrationProfile = calibration::CalibrationProfileOf<f64>;
/// Scaling factor as `f64`.
pub type ScalingFactor = calibration::ScalingFactorOf<f64>;
/// Audit report with `f64` times.
pub type AuditReport = calibration::AuditReportOf<f64>;
