use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("edge probability {0} is outside [0, 1]")]
    InvalidProbability(f64),
    #[error("vertex order is not a permutation of 0..{n}")]
    NotAPermutation { n: usize },
}

#[derive(Debug, Error)]
pub enum DimacsError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: duplicate problem line")]
    DuplicateProblemLine { line: usize },
    #[error("line {line}: edge before problem line")]
    EdgeBeforeProblemLine { line: usize },
    #[error("missing `p edge <n> <m>` problem line")]
    MissingProblemLine,
    #[error("line {line}: vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { line: usize, vertex: u64, n: usize },
    #[error("binary DIMACS (.b) instances are not supported; convert to the ASCII edge format")]
    BinaryFormat,
    #[error("reading {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Stream(#[from] std::io::Error),
}

#[derive(Debug, Error)]
pub enum SolverError {
    #[error("target clique size {k} outside 1..={n}")]
    TargetOutOfRange { k: usize, n: usize },
    #[error("time limit expired before the question was decided (best clique so far: {best})")]
    Undecided { best: usize },
    #[error("time limit must be positive")]
    NonPositiveTimeLimit,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Error)]
pub enum ResultsError {
    #[error("repeats must be at least 1")]
    ZeroRepeats,
    #[error("minimum time must be below maximum time")]
    InvalidWindow,
    #[error("duplicate record for ({instance}, {algorithm}, {machine}, repeat {repeat})")]
    DuplicateRecord {
        instance: String,
        algorithm: String,
        machine: String,
        repeat: u32,
    },
    #[error("results schema version {found} is not supported (expected {expected})")]
    VersionMismatch { found: u32, expected: u32 },
    #[error("malformed results file {path}: {message}")]
    Malformed { path: PathBuf, message: String },
    #[error("instance {instance} lacks a {algorithm} result")]
    MissingAlgorithm { instance: String, algorithm: String },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Solver(#[from] SolverError),
}

#[derive(Debug, Error)]
pub enum CalibrationError {
    #[error("workload too fast to calibrate: target time sum is zero")]
    WorkloadTooFast,
    #[error("calibration workloads differ: {0}")]
    WorkloadMismatch(String),
    #[error("drop count {drop_count} must be below workload length {len}")]
    DropCount { drop_count: usize, len: usize },
    #[error("negative or non-finite time {time} for {instance}")]
    InvalidTime { instance: String, time: f64 },
    #[error("scaling factor must be positive and finite")]
    InvalidFactor,
    #[error("instance sets differ: {0}")]
    InstanceMismatch(String),
    #[error("{instance} on {machine} is not a complete run")]
    Incomplete { instance: String, machine: String },
    #[error("malformed profile {path}: {message}")]
    Malformed { path: PathBuf, message: String },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}
