use thiserror::Error;

/// Everything that can go wrong while building or cutting an instance.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("graph is not a tree")]
    NotATree,
    #[error("graph is not a forest")]
    NotAForest,
    #[error("vertex sets do not partition the vertex set: {0}")]
    NotAPartition(String),
    #[error("vertex sequence is not a path of the tree")]
    PathNotInTree,
    #[error("m = {m} is outside the admissible range [{lo}, {hi}]")]
    MOutOfRange { m: usize, lo: usize, hi: usize },
    #[error("k = {0} is out of range (need k >= 2)")]
    KOutOfRange(usize),
    #[error("k = {0} is not a power of two")]
    KNotPowerOfTwo(usize),
    #[error("part sizes sum to {got}, expected {expected}")]
    SizesDontSum { got: usize, expected: usize },
    #[error("tree decomposition violates {0}")]
    InvalidDecomposition(TdViolation),
    #[error("tree decomposition is redundant: path node {0} has no vertex of its own")]
    RedundantDecomposition(usize),
    #[error("decomposition width {width} exceeds the configured limit {limit}")]
    WidthTooLarge { width: usize, limit: usize },
    #[error("instance too large for exhaustive search: n = {n}, limit {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("memory guard tripped: need about {needed_mb} MB, limit {limit_mb} MB")]
    MemoryLimit { needed_mb: usize, limit_mb: usize },
    #[error("bad generator parameters: {0}")]
    BadParameters(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

/// Which tree-decomposition condition failed, with a witness. Vertex and node
/// ids are 1-based, as in the file formats.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TdViolation {
    NotATree,
    Empty,
    VertexOutOfRange { node: usize, vertex: usize },
    T1 { vertex: usize },
    T2 { u: usize, v: usize },
    T3 { vertex: usize, i: usize, j: usize, h: usize },
}

impl std::fmt::Display for TdViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TdViolation::NotATree => write!(f, "structure: decomposition graph is not a tree"),
            TdViolation::Empty => write!(f, "structure: decomposition has no nodes"),
            TdViolation::VertexOutOfRange { node, vertex } => {
                write!(f, "structure: bag {node} contains unknown vertex {vertex}")
            }
            TdViolation::T1 { vertex } => write!(f, "T1: vertex {vertex} is in no bag"),
            TdViolation::T2 { u, v } => write!(f, "T2: edge {{{u},{v}}} is in no bag"),
            TdViolation::T3 { vertex, i, j, h } => write!(
                f,
                "T3: vertex {vertex} is in bags {i} and {j} but not in bag {h} on the path between them"
            ),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
