use thiserror::Error;

/// Reasons an [`AttributedGraph`](crate::graph::AttributedGraph) or a cost
/// configuration is rejected after it parsed successfully.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ValidationError {
    #[error("duplicate vertex id `{0}`")]
    DuplicateVertex(String),
    #[error("edge {edge}: unknown vertex `{id}`")]
    UnknownVertex { edge: usize, id: String },
    #[error("edge {edge}: endpoint index {index} out of range for {vertices} vertices")]
    BadEndpoint {
        edge: usize,
        index: usize,
        vertices: usize,
    },
    #[error("edge {edge}: self-loop on vertex {vertex}")]
    SelfLoop { edge: usize, vertex: usize },
    #[error("edge {edge}: parallel edge between {from} and {to}")]
    ParallelEdge {
        edge: usize,
        from: usize,
        to: usize,
    },
    #[error("{what}: attribute vector has length {found}, expected {expected}")]
    AttributeLength {
        what: String,
        expected: usize,
        found: usize,
    },
    #[error("{0}: non-finite attribute value")]
    NonFiniteAttribute(String),
    #[error("cost entry `{0}` must be finite and non-negative")]
    NegativeCost(&'static str),
    #[error("cannot compare a directed graph with an undirected one")]
    DirectednessMismatch,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("validation error: {0}")]
    Validation(#[from] ValidationError),
    #[error("instance too large for exhaustive search: {n1} x {n2} vertices, limit {limit}")]
    SizeLimit { n1: usize, n2: usize, limit: usize },
    #[error("unknown solver `{name}`; valid solvers: {valid}")]
    UnknownSolver { name: String, valid: String },
    #[error("infeasible assignment: {0}")]
    InfeasibleAssignment(String),
    #[error("operand index {index} out of range for {what} (size {len})")]
    OperandOutOfRange {
        what: &'static str,
        index: usize,
        len: usize,
    },
    #[error("invalid LSAP input: {0}")]
    Lsap(String),
    #[error("dataset contains no graphs")]
    EmptyDataset,
    #[error("every pair was excluded (no exact solution within the time limit)")]
    AllPairsExcluded,
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) => 2,
            Error::Validation(_) => 3,
            Error::SizeLimit { .. } => 4,
            Error::UnknownSolver { .. } => 5,
            _ => 1,
        }
    }

    pub(crate) fn io(path: impl AsRef<std::path::Path>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.as_ref().display().to_string(),
            source,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
