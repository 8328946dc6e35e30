use thiserror::Error;

use crate::graph::Vertex;
use crate::variants::VariantKind;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("edge endpoint {vertex} out of range for a graph on {n} vertices")]
    EndpointOutOfRange { vertex: Vertex, n: usize },
    #[error("self-loop on vertex {0}")]
    SelfLoop(Vertex),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SolveError {
    #[error("graph has an isolated vertex and never contains a total dominating set")]
    Infeasible { kind: VariantKind },
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("probability vector has length {got}, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("probability vector entry {index} is {value}, outside [0, 1]")]
    InvalidProbability { index: usize, value: f64 },
    #[error("seed list is empty")]
    NoSeeds,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GenerateError {
    #[error("{0}")]
    InvalidParameter(String),
    #[error("unit disk sample with seed {seed} is disconnected")]
    Disconnected { seed: u64 },
    #[error(
        "no seed in {tried} attempts produced an average degree within {tolerance} of {target}"
    )]
    DegreeTargetMissed {
        target: f64,
        tolerance: f64,
        tried: u64,
    },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("missing vertex-count header")]
    MissingHeader,
    #[error("line {line}")]
    Graph {
        line: usize,
        #[source]
        source: GraphError,
    },
}

#[derive(Debug, Error)]
pub enum IoError {
    #[error("cannot read {path}")]
    File {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("cannot parse {path}")]
    Parse {
        path: String,
        #[source]
        source: ParseError,
    },
    #[error(transparent)]
    Generate(#[from] GenerateError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Spec(String),
}
