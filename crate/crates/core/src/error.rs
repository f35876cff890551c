use thiserror::Error;

/// Errors produced by graph construction, parsing and the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("graph must have at least one vertex")]
    EmptyGraph,

    #[error("vertex index {index} out of range for a graph on {n} vertices")]
    OutOfRange { index: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("bad graph6 header or length: {0}")]
    BadHeader(String),

    #[error("trailing data after graph6 body ({0} extra bytes)")]
    TrailingData(usize),

    #[error("graph order {0} exceeds the supported maximum")]
    UnsupportedOrder(usize),

    #[error("invalid LCF description: {0}")]
    InvalidLcf(String),

    #[error("bad parameters: {0}")]
    BadParameters(String),

    #[error("{routine} did not converge after {iterations} iterations (residual {residual:e})")]
    ConvergenceFailure {
        routine: &'static str,
        iterations: usize,
        residual: f64,
    },

    #[error("eigenvalue clustering at tolerance {tolerance:e} is ambiguous near {value}")]
    AmbiguousClustering { tolerance: f64, value: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("closed-walk count overflows i64 at length {k}, vertex {vertex}")]
    Overflow { k: usize, vertex: usize },

    #[error("moment system is ill-conditioned: {detail} (residual {residual:e})")]
    IllConditioned { residual: f64, detail: String },

    #[error("graph is not regular, so it cannot be vertex-transitive")]
    NotPlausiblyTransitive,
}

impl Error {
    /// True for failures of the numerical routines, as opposed to bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::ConvergenceFailure { .. }
                | Error::AmbiguousClustering { .. }
                | Error::Overflow { .. }
                | Error::IllConditioned { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
