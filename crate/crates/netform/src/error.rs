//! Crate-wide error type.

use thiserror::Error;

/// Everything that can go wrong while building instances or running analyses.
///
/// Numeric payloads are carried as `f64` regardless of the scalar the caller
/// instantiated, so the error type stays non-generic.
#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex count {0} out of range (1..={max})", max = crate::model::MAX_VERTICES)]
    VertexCountOutOfRange(u32),
    #[error("edge {{{i},{j}}} has an endpoint outside 0..{vertex_count}")]
    VertexOutOfRange { i: u32, j: u32, vertex_count: u32 },
    #[error("self-loop at vertex {0}")]
    SelfLoop(u32),
    #[error("duplicate edge {{{0},{1}}}")]
    DuplicateEdge(u32, u32),
    #[error("initial weight on edge {{{0},{1}}} must be strictly positive")]
    NonPositiveInitWeight(u32, u32),
    #[error("affinity on edge {{{0},{1}}} must be nonnegative and finite")]
    InvalidAffinity(u32, u32),
    #[error("degenerate game: no edge has a_ij * p_ij > 0, nothing can ever happen")]
    DegenerateGame,
    #[error("nature probabilities sum to {sum:?} instead of 1 (tolerance {tol:?})")]
    ProbabilityNotNormalized { sum: f64, tol: f64 },
    #[error("nature probability {0} is negative or not finite")]
    InvalidProbability(f64),
    #[error("nature subset mentions a vertex outside 0..{vertex_count}")]
    AtomOutOfRange { vertex_count: u32 },
    #[error("all weights are zero; cannot normalize")]
    AllWeightsZero,
    #[error("S1 and S2 do not partition the vertex set")]
    NotAPartition,
    #[error("unknown edge {{{0},{1}}}")]
    UnknownEdge(u32, u32),
    #[error("invalid simplex point: {0}")]
    InvalidPoint(String),
    #[error("boundary point: vertex {0} has zero occupation on its positively weighted edges")]
    BoundaryPoint(u32),
    #[error("ODE step size too large: renormalization drift {drift:e} exceeds {limit:e}")]
    StepSizeTooLarge { drift: f64, limit: f64 },
    #[error("invalid ODE start: {0}")]
    InvalidStart(String),
    #[error("subgraph does not satisfy property P: {0}")]
    PropertyPViolated(String),
    #[error("satellite split weights must be strictly positive and match the subgraph")]
    NonpositiveSplit,
    #[error("not an equilibrium: ordered |F|_1 = {residual:e} exceeds tolerance {tol:e}")]
    NotAnEquilibrium { residual: f64, tol: f64 },
    #[error("eigenvalue iteration did not converge")]
    NoConvergence,
    #[error("instance too large for exhaustive enumeration: {0}")]
    TooLarge(String),
    #[error("trajectory window too short: {0}")]
    WindowTooShort(String),
    #[error("boundary-exponent analysis needs a star game with full nature: {0}")]
    NotStarGame(String),
    #[error("campaign configuration invalid: {0}")]
    InvalidCampaign(String),
}

pub type Result<T> = std::result::Result<T, Error>;
