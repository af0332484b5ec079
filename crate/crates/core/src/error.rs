use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid superalgebra spec: {0}")]
    InvalidSpec(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("operands live over different Lie superalgebras")]
    BasisMismatch,

    #[error("[x,x] != 0: roots {first} and {second} do not supercommute")]
    NotSelfCommuting { first: String, second: String },

    #[error("no rank k in 0..={defect} matches dim g_x = {dim}")]
    RankUndetermined { dim: usize, defect: usize },

    #[error("inclusion check failed: {0}")]
    InclusionFailure(String),

    #[error("not an automorphism: {0}")]
    NotAnAutomorphism(String),

    #[error("vector is not a highest-weight vector")]
    NotHighestWeight,

    #[error("weight {0} is not dominant integral")]
    NotDominant(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("module dimension {needed} exceeds cap {cap}")]
    DimCapExceeded { needed: usize, cap: usize },

    #[error("no tensor word within the cap realizes highest weight {0}")]
    Unrealizable(String),

    #[error("End(L) has dimension ({even}, {odd}); expected a 1-dimensional even endomorphism space")]
    NotAbsolutelySimple { even: usize, odd: usize },

    #[error("induced action depends on the representative: {0}")]
    RepresentativeDependence(String),

    #[error("trace constraint system is empty")]
    EmptyConstraints,

    #[error("no splitting found: {0}")]
    SplittingFailed(String),

    #[error("Weyl group of order {0} exceeds the materialization cap")]
    WeylGroupTooLarge(usize),

    #[error("invalid supermodule: {0}")]
    InvalidModule(String),

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("inconsistent values: {0}")]
    Inconsistent(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
