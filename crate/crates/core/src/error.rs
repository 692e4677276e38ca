use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown variable {0:?}")]
    UnknownVariable(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("zero vector field")]
    ZeroField,

    #[error("non-isolated singular locus: common factor {0}")]
    NonIsolated(String),

    #[error("point {0} is not a singular point")]
    NotSingular(String),

    #[error("resultant undefined: both polynomials are constant in {0}")]
    ConstantInVariable(String),

    #[error("blow-up cap of {cap} exceeded at {point}; partial tree: {partial}")]
    CapExceeded {
        cap: usize,
        point: String,
        partial: String,
    },

    #[error("undetermined classification at {0}")]
    Undetermined(String),

    #[error("oracle exhausted at n = {last}: increase oracle range")]
    OracleExhausted { last: u64 },

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("branch is not invariant for the vector field")]
    NotInvariant,

    #[error("restriction vanishes to truncation order {0}: raise the truncation cap")]
    TruncationExhausted(usize),

    #[error("singular point {0} is worse than an ordinary node; supply its delta invariant")]
    NonNodal(String),

    #[error("curve is singular at {0} after resolution")]
    SingularBranch(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
