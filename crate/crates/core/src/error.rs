use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("syntax error in angle token `{token}`: {reason}")]
    Syntax { token: String, reason: String },

    #[error("angle `{0}` lies outside the open interval (0, 2π)")]
    Domain(String),

    #[error("curvature tuple mixes rational-π and radian angles")]
    MixedRepresentation,

    #[error("curvature tuple needs at least 2 angles, got {0}")]
    TooShort(usize),

    #[error("generalized angle `{0}` is not positive or is a multiple of 2π")]
    GeneralizedDomain(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("degenerate angle: e^(iκ) = 1 at position {0}")]
    DegenerateAngle(usize),

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("vector is not a member of P(κ) (relative residual {0:e})")]
    NotMember(f64),

    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("matrix is not Hermitian (symmetry residual {0:e})")]
    NotHermitian(f64),

    #[error("inertia count {0} is odd after halving the real embedding; eigenvalues too close to the tolerance")]
    OddInertia(usize),

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("basis does not belong to the given curvature data")]
    BasisMismatch,

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
