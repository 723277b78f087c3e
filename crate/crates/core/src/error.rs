use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("binomial coefficient with negative upper index {0}")]
    NegativeBinomial(i64),

    #[error("invalid parameters: {0}")]
    Domain(String),

    #[error("instance has {size} vertices, above the cap of {cap}")]
    CapExceeded { size: u128, cap: usize },

    #[error("rank {rank} out of range for C({n}, {k}) = {total}")]
    RankOutOfRange { rank: u64, n: usize, k: usize, total: u64 },

    #[error("subsets are not comparable: {0}")]
    Mismatch(String),

    #[error("profile has no negative eigenvalue (edgeless or degenerate graph)")]
    Degenerate,

    #[error("eigenvalues of the distance-1 matrix coincide at indices {0} and {1}")]
    CoincidentEigenvalues(usize, usize),

    #[error("{0} is not a prime power")]
    NotPrimePower(u64),

    #[error("cannot parse rational {0:?}")]
    Parse(String),
}

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
