use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid modulus {p}^{k}: {reason}")]
    InvalidModulus {
        p: u64,
        k: u32,
        reason: &'static str,
    },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("singular matrix")]
    SingularMatrix,
    #[error("not invertible: {0}")]
    NotInvertible(String),
    #[error("automorphisms do not satisfy phi^2 = psi^2")]
    NotParamedial,
    #[error("component does not match the group kind: {0}")]
    KindMismatch(String),
    #[error("unsupported order {n}: needs {missing}")]
    UnsupportedOrder { n: u64, missing: String },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("{what} of size {size} exceeds the configured bound {limit}")]
    BoundExceeded {
        what: &'static str,
        size: usize,
        limit: usize,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
