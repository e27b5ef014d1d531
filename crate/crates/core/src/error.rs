use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("invalid extension degree {0}")]
    InvalidDegree(u32),
    #[error("field of size {0} is beyond the supported range")]
    FieldTooLarge(u64),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("field mismatch")]
    FieldMismatch,
    #[error("Jacobi identity fails on basis triple ({0}, {1}, {2})")]
    Jacobi(usize, usize, usize),
    #[error("invalid representation: {0}")]
    Representation(String),
    #[error("ad(e_{0})^p is not ad of the proposed image")]
    JacobsonRejected(usize),
    #[error("algebra is not restrictable")]
    NotRestrictable,
    #[error("algebra carries no p-operation")]
    Unrestricted,
    #[error("subspace is not {0}")]
    NotClosed(&'static str),
    #[error("class {0} does not support {1}")]
    ClassKind(String, &'static str),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
    #[error("certificate failure: {0}")]
    Certificate(String),
    #[error("unknown catalog key {0}")]
    UnknownKey(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
