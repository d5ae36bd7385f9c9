use thiserror::Error;

use crate::certify::InvariantKind;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Parameters outside the domain of an operation.
    #[error("parameter error: {0}")]
    Parameter(String),

    /// A vertex that is not an r-subset of [n] for the parameters in use.
    #[error("invalid vertex {vertex} for K({n},{r})")]
    InvalidVertex { vertex: String, n: u32, r: u32 },

    #[error("duplicate member {0} in family")]
    DuplicateMember(String),

    /// Enumeration of V(K(n,r)) would exceed the configured vertex ceiling.
    #[error("capacity exceeded: {what} = {requested} is above the ceiling {ceiling}")]
    Capacity {
        what: &'static str,
        requested: u128,
        ceiling: u128,
    },

    /// The invariant does not exist because the minimum degree is too small.
    #[error("{kind} with k = {k} is undefined on K({n},{r}): minimum degree {min_degree} < {required}")]
    Undefined {
        kind: InvariantKind,
        k: u32,
        n: u32,
        r: u32,
        min_degree: u128,
        required: u32,
    },

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn param_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Parameter(msg.into()))
}
