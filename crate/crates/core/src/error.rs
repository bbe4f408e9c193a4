use alloc::string::String;
use num_bigint::BigUint;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// An enumeration or table would exceed its budget.
    #[error("{what}: requires {required} but the budget is {budget}")]
    Resource {
        what: &'static str,
        required: BigUint,
        budget: u64,
    },

    /// A fixed-width accumulator would have wrapped.
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    /// Two exact routes that must agree did not.
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn is_resource(&self) -> bool {
        matches!(self, Error::Resource { .. } | Error::Overflow(_))
    }
}
