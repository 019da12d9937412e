use core::fmt;

/// Errors raised by configuration validation and the simulation engine.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A configuration field violates its constraint.
    InvalidConfig {
        /// Name of the offending field.
        field: &'static str,
        /// Human readable constraint that was violated.
        constraint: &'static str,
    },
    /// An operation needed at least one alive node.
    NoAliveNodes,
    /// Cluster capacity was requested for zero heads.
    NoHeads,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidConfig { field, constraint } => {
                write!(f, "invalid value for `{field}`: must satisfy {constraint}")
            }
            Error::NoAliveNodes => f.write_str("no alive nodes remain"),
            Error::NoHeads => f.write_str("cluster capacity requires at least one head"),
        }
    }
}

impl core::error::Error for Error {}
