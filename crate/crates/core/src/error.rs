use thiserror::Error;

/// Failure modes shared by every module.
///
/// `Domain` covers violated preconditions on inputs. `Constraint` is
/// reserved for mathematically meaningful failures of a derived quantity
/// (for instance a separation fraction that is not below one).
#[derive(Debug, Clone, PartialEq, Error)]
pub enum LabError {
    #[error("domain error in {op}: {msg}")]
    Domain { op: &'static str, msg: String },
    #[error("constraint violated [{constraint}]: {msg}")]
    Constraint { constraint: &'static str, msg: String },
    #[error("ill-conditioned Gram matrix for a basis of size {basis_size}: {msg}")]
    Conditioning { basis_size: usize, msg: String },
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    #[error("undefined: {0}")]
    Undefined(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, LabError>;

pub(crate) fn domain(op: &'static str, msg: impl Into<String>) -> LabError {
    LabError::Domain { op, msg: msg.into() }
}

pub(crate) fn constraint(constraint: &'static str, msg: impl Into<String>) -> LabError {
    LabError::Constraint { constraint, msg: msg.into() }
}
