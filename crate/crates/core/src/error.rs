use thiserror::Error;

/// Errors raised by the simulation core.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
    #[error("invalid path: {0}")]
    InvalidPath(&'static str),
    #[error("invalid tree: {0}")]
    InvalidTree(&'static str),
    #[error("ball of radius {radius} around vertex {vertex} covers the whole tree")]
    EmptyComplement { vertex: usize, radius: f64 },
    #[error("vertex {0} is out of range")]
    VertexOutOfRange(usize),
    #[error("vertex {0} carries no mass")]
    ZeroMass(usize),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
