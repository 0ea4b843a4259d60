use thiserror::Error;

use crate::hyperplane::{HyperplaneId, MeridianId};
use crate::model::VertexId;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("resource limit exceeded: {what} would exceed cap {cap}; reduce the radius")]
    ResourceLimit { what: &'static str, cap: usize },

    #[error("radius {radius} exceeds the configured maximum {max}")]
    RadiusTooLarge { radius: u32, max: u32 },

    #[error("vertex {0} is not in the ball")]
    VertexNotInBall(VertexId),

    #[error("contact of a hyperplane with itself is undefined: {0}")]
    IdenticalHyperplane(HyperplaneId),

    #[error("meridians must be distinct: {0}")]
    EqualMeridian(MeridianId),

    #[error("chain element {index} does not separate the two subcomplexes")]
    ChainNotSeparating { index: usize },

    #[error("invalid contact path: {0}")]
    InvalidPath(String),

    #[error("no rewriting case applies at position {index}: {detail}")]
    CaseExhaustion { index: usize, detail: String },

    #[error("unknown verification suite `{0}`")]
    UnknownSuite(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
