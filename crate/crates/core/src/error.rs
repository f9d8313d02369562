use alloc::string::String;

use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge {edge} is a tadpole")]
    Tadpole { edge: usize },
    #[error("edge {edge} references a vertex outside 0..{vertices}")]
    VertexOutOfRange { edge: usize, vertices: usize },
    #[error("graph has {0} vertices, more than supported")]
    TooManyVertices(usize),
    #[error("graph is not connected")]
    Disconnected,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("parse error at byte {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: &'static str,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("{family} does not allow {what}")]
    Foreign { family: &'static str, what: &'static str },
    #[error("graph is not a generator of {0}")]
    NotGenerator(&'static str),
    #[error("candidate budget of {budget} exceeded after {done} of {total} skeletons ({basis} generators kept)")]
    Budget { budget: u64, done: usize, total: usize, basis: usize },
    #[error("term {term} produced by {op} is not a basis element of {family}")]
    Closure { op: &'static str, family: &'static str, term: String },
    #[error("map {map} cannot be applied to {family}")]
    IncompatibleMap { map: &'static str, family: &'static str },
    #[error("{op} is only defined for {allowed}")]
    Unsupported { op: &'static str, allowed: &'static str },
    #[error("prime {0} divides a denominator")]
    Characteristic(u32),
    #[error("site {0} is not valid for this operation")]
    BadSite(usize),
}

pub type Result<T> = core::result::Result<T, Error>;
