use thiserror::Error;

use crate::space::PointId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("space must contain at least one point")]
    EmptySpace,
    #[error("point {index} has dimension {found}, expected {expected}")]
    DimensionMismatch {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("distance matrix is not square: row {row} has {found} entries, expected {expected}")]
    NonSquareMatrix {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("negative distance {value} at ({i}, {j})")]
    NegativeDistance { i: usize, j: usize, value: f64 },
    #[error("non-finite value {value} at ({i}, {j})")]
    NonFinite { i: usize, j: usize, value: f64 },
    #[error("a named metric needs coordinates for every point")]
    MissingCoordinates,
    #[error("point ids must be 0..n in order; entry {position} has id {id}")]
    BadPointId { position: usize, id: usize },
    #[error("point id {0} is out of range")]
    ForeignId(PointId),
    #[error("member set is empty")]
    EmptyMembers,
    #[error("epsilon must be positive and finite, got {0}")]
    InvalidEps(f64),
    #[error("order is not a permutation of the domain's points")]
    NotAPermutation,
    #[error("table has {found} values, space has {expected} points")]
    TableSize { expected: usize, found: usize },
    #[error("coordinate axis {axis} out of range for dimension {dim}")]
    AxisOutOfRange { axis: usize, dim: usize },
    #[error("function has no coordinates to read on this space")]
    NoCoordinates,
    #[error("linear combination has no terms")]
    EmptyCombination,
    #[error("function value at {0} is not finite")]
    NonFiniteValue(PointId),
    #[error("lattice count exceeded cap {cap}")]
    CapExceeded { cap: usize },
    #[error("invalid schedule: {0}")]
    InvalidSchedule(String),
    #[error("invalid search configuration: {0}")]
    InvalidConfig(String),
    #[error("set is not contained in its superset: {0} is missing")]
    NotSubset(PointId),
    #[error("parts are not pairwise disjoint: {0} repeats")]
    NotDisjoint(PointId),
    #[error("{what} requires n <= {max}, got {n}")]
    TooLarge {
        what: &'static str,
        n: usize,
        max: usize,
    },
    #[error("malformed document: {0}")]
    Parse(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
