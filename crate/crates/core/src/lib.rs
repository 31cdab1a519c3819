//! Lattice means on finite metric spaces.
//!
//! An ε-lattice is a maximal subset whose points are pairwise at least ε
//! apart. The lower and upper ε-means of a function are the extreme averages
//! of the function over ε-lattices; a function has a mean when the two
//! converge as ε shrinks.

pub mod check;
pub mod error;
pub mod func;
pub mod instances;
pub mod io;
pub mod lattice;
pub mod mean;
pub mod measure;
pub mod oracle;
pub mod search;
pub mod space;
pub mod verify;

pub use check::{CheckReport, Status};
pub use error::{Error, Result};
pub use func::{combine, indicator, FnSpec, Term};
pub use lattice::{
    enumerate_lattices, greedy_lattice, is_dispersion, is_lattice, random_lattice, ConflictGraph,
    Lattice, DEFAULT_CAP,
};
pub use mean::{
    bounds_exact, bounds_heuristic, judge, sample_mean, sweep, MeanBounds, Schedule, SweepParams,
    SweepResult, Verdict,
};
pub use measure::{relative_measure, MeasureResult};
pub use search::{extremal_average, Direction, SearchConfig};
pub use space::{
    diameter, ids, restrict, validate_metric, Domain, MetricSpace, NamedMetric, PointId, Subspace,
};
pub use verify::{VerifyConfig, VerifyReport};
