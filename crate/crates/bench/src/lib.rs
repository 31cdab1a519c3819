//! Shared inputs for the benchmarks.

use epsmean::{FnSpec, MetricSpace};

/// A uniform grid on `[0, 1]` with `n` points and the identity function on it.
pub fn grid_instance(n: usize) -> (MetricSpace, FnSpec) {
    let space = MetricSpace::uniform_grid(n).expect("n >= 1");
    (space, FnSpec::coordinate(0))
}
