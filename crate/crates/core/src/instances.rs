//! Reference instances and random instance generators.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::space::{MetricSpace, NamedMetric, PointId};

/// Five collinear points `0, 0.25, 0.5, 0.75, 1` under the euclidean metric.
pub fn e5() -> MetricSpace {
    MetricSpace::from_coords(
        vec![vec![0.0], vec![0.25], vec![0.5], vec![0.75], vec![1.0]],
        NamedMetric::Euclidean,
    )
    .expect("valid coordinates")
}

/// Two interleaved grids `{k/8}` (9 points) and `{k/8 + 1/16}` (8 points).
///
/// Ids run in coordinate order, so the first class is the even ids. For ε in
/// `(1/16, 1/8]` each class is itself a lattice.
pub fn interleaved() -> (MetricSpace, Vec<PointId>) {
    let coords = (0..17).map(|j| vec![j as f64 / 16.0]).collect();
    let space =
        MetricSpace::from_coords(coords, NamedMetric::Euclidean).expect("valid coordinates");
    let first = (0..17).step_by(2).map(PointId).collect();
    (space, first)
}

/// Ids of grid points whose first coordinate lies in `[lo, hi]`.
pub fn interval_ids(space: &MetricSpace, lo: f64, hi: f64) -> Vec<PointId> {
    (0..space.len())
        .map(PointId)
        .filter(|&p| {
            let x = space.coords(p).map_or(f64::NAN, |c| c[0]);
            lo <= x && x <= hi
        })
        .collect()
}

/// A random metric space with `n` points.
///
/// Half the time a point cloud in 1 to 3 dimensions under a random named
/// metric (coordinates sometimes snapped to a coarse lattice so that exact
/// distance ties occur), otherwise a random symmetric matrix repaired into a
/// metric by shortest paths.
pub fn random_space<R: Rng + ?Sized>(rng: &mut R, n: usize) -> MetricSpace {
    if rng.gen_bool(0.5) {
        let dim = rng.gen_range(1..=3);
        let snap = rng.gen_bool(0.3);
        let coords = (0..n)
            .map(|_| {
                (0..dim)
                    .map(|_| {
                        if snap {
                            rng.gen_range(0..=8) as f64 / 8.0
                        } else {
                            rng.gen::<f64>()
                        }
                    })
                    .collect()
            })
            .collect();
        let metric = *[
            NamedMetric::Euclidean,
            NamedMetric::Manhattan,
            NamedMetric::Chebyshev,
        ]
        .choose(rng)
        .expect("nonempty");
        MetricSpace::from_coords(coords, metric).expect("valid coordinates")
    } else {
        MetricSpace::from_matrix(repaired_matrix(rng, n)).expect("valid matrix")
    }
}

/// Random symmetric weights in `[0.1, 1]` closed under shortest paths.
#[allow(clippy::needless_range_loop)]
pub fn repaired_matrix<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<Vec<f64>> {
    let mut d = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let w = rng.gen_range(0.1..=1.0);
            d[i][j] = w;
            d[j][i] = w;
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k] + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    d
}

/// A random ε covering the interesting range of `space`, sometimes exactly a pairwise distance.
pub fn random_eps<R: Rng + ?Sized>(rng: &mut R, space: &MetricSpace) -> f64 {
    let n = space.len();
    if n >= 2 && rng.gen_bool(0.3) {
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n)) % n;
        let d = space.raw(i, j);
        if d > 0.0 {
            return d;
        }
    }
    let diam = crate::space::diameter(space);
    let top = if diam > 0.0 { 1.2 * diam } else { 1.0 };
    rng.gen_range(0.02 * top..=top)
}

/// Random values in `[-1, 1]`, or small integers (to provoke ties).
pub fn random_table<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<f64> {
    if rng.gen_bool(0.25) {
        (0..n).map(|_| rng.gen_range(-2..=2) as f64).collect()
    } else {
        (0..n).map(|_| rng.gen_range(-1.0..=1.0)).collect()
    }
}
