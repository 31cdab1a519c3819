//! Brute-force reference for lattices and lattice means.
//!
//! Scans every subset of the domain directly against the distance oracle.
//! Nothing here touches the conflict graph, the enumerator or the search, so
//! agreement with them is independent evidence. Exponential; `n <= 20`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::func::FnSpec;
use crate::lattice::check_eps;
use crate::space::{Domain, PointId};

pub const MAX_POINTS: usize = 20;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OracleResult {
    /// Every lattice, each as sorted ids, in lexicographic order.
    pub all_lattices: Vec<Vec<PointId>>,
    pub averages: Vec<f64>,
    pub lower: f64,
    pub upper: f64,
}

/// Every subset that is an ε-dispersion with no one-point dispersion extension.
pub fn oracle_lattices<D: Domain + ?Sized>(domain: &D, eps: f64) -> Result<Vec<Vec<PointId>>> {
    check_eps(eps)?;
    let pts = domain.members();
    let n = pts.len();
    if n > MAX_POINTS {
        return Err(Error::TooLarge {
            what: "oracle",
            n,
            max: MAX_POINTS,
        });
    }
    let space = domain.space();
    let apart = |a: usize, b: usize| {
        let (i, j) = (pts[a].index(), pts[b].index());
        space.raw(i, j) >= eps && space.raw(j, i) >= eps
    };
    let is_dispersion = |mask: u32| {
        (0..n).all(|a| mask >> a & 1 == 0 || (a + 1..n).all(|b| mask >> b & 1 == 0 || apart(a, b)))
    };
    let mut out = Vec::new();
    for mask in 1u32..(1u32 << n) {
        if !is_dispersion(mask) {
            continue;
        }
        let extendable = (0..n)
            .filter(|&p| mask >> p & 1 == 0)
            .any(|p| is_dispersion(mask | 1 << p));
        if !extendable {
            out.push(
                (0..n)
                    .filter(|&a| mask >> a & 1 == 1)
                    .map(|a| pts[a])
                    .collect(),
            );
        }
    }
    out.sort();
    Ok(out)
}

/// Direct min and max of the average of `f` over [`oracle_lattices`].
pub fn oracle_bounds<D: Domain + ?Sized>(domain: &D, f: &FnSpec, eps: f64) -> Result<OracleResult> {
    let all_lattices = oracle_lattices(domain, eps)?;
    let space = domain.space();
    let averages: Vec<f64> = all_lattices
        .iter()
        .map(|s| {
            let mut sum = 0.0;
            for &p in s {
                sum += f.eval(space, p)?;
            }
            Ok(sum / s.len() as f64)
        })
        .collect::<Result<_>>()?;
    let lower = averages.iter().copied().fold(f64::INFINITY, f64::min);
    let upper = averages.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok(OracleResult {
        all_lattices,
        averages,
        lower,
        upper,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::e5;
    use crate::space::{ids, MetricSpace};

    #[test]
    fn e5_lattices() {
        let s = e5();
        assert_eq!(
            oracle_lattices(&s, 0.3).unwrap(),
            vec![ids([0, 2, 4]), ids([0, 3]), ids([1, 3]), ids([1, 4])]
        );
        assert_eq!(oracle_lattices(&s, 0.2).unwrap(), vec![ids(0..5)]);
        assert_eq!(oracle_lattices(&s, 2.0).unwrap().len(), 5);
    }

    #[test]
    fn e5_bounds() {
        let s = e5();
        let r = oracle_bounds(&s, &FnSpec::coordinate(0), 0.3).unwrap();
        assert_eq!((r.lower, r.upper), (0.375, 0.625));
        assert_eq!(r.averages, vec![0.5, 0.375, 0.5, 0.625]);
        let c = oracle_bounds(&s, &FnSpec::constant(7.0), 0.3).unwrap();
        assert_eq!((c.lower, c.upper), (7.0, 7.0));
        let fine = oracle_bounds(&s, &FnSpec::coordinate(0), 0.1).unwrap();
        assert_eq!((fine.lower, fine.upper), (0.5, 0.5));
    }

    #[test]
    fn refuses_large_domains() {
        let g = MetricSpace::uniform_grid(21).unwrap();
        assert!(matches!(
            oracle_lattices(&g, 0.1),
            Err(Error::TooLarge { .. })
        ));
    }
}
