//! Epsilon-dispersions and epsilon-lattices of a finite domain.
//!
//! A subset is an ε-dispersion when all pairwise distances are at least ε,
//! and an ε-lattice when it is a dispersion that no further domain point can
//! join. Both are phrased through the [`ConflictGraph`], which links every
//! pair of domain points closer than ε: dispersions are its independent sets
//! and lattices its maximal independent sets.

use std::ops::ControlFlow;

use fixedbitset::FixedBitSet;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::space::{Domain, MetricSpace, PointId};

/// Default ceiling on the number of lattices an exact enumeration may visit.
pub const DEFAULT_CAP: usize = 1_000_000;

pub(crate) fn check_eps(eps: f64) -> Result<()> {
    if eps.is_finite() && eps > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidEps(eps))
    }
}

/// Both orientations are consulted so asymmetric matrices still give a symmetric graph.
#[inline]
fn conflicts(space: &MetricSpace, i: PointId, j: PointId, threshold: f64) -> bool {
    space.raw(i.0, j.0) < threshold || space.raw(j.0, i.0) < threshold
}

/// One ε-lattice: sorted member ids plus the ε it was built for.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Lattice {
    pub members: Vec<PointId>,
    pub eps: f64,
}

impl Lattice {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

fn check_subset<D: Domain + ?Sized>(domain: &D, subset: &[PointId]) -> Result<()> {
    match subset.iter().find(|&&id| !domain.contains(id)) {
        Some(&bad) => Err(Error::ForeignId(bad)),
        None => Ok(()),
    }
}

pub fn is_dispersion<D: Domain + ?Sized>(domain: &D, subset: &[PointId], eps: f64) -> Result<bool> {
    check_eps(eps)?;
    check_subset(domain, subset)?;
    let space = domain.space();
    for (a, &i) in subset.iter().enumerate() {
        for &j in &subset[a + 1..] {
            if i == j || conflicts(space, i, j, eps) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// True iff `subset` is a dispersion that admits no one-point extension.
///
/// Checking single points suffices: a superset of a non-dispersion is never
/// a dispersion.
pub fn is_lattice<D: Domain + ?Sized>(domain: &D, subset: &[PointId], eps: f64) -> Result<bool> {
    if !is_dispersion(domain, subset, eps)? {
        return Ok(false);
    }
    let space = domain.space();
    let extendable = domain
        .members()
        .iter()
        .filter(|p| !subset.contains(p))
        .any(|&p| subset.iter().all(|&s| !conflicts(space, p, s, eps)));
    Ok(!extendable)
}

/// Graph on the domain's points with an edge wherever the distance is below ε.
///
/// Vertices are local indices into [`ConflictGraph::members`], which is sorted,
/// so ascending local order is ascending id order.
#[derive(Clone, Debug)]
pub struct ConflictGraph {
    eps: f64,
    members: Vec<PointId>,
    adj: Vec<Vec<usize>>,
    closed: Vec<FixedBitSet>,
}

impl ConflictGraph {
    pub fn new<D: Domain + ?Sized>(domain: &D, eps: f64) -> Result<Self> {
        Self::with_tolerance(domain, eps, 0.0)
    }

    /// Like [`ConflictGraph::new`] but pairs closer than `eps + tie_tolerance` conflict.
    pub fn with_tolerance<D: Domain + ?Sized>(
        domain: &D,
        eps: f64,
        tie_tolerance: f64,
    ) -> Result<Self> {
        check_eps(eps)?;
        if !(tie_tolerance >= 0.0 && tie_tolerance.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "tie tolerance must be nonnegative, got {tie_tolerance}"
            )));
        }
        let threshold = eps + tie_tolerance;
        let space = domain.space();
        let members = domain.members().to_vec();
        let m = members.len();
        let mut adj = vec![Vec::new(); m];
        let mut closed: Vec<FixedBitSet> = (0..m)
            .map(|v| {
                let mut b = FixedBitSet::with_capacity(m);
                b.insert(v);
                b
            })
            .collect();
        for a in 0..m {
            for b in a + 1..m {
                if conflicts(space, members[a], members[b], threshold) {
                    adj[a].push(b);
                    adj[b].push(a);
                    closed[a].insert(b);
                    closed[b].insert(a);
                }
            }
        }
        Ok(Self {
            eps,
            members,
            adj,
            closed,
        })
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn members(&self) -> &[PointId] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Conflicting neighbours of local vertex `v`, ascending.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a != b && self.closed[a].contains(b)
    }

    /// Edges as pairs of point ids `(i, j)` with `i < j`, ascending.
    pub fn edges(&self) -> Vec<(PointId, PointId)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (a, ns) in self.adj.iter().enumerate() {
            for &b in ns.iter().filter(|&&b| b > a) {
                out.push((self.members[a], self.members[b]));
            }
        }
        out
    }

    pub(crate) fn closed(&self, v: usize) -> &FixedBitSet {
        &self.closed[v]
    }

    pub(crate) fn to_ids(&self, local: &[usize]) -> Vec<PointId> {
        local.iter().map(|&v| self.members[v]).collect()
    }

    pub(crate) fn to_lattice(&self, local: &[usize]) -> Lattice {
        Lattice {
            members: self.to_ids(local),
            eps: self.eps,
        }
    }

    /// Visits every maximal independent set once, as ascending local indices.
    ///
    /// Bron–Kerbosch with pivoting, run on the complement graph implicitly.
    /// Stops with [`Error::CapExceeded`] as soon as more than `cap` sets are seen.
    pub fn for_each_lattice<F>(&self, cap: usize, mut visit: F) -> Result<usize>
    where
        F: FnMut(&[usize]),
    {
        let m = self.len();
        let mut p = FixedBitSet::with_capacity(m);
        p.insert_range(..);
        let x = FixedBitSet::with_capacity(m);
        let mut r = Vec::new();
        let mut sorted = Vec::new();
        let mut count = 0usize;
        let flow = self.expand(&mut r, p, x, &mut |set: &[usize]| {
            count += 1;
            if count > cap {
                return ControlFlow::Break(());
            }
            sorted.clear();
            sorted.extend_from_slice(set);
            sorted.sort_unstable();
            visit(&sorted);
            ControlFlow::Continue(())
        });
        match flow {
            ControlFlow::Break(()) => Err(Error::CapExceeded { cap }),
            ControlFlow::Continue(()) => Ok(count),
        }
    }

    fn expand(
        &self,
        r: &mut Vec<usize>,
        mut p: FixedBitSet,
        mut x: FixedBitSet,
        emit: &mut dyn FnMut(&[usize]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        if p.is_clear() {
            if x.is_clear() {
                return emit(r);
            }
            return ControlFlow::Continue(());
        }
        // Pivot u minimises |P ∩ N[u]|; only those vertices need branching.
        let mut pivot = usize::MAX;
        let mut fewest = usize::MAX;
        for u in p.ones().chain(x.ones()) {
            let c = p.intersection_count(&self.closed[u]);
            if c < fewest {
                fewest = c;
                pivot = u;
                if c <= 1 {
                    break;
                }
            }
        }
        let mut branch = p.clone();
        branch.intersect_with(&self.closed[pivot]);
        for v in branch.ones() {
            let mut np = p.clone();
            np.difference_with(&self.closed[v]);
            let mut nx = x.clone();
            nx.difference_with(&self.closed[v]);
            r.push(v);
            let flow = self.expand(r, np, nx, emit);
            r.pop();
            flow?;
            p.set(v, false);
            x.insert(v);
        }
        ControlFlow::Continue(())
    }

    /// Greedy maximal independent set along `order` (local indices).
    pub(crate) fn greedy_local(&self, order: &[usize]) -> Vec<usize> {
        let mut blocked = FixedBitSet::with_capacity(self.len());
        let mut out = Vec::new();
        for &v in order {
            if !blocked.contains(v) {
                out.push(v);
                blocked.union_with(&self.closed[v]);
            }
        }
        out.sort_unstable();
        out
    }
}

/// All ε-lattices of `domain` in lexicographic order of their sorted member lists.
pub fn enumerate_lattices<D: Domain + ?Sized>(
    domain: &D,
    eps: f64,
    cap: usize,
) -> Result<Vec<Lattice>> {
    let graph = ConflictGraph::new(domain, eps)?;
    let mut sets: Vec<Vec<usize>> = Vec::new();
    graph.for_each_lattice(cap, |s| sets.push(s.to_vec()))?;
    sets.sort_unstable();
    Ok(sets.iter().map(|s| graph.to_lattice(s)).collect())
}

/// Scans `order` and keeps each point at distance ≥ ε from everything kept so far.
pub fn greedy_lattice<D: Domain + ?Sized>(
    domain: &D,
    eps: f64,
    order: &[PointId],
) -> Result<Lattice> {
    check_eps(eps)?;
    let mut seen = order.to_vec();
    seen.sort_unstable();
    if seen.as_slice() != domain.members() {
        return Err(Error::NotAPermutation);
    }
    let space = domain.space();
    let mut kept: Vec<PointId> = Vec::new();
    for &p in order {
        if kept.iter().all(|&s| !conflicts(space, p, s, eps)) {
            kept.push(p);
        }
    }
    kept.sort_unstable();
    Ok(Lattice { members: kept, eps })
}

/// Greedy lattice under a uniformly random order drawn from `rng_seed`.
pub fn random_lattice<D: Domain + ?Sized>(domain: &D, eps: f64, rng_seed: u64) -> Result<Lattice> {
    let mut order = domain.members().to_vec();
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    order.shuffle(&mut rng);
    greedy_lattice(domain, eps, &order)
}
