//! Relative measure `(A|B)` and thin-boundary ratios.
//!
//! Two distinct constructions live here and are never mixed:
//!
//! * the relative measure of `A` in `B` is the lattice mean of `χ_A` taken
//!   over the subspace `B` (lattices of `B` itself);
//! * thin-boundary ratios `|A ∩ S| / |B ∩ S|` range over lattices `S` of an
//!   ambient superset `K ⊇ B`.

use serde::Serialize;

use crate::check::{CheckReport, Status, SLACK};
use crate::error::{Error, Result};
use crate::func::indicator;
use crate::lattice::{check_eps, ConflictGraph};
use crate::mean::{
    bounds_exact_on, judge, sweep_table, MeanBounds, Schedule, SweepParams, Verdict,
};
use crate::search::{search_graph, Direction, RatioObjective, SearchConfig};
use crate::space::{restrict, Domain, PointId};

fn sorted(set: &[PointId]) -> Vec<PointId> {
    let mut v = set.to_vec();
    v.sort_unstable();
    v.dedup();
    v
}

fn require_subset(inner: &[PointId], outer: &dyn Fn(PointId) -> bool) -> Result<()> {
    match inner.iter().find(|&&p| !outer(p)) {
        Some(&p) => Err(Error::NotSubset(p)),
        None => Ok(()),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MeasureResult {
    /// `(A|B)`, present iff the verdict is `HasMean`.
    pub value: Option<f64>,
    pub verdict: Verdict,
    /// Sweep of `χ_A` over the subspace `B`.
    pub trail: Vec<MeanBounds>,
}

/// Measure of `a` relative to `b`: the lattice mean of `χ_A` over the subspace `b`.
pub fn relative_measure<D: Domain + ?Sized>(
    domain: &D,
    a: &[PointId],
    b: &[PointId],
    schedule: &Schedule,
    params: &SweepParams,
) -> Result<MeasureResult> {
    schedule.validate()?;
    params.validate()?;
    let (a, b) = (sorted(a), sorted(b));
    if b.is_empty() {
        return Err(Error::EmptyMembers);
    }
    require_subset(&b, &|p| domain.contains(p))?;
    require_subset(&a, &|p| b.binary_search(&p).is_ok())?;
    let sub = restrict(domain, b.iter().copied())?;
    let table = indicator(a).tabulate(domain.space())?;
    let res = sweep_table(&sub, &table, schedule, params)?;
    Ok(MeasureResult {
        value: res.mean_estimate,
        verdict: res.verdict,
        trail: res.trail,
    })
}

/// Fixed-ε complement inequalities for `χ_A` and `χ_{K∖A}` over `domain`.
///
/// Lower means sum to at most 1 and upper means to at least 1; when both
/// gaps vanish the sums must be exactly 1.
pub fn complement_check<D: Domain + ?Sized>(
    a: &[PointId],
    domain: &D,
    eps: f64,
    cap: usize,
) -> Result<CheckReport> {
    let a = sorted(a);
    require_subset(&a, &|p| domain.contains(p))?;
    let rest: Vec<PointId> = domain
        .members()
        .iter()
        .copied()
        .filter(|p| a.binary_search(p).is_err())
        .collect();
    let graph = ConflictGraph::new(domain, eps)?;
    let space = domain.space();
    let ta = indicator(a).tabulate(space)?;
    let tr = indicator(rest).tabulate(space)?;
    complement_items(&graph, &ta, &tr, cap)
}

pub(crate) fn complement_items(
    graph: &ConflictGraph,
    ta: &[f64],
    tr: &[f64],
    cap: usize,
) -> Result<CheckReport> {
    let ba = bounds_exact_on(graph, ta, cap)?;
    let br = bounds_exact_on(graph, tr, cap)?;
    let mut r = CheckReport::new("complement");
    r.assert_le("lower_sum<=1", ba.lower + br.lower, 1.0, SLACK);
    r.assert_le("1<=upper_sum", 1.0, ba.upper + br.upper, SLACK);
    if ba.gap() == 0.0 && br.gap() == 0.0 {
        r.assert_eq("sum==1", ba.lower + br.lower, 1.0, SLACK);
    }
    for (name, b) in [("chi_A", &ba), ("chi_rest", &br)] {
        let ok = 0.0 <= b.lower && b.lower <= b.upper && b.upper <= 1.0;
        r.push(
            format!("{name}/unit_interval"),
            crate::check::pass_if(ok),
            format!("0 <= {:e} <= {:e} <= 1", b.lower, b.upper),
        );
    }
    Ok(r)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundaryRatioBounds {
    pub eps: f64,
    /// Min over lattices `S` of `K` with `B ∩ S ≠ ∅` of `|A ∩ S| / |B ∩ S|`.
    pub ratio_low: Option<f64>,
    pub ratio_high: Option<f64>,
    pub exact: bool,
    /// Lattices with `B ∩ S = ∅`; known only for exact bounds.
    pub skipped: Option<usize>,
    pub lattice_count: Option<usize>,
}

impl BoundaryRatioBounds {
    fn step(&self) -> (f64, f64, bool) {
        match (self.ratio_low, self.ratio_high) {
            (Some(l), Some(h)) => (l, h, self.exact),
            // undefined everywhere: can neither settle nor prove a gap
            _ => (0.0, 1.0, false),
        }
    }
}

/// Membership masks of `A` and `B` over the graph's local vertices.
struct RatioPair {
    in_a: Vec<bool>,
    in_b: Vec<bool>,
}

impl RatioPair {
    fn new(graph: &ConflictGraph, a: &[PointId], b: &[PointId]) -> Self {
        let mask = |s: &[PointId]| -> Vec<bool> {
            graph
                .members()
                .iter()
                .map(|p| s.binary_search(p).is_ok())
                .collect()
        };
        Self {
            in_a: mask(a),
            in_b: mask(b),
        }
    }
}

/// Ratio bounds for several `(A, B)` pairs from one pass over the lattices of `graph`.
///
/// Falls back to local search per pair when enumeration exceeds `cap` and a
/// search configuration is supplied.
fn ratio_bounds_many(
    graph: &ConflictGraph,
    pairs: &[RatioPair],
    cap: usize,
    cfg: Option<&SearchConfig>,
) -> Result<Vec<BoundaryRatioBounds>> {
    let k = pairs.len();
    let mut low = vec![None::<f64>; k];
    let mut high = vec![None::<f64>; k];
    let mut skipped = vec![0usize; k];
    let enumerated = graph.for_each_lattice(cap, |set| {
        for (i, pair) in pairs.iter().enumerate() {
            let (mut na, mut nb) = (0usize, 0usize);
            for &v in set {
                na += pair.in_a[v] as usize;
                nb += pair.in_b[v] as usize;
            }
            if nb == 0 {
                skipped[i] += 1;
                continue;
            }
            let r = na as f64 / nb as f64;
            low[i] = Some(low[i].map_or(r, |l: f64| l.min(r)));
            high[i] = Some(high[i].map_or(r, |h: f64| h.max(r)));
        }
    });
    match enumerated {
        Ok(count) => Ok((0..k)
            .map(|i| BoundaryRatioBounds {
                eps: graph.eps(),
                ratio_low: low[i],
                ratio_high: high[i],
                exact: true,
                skipped: Some(skipped[i]),
                lattice_count: Some(count),
            })
            .collect()),
        Err(Error::CapExceeded { cap }) => {
            let Some(cfg) = cfg else {
                return Err(Error::CapExceeded { cap });
            };
            pairs
                .iter()
                .map(|pair| {
                    let obj = RatioObjective::new(pair.in_a.clone(), pair.in_b.clone());
                    let lo = search_graph(graph, &obj, Direction::Minimize, cfg)?;
                    let hi = search_graph(graph, &obj, Direction::Maximize, cfg)?;
                    Ok(BoundaryRatioBounds {
                        eps: graph.eps(),
                        ratio_low: lo.map(|(v, _)| v),
                        ratio_high: hi.map(|(v, _)| v),
                        exact: false,
                        skipped: None,
                        lattice_count: None,
                    })
                })
                .collect()
        }
        Err(e) => Err(e),
    }
}

/// Min and max of `|A ∩ S| / |B ∩ S|` over ε-lattices `S` of `k_domain`.
///
/// Lattices missing `B` entirely are skipped and counted. With `cfg = None`
/// an over-cap enumeration is an error instead of a search.
pub fn boundary_ratio_bounds<D: Domain + ?Sized>(
    a: &[PointId],
    b: &[PointId],
    k_domain: &D,
    eps: f64,
    cap: usize,
    cfg: Option<&SearchConfig>,
) -> Result<BoundaryRatioBounds> {
    check_eps(eps)?;
    let (a, b) = (sorted(a), sorted(b));
    require_subset(&b, &|p| k_domain.contains(p))?;
    require_subset(&a, &|p| b.binary_search(&p).is_ok())?;
    let graph = ConflictGraph::new(k_domain, eps)?;
    let pair = RatioPair::new(&graph, &a, &b);
    Ok(ratio_bounds_many(&graph, &[pair], cap, cfg)?.remove(0))
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ThinVerdict {
    ThinBoundary,
    NotThin,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SupersetTrail {
    pub trail: Vec<BoundaryRatioBounds>,
    pub verdict: ThinVerdict,
    pub value: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ThinBoundaryResult {
    pub verdict: ThinVerdict,
    /// Common limit estimate, reported as `(A|B)` when thin.
    pub value: Option<f64>,
    /// One trail per supplied superset, in the order given.
    pub supersets: Vec<SupersetTrail>,
}

fn judge_trail(trail: Vec<BoundaryRatioBounds>, params: &SweepParams) -> SupersetTrail {
    let steps: Vec<(f64, f64, bool)> = trail.iter().map(BoundaryRatioBounds::step).collect();
    let (verdict, value) = match judge(&steps, params) {
        Verdict::HasMean => {
            let (l, h, _) = *steps.last().expect("nonempty schedule");
            (ThinVerdict::ThinBoundary, Some(0.5 * (l + h)))
        }
        Verdict::NoMean => (ThinVerdict::NotThin, None),
        Verdict::Inconclusive => (ThinVerdict::Inconclusive, None),
    };
    SupersetTrail {
        trail,
        verdict,
        value,
    }
}

fn combine_supersets(supersets: Vec<SupersetTrail>, agreement_tol: f64) -> ThinBoundaryResult {
    let any_not_thin = supersets.iter().any(|s| s.verdict == ThinVerdict::NotThin);
    let values: Option<Vec<f64>> = supersets.iter().map(|s| s.value).collect();
    let (verdict, value) = match values {
        _ if any_not_thin => (ThinVerdict::NotThin, None),
        Some(v) if !v.is_empty() => {
            let lo = v.iter().copied().fold(f64::INFINITY, f64::min);
            let hi = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            if hi - lo <= agreement_tol {
                (ThinVerdict::ThinBoundary, Some(v[0]))
            } else {
                (ThinVerdict::NotThin, None)
            }
        }
        _ => (ThinVerdict::Inconclusive, None),
    };
    ThinBoundaryResult {
        verdict,
        value,
        supersets,
    }
}

fn thin_trails<D: Domain + ?Sized>(
    sets: &[(&[PointId], &[PointId])],
    k_domain: &D,
    schedule: &Schedule,
    params: &SweepParams,
) -> Result<Vec<SupersetTrail>> {
    let mut trails: Vec<Vec<BoundaryRatioBounds>> = vec![Vec::new(); sets.len()];
    for eps in schedule.values() {
        let graph = ConflictGraph::new(k_domain, eps)?;
        let pairs: Vec<RatioPair> = sets
            .iter()
            .map(|(a, b)| RatioPair::new(&graph, a, b))
            .collect();
        let step = ratio_bounds_many(&graph, &pairs, params.cap, Some(&params.search))?;
        for (t, s) in trails.iter_mut().zip(step) {
            t.push(s);
        }
    }
    Ok(trails.into_iter().map(|t| judge_trail(t, params)).collect())
}

/// Decides whether `a` has a thin boundary with `b`, using lattices of every supplied superset.
///
/// Each superset gets its own ratio trail and stabilisation verdict; the
/// combined verdict additionally needs the limit estimates to agree within
/// `agreement_tol`.
pub fn thin_boundary_verdict(
    a: &[PointId],
    b: &[PointId],
    supersets: &[&dyn Domain],
    schedule: &Schedule,
    params: &SweepParams,
    agreement_tol: f64,
) -> Result<ThinBoundaryResult> {
    schedule.validate()?;
    params.validate()?;
    if supersets.is_empty() {
        return Err(Error::InvalidConfig(
            "at least one superset is required".into(),
        ));
    }
    let (a, b) = (sorted(a), sorted(b));
    require_subset(&a, &|p| b.binary_search(&p).is_ok())?;
    let mut trails = Vec::with_capacity(supersets.len());
    for &k in supersets {
        require_subset(&b, &|p| k.contains(p))?;
        trails.extend(thin_trails(&[(&a, &b)], k, schedule, params)?);
    }
    Ok(combine_supersets(trails, agreement_tol))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CompositionOutcome {
    pub ab: ThinBoundaryResult,
    pub bc: ThinBoundaryResult,
    pub ac: ThinBoundaryResult,
    pub report: CheckReport,
}

/// Checks `(A|C) = (A|B)·(B|C)` for nested `A ⊆ B ⊆ C` using lattices of `k_domain`.
pub fn composition_check<D: Domain + ?Sized>(
    a: &[PointId],
    b: &[PointId],
    c: &[PointId],
    k_domain: &D,
    schedule: &Schedule,
    params: &SweepParams,
    tol: f64,
) -> Result<CompositionOutcome> {
    schedule.validate()?;
    params.validate()?;
    let (a, b, c) = (sorted(a), sorted(b), sorted(c));
    require_subset(&a, &|p| b.binary_search(&p).is_ok())?;
    require_subset(&b, &|p| c.binary_search(&p).is_ok())?;
    require_subset(&c, &|p| k_domain.contains(p))?;
    let sets: [(&[PointId], &[PointId]); 3] = [(&a, &b), (&b, &c), (&a, &c)];
    let mut trails = thin_trails(&sets, k_domain, schedule, params)?.into_iter();
    let mut next = || combine_supersets(vec![trails.next().expect("three trails")], tol);
    let (ab, bc, ac) = (next(), next(), next());
    let mut report = CheckReport::new("composition");
    match (ab.value, bc.value, ac.value) {
        (Some(x), Some(y), Some(z)) => {
            let diff = (z - x * y).abs();
            report.push(
                "(A|C)=(A|B)(B|C)",
                crate::check::pass_if(diff <= tol),
                format!("|{z:e} - {x:e} * {y:e}| = {diff:e} <= {tol:e}"),
            );
        }
        _ => report.push(
            "(A|C)=(A|B)(B|C)",
            Status::Inconclusive,
            format!(
                "verdicts {:?} {:?} {:?}",
                ab.verdict, bc.verdict, ac.verdict
            ),
        ),
    }
    Ok(CompositionOutcome { ab, bc, ac, report })
}

/// Finite-family union chain for disjoint nonempty parts at one ε:
/// `Σ l(χ_An) ≤ l(χ_∪) ≤ u(χ_∪) ≤ Σ u(χ_An)`.
pub fn disjoint_union_check<D: Domain + ?Sized>(
    parts: &[Vec<PointId>],
    domain: &D,
    eps: f64,
    cap: usize,
) -> Result<CheckReport> {
    if parts.is_empty() {
        return Err(Error::EmptyMembers);
    }
    let mut union: Vec<PointId> = Vec::new();
    for part in parts {
        if part.is_empty() {
            return Err(Error::EmptyMembers);
        }
        require_subset(part, &|p| domain.contains(p))?;
        union.extend(sorted(part));
    }
    union.sort_unstable();
    if let Some(w) = union.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::NotDisjoint(w[0]));
    }
    let graph = ConflictGraph::new(domain, eps)?;
    let space = domain.space();
    let tables = parts
        .iter()
        .map(|p| indicator(p.iter().copied()).tabulate(space))
        .collect::<Result<Vec<_>>>()?;
    let ut = indicator(union).tabulate(space)?;
    union_items(&graph, &tables, &ut, cap)
}

pub(crate) fn union_items(
    graph: &ConflictGraph,
    parts: &[Vec<f64>],
    union: &[f64],
    cap: usize,
) -> Result<CheckReport> {
    let (mut sl, mut su) = (0.0, 0.0);
    for t in parts {
        let b = bounds_exact_on(graph, t, cap)?;
        sl += b.lower;
        su += b.upper;
    }
    let u = bounds_exact_on(graph, union, cap)?;
    let mut r = CheckReport::new("disjoint_union");
    r.assert_le("sum_lower<=lower", sl, u.lower, SLACK);
    r.assert_le("lower<=upper", u.lower, u.upper, SLACK);
    r.assert_le("upper<=sum_upper", u.upper, su, SLACK);
    Ok(r)
}
