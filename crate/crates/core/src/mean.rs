//! Lower and upper lattice means, ε sweeps and mean-existence verdicts.
//!
//! For a fixed ε the lower mean is the smallest average of `f` over any
//! ε-lattice of the domain and the upper mean the largest. A function has a
//! mean when both converge to a common value as ε shrinks; on finite data the
//! limit is replaced by a decreasing geometric [`Schedule`] and a
//! stabilisation rule.

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::check::{pass_if, CheckReport, Status, SLACK};
use crate::error::{Error, Result};
use crate::func::{combine, FnSpec};
use crate::lattice::{check_eps, ConflictGraph, Lattice, DEFAULT_CAP};
use crate::search::{self, Direction, SearchConfig, SizeObjective};
use crate::space::{Domain, PointId};

/// Average of `f` over `set`, summed in ascending id order.
pub fn sample_mean<D: Domain + ?Sized>(domain: &D, f: &FnSpec, set: &[PointId]) -> Result<f64> {
    if set.is_empty() {
        return Err(Error::EmptyMembers);
    }
    if let Some(&bad) = set.iter().find(|&&p| !domain.contains(p)) {
        return Err(Error::ForeignId(bad));
    }
    let table = f.tabulate(domain.space())?;
    let mut sorted = set.to_vec();
    sorted.sort_unstable();
    Ok(mean_of(&table, &sorted))
}

pub(crate) fn mean_of(table: &[f64], sorted: &[PointId]) -> f64 {
    let mut sum = 0.0;
    for p in sorted {
        sum += table[p.index()];
    }
    sum / sorted.len() as f64
}

/// `(l_ε, u_ε)` for one ε, with the lattices that attain them.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MeanBounds {
    pub eps: f64,
    pub lower: f64,
    pub upper: f64,
    /// True when every lattice was enumerated; false for search estimates.
    pub exact: bool,
    pub witness_low: Lattice,
    pub witness_high: Lattice,
    pub lattice_count: Option<usize>,
    pub min_lattice_size: Option<usize>,
}

impl MeanBounds {
    pub fn gap(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lower + self.upper)
    }
}

pub(crate) fn bounds_exact_on(
    graph: &ConflictGraph,
    table: &[f64],
    cap: usize,
) -> Result<MeanBounds> {
    let mut low: Option<(f64, Vec<usize>)> = None;
    let mut high: Option<(f64, Vec<usize>)> = None;
    let mut min_size = usize::MAX;
    let count = graph.for_each_lattice(cap, |set| {
        min_size = min_size.min(set.len());
        let mut sum = 0.0;
        for &v in set {
            sum += table[graph.members()[v].index()];
        }
        let avg = sum / set.len() as f64;
        let take_low = match &low {
            None => true,
            Some((b, w)) => avg < *b || (avg == *b && set < w.as_slice()),
        };
        if take_low {
            low = Some((avg, set.to_vec()));
        }
        let take_high = match &high {
            None => true,
            Some((b, w)) => avg > *b || (avg == *b && set < w.as_slice()),
        };
        if take_high {
            high = Some((avg, set.to_vec()));
        }
    })?;
    let (lower, wl) = low.expect("a nonempty domain has at least one lattice");
    let (upper, wh) = high.expect("a nonempty domain has at least one lattice");
    Ok(MeanBounds {
        eps: graph.eps(),
        lower,
        upper,
        exact: true,
        witness_low: graph.to_lattice(&wl),
        witness_high: graph.to_lattice(&wh),
        lattice_count: Some(count),
        min_lattice_size: Some(min_size),
    })
}

pub(crate) fn bounds_heuristic_on(
    graph: &ConflictGraph,
    table: &[f64],
    cfg: &SearchConfig,
) -> Result<MeanBounds> {
    let lo = search::extremal_average_on(graph, table, Direction::Minimize, cfg)?;
    let hi = search::extremal_average_on(graph, table, Direction::Maximize, cfg)?;
    Ok(MeanBounds {
        eps: graph.eps(),
        lower: lo.value,
        upper: hi.value,
        exact: false,
        witness_low: lo.lattice,
        witness_high: hi.lattice,
        lattice_count: None,
        min_lattice_size: None,
    })
}

/// Exact lower and upper means by enumerating every ε-lattice.
pub fn bounds_exact<D: Domain + ?Sized>(
    domain: &D,
    f: &FnSpec,
    eps: f64,
    cap: usize,
) -> Result<MeanBounds> {
    let table = f.tabulate(domain.space())?;
    let graph = ConflictGraph::new(domain, eps)?;
    bounds_exact_on(&graph, &table, cap)
}

/// Search estimates of the lower and upper means.
///
/// The reported interval lies inside the true `[l_ε, u_ε]`.
pub fn bounds_heuristic<D: Domain + ?Sized>(
    domain: &D,
    f: &FnSpec,
    eps: f64,
    cfg: &SearchConfig,
) -> Result<MeanBounds> {
    let table = f.tabulate(domain.space())?;
    let graph = ConflictGraph::new(domain, eps)?;
    bounds_heuristic_on(&graph, &table, cfg)
}

pub(crate) fn bounds_auto_on(
    graph: &ConflictGraph,
    table: &[f64],
    cap: usize,
    cfg: &SearchConfig,
) -> Result<MeanBounds> {
    match bounds_exact_on(graph, table, cap) {
        Err(Error::CapExceeded { .. }) => bounds_heuristic_on(graph, table, cfg),
        other => other,
    }
}

/// Geometric ε schedule `eps0 * ratio^k`, `k = 0..steps`.
#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Schedule {
    pub eps0: f64,
    pub ratio: f64,
    pub steps: usize,
}

impl Schedule {
    pub fn new(eps0: f64, ratio: f64, steps: usize) -> Result<Self> {
        let s = Self { eps0, ratio, steps };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.eps0 > 0.0 && self.eps0.is_finite()) {
            return Err(Error::InvalidSchedule(format!(
                "eps0 must be positive, got {}",
                self.eps0
            )));
        }
        if !(self.ratio > 0.0 && self.ratio < 1.0) {
            return Err(Error::InvalidSchedule(format!(
                "ratio must lie in (0, 1), got {}",
                self.ratio
            )));
        }
        if self.steps == 0 {
            return Err(Error::InvalidSchedule("steps must be positive".into()));
        }
        if self.eps(self.steps - 1) <= 0.0 {
            return Err(Error::InvalidSchedule("schedule underflows to zero".into()));
        }
        Ok(())
    }

    pub fn eps(&self, k: usize) -> f64 {
        self.eps0 * self.ratio.powi(k as i32)
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.steps).map(|k| self.eps(k)).collect()
    }
}

/// Stabilisation rule and budgets shared by every sweep.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SweepParams {
    pub tol_gap: f64,
    pub tol_drift: f64,
    pub stable_steps: usize,
    /// An exact gap at least this large on every trailing step means no mean.
    pub no_mean_gap: f64,
    pub cap: usize,
    pub search: SearchConfig,
}

impl Default for SweepParams {
    fn default() -> Self {
        Self {
            tol_gap: 1e-9,
            tol_drift: 1e-9,
            stable_steps: 3,
            no_mean_gap: 0.1,
            cap: DEFAULT_CAP,
            search: SearchConfig::default(),
        }
    }
}

impl SweepParams {
    pub fn validate(&self) -> Result<()> {
        let nonneg = |v: f64| v >= 0.0 && v.is_finite();
        if !nonneg(self.tol_gap) || !nonneg(self.tol_drift) {
            return Err(Error::InvalidConfig(
                "tolerances must be nonnegative".into(),
            ));
        }
        if self.stable_steps == 0 {
            return Err(Error::InvalidConfig("stable_steps must be positive".into()));
        }
        if !(self.no_mean_gap > 0.0 && self.no_mean_gap.is_finite()) {
            return Err(Error::InvalidConfig("no_mean_gap must be positive".into()));
        }
        if self.cap == 0 {
            return Err(Error::InvalidConfig("cap must be positive".into()));
        }
        self.search.validate()
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    HasMean,
    NoMean,
    Inconclusive,
}

/// Applies the stabilisation rule to `(lower, upper, exact)` steps ordered by decreasing ε.
pub fn judge(steps: &[(f64, f64, bool)], params: &SweepParams) -> Verdict {
    let k = params.stable_steps;
    if steps.len() < k {
        return Verdict::Inconclusive;
    }
    let tail = &steps[steps.len() - k..];
    let mid = |s: &(f64, f64, bool)| 0.5 * (s.0 + s.1);
    let settled = tail.iter().all(|s| s.1 - s.0 <= params.tol_gap)
        && tail
            .windows(2)
            .all(|w| (mid(&w[1]) - mid(&w[0])).abs() <= params.tol_drift);
    if settled {
        return Verdict::HasMean;
    }
    if tail.iter().all(|s| s.2 && s.1 - s.0 >= params.no_mean_gap) {
        return Verdict::NoMean;
    }
    Verdict::Inconclusive
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepResult {
    /// One entry per scheduled ε, largest ε first.
    pub trail: Vec<MeanBounds>,
    pub verdict: Verdict,
    /// Midpoint of the final bounds; present iff the verdict is `HasMean`.
    pub mean_estimate: Option<f64>,
    /// Smallest observed `upper - lower`.
    pub gap_floor: f64,
}

/// Runs the schedule, exact where enumeration fits under the cap and by search otherwise.
pub fn sweep<D: Domain + ?Sized>(
    domain: &D,
    f: &FnSpec,
    schedule: &Schedule,
    params: &SweepParams,
) -> Result<SweepResult> {
    schedule.validate()?;
    params.validate()?;
    let table = f.tabulate(domain.space())?;
    sweep_table(domain, &table, schedule, params)
}

pub(crate) fn sweep_table<D: Domain + ?Sized>(
    domain: &D,
    table: &[f64],
    schedule: &Schedule,
    params: &SweepParams,
) -> Result<SweepResult> {
    let mut trail = Vec::with_capacity(schedule.steps);
    for eps in schedule.values() {
        let graph = ConflictGraph::new(domain, eps)?;
        trail.push(bounds_auto_on(&graph, table, params.cap, &params.search)?);
    }
    let steps: Vec<(f64, f64, bool)> = trail.iter().map(|b| (b.lower, b.upper, b.exact)).collect();
    let verdict = judge(&steps, params);
    let mean_estimate = (verdict == Verdict::HasMean).then(|| trail.last().unwrap().midpoint());
    let gap_floor = trail
        .iter()
        .map(MeanBounds::gap)
        .fold(f64::INFINITY, f64::min);
    Ok(SweepResult {
        trail,
        verdict,
        mean_estimate,
        gap_floor,
    })
}

/// Exact minimum lattice size by branch and bound.
///
/// A lattice is an independent dominating set of the conflict graph. Each
/// level picks the lowest undominated vertex and branches on which point of
/// its closed neighbourhood covers it. Returns `None` once more than
/// `node_budget` nodes are expanded.
pub fn min_lattice_size(graph: &ConflictGraph, node_budget: usize) -> Option<(usize, Vec<usize>)> {
    let n = graph.len();
    let max_cover = (0..n).map(|v| graph.degree(v) + 1).max().unwrap_or(1);
    // greedy seed for the incumbent: high-degree points first
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(graph.degree(v)), v));
    let seed = graph.greedy_local(&order);

    struct Bb<'g> {
        graph: &'g ConflictGraph,
        max_cover: usize,
        best: Vec<usize>,
        nodes: usize,
        budget: usize,
    }
    impl Bb<'_> {
        fn go(&mut self, chosen: &mut Vec<usize>, dominated: &FixedBitSet) -> bool {
            self.nodes += 1;
            if self.nodes > self.budget {
                return false;
            }
            let n = self.graph.len();
            let undominated = n - dominated.count_ones(..);
            if undominated == 0 {
                if chosen.len() < self.best.len() {
                    let mut s = chosen.clone();
                    s.sort_unstable();
                    self.best = s;
                }
                return true;
            }
            let bound = chosen.len() + undominated.div_ceil(self.max_cover);
            if bound >= self.best.len() {
                return true;
            }
            let v = dominated
                .zeroes()
                .next()
                .expect("undominated vertex exists");
            let options: Vec<usize> = self
                .graph
                .closed(v)
                .ones()
                .filter(|&u| !dominated.contains(u))
                .collect();
            for u in options {
                let mut next = dominated.clone();
                next.union_with(self.graph.closed(u));
                chosen.push(u);
                let ok = self.go(chosen, &next);
                chosen.pop();
                if !ok {
                    return false;
                }
            }
            true
        }
    }

    let mut bb = Bb {
        graph,
        max_cover,
        best: seed,
        nodes: 0,
        budget: node_budget,
    };
    let dominated = FixedBitSet::with_capacity(n);
    if bb.go(&mut Vec::new(), &dominated) {
        Some((bb.best.len(), bb.best))
    } else {
        None
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Growth {
    GrowingUnboundedLikely,
    Bounded,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SizeEntry {
    pub eps: f64,
    pub domain_size: usize,
    pub min_size: usize,
    pub exact: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RegularityProfile {
    pub entries: Vec<SizeEntry>,
    pub verdict: Growth,
}

fn min_size_entry<D: Domain + ?Sized>(
    domain: &D,
    eps: f64,
    cap: usize,
    cfg: &SearchConfig,
) -> Result<SizeEntry> {
    let graph = ConflictGraph::new(domain, eps)?;
    let (min_size, exact) = match min_lattice_size(&graph, cap) {
        Some((size, _)) => (size, true),
        None => {
            let obj = SizeObjective::new(&graph);
            let (v, _) = search::search_graph(&graph, &obj, Direction::Minimize, cfg)?
                .expect("size is always defined");
            (v as usize, false)
        }
    };
    Ok(SizeEntry {
        eps,
        domain_size: domain.len(),
        min_size,
        exact,
    })
}

/// Minimum lattice size per scheduled ε on one domain.
///
/// A single finite domain can at most be judged `Bounded`: sizes plateau at
/// the number of points once ε drops below the closest pair.
pub fn regularity_profile<D: Domain + ?Sized>(
    domain: &D,
    schedule: &Schedule,
    cap: usize,
    cfg: &SearchConfig,
) -> Result<RegularityProfile> {
    schedule.validate()?;
    let entries = schedule
        .values()
        .into_iter()
        .map(|eps| min_size_entry(domain, eps, cap, cfg))
        .collect::<Result<Vec<_>>>()?;
    let last = entries.last().expect("schedule has steps");
    let verdict = if last.min_size == domain.len() {
        Growth::Bounded
    } else {
        Growth::Inconclusive
    };
    Ok(RegularityProfile { entries, verdict })
}

/// Minimum lattice size across a refinement family, one `(domain, eps)` per member.
///
/// Strict growth along the family is reported as likely unbounded.
pub fn regularity_family(
    family: &[(&dyn Domain, f64)],
    cap: usize,
    cfg: &SearchConfig,
) -> Result<RegularityProfile> {
    let entries = family
        .iter()
        .map(|&(d, eps)| min_size_entry(d, eps, cap, cfg))
        .collect::<Result<Vec<_>>>()?;
    let growing = entries.len() >= 2 && entries.windows(2).all(|w| w[1].min_size > w[0].min_size);
    let verdict = if growing {
        Growth::GrowingUnboundedLikely
    } else {
        Growth::Inconclusive
    };
    Ok(RegularityProfile { entries, verdict })
}

/// Fixed-ε algebra of lower and upper means for value tables `f` and `g`.
///
/// `bounds` maps a value table to `(l_ε, u_ε)`; the public entry point uses
/// exact enumeration, the verification suite may substitute others.
pub(crate) fn algebra_items<B>(
    bounds: &mut B,
    f: &[f64],
    g: &[f64],
    alpha: f64,
    beta: f64,
    members: &[PointId],
) -> Result<CheckReport>
where
    B: FnMut(&[f64]) -> Result<(f64, f64)>,
{
    let map = |t: &[f64], h: &dyn Fn(usize) -> f64| -> Vec<f64> { (0..t.len()).map(h).collect() };
    let mut r = CheckReport::new("algebra");
    let (lf, uf) = bounds(f)?;
    let (lg, ug) = bounds(g)?;
    r.assert_le("lower<=upper", lf, uf, 0.0);

    let neg = map(f, &|i| -f[i]);
    let (ln, un) = bounds(&neg)?;
    r.assert_eq("negation/lower", ln, -uf, SLACK);
    r.assert_eq("negation/upper", un, -lf, SLACK);

    let scaled = map(f, &|i| alpha * f[i]);
    let (la, ua) = bounds(&scaled)?;
    if alpha >= 0.0 {
        r.assert_eq("homogeneity/lower", la, alpha * lf, SLACK);
        r.assert_eq("homogeneity/upper", ua, alpha * uf, SLACK);
    } else {
        r.assert_eq("homogeneity/lower", la, alpha * uf, SLACK);
        r.assert_eq("homogeneity/upper", ua, alpha * lf, SLACK);
    }

    let sum = map(f, &|i| f[i] + g[i]);
    let (ls, us) = bounds(&sum)?;
    r.assert_le("subadditivity/lower", lf + lg, ls, SLACK);
    r.assert_le("subadditivity/middle", ls, us, SLACK);
    r.assert_le("subadditivity/upper", us, uf + ug, SLACK);

    let lin = map(f, &|i| alpha * f[i] + beta * g[i]);
    let (ll, ul) = bounds(&lin)?;
    let (lbg, ubg) = if beta >= 0.0 {
        (beta * lg, beta * ug)
    } else {
        (beta * ug, beta * lg)
    };
    let (laf, uaf) = if alpha >= 0.0 {
        (alpha * lf, alpha * uf)
    } else {
        (alpha * uf, alpha * lf)
    };
    r.assert_le("combination/lower", laf + lbg, ll, SLACK);
    r.assert_le("combination/upper", ul, uaf + ubg, SLACK);

    let dominated = members.iter().all(|p| f[p.index()] >= g[p.index()]);
    if dominated {
        r.assert_le("monotonicity/lower", lg, lf, SLACK);
        r.assert_le("monotonicity/upper", ug, uf, SLACK);
    } else {
        r.push(
            "monotonicity",
            Status::Inconclusive,
            "f >= g does not hold pointwise",
        );
    }
    // f dominates f minus a nonnegative bump, so monotonicity is always exercised
    let lowered = map(f, &|i| f[i] - (g[i] - f[i]).abs());
    let (lw, uw) = bounds(&lowered)?;
    r.assert_le("monotonicity/bumped-lower", lw, lf, SLACK);
    r.assert_le("monotonicity/bumped-upper", uw, uf, SLACK);

    let lo = members
        .iter()
        .map(|p| f[p.index()])
        .fold(f64::INFINITY, f64::min);
    let hi = members
        .iter()
        .map(|p| f[p.index()])
        .fold(f64::NEG_INFINITY, f64::max);
    r.assert_le("floor/lower", lo, lf, 0.0);
    r.assert_le("floor/upper", lo, uf, 0.0);
    r.assert_le("ceiling/lower", lf, hi, 0.0);
    r.assert_le("ceiling/upper", uf, hi, 0.0);

    let shift = beta;
    let shifted = map(f, &|i| f[i] + shift);
    let (lsh, ush) = bounds(&shifted)?;
    r.assert_eq("shift/lower", lsh, lf + shift, SLACK);
    r.assert_eq("shift/upper", ush, uf + shift, SLACK);
    Ok(r)
}

/// Checks the fixed-ε algebra of lower and upper means with exact enumeration.
///
/// Covers negation duality, homogeneity, the subadditivity chain for `f + g`
/// and `αf + βg`, pointwise monotonicity, constant floors and ceilings and
/// the constant-shift identity.
pub fn algebra_check<D: Domain + ?Sized>(
    domain: &D,
    f: &FnSpec,
    g: &FnSpec,
    alpha: f64,
    beta: f64,
    eps: f64,
    cap: usize,
) -> Result<CheckReport> {
    let space = domain.space();
    let (ft, gt) = (f.tabulate(space)?, g.tabulate(space)?);
    let graph = ConflictGraph::new(domain, eps)?;
    let mut exact = |t: &[f64]| bounds_exact_on(&graph, t, cap).map(|b| (b.lower, b.upper));
    algebra_items(&mut exact, &ft, &gt, alpha, beta, domain.members())
}

pub(crate) fn modification_items(
    graph: &ConflictGraph,
    f: &[f64],
    points: &[PointId],
    deltas: &[f64],
    cap: usize,
) -> Result<CheckReport> {
    let mut g = f.to_vec();
    for (p, d) in points.iter().zip(deltas) {
        g[p.index()] += d;
    }
    let before = bounds_exact_on(graph, f, cap)?;
    let after = bounds_exact_on(graph, &g, cap)?;
    let m = points.len() as f64;
    let max_delta = deltas.iter().fold(0.0f64, |a, d| a.max(d.abs()));
    let min_size = before.min_lattice_size.expect("exact bounds record sizes") as f64;
    let bound = m * max_delta / min_size;
    let mut r = CheckReport::new("finite_modification");
    r.assert_le("lower", (after.lower - before.lower).abs(), bound, SLACK);
    r.assert_le("upper", (after.upper - before.upper).abs(), bound, SLACK);
    Ok(r)
}

/// Modifies `f` at `points` by `deltas` and bounds the shift of both lattice means.
///
/// Each lattice average moves by at most `m * max|Δ| / |S|`, so both means
/// move by at most `m * max|Δ|` over the smallest lattice size.
pub fn finite_modification_check<D: Domain + ?Sized>(
    domain: &D,
    f: &FnSpec,
    points: &[PointId],
    deltas: &[f64],
    eps: f64,
    cap: usize,
) -> Result<CheckReport> {
    check_eps(eps)?;
    if points.len() != deltas.len() {
        return Err(Error::TableSize {
            expected: points.len(),
            found: deltas.len(),
        });
    }
    let mut seen = points.to_vec();
    seen.sort_unstable();
    if let Some(w) = seen.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::NotDisjoint(w[0]));
    }
    if let Some(&bad) = points.iter().find(|&&p| !domain.contains(p)) {
        return Err(Error::ForeignId(bad));
    }
    let table = f.tabulate(domain.space())?;
    let graph = ConflictGraph::new(domain, eps)?;
    modification_items(&graph, &table, points, deltas, cap)
}

/// Uniform limits: `f_k = f + g / k` must have mean estimates within `max|g| / k + tol` of `f`'s.
pub fn uniform_limit_check<D: Domain + ?Sized>(
    domain: &D,
    f: &FnSpec,
    g: &FnSpec,
    ks: &[usize],
    schedule: &Schedule,
    params: &SweepParams,
    tol: f64,
) -> Result<CheckReport> {
    let space = domain.space();
    let g_sup = g
        .tabulate(space)?
        .iter()
        .enumerate()
        .filter(|(i, _)| domain.contains(PointId(*i)))
        .fold(0.0f64, |a, (_, v)| a.max(v.abs()));
    let mut r = CheckReport::new("uniform_limit");
    let base = sweep(domain, f, schedule, params)?;
    let Some(f_hat) = base.mean_estimate else {
        r.push("base", Status::Inconclusive, format!("{:?}", base.verdict));
        return Ok(r);
    };
    for &k in ks {
        if k == 0 {
            return Err(Error::InvalidConfig(
                "sequence index must be positive".into(),
            ));
        }
        let fk = combine(1.0, f.clone(), 1.0 / k as f64, g.clone());
        let res = sweep(domain, &fk, schedule, params)?;
        match res.mean_estimate {
            Some(est) => {
                let drift = (est - f_hat).abs();
                let bound = g_sup / k as f64 + tol;
                r.push(
                    format!("k={k}"),
                    pass_if(drift <= bound),
                    format!("|{est:e} - {f_hat:e}| = {drift:e} <= {bound:e}"),
                );
            }
            None => r.push(format!("k={k}"), Status::Fail, format!("{:?}", res.verdict)),
        }
    }
    Ok(r)
}
