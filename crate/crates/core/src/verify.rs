//! Randomized invariant registry.
//!
//! Each instance draws a small random space, an ε and two random functions
//! from its own ChaCha stream (`seed`, stream = instance index), so any single
//! instance can be replayed from the reproducer printed on failure. Every
//! check uses exact enumeration.

use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::check::{CheckReport, Status, SLACK};
use crate::error::{Error, Result};
use crate::func::FnSpec;
use crate::instances::{random_eps, random_space, random_table};
use crate::lattice::{ConflictGraph, DEFAULT_CAP};
use crate::mean::{
    algebra_items, bounds_exact_on, bounds_heuristic_on, modification_items, uniform_limit_check,
    Schedule, SweepParams,
};
use crate::measure::{boundary_ratio_bounds, complement_items, union_items};
use crate::search::SearchConfig;
use crate::space::{diameter, min_positive_distance, Domain, MetricSpace, PointId};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyConfig {
    pub seed: u64,
    pub instances: usize,
    pub min_points: usize,
    pub max_points: usize,
    pub cap: usize,
    /// Also run the uniform-limit sequence check on a fixed grid.
    pub uniform_limit: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            instances: 200,
            min_points: 1,
            max_points: 14,
            cap: DEFAULT_CAP,
            uniform_limit: true,
        }
    }
}

impl VerifyConfig {
    pub fn validate(&self) -> Result<()> {
        if self.min_points == 0 || self.min_points > self.max_points {
            return Err(Error::InvalidConfig(format!(
                "point range {}..={} is empty or starts at 0",
                self.min_points, self.max_points
            )));
        }
        if self.max_points > 24 {
            return Err(Error::TooLarge {
                what: "verify instance",
                n: self.max_points,
                max: 24,
            });
        }
        if self.cap == 0 {
            return Err(Error::InvalidConfig("cap must be positive".into()));
        }
        Ok(())
    }
}

/// Enough to replay one failing check.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Failure {
    pub seed: u64,
    /// `None` for the fixed-grid checks that do not depend on an instance.
    pub instance: Option<usize>,
    pub n: usize,
    pub eps: f64,
    pub check: String,
    pub label: String,
    pub detail: String,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inst = self.instance.map_or("grid".to_string(), |i| i.to_string());
        write!(
            f,
            "FAIL {}/{} seed={} instance={} n={} eps={:.16e}: {}",
            self.check, self.label, self.seed, inst, self.n, self.eps, self.detail
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub instances: usize,
    pub checks: usize,
    pub skipped: usize,
    pub failures: Vec<Failure>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Failure count per check name, sorted by name.
    pub fn failures_by_check(&self) -> Vec<(String, usize)> {
        let mut out: Vec<(String, usize)> = Vec::new();
        for f in &self.failures {
            match out.iter_mut().find(|(c, _)| *c == f.check) {
                Some((_, k)) => *k += 1,
                None => out.push((f.check.clone(), 1)),
            }
        }
        out.sort();
        out
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for fail in &self.failures {
            writeln!(f, "{fail}")?;
        }
        write!(
            f,
            "{} seed={} instances={} checks={} skipped={} failures={}",
            if self.passed() { "PASS" } else { "FAIL" },
            self.seed,
            self.instances,
            self.checks,
            self.skipped,
            self.failures.len()
        )
    }
}

/// Exact `(lower, upper)` of a table over a conflict graph.
pub type BoundsFn<'a> = dyn Fn(&ConflictGraph, &[f64], usize) -> Result<(f64, f64)> + 'a;

pub fn exact_bounds(graph: &ConflictGraph, table: &[f64], cap: usize) -> Result<(f64, f64)> {
    let b = bounds_exact_on(graph, table, cap)?;
    Ok((b.lower, b.upper))
}

/// Runs the registry with the library's own exact bounds.
pub fn run(cfg: &VerifyConfig) -> Result<VerifyReport> {
    run_with(cfg, &exact_bounds)
}

/// Runs the registry, feeding the algebra checks from `bounds`.
///
/// The other checks always use the library's enumerator; swapping `bounds`
/// is how a deliberately broken implementation is shown to be caught.
pub fn run_with(cfg: &VerifyConfig, bounds: &BoundsFn<'_>) -> Result<VerifyReport> {
    cfg.validate()?;
    let mut report = VerifyReport {
        seed: cfg.seed,
        instances: cfg.instances,
        checks: 0,
        skipped: 0,
        failures: Vec::new(),
    };
    for i in 0..cfg.instances {
        let inst = Instance::draw(cfg, i);
        let mut record = |r: Result<CheckReport>, check: &str| {
            let r = r.unwrap_or_else(|e| {
                let mut r = CheckReport::new(check);
                r.push("error", Status::Fail, e.to_string());
                r
            });
            absorb(
                &mut report,
                &r,
                cfg.seed,
                Some(i),
                inst.space.len(),
                inst.eps,
            );
        };
        let graph = match ConflictGraph::new(&inst.space, inst.eps) {
            Ok(g) => g,
            Err(e) => {
                record(Err(e), "conflict_graph");
                continue;
            }
        };
        record(inst.algebra(&graph, cfg.cap, bounds), "algebra");
        record(
            complement_items(&graph, &inst.ta, &inst.t_rest, cfg.cap),
            "complement",
        );
        if inst.parts.len() >= 2 {
            record(
                union_items(&graph, &inst.parts, &inst.t_union, cfg.cap),
                "disjoint_union",
            );
        }
        record(
            modification_items(&graph, &inst.f, &inst.mod_points, &inst.mod_deltas, cfg.cap),
            "finite_modification",
        );
        record(extremes(&inst, cfg.cap), "extremes");
        record(inst.heuristic(&graph, cfg), "heuristic_containment");
        record(inst.ratio(&graph, cfg.cap), "ratio");
    }
    if cfg.uniform_limit {
        let (r, n, eps) = grid_uniform_limit()?;
        absorb(&mut report, &r, cfg.seed, None, n, eps);
    }
    Ok(report)
}

fn absorb(
    report: &mut VerifyReport,
    r: &CheckReport,
    seed: u64,
    instance: Option<usize>,
    n: usize,
    eps: f64,
) {
    report.checks += r.items.len();
    report.skipped += r.count(Status::Inconclusive);
    for item in r.failures() {
        report.failures.push(Failure {
            seed,
            instance,
            n,
            eps,
            check: r.name.clone(),
            label: item.label.clone(),
            detail: item.detail.clone(),
        });
    }
}

struct Instance {
    index: usize,
    space: MetricSpace,
    eps: f64,
    f: Vec<f64>,
    g: Vec<f64>,
    alpha: f64,
    beta: f64,
    a: Vec<PointId>,
    a_wider: Vec<PointId>,
    ta: Vec<f64>,
    t_rest: Vec<f64>,
    parts: Vec<Vec<f64>>,
    t_union: Vec<f64>,
    mod_points: Vec<PointId>,
    mod_deltas: Vec<f64>,
}

impl Instance {
    fn draw(cfg: &VerifyConfig, index: usize) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(index as u64);
        let n = rng.gen_range(cfg.min_points..=cfg.max_points);
        let space = random_space(&mut rng, n);
        let eps = random_eps(&mut rng, &space);
        let f = random_table(&mut rng, n);
        let g = random_table(&mut rng, n);
        let alpha = rng.gen_range(0.0..3.0);
        let beta = rng.gen_range(-2.0..2.0);

        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut rng);
        let mask = |sel: &[usize]| -> Vec<f64> {
            let mut t = vec![0.0; n];
            for &i in sel {
                t[i] = 1.0;
            }
            t
        };
        let k = rng.gen_range(0..=n);
        let mut a: Vec<PointId> = order[..k].iter().map(|&i| PointId(i)).collect();
        a.sort_unstable();
        let k2 = rng.gen_range(k..=n);
        let mut a_wider: Vec<PointId> = order[..k2].iter().map(|&i| PointId(i)).collect();
        a_wider.sort_unstable();
        let ta = mask(&order[..k]);
        let t_rest = mask(&order[k..]);

        // Disjoint nonempty parts of a random prefix of `order`.
        let m = if n >= 2 {
            rng.gen_range(2..=n.min(4))
        } else {
            1
        };
        let used = rng.gen_range(m..=n);
        let mut cuts: Vec<usize> = (1..used).collect();
        cuts.shuffle(&mut rng);
        let mut cuts: Vec<usize> = cuts[..m - 1].to_vec();
        cuts.sort_unstable();
        cuts.insert(0, 0);
        cuts.push(used);
        let parts: Vec<Vec<f64>> = cuts.windows(2).map(|w| mask(&order[w[0]..w[1]])).collect();
        let t_union = mask(&order[..used]);

        let mm = rng.gen_range(1..=n.min(3));
        order.shuffle(&mut rng);
        let mut mod_points: Vec<PointId> = order[..mm].iter().map(|&i| PointId(i)).collect();
        mod_points.sort_unstable();
        let mod_deltas = (0..mm).map(|_| rng.gen_range(-2.0..2.0)).collect();

        Self {
            index,
            space,
            eps,
            f,
            g,
            alpha,
            beta,
            a,
            a_wider,
            ta,
            t_rest,
            parts,
            t_union,
            mod_points,
            mod_deltas,
        }
    }

    fn algebra(
        &self,
        graph: &ConflictGraph,
        cap: usize,
        bounds: &BoundsFn<'_>,
    ) -> Result<CheckReport> {
        let mut b = |t: &[f64]| bounds(graph, t, cap);
        algebra_items(
            &mut b,
            &self.f,
            &self.g,
            self.alpha,
            self.beta,
            self.space.members(),
        )
    }

    fn heuristic(&self, graph: &ConflictGraph, cfg: &VerifyConfig) -> Result<CheckReport> {
        let exact = bounds_exact_on(graph, &self.f, cfg.cap)?;
        let search =
            SearchConfig::default().with_seed(cfg.seed ^ (self.index as u64).rotate_left(32));
        let heur = bounds_heuristic_on(graph, &self.f, &search)?;
        let mut r = CheckReport::new("heuristic_containment");
        r.assert_le("lower", exact.lower, heur.lower, SLACK);
        r.assert_le("upper", heur.upper, exact.upper, SLACK);
        for (name, w) in [
            ("witness_low", &heur.witness_low),
            ("witness_high", &heur.witness_high),
        ] {
            let ok = crate::lattice::is_lattice(&self.space, &w.members, self.eps)?;
            r.push(name, crate::check::pass_if(ok), format!("{:?}", w.members));
        }
        Ok(r)
    }

    /// `B = K` reduces the ratio to the indicator mean; enlarging `A` can only raise it.
    fn ratio(&self, graph: &ConflictGraph, cap: usize) -> Result<CheckReport> {
        let all = self.space.members();
        let mut r = CheckReport::new("ratio");
        let narrow = boundary_ratio_bounds(&self.a, all, &self.space, self.eps, cap, None)?;
        let wide = boundary_ratio_bounds(&self.a_wider, all, &self.space, self.eps, cap, None)?;
        let ind = bounds_exact_on(graph, &self.ta, cap)?;
        match (
            narrow.ratio_low,
            narrow.ratio_high,
            wide.ratio_low,
            wide.ratio_high,
        ) {
            (Some(nl), Some(nh), Some(wl), Some(wh)) => {
                r.assert_eq("B=K/lower", nl, ind.lower, SLACK);
                r.assert_eq("B=K/upper", nh, ind.upper, SLACK);
                r.assert_le("monotone/lower", nl, wl, SLACK);
                r.assert_le("monotone/upper", nh, wh, SLACK);
            }
            _ => r.push("defined", Status::Fail, "B = K must meet every lattice"),
        }
        r.push(
            "skipped==0",
            crate::check::pass_if(narrow.skipped == Some(0)),
            format!("{:?}", narrow.skipped),
        );
        Ok(r)
    }
}

/// Above the diameter every lattice is a singleton; below the smallest
/// positive distance the whole space is the only lattice (when no two points
/// coincide).
fn extremes(inst: &Instance, cap: usize) -> Result<CheckReport> {
    let space = &inst.space;
    let n = space.len();
    let f = &inst.f;
    let mut r = CheckReport::new("extremes");
    let big = ConflictGraph::new(space, 2.0 * diameter(space) + 1.0)?;
    let b = bounds_exact_on(&big, f, cap)?;
    let (min, max) = f
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
            (lo.min(v), hi.max(v))
        });
    r.assert_eq("coarse/lower", b.lower, min, 0.0);
    r.assert_eq("coarse/upper", b.upper, max, 0.0);
    r.push(
        "coarse/count",
        crate::check::pass_if(b.lattice_count == Some(n)),
        format!("{:?} lattices, {n} points", b.lattice_count),
    );
    let coincident = (0..n).any(|i| (i + 1..n).any(|j| space.raw(i, j) == 0.0));
    match min_positive_distance(space) {
        Some(d) if !coincident => {
            let fine = ConflictGraph::new(space, 0.5 * d)?;
            let b = bounds_exact_on(&fine, f, cap)?;
            let mean = f.iter().sum::<f64>() / n as f64;
            r.assert_eq("fine/lower", b.lower, mean, 0.0);
            r.assert_eq("fine/upper", b.upper, mean, 0.0);
            r.push(
                "fine/count",
                crate::check::pass_if(b.lattice_count == Some(1)),
                format!("{:?}", b.lattice_count),
            );
        }
        _ => r.push(
            "fine",
            Status::Inconclusive,
            "coincident points or a single point",
        ),
    }
    Ok(r)
}

/// `f(x) = x` and `f + g/k` on a 16-point grid, `g` a bounded polynomial.
fn grid_uniform_limit() -> Result<(CheckReport, usize, f64)> {
    let grid = MetricSpace::uniform_grid(16)?;
    let f = FnSpec::coordinate(0);
    let g = FnSpec::Polynomial {
        axis: 0,
        coefficients: vec![-0.5, 2.0, -3.0],
    };
    let schedule = Schedule::new(0.5, 0.5, 8)?;
    let params = SweepParams::default();
    let r = uniform_limit_check(&grid, &f, &g, &[1, 2, 4, 8, 16], &schedule, &params, 1e-9)?;
    Ok((r, grid.len(), schedule.eps(schedule.steps - 1)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> VerifyConfig {
        VerifyConfig {
            seed: 11,
            instances: 40,
            max_points: 9,
            ..VerifyConfig::default()
        }
    }

    #[test]
    fn registry_passes() {
        let r = run(&small()).unwrap();
        assert!(r.passed(), "{r}");
        assert!(r.checks > 40 * 20);
    }

    #[test]
    fn deterministic_log() {
        let a = run(&small()).unwrap();
        let b = run(&small()).unwrap();
        assert_eq!(a.to_string(), b.to_string());
    }

    /// Running minimum kept with `>` instead of `<`: the "lower" bound becomes the max.
    fn flipped(graph: &ConflictGraph, table: &[f64], cap: usize) -> Result<(f64, f64)> {
        let (mut lo, mut hi) = (None::<f64>, None::<f64>);
        graph.for_each_lattice(cap, |set| {
            let avg = set
                .iter()
                .map(|&v| table[graph.members()[v].index()])
                .sum::<f64>()
                / set.len() as f64;
            if lo.is_none_or(|b| avg > b) {
                lo = Some(avg);
            }
            if hi.is_none_or(|b| avg > b) {
                hi = Some(avg);
            }
        })?;
        Ok((lo.unwrap(), hi.unwrap()))
    }

    #[test]
    fn flipped_comparator_is_caught() {
        let r = run_with(&small(), &flipped).unwrap();
        assert!(!r.passed());
        assert!(r
            .failures
            .iter()
            .any(|f| f.check == "algebra" && f.label.starts_with("negation")));
        let line = r.failures[0].to_string();
        assert!(line.contains("seed=11") && line.contains("instance=") && line.contains("eps="));
    }

    #[test]
    fn rejects_bad_config() {
        let cfg = VerifyConfig {
            min_points: 5,
            max_points: 3,
            ..VerifyConfig::default()
        };
        assert!(run(&cfg).is_err());
    }
}
