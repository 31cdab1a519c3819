//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use epsmean::instances::{interleaved, interval_ids, random_eps, random_space, random_table};
use epsmean::mean::{regularity_family, uniform_limit_check, Growth};
use epsmean::measure::composition_check;
use epsmean::oracle::{oracle_bounds, oracle_lattices};
use epsmean::verify::{self, VerifyConfig};
use epsmean::{
    bounds_exact, bounds_heuristic, enumerate_lattices, ids, sweep, Domain, FnSpec, MetricSpace,
    NamedMetric, Schedule, SearchConfig, SweepParams, Verdict, DEFAULT_CAP,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, u64, fn() -> Outcome);

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn stream(seed: u64, i: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(i as u64);
    rng
}

fn oracle_equivalence() -> Outcome {
    let mut worst = 0.0f64;
    for i in 0..500 {
        let mut rng = stream(1, i);
        let n = rng.gen_range(1..=12);
        let space = random_space(&mut rng, n);
        let eps = random_eps(&mut rng, &space);
        let f = FnSpec::table(random_table(&mut rng, n));
        let fast = enumerate_lattices(&space, eps, DEFAULT_CAP).map_err(|e| e.to_string())?;
        let fast: Vec<_> = fast.into_iter().map(|l| l.members).collect();
        let slow = oracle_lattices(&space, eps).map_err(|e| e.to_string())?;
        ensure(
            fast == slow,
            format!("instance {i}: lattice sets differ (eps={eps:e})"),
        )?;
        let b = bounds_exact(&space, &f, eps, DEFAULT_CAP).map_err(|e| e.to_string())?;
        let o = oracle_bounds(&space, &f, eps).map_err(|e| e.to_string())?;
        let d = (b.lower - o.lower).abs().max((b.upper - o.upper).abs());
        worst = worst.max(d);
        ensure(d <= 1e-12, format!("instance {i}: bounds differ by {d:e}"))?;
    }
    Ok(format!("500 instances, max bound diff {worst:e}"))
}

fn proposition_suite() -> Outcome {
    let cfg = VerifyConfig {
        seed: 2,
        instances: 200,
        max_points: 14,
        uniform_limit: false,
        ..VerifyConfig::default()
    };
    let r = verify::run(&cfg).map_err(|e| e.to_string())?;
    ensure(r.passed(), r.to_string())?;
    Ok(format!("200 instances, {} checks, 0 failures", r.checks))
}

fn no_mean_counterexample() -> Outcome {
    let (k, first) = interleaved();
    let f = FnSpec::Indicator { ids: first.clone() };
    let b = bounds_exact(&k, &f, 0.125, DEFAULT_CAP).map_err(|e| e.to_string())?;
    ensure(
        b.lower == 0.0 && b.upper == 1.0,
        format!("eps=1/8 bounds ({}, {})", b.lower, b.upper),
    )?;
    let second: Vec<_> = (0..k.len()).filter(|i| i % 2 == 1).collect();
    ensure(
        b.witness_high.members == first && b.witness_low.members == ids(second),
        "witnesses are not the pure classes",
    )?;
    let schedule = Schedule::new(0.125, 0.75, 3).map_err(|e| e.to_string())?;
    let s = sweep(&k, &f, &schedule, &SweepParams::default()).map_err(|e| e.to_string())?;
    ensure(
        s.verdict == Verdict::NoMean,
        format!("verdict {:?}", s.verdict),
    )?;
    Ok("l=0, u=1 exactly; sweep verdict NoMean".into())
}

fn continuous_mean() -> Outcome {
    let grid = MetricSpace::uniform_grid(64).map_err(|e| e.to_string())?;
    let schedule = Schedule::new(0.5, 0.5, 8).map_err(|e| e.to_string())?;
    let s = sweep(
        &grid,
        &FnSpec::coordinate(0),
        &schedule,
        &SweepParams::default(),
    )
    .map_err(|e| e.to_string())?;
    let est = s.mean_estimate.ok_or(format!("verdict {:?}", s.verdict))?;
    ensure((est - 0.5).abs() <= 1e-9, format!("estimate {est:e}"))?;
    Ok(format!("HasMean estimate={est:.16e}"))
}

fn thin_boundary() -> Outcome {
    let grid = MetricSpace::uniform_grid(201).map_err(|e| e.to_string())?;
    let a = interval_ids(&grid, 0.0, 0.25);
    let b = interval_ids(&grid, 0.0, 0.5);
    let c = grid.members().to_vec();
    let schedule = Schedule::new(0.032, 0.5, 6).map_err(|e| e.to_string())?;
    let out = composition_check(&a, &b, &c, &grid, &schedule, &SweepParams::default(), 0.02)
        .map_err(|e| e.to_string())?;
    let (ab, bc, ac) = (
        out.ab.value.ok_or(format!("(A|B) {:?}", out.ab.verdict))?,
        out.bc.value.ok_or(format!("(B|C) {:?}", out.bc.verdict))?,
        out.ac.value.ok_or(format!("(A|C) {:?}", out.ac.verdict))?,
    );
    ensure(out.report.passed(), out.report.to_string())?;
    for (got, want, name) in [
        (ab, 51.0 / 101.0, "A|B"),
        (bc, 101.0 / 201.0, "B|C"),
        (ac, 51.0 / 201.0, "A|C"),
    ] {
        ensure(
            (got - want).abs() <= 1e-12,
            format!("({name}) = {got:e}, expected {want:e}"),
        )?;
    }
    Ok(format!("|(A|C) - (A|B)(B|C)| = {:e}", (ac - ab * bc).abs()))
}

fn heuristic_containment() -> Outcome {
    let mut hits = 0;
    for i in 0..100 {
        let mut rng = stream(6, i);
        let n = rng.gen_range(1..=18);
        let space = random_space(&mut rng, n);
        let eps = random_eps(&mut rng, &space);
        let f = FnSpec::table(random_table(&mut rng, n));
        let ex = bounds_exact(&space, &f, eps, DEFAULT_CAP).map_err(|e| e.to_string())?;
        let cfg = SearchConfig::default().with_seed(i as u64);
        let h = bounds_heuristic(&space, &f, eps, &cfg).map_err(|e| e.to_string())?;
        ensure(
            h.lower >= ex.lower - 1e-12 && h.upper <= ex.upper + 1e-12,
            format!(
                "instance {i}: heuristic [{}, {}] outside [{}, {}]",
                h.lower, h.upper, ex.lower, ex.upper
            ),
        )?;
        if h.lower == ex.lower && h.upper == ex.upper {
            hits += 1;
        }
    }
    ensure(hits >= 90, format!("exact optima on {hits}/100"))?;
    Ok(format!("contained on 100/100, exact optima on {hits}/100"))
}

fn uniform_limit() -> Outcome {
    let grid = MetricSpace::uniform_grid(64).map_err(|e| e.to_string())?;
    let g = FnSpec::Polynomial {
        axis: 0,
        coefficients: vec![1.0, -4.0, 3.0],
    };
    let schedule = Schedule::new(0.5, 0.5, 8).map_err(|e| e.to_string())?;
    let r = uniform_limit_check(
        &grid,
        &FnSpec::coordinate(0),
        &g,
        &[1, 2, 4, 8, 16],
        &schedule,
        &SweepParams::default(),
        1e-9,
    )
    .map_err(|e| e.to_string())?;
    ensure(r.passed() && r.items.len() == 5, r.to_string())?;
    Ok("n in {1,2,4,8,16} within max|g|/n + 1e-9".into())
}

/// Grids are integer-spaced so that distance `2 * spacing` is exact: on
/// `k / (n - 1)` coordinates rounding turns some second neighbours into
/// conflicts. Lattice structure is invariant under scaling.
fn regularity() -> Outcome {
    let grids: Vec<MetricSpace> = [16usize, 32, 64]
        .iter()
        .map(|&n| {
            MetricSpace::from_coords(
                (0..n).map(|k| vec![k as f64]).collect(),
                NamedMetric::Euclidean,
            )
        })
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    let family: Vec<(&dyn Domain, f64)> = grids.iter().map(|g| (g as &dyn Domain, 2.0)).collect();
    let p = regularity_family(&family, 10_000_000, &SearchConfig::default())
        .map_err(|e| e.to_string())?;
    let sizes: Vec<usize> = p.entries.iter().map(|e| e.min_size).collect();
    ensure(
        p.entries.iter().all(|e| e.exact),
        "minimum sizes not proven exact",
    )?;
    // neighbours conflict, so this is the independent domination number of a path
    ensure(
        sizes == [6, 11, 22],
        format!("sizes {sizes:?}, expected ceil(n/3)"),
    )?;
    ensure(
        p.verdict == Growth::GrowingUnboundedLikely,
        format!("sizes {sizes:?}"),
    )?;
    Ok(format!("minimum lattice sizes {sizes:?}"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("oracle equivalence", 60, oracle_equivalence),
        ("fixed-eps proposition suite", 120, proposition_suite),
        ("no-mean counterexample", 5, no_mean_counterexample),
        ("mean of a continuous function", 10, continuous_mean),
        ("thin-boundary multiplicativity", 30, thin_boundary),
        ("heuristic containment", 120, heuristic_containment),
        ("uniform limits", 20, uniform_limit),
        ("regularity profile", 20, regularity),
    ];
    let mut failed = 0;
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(msg) if took > Duration::from_secs(*budget) => {
                Err(format!("{msg}; over the {budget} s budget"))
            }
            other => other,
        };
        let (tag, msg) = match &outcome {
            Ok(m) => ("PASS", m),
            Err(m) => ("FAIL", m),
        };
        failed += outcome.is_err() as usize;
        println!(
            "{tag} {} {name} ({:.2} s): {msg}",
            i + 1,
            took.as_secs_f64()
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
