//! `epsmean` command-line front end.
//!
//! Exit codes: 0 success, 1 validation failure, 2 unreadable or malformed
//! input, 3 enumeration cap exceeded, 4 violated precondition.

mod render;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use epsmean::io::{parse_function, parse_region, parse_space};
use epsmean::measure::thin_boundary_verdict;
use epsmean::verify::{self, VerifyConfig};
use epsmean::{
    diameter, enumerate_lattices, relative_measure, sweep, validate_metric, Domain, Error,
    MetricSpace, PointId, Schedule, SearchConfig, SweepParams, DEFAULT_CAP,
};

#[derive(Parser, Debug)]
#[command(
    name = "epsmean",
    version,
    about = "Lattice means on finite metric spaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the metric axioms of a space document.
    SpaceValidate {
        space: PathBuf,
        /// Slack allowed in symmetry, identity and triangle checks.
        #[arg(long, default_value_t = 1e-9)]
        tolerance: f64,
        #[command(flatten)]
        output: Output,
    },
    /// List every ε-lattice in canonical order.
    Lattices {
        space: PathBuf,
        #[arg(long)]
        eps: f64,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Lower and upper means of a function along a geometric ε schedule.
    Sweep {
        space: PathBuf,
        function: PathBuf,
        #[command(flatten)]
        sweep: SweepArgs,
        #[command(flatten)]
        output: Output,
    },
    /// Relative measure of region A in region B, and the boundary-ratio trail per superset.
    Measure {
        space: PathBuf,
        region_a: PathBuf,
        region_b: PathBuf,
        /// Region documents of supersets of B for the ratio trails; defaults to the whole space.
        #[arg(long = "superset")]
        supersets: Vec<PathBuf>,
        /// Largest disagreement allowed between superset limits.
        #[arg(long, default_value_t = 1e-9)]
        agreement_tol: f64,
        #[command(flatten)]
        sweep: SweepArgs,
        #[command(flatten)]
        output: Output,
    },
    /// Run the invariant registry over random instances.
    Verify {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        instances: usize,
        #[arg(long, default_value_t = 1)]
        min_points: usize,
        #[arg(long, default_value_t = 14)]
        max_points: usize,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Args, Debug)]
struct SweepArgs {
    /// First ε; defaults to the diameter of the domain.
    #[arg(long)]
    eps0: Option<f64>,
    #[arg(long, default_value_t = 0.5)]
    ratio: f64,
    #[arg(long, default_value_t = 8)]
    steps: usize,
    #[arg(long, default_value_t = 1e-9)]
    tol_gap: f64,
    #[arg(long, default_value_t = 1e-9)]
    tol_drift: f64,
    #[arg(long, default_value_t = 3)]
    stable_steps: usize,
    /// Exact gap at or above which trailing steps count as evidence of no mean.
    #[arg(long, default_value_t = 0.1)]
    no_mean_gap: f64,
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 16)]
    restarts: usize,
}

impl SweepArgs {
    fn schedule(&self, diam: f64) -> Result<Schedule, Error> {
        let eps0 = self.eps0.unwrap_or(if diam > 0.0 { diam } else { 1.0 });
        Schedule::new(eps0, self.ratio, self.steps)
    }

    fn params(&self) -> SweepParams {
        SweepParams {
            tol_gap: self.tol_gap,
            tol_drift: self.tol_drift,
            stable_steps: self.stable_steps,
            no_mean_gap: self.no_mean_gap,
            cap: self.cap,
            search: SearchConfig {
                restarts: self.restarts,
                rng_seed: self.seed,
                ..SearchConfig::default()
            },
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args, Debug)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// A failed run: exit code plus message for standard error.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_)
            | Error::EmptySpace
            | Error::BadPointId { .. }
            | Error::MissingCoordinates
            | Error::NonSquareMatrix { .. }
            | Error::DimensionMismatch { .. } => 2,
            Error::NegativeDistance { .. } | Error::NonFinite { .. } => 1,
            Error::CapExceeded { .. } => 3,
            _ => 4,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

/// A completed run: rendered output plus exit code.
struct Done {
    text: String,
    code: u8,
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure {
        code: 2,
        message: format!("{}: {e}", path.display()),
    })
}

fn load_space(path: &Path) -> Result<MetricSpace, Failure> {
    Ok(parse_space(&read(path)?)?)
}

/// Loads a space and refuses it unless it satisfies the metric axioms.
fn load_metric(path: &Path) -> Result<MetricSpace, Failure> {
    let space = load_space(path)?;
    let report = validate_metric(&space, 1e-9);
    if !report.is_valid() {
        return Err(Failure {
            code: 1,
            message: format!(
                "{}: not a metric ({} violations); run space-validate for the listing",
                path.display(),
                report.violations.len()
            ),
        });
    }
    Ok(space)
}

fn load_region(path: &Path, space: &MetricSpace) -> Result<Vec<PointId>, Failure> {
    Ok(parse_region(&read(path)?)?.resolve(space)?)
}

fn run(cli: Cli) -> Result<(Done, Output), Failure> {
    Ok(match cli.command {
        Command::SpaceValidate {
            space,
            tolerance,
            output,
        } => {
            let s = load_space(&space)?;
            let report = validate_metric(&s, tolerance);
            let code = if report.is_valid() { 0 } else { 1 };
            let text = render::validation(&report, output.format == Format::Json);
            (Done { text, code }, output)
        }
        Command::Lattices {
            space,
            eps,
            cap,
            output,
        } => {
            let s = load_space(&space)?;
            match enumerate_lattices(&s, eps, cap) {
                Ok(all) => {
                    let text = render::lattices(&all, eps, output.format == Format::Json);
                    (Done { text, code: 0 }, output)
                }
                Err(Error::CapExceeded { cap }) => {
                    let text = render::cap_exceeded(eps, cap, output.format == Format::Json);
                    (Done { text, code: 3 }, output)
                }
                Err(e) => return Err(e.into()),
            }
        }
        Command::Sweep {
            space,
            function,
            sweep: args,
            output,
        } => {
            let s = load_metric(&space)?;
            let f = parse_function(&read(&function)?)?;
            f.check(&s)?;
            let schedule = args.schedule(diameter(&s))?;
            let res = sweep(&s, &f, &schedule, &args.params())?;
            let text = render::sweep(&res, output.format == Format::Json);
            (Done { text, code: 0 }, output)
        }
        Command::Measure {
            space,
            region_a,
            region_b,
            supersets,
            agreement_tol,
            sweep: args,
            output,
        } => {
            let s = load_metric(&space)?;
            let a = load_region(&region_a, &s)?;
            let b = load_region(&region_b, &s)?;
            let ks = supersets
                .iter()
                .map(|p| load_region(p, &s))
                .collect::<Result<Vec<_>, _>>()?;
            let ks = if ks.is_empty() {
                vec![s.members().to_vec()]
            } else {
                ks
            };
            let params = args.params();
            let sub_b = epsmean::restrict(&s, b.iter().copied())?;
            let rel = relative_measure(&s, &a, &b, &args.schedule(diameter(&sub_b))?, &params)?;
            let domains = ks
                .iter()
                .map(|k| epsmean::restrict(&s, k.iter().copied()))
                .collect::<Result<Vec<_>, _>>()?;
            let refs: Vec<&dyn Domain> = domains.iter().map(|d| d as &dyn Domain).collect();
            let k_diam = refs.iter().map(|d| diameter(*d)).fold(0.0, f64::max);
            let thin = thin_boundary_verdict(
                &a,
                &b,
                &refs,
                &args.schedule(k_diam)?,
                &params,
                agreement_tol,
            )?;
            let text = render::measure(&rel, &thin, output.format == Format::Json);
            (Done { text, code: 0 }, output)
        }
        Command::Verify {
            seed,
            instances,
            min_points,
            max_points,
            cap,
            output,
        } => {
            let cfg = VerifyConfig {
                seed,
                instances,
                min_points,
                max_points,
                cap,
                ..VerifyConfig::default()
            };
            let report = verify::run(&cfg)?;
            let code = if report.passed() { 0 } else { 1 };
            let text = render::verify(&report, output.format == Format::Json);
            (Done { text, code }, output)
        }
    })
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    let res = match out {
        Some(p) => fs::write(p, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    };
    res.map_err(|e| Failure {
        code: 2,
        message: format!("writing output: {e}"),
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let outcome = run(cli).and_then(|(done, output)| {
        emit(&done.text, output.out.as_deref())?;
        Ok(done.code)
    });
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
