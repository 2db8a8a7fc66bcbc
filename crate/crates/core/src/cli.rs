//! The `randset` command line.
//!
//! Exit codes: 0 on success, 1 on usage or input errors, 2 when a simulation
//! ran but one of its verdicts failed.

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Parser, Subcommand};
use serde_json::json;

use crate::convex::{hausdorff, hausdorff_via_support, nearest_point, support_face};
use crate::error::{Error, Result};
use crate::io::{self, RunInputs, RunManifest};
use crate::limit::{
    clt_exposed_experiment, clt_facet_experiment, clt_hausdorff_experiment,
    clt_tangent_experiment, convexification_check, facet_frequency_experiment, lln_experiment,
    ExperimentConfig, ExperimentKind, ExperimentReport,
};
use crate::random_set::DiscreteRandomSet;
use crate::vector::{Direction, Vector};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_VERDICT: i32 = 2;

/// Comma-separated list, e.g. `1,0.5,-2`.
#[derive(Clone, Debug)]
struct List<T>(Vec<T>);

impl<T: FromStr> FromStr for List<T>
where
    T::Err: std::fmt::Display,
{
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        s.split(',')
            .map(|part| part.trim().parse::<T>().map_err(|e| format!("{part:?}: {e}")))
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(List)
    }
}

fn parse_kind(s: &str) -> std::result::Result<ExperimentKind, String> {
    [
        ExperimentKind::Lln,
        ExperimentKind::CltHausdorff,
        ExperimentKind::CltExposed,
        ExperimentKind::CltTangent,
        ExperimentKind::CltFacet,
        ExperimentKind::FacetFreq,
    ]
    .into_iter()
    .find(|k| k.name() == s)
    .ok_or_else(|| {
        format!("unknown experiment {s:?}; expected lln, clt-hausdorff, clt-exposed, clt-tangent, clt-facet or facet-freq")
    })
}

#[derive(Parser, Debug)]
#[command(name = "randset", version, about = "Minkowski means of random convex polytopes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the vertices of the expectation of a scene.
    Expectation {
        #[arg(long)]
        scene: PathBuf,
    },
    /// Print the exact and support-grid Hausdorff distance of two bodies.
    Hausdorff {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value_t = 3600)]
        grid: usize,
    },
    /// Print the face exposed by a direction in a body (or a scene's expectation).
    Face {
        #[arg(long)]
        scene: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        dir: List<f64>,
    },
    /// Print the nearest point of a body (or a scene's expectation) to a point.
    Nearest {
        #[arg(long)]
        scene: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        point: List<f64>,
    },
    /// Print convexification gaps against the Shapley–Folkman bound.
    SfsBound {
        #[arg(long)]
        sets: PathBuf,
        /// Prefix lengths; defaults to all sets.
        #[arg(long)]
        ns: Option<List<usize>>,
    },
    /// Run a seeded Monte Carlo experiment and write its artifacts.
    Simulate {
        #[arg(value_parser = parse_kind)]
        experiment: ExperimentKind,
        #[arg(long)]
        scene: PathBuf,
        #[arg(long)]
        seed: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        reps: u64,
        #[arg(long)]
        sizes: List<usize>,
        #[arg(long, allow_hyphen_values = true)]
        dir: Option<List<f64>>,
        #[arg(long, allow_hyphen_values = true)]
        point: Option<List<f64>>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Re-run a simulation from its manifest.
    Replay {
        manifest: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

/// Parses `argv` (including the program name), runs, and returns the exit code.
pub fn run_command<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_ERROR
        }
    }
}

fn print_json(value: &impl serde::Serialize) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn dispatch(command: Command) -> Result<i32> {
    match command {
        Command::Expectation { scene } => {
            let ey = io::read_scene(&scene)?.expectation()?;
            for v in ey.vertices() {
                println!("{}", join(v.coords()));
            }
        }
        Command::Hausdorff { a, b, grid } => {
            let a = io::parse_body(&io::read_text(&a)?)?;
            let b = io::parse_body(&io::read_text(&b)?)?;
            let exact = hausdorff(&a, &b)?;
            let approx = hausdorff_via_support(&a, &b, grid)?;
            print_json(&json!({ "exact": exact, "grid": approx, "grid_size": grid }))?;
        }
        Command::Face { scene, dir } => {
            let body = io::parse_body(&io::read_text(&scene)?)?;
            let u = Vector::new(dir.0)?;
            print_json(&support_face(&body, &u)?)?;
        }
        Command::Nearest { scene, point } => {
            let body = io::parse_body(&io::read_text(&scene)?)?;
            let x = Vector::new(point.0)?;
            let k = nearest_point(&body, &x)?;
            print_json(&json!({ "nearest": k, "distance": k.distance(&x) }))?;
        }
        Command::SfsBound { sets, ns } => {
            let sets = io::parse_sets(&io::read_text(&sets)?)?;
            let ns = ns.map_or_else(|| vec![sets.len()], |l| l.0);
            let report = convexification_check(&sets, &ns)?;
            print_json(&report)?;
            return Ok(if report.all_within { EXIT_OK } else { EXIT_VERDICT });
        }
        Command::Simulate {
            experiment,
            scene,
            seed,
            reps,
            sizes,
            dir,
            point,
            out,
        } => {
            let y = io::read_scene(&scene)?;
            let config = ExperimentConfig::new(seed, sizes.0, reps as usize);
            let inputs = RunInputs {
                command: "simulate".into(),
                direction: dir.map(|l| l.0),
                point: point.map(|l| l.0),
            };
            return simulate(experiment, &y, &config, &inputs, &out);
        }
        Command::Replay { manifest, out } => {
            let RunManifest {
                experiment,
                config,
                direction,
                point,
                scene,
                ..
            } = io::read_manifest(&manifest)?;
            let y = scene.to_random_set()?;
            let inputs = RunInputs {
                command: "replay".into(),
                direction,
                point,
            };
            return simulate(experiment, &y, &config, &inputs, &out);
        }
    }
    Ok(EXIT_OK)
}

fn join(coords: &[f64]) -> String {
    coords.iter().map(f64::to_string).collect::<Vec<_>>().join(",")
}

/// Runs `kind` on `y` with the direction or point in `inputs`.
pub fn run_experiment(
    kind: ExperimentKind,
    y: &DiscreteRandomSet,
    config: &ExperimentConfig,
    inputs: &RunInputs,
) -> Result<ExperimentReport> {
    let direction = || -> Result<Direction> {
        let raw = inputs
            .direction
            .clone()
            .ok_or_else(|| Error::Config(format!("{} requires --dir", kind.name())))?;
        let u = Direction::from_coords(raw)?;
        if u.dim() != y.dim() {
            return Err(Error::DimensionMismatch {
                expected: y.dim(),
                found: u.dim(),
            });
        }
        Ok(u)
    };
    match kind {
        ExperimentKind::Lln => lln_experiment(y, config),
        ExperimentKind::CltHausdorff => clt_hausdorff_experiment(y, config),
        ExperimentKind::CltExposed => clt_exposed_experiment(y, &direction()?, config),
        ExperimentKind::CltTangent => clt_tangent_experiment(y, &direction()?, config),
        ExperimentKind::FacetFreq => facet_frequency_experiment(y, &direction()?, config),
        ExperimentKind::CltFacet => {
            let raw = inputs
                .point
                .clone()
                .ok_or_else(|| Error::Config("clt-facet requires --point".into()))?;
            clt_facet_experiment(y, &Vector::new(raw)?, config)
        }
    }
}

fn simulate(
    kind: ExperimentKind,
    y: &DiscreteRandomSet,
    config: &ExperimentConfig,
    inputs: &RunInputs,
    out: &Path,
) -> Result<i32> {
    let report = run_experiment(kind, y, config, inputs)?;
    io::write_report(&report, y, inputs, out)?;
    for v in &report.verdicts {
        let status = match (v.skipped, v.passed) {
            (true, _) => "SKIP",
            (false, true) => "PASS",
            (false, false) => "FAIL",
        };
        println!("{status} {}: {}", v.name, v.detail);
    }
    if report.diagnostics.discarded > 0 || report.diagnostics.facet_excursions > 0 {
        println!(
            "diagnostics: {} discarded replications, {} facet excursions",
            report.diagnostics.discarded, report.diagnostics.facet_excursions
        );
    }
    println!("artifacts written to {}", out.display());
    Ok(if report.passed() { EXIT_OK } else { EXIT_VERDICT })
}
