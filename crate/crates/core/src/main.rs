use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand};
use serde_json::{json, Value};

use timelike_hilbert::cli::{self, round_json, IndicatrixFormat};
use timelike_hilbert::finsler::Quadrant;
use timelike_hilbert::golden;
use timelike_hilbert::sphere::{Chart, SpherePoint};
use timelike_hilbert::verify::VerifyOptions;
use timelike_hilbert::GeometryError;

/// Timelike Hilbert geometry of the antipodal simplex pair on the 2-sphere.
#[derive(Parser)]
#[command(name = "tlh", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Order and timelike distances between two points.
    #[command(group(ArgGroup::new("coords").required(true).args(["sphere", "chart"])))]
    Dist {
        /// Points given as x1,x2,x3.
        #[arg(long)]
        sphere: bool,
        /// Points given as u,v in a chart such as 2- or 1+.
        #[arg(long, allow_hyphen_values = true)]
        chart: Option<String>,
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        /// Exit with status 3 when the points are not related.
        #[arg(long)]
        strict: bool,
    },
    /// Minkowski functional of a chart tangent vector.
    #[command(group(ArgGroup::new("quadrant").required(true).args(["q1", "q2"])))]
    Finsler {
        #[arg(long)]
        q1: bool,
        #[arg(long)]
        q2: bool,
        #[arg(allow_hyphen_values = true)]
        base: String,
        #[arg(allow_hyphen_values = true)]
        vector: String,
    },
    /// Sampled unit level set of a normed region.
    Indicatrix {
        #[arg(long = "type")]
        kind: String,
        #[arg(long, default_value_t = 64)]
        count: usize,
        #[arg(long, default_value = "csv")]
        format: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a property suite.
    Verify {
        suite: String,
        #[arg(long)]
        samples: Option<usize>,
        /// Defaults to $TLH_DEFAULT_SEED, then 0.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        tol: Option<f64>,
        /// Include wall time in the report.
        #[arg(long)]
        timing: bool,
        /// Rewrite the golden table from its oracles (golden suite only).
        #[arg(long)]
        regen: bool,
    },
}

enum Failure {
    Domain(GeometryError),
    SuiteFailed,
    Unrelated,
}

impl From<GeometryError> for Failure {
    fn from(e: GeometryError) -> Self {
        Failure::Domain(e)
    }
}

fn print(v: Value) {
    println!("{}", serde_json::to_string_pretty(&round_json(v)).expect("serializable"));
}

fn io_error(e: std::io::Error) -> Failure {
    Failure::Domain(GeometryError::InvalidArgument(e.to_string()))
}

fn default_seed() -> Result<u64, Failure> {
    match std::env::var("TLH_DEFAULT_SEED") {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| GeometryError::InvalidArgument(format!("TLH_DEFAULT_SEED is not an integer: '{s}'")).into()),
        Err(_) => Ok(0),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Dist { sphere, chart, a, b, strict } => {
            let out = if sphere {
                let p = SpherePoint::from_array(cli::parse_coords(&a)?)?;
                let q = SpherePoint::from_array(cli::parse_coords(&b)?)?;
                cli::dist(&p, &q, strict)
            } else {
                let chart: Chart = chart.expect("group requires one").parse()?;
                cli::dist_chart(chart, cli::parse_coords(&a)?, cli::parse_coords(&b)?, strict)
            };
            match out {
                Err(GeometryError::NotRelated) if strict => return Err(Failure::Unrelated),
                out => print(out?),
            }
        }
        Command::Finsler { q1, q2: _, base, vector } => {
            let quadrant = if q1 { Quadrant::Q1 } else { Quadrant::Q2 };
            print(cli::finsler(quadrant, cli::parse_coords(&base)?, cli::parse_coords(&vector)?)?);
        }
        Command::Indicatrix { kind, count, format, out } => {
            let format: IndicatrixFormat = format.parse()?;
            let text = cli::indicatrix(cli::parse_kind(&kind)?, count, format)?;
            match out {
                Some(path) => std::fs::write(path, text).map_err(io_error)?,
                None => print!("{text}"),
            }
        }
        Command::Verify { suite, samples, seed, tol, timing, regen } => {
            if regen {
                if suite != "golden" {
                    return Err(GeometryError::InvalidArgument("--regen applies to the golden suite only".into()).into());
                }
                let path = golden::golden_path();
                std::fs::write(&path, golden::regenerate()).map_err(io_error)?;
                print(json!({ "regenerated": path.display().to_string(), "records": golden::cases().len() }));
                return Ok(());
            }
            let seed = match seed {
                Some(s) => s,
                None => default_seed()?,
            };
            let (report, pass) = cli::verify(&suite, &VerifyOptions { samples, seed, tol, timing })?;
            print(report);
            if !pass {
                return Err(Failure::SuiteFailed);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::SuiteFailed) => ExitCode::from(1),
        Err(Failure::Domain(e)) => {
            eprintln!("tlh: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Unrelated) => {
            eprintln!("tlh: {}", GeometryError::NotRelated);
            ExitCode::from(3)
        }
    }
}
