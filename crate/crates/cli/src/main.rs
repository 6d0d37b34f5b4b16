//! Command-line interface for the cone-metric matrix geometry library.
//!
//! One subcommand per operation family; all data goes to stdout (or the
//! `--out` file) as JSON or CSV, all diagnostics to stderr. Exit status is
//! 0 on success, 1 on domain errors (singular points, coarse sampling,
//! open curves, ...), 2 on usage errors.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use symcone::bench::run_bench;
use symcone::covering::{cover_phase, lift_curve};
use symcone::curve::{CurveSpec, MatrixCurve};
use symcone::eigen::eigen_numeric;
use symcone::error::GeomError;
use symcone::mass_spring::{
    equilibrium, hessian, metric_kernel, pullback_metric, Boundary, SpringSystem,
};
use symcone::metric::metric_at;
use symcone::symspace::{SymPoint, TangentVec};
use symcone::transport::{
    eigenvector_continuation, geometric_phase, holonomy_group, parallel_transport,
    winding_number, IntegratorOptions, TransportResult,
};
use symcone::verify::run_verification;

/// A point given as `x,y,z` on the command line.
#[derive(Debug, Clone, Copy)]
struct Triple([f64; 3]);

impl FromStr for Triple {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 3 {
            return Err(format!("expected three comma-separated numbers, got '{s}'"));
        }
        let mut out = [0.0; 3];
        for (slot, part) in out.iter_mut().zip(&parts) {
            *slot = part
                .trim()
                .parse()
                .map_err(|e| format!("bad number '{part}': {e}"))?;
        }
        Ok(Triple(out))
    }
}

fn parse_branch(s: &str) -> Result<i8, String> {
    match s {
        "+1" | "1" => Ok(1),
        "-1" => Ok(-1),
        _ => Err(format!("branch must be +1 or -1, got '{s}'")),
    }
}

/// Spring constants given as `k1[,k2[,k3]]`.
#[derive(Debug, Clone)]
struct KappaList(Vec<f64>);

impl FromStr for KappaList {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.split(',')
            .map(|part| {
                part.trim()
                    .parse()
                    .map_err(|e| format!("bad spring constant '{part}': {e}"))
            })
            .collect::<Result<Vec<f64>, String>>()
            .map(KappaList)
    }
}

#[derive(Parser)]
#[command(
    name = "symcone",
    version,
    about = "Eigenvector transport and cone-metric geometry of 2x2 symmetric matrices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CurveArg {
    /// Curve file (JSON; kinds: samples, circle, segment, composite).
    #[arg(long)]
    curve: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Metric tensor at a point, cartesian and cylindrical blocks.
    Metric {
        /// Point as x,y,z.
        #[arg(long, allow_hyphen_values = true)]
        at: Triple,
    },
    /// Eigenvalues and eigenvectors of the matrix at a point.
    Eigen {
        #[arg(long, allow_hyphen_values = true)]
        at: Triple,
    },
    /// Parallel-transport a tangent vector along a curve; emits CSV rows
    /// (t, x, y, z, a1, a2, phase).
    Transport {
        #[command(flatten)]
        curve: CurveArg,
        /// `auto` starts from the closed-form top eigenvector; otherwise
        /// frame components a1,a2,a3.
        #[arg(long, default_value = "auto", allow_hyphen_values = true)]
        init: String,
        #[arg(long, default_value_t = 4)]
        steps_per_sample: usize,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Geometric phase along a curve.
    Phase {
        #[command(flatten)]
        curve: CurveArg,
    },
    /// Winding number of a closed curve around the singular line.
    Winding {
        #[command(flatten)]
        curve: CurveArg,
    },
    /// Holonomy classes realized by closed loops.
    Holonomy {
        /// Also allow loops crossing the singular line.
        #[arg(long)]
        with_crossings: bool,
    },
    /// Covering-space operations.
    #[command(subcommand)]
    Cover(CoverCommand),
    /// Mass-spring chain: Hessian, pullback metric and kernel.
    Massspring {
        #[arg(long, value_enum)]
        boundary: BoundaryArg,
        /// Spring constants `k1[,k2[,k3]]` matching the boundary kind.
        #[arg(long, allow_hyphen_values = true)]
        kappas: KappaList,
        #[arg(long, default_value_t = 1.0)]
        rest_length: f64,
    },
    /// Run the finite-difference cross-validation suite.
    Verify {
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Compare transport-based continuation against repeated
    /// eigendecomposition.
    Bench {
        #[command(flatten)]
        curve: CurveArg,
        #[arg(long)]
        samples: usize,
        #[arg(long, default_value_t = 4)]
        substeps: usize,
        #[arg(long, default_value_t = 3)]
        repeats: usize,
    },
}

#[derive(Subcommand)]
enum CoverCommand {
    /// Lift a curve to the branched covering space; emits CSV rows
    /// (t, rbar, phibar, z).
    Lift {
        #[command(flatten)]
        curve: CurveArg,
        #[arg(long, default_value = "+1", value_parser = parse_branch, allow_hyphen_values = true)]
        branch: i8,
        #[arg(long, default_value_t = 1)]
        depth: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, clap::ValueEnum)]
enum BoundaryArg {
    Fixed,
    Open,
    Periodic,
}

impl From<BoundaryArg> for Boundary {
    fn from(b: BoundaryArg) -> Boundary {
        match b {
            BoundaryArg::Fixed => Boundary::Fixed,
            BoundaryArg::Open => Boundary::Open,
            BoundaryArg::Periodic => Boundary::Periodic,
        }
    }
}

enum CliError {
    Domain(GeomError),
    Io(String),
    Failed(String),
}

impl From<GeomError> for CliError {
    fn from(e: GeomError) -> Self {
        CliError::Domain(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

fn load_curve(path: &PathBuf) -> Result<MatrixCurve, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
    Ok(CurveSpec::from_json(&text)?.build()?)
}

fn load_spec(path: &PathBuf) -> Result<CurveSpec, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
    Ok(CurveSpec::from_json(&text)?)
}

/// Write to stdout, treating a closed pipe as a normal exit.
fn write_stdout(data: &str) -> Result<(), CliError> {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    match out.write_all(data.as_bytes()) {
        Ok(()) => Ok(()),
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => std::process::exit(0),
        Err(e) => Err(e.into()),
    }
}

fn emit(out: &Option<PathBuf>, data: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, data)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display()))),
        None => write_stdout(data),
    }
}

fn print_json(value: &serde_json::Value) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value).expect("serializable");
    text.push('\n');
    write_stdout(&text)
}

fn transport_csv(curve: &MatrixCurve, res: &TransportResult) -> String {
    let mut csv = String::from("t,x,y,z,a1,a2,phase\n");
    for (k, (v, phase)) in res.vectors.iter().zip(&res.phases).enumerate() {
        let p = &curve.samples()[k];
        let f = v.frame_components();
        writeln!(
            csv,
            "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
            curve.param(k),
            p.x(),
            p.y(),
            p.z(),
            f[0],
            f[1],
            phase
        )
        .expect("string write");
    }
    csv
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Metric { at } => {
            let p = SymPoint::new(at.0[0], at.0[1], at.0[2]);
            let m = metric_at(&p)?;
            print_json(&serde_json::to_value(&m).expect("serializable"))?;
        }
        Command::Eigen { at } => {
            let p = SymPoint::new(at.0[0], at.0[1], at.0[2]);
            let e = eigen_numeric(&p);
            print_json(&serde_json::to_value(e).expect("serializable"))?;
        }
        Command::Transport {
            curve,
            init,
            steps_per_sample,
            out,
        } => {
            let c = load_curve(&curve.curve)?;
            let opts = IntegratorOptions { steps_per_sample };
            let res = if init == "auto" {
                eigenvector_continuation(&c, 1, opts)?
            } else {
                let a: Triple = init
                    .parse()
                    .map_err(|e| CliError::Io(format!("--init {e}")))?;
                let v0 = TangentVec::from_frame_components(c.samples()[0], a.0);
                parallel_transport(&c, &v0, opts)?
            };
            emit(&out, &transport_csv(&c, &res))?;
            if !res.crossings.is_empty() {
                eprintln!(
                    "note: {} singular-line crossing(s) detected",
                    res.crossings.len()
                );
            }
        }
        Command::Phase { curve } => {
            let c = load_curve(&curve.curve)?;
            print_json(&json!({ "phase": geometric_phase(&c)? }))?;
        }
        Command::Winding { curve } => {
            let c = load_curve(&curve.curve)?;
            print_json(&json!({ "winding": winding_number(&c)? }))?;
        }
        Command::Holonomy { with_crossings } => {
            print_json(&json!({
                "with_crossings": with_crossings,
                "holonomy": holonomy_group(with_crossings),
            }))?;
        }
        Command::Cover(CoverCommand::Lift {
            curve,
            branch,
            depth,
            out,
        }) => {
            let c = load_curve(&curve.curve)?;
            let lift = lift_curve(&c, branch, depth)?;
            let mut csv = String::from("t,rbar,phibar,z\n");
            let n = lift.points().len();
            for (k, q) in lift.points().iter().enumerate() {
                writeln!(
                    csv,
                    "{:.16e},{:.16e},{:.16e},{:.16e}",
                    k as f64 / (n - 1) as f64,
                    q.rbar,
                    q.phibar,
                    q.z
                )
                .expect("string write");
            }
            emit(&out, &csv)?;
            if lift.closed() && depth == 1 {
                eprintln!("note: lifted loop closes; phase {}", cover_phase(&lift)?);
            }
        }
        Command::Massspring {
            boundary,
            kappas,
            rest_length,
        } => {
            let boundary: Boundary = boundary.into();
            let kappas = kappas.0;
            let system = SpringSystem::new(boundary, kappas.clone(), rest_length)?;
            let point = hessian(&system);
            let (a11, a12, a22) = point.entries();
            let pullback = pullback_metric(boundary, &kappas)?;
            let kernel = metric_kernel(&pullback, 1e-10);
            let dim = pullback.nrows();
            let pullback_rows: Vec<Vec<f64>> = (0..dim)
                .map(|i| (0..dim).map(|j| pullback[(i, j)]).collect())
                .collect();
            let kernel_rows: Vec<Vec<f64>> =
                kernel.iter().map(|v| v.iter().cloned().collect()).collect();
            print_json(&json!({
                "boundary": format!("{boundary:?}").to_lowercase(),
                "kappas": kappas,
                "rest_length": rest_length,
                "equilibrium": equilibrium(&system),
                "hessian": [[a11, a12], [a12, a22]],
                "point": point,
                "pullback": pullback_rows,
                "kernel": kernel_rows,
            }))?;
        }
        Command::Verify { seed } => {
            let report = run_verification(seed);
            print_json(&serde_json::to_value(&report).expect("serializable"))?;
            if !report.all_pass {
                return Err(CliError::Failed("cross-validation failed".into()));
            }
        }
        Command::Bench {
            curve,
            samples,
            substeps,
            repeats,
        } => {
            let spec = load_spec(&curve.curve)?;
            let report = run_bench(&spec, samples, substeps, repeats)?;
            print_json(&serde_json::to_value(&report).expect("serializable"))?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
        Err(CliError::Io(msg)) | Err(CliError::Failed(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}
