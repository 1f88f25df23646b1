//! Batch driver: solve / verify / convergence / transient / report.
//!
//! Exit codes: 0 success, 1 solver or I/O failure, 2 configuration errors.

mod commands;

use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "poromech",
    version,
    about = "Mixed FEM solver and mechanics-based verification for porous-media flow"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a steady problem; writes a verification report and optional
    /// solution exports.
    Solve(SolveArgs),
    /// Solve and emit the verification report only (JSON to stdout).
    Verify(SolveArgs),
    /// Run a mesh-refinement study and tabulate the verification metrics.
    Convergence(ConvergenceArgs),
    /// March the unsteady equations with backward Euler.
    Transient(TransientArgs),
    /// Convert a verification report JSON to CSV.
    Report(ReportArgs),
}

#[derive(Args, Clone)]
struct ProblemArgs {
    /// Benchmark name (body_force, lid_cavity, pipe_bend_velocity,
    /// pipe_bend_pressure, pressure_slab, pressure_driven, reservoir).
    #[arg(long, conflicts_with = "spec")]
    benchmark: Option<String>,
    /// Problem document (JSON: benchmark name + overrides).
    #[arg(long)]
    spec: Option<PathBuf>,
    /// Model: darcy or darcy_brinkman.
    #[arg(long)]
    model: Option<String>,
    /// Uniform drag coefficient alpha.
    #[arg(long)]
    alpha: Option<f64>,
    /// Dynamic viscosity.
    #[arg(long)]
    mu: Option<f64>,
    /// Density.
    #[arg(long)]
    rho: Option<f64>,
    /// Uniform permeability (alternative to alpha).
    #[arg(long)]
    k: Option<f64>,
    /// Body-force amplitude for the body_force benchmark.
    #[arg(long)]
    amplitude: Option<f64>,
    /// Injection pressure.
    #[arg(long = "p-inj")]
    p_inj: Option<f64>,
    /// Atmospheric pressure.
    #[arg(long = "p-atm")]
    p_atm: Option<f64>,
    /// Raster permeability file (reservoir benchmark).
    #[arg(long)]
    raster: Option<PathBuf>,
    /// Linear scale for raster values.
    #[arg(long = "raster-scale")]
    raster_scale: Option<f64>,
}

#[derive(Args, Clone)]
struct MeshArgs {
    /// Quadrilateral (Q9) mesh: NX NY element counts.
    #[arg(long, num_args = 2, value_names = ["NX", "NY"], conflicts_with = "tri")]
    quad: Option<Vec<usize>>,
    /// Triangular (T6) mesh: NX NY cell counts (two triangles per cell).
    #[arg(long, num_args = 2, value_names = ["NX", "NY"])]
    tri: Option<Vec<usize>>,
    /// Grade cell sizes geometrically toward the top: RATIO LAYERS.
    #[arg(long = "grade-top", num_args = 2, value_names = ["RATIO", "LAYERS"])]
    grade_top: Option<Vec<f64>>,
    #[arg(long = "grade-bottom", num_args = 2, value_names = ["RATIO", "LAYERS"])]
    grade_bottom: Option<Vec<f64>>,
    #[arg(long = "grade-left", num_args = 2, value_names = ["RATIO", "LAYERS"])]
    grade_left: Option<Vec<f64>>,
    #[arg(long = "grade-right", num_args = 2, value_names = ["RATIO", "LAYERS"])]
    grade_right: Option<Vec<f64>>,
}

#[derive(Args, Clone)]
struct OutputArgs {
    /// Output directory (default: POROMECH_OUT or the current directory).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write the solution as VTK legacy ASCII.
    #[arg(long)]
    vtk: bool,
    /// Write nodal values as CSV.
    #[arg(long)]
    csv: bool,
    /// Seed for admissible-perturbation randomness.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    problem: ProblemArgs,
    #[command(flatten)]
    mesh: MeshArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct ConvergenceArgs {
    #[command(flatten)]
    problem: ProblemArgs,
    /// Refinement levels as cells per unit length (1/h), at least 3.
    #[arg(long, num_args = 1.., required = true)]
    levels: Vec<usize>,
    /// Use T6 triangles instead of Q9 quadrilaterals.
    #[arg(long)]
    tri: bool,
    #[command(flatten)]
    mesh_grading: GradeOnlyArgs,
    /// Second injection pressure: adds a paired load case and the
    /// reciprocal-residual column.
    #[arg(long = "pair-p-inj")]
    pair_p_inj: Option<f64>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Clone)]
struct GradeOnlyArgs {
    #[arg(long = "grade-top", num_args = 2, value_names = ["RATIO", "LAYERS"])]
    grade_top: Option<Vec<f64>>,
    #[arg(long = "grade-bottom", num_args = 2, value_names = ["RATIO", "LAYERS"])]
    grade_bottom: Option<Vec<f64>>,
    #[arg(long = "grade-left", num_args = 2, value_names = ["RATIO", "LAYERS"])]
    grade_left: Option<Vec<f64>>,
    #[arg(long = "grade-right", num_args = 2, value_names = ["RATIO", "LAYERS"])]
    grade_right: Option<Vec<f64>>,
}

#[derive(Args)]
struct TransientArgs {
    #[command(flatten)]
    problem: ProblemArgs,
    #[command(flatten)]
    mesh: MeshArgs,
    /// Time step.
    #[arg(long)]
    dt: f64,
    /// End time.
    #[arg(long = "t-end")]
    t_end: f64,
    /// Probe point X Y; repeatable.
    #[arg(long, num_args = 2, value_names = ["X", "Y"], action = clap::ArgAction::Append)]
    probe: Vec<f64>,
    /// Write a VTK snapshot every N steps.
    #[arg(long = "vtk-every")]
    vtk_every: Option<usize>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct ReportArgs {
    /// Report JSON produced by solve/verify/transient.
    #[arg(long)]
    input: PathBuf,
    /// CSV output path (default: stdout).
    #[arg(long)]
    csv: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Solve(args) => commands::solve(&args, false),
        Command::Verify(args) => commands::solve(&args, true),
        Command::Convergence(args) => commands::convergence(&args),
        Command::Transient(args) => commands::transient(&args),
        Command::Report(args) => commands::report(&args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

/// CLI error with the exit code contract: 2 for configuration problems,
/// 1 for solver/runtime failures.
pub enum CliError {
    Config(String),
    Run(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Run(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(m) | CliError::Run(m) => f.write_str(m),
        }
    }
}

impl From<poromech::Error> for CliError {
    fn from(e: poromech::Error) -> Self {
        use poromech::Error::*;
        match e {
            InvalidMesh(_)
            | UnsupportedQuadrature { .. }
            | InvalidProblem(_)
            | UnknownBenchmark(_)
            | Raster(_)
            | ModelMismatch { .. }
            | Json(_) => CliError::Config(e.to_string()),
            _ => CliError::Run(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Run(format!("io error: {e}"))
    }
}
