use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hive_vem::lift::LiftScheme;
use hive_vem::problem::{ManufacturedProblem, PROBLEM_NAMES};
use hive_vem::solver::{Method, Preconditioner, SolverConfig};
use hive_vem::study::{self, ExportKind, StudyConfig};
use hive_vem::{Result, VemError};

/// Stabilizer-free P1 virtual elements on honeycomb meshes.
#[derive(Parser, Debug)]
#[command(name = "hive-vem", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Convergence study over a range of levels; prints a table, optionally writes CSV.
    Study(StudyArgs),
    /// Solve on one level and print solver statistics and errors.
    Solve(SolveArgs),
    /// Write a VTK legacy file of the mesh, the solution, or the lift.
    Export(ExportArgs),
}

#[derive(Args, Debug)]
struct ProblemArgs {
    /// Manufactured problem (hex-sine, hex-bubble, zero).
    #[arg(long, default_value = "hex-sine")]
    problem: String,

    /// Load quadrature degree (2, 4, 6, 8).
    #[arg(long, default_value_t = 4)]
    quad_load: u32,

    /// Error quadrature degree (6 or 8).
    #[arg(long, default_value_t = 6)]
    quad_error: u32,

    /// Linear solver: cg or chol.
    #[arg(long, default_value = "cg")]
    solver: Method,

    /// Relative residual tolerance for cg.
    #[arg(long, default_value_t = 1e-14)]
    tol: f64,

    /// Iteration cap for cg (raised to the system dimension if smaller).
    #[arg(long)]
    maxit: Option<usize>,

    /// Preconditioner for cg: none, jacobi, ic.
    #[arg(long, default_value = "jacobi")]
    precond: Preconditioner,

    /// Recovery scheme: lattice15-corrected, paper11-plain, paper11-corrected,
    /// vertices-only-minnorm, oracle-center.
    #[arg(long, default_value = "lattice15-corrected")]
    lift_scheme: LiftScheme,
}

impl ProblemArgs {
    fn solver_config(&self) -> SolverConfig {
        SolverConfig { method: self.solver, tol: self.tol, max_iter: self.maxit, preconditioner: self.precond }
    }

    fn study_config(&self, min_level: u32, max_level: u32, lift: bool) -> StudyConfig {
        StudyConfig {
            min_level,
            max_level,
            problem: self.problem.clone(),
            lift,
            scheme: self.lift_scheme,
            quad_load: self.quad_load,
            quad_error: self.quad_error,
            solver: self.solver_config(),
        }
    }
}

#[derive(Args, Debug)]
struct StudyArgs {
    #[arg(long, default_value_t = 2)]
    min_level: u32,

    #[arg(long, default_value_t = 7)]
    max_level: u32,

    /// Lift from level 3 on (the default).
    #[arg(long, overrides_with = "no_lift")]
    lift: bool,

    /// Skip the P3 lift.
    #[arg(long)]
    no_lift: bool,

    /// Write the study as CSV.
    #[arg(long)]
    csv: Option<PathBuf>,

    #[command(flatten)]
    common: ProblemArgs,
}

#[derive(Args, Debug)]
struct SolveArgs {
    #[arg(long)]
    level: u32,

    #[command(flatten)]
    common: ProblemArgs,
}

#[derive(Args, Debug)]
struct ExportArgs {
    #[arg(long)]
    level: u32,

    /// mesh, solution or lift.
    #[arg(long, default_value = "solution")]
    what: ExportKind,

    #[arg(long)]
    out: PathBuf,

    #[command(flatten)]
    common: ProblemArgs,
}

fn configure_threads() -> Result<()> {
    let Ok(raw) = std::env::var("HIVE_VEM_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| VemError::Config(format!("HIVE_VEM_THREADS must be a positive integer, got `{raw}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| VemError::Config(e.to_string()))
}

fn run(cli: Cli) -> Result<()> {
    configure_threads()?;
    match cli.command {
        Command::Study(args) => {
            let cfg = args.common.study_config(args.min_level, args.max_level, !args.no_lift);
            let rows = study::study(&cfg)?;
            print!("{}", study::render_table(&rows));
            if let Some(path) = args.csv {
                std::fs::write(path, study::to_csv(&rows))?;
            }
        }
        Command::Solve(args) => {
            let cfg = args.common.study_config(args.level, args.level, false);
            cfg.validate()?;
            let problem = ManufacturedProblem::by_name(&cfg.problem)?;
            let sol = study::solve_level(args.level, &problem, cfg.quad_load, &cfg.solver)?;
            let row = study::measure_level(&sol, &problem, &cfg)?;
            println!("level {}  h {:.3e}  dofs {}", row.level, row.h, row.dofs);
            println!(
                "{}: {} iterations, relative residual {:.3e}, backward error {:.3e}",
                sol.stats.method, sol.stats.iterations, sol.stats.relative_residual, sol.stats.backward_error
            );
            println!("|I_h u - u_h|  L2 {:.4e}  H1 {:.4e}  Linf {:.4e}", row.e_ih_l2, row.e_ih_h1, row.e_ih_linf);
            println!("|u - u_h|      L2 {:.4e}", row.e_l2);
        }
        Command::Export(args) => {
            let cfg = args.common.study_config(args.level, args.level, false);
            cfg.validate()?;
            study::export(args.level, args.what, &cfg, args.common.lift_scheme, &args.out)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            if matches!(e, VemError::UnknownProblem(_)) {
                eprintln!("known problems: {}", PROBLEM_NAMES.join(", "));
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
