//! Assembles and solves the honeycomb system for a manufactured problem with
//! every solver configuration, and checks they agree.
//!
//! ```text
//! cargo run --release --example solve_poisson -- 6 hex-bubble
//! ```

use hive_vem::mesh::build_mesh;
use hive_vem::solver::{solve, Method, Preconditioner, SolverConfig};
use hive_vem::sparse::norm_inf;
use hive_vem::system::{assemble, expand, interpolate};
use hive_vem::ManufacturedProblem;

fn main() -> hive_vem::Result<()> {
    let mut args = std::env::args().skip(1);
    let level: u32 = args.next().and_then(|a| a.parse().ok()).unwrap_or(5);
    let problem = ManufacturedProblem::by_name(&args.next().unwrap_or_else(|| "hex-sine".into()))?;

    let mesh = build_mesh(level)?;
    let system = assemble(&mesh, &problem, 4)?;
    println!(
        "level {level}: {} unknowns, {} nonzeros, symmetry error {:.1e}",
        system.dofs.len(),
        system.matrix.nnz(),
        system.matrix.symmetry_error()
    );

    let (reference, _) = solve(&system.matrix, &system.rhs, &SolverConfig::direct())?;
    let configs = [
        SolverConfig::direct(),
        SolverConfig { preconditioner: Preconditioner::None, ..Default::default() },
        SolverConfig::default(),
        SolverConfig { preconditioner: Preconditioner::IncompleteCholesky, ..Default::default() },
    ];
    for cfg in configs {
        let (x, stats) = solve(&system.matrix, &system.rhs, &cfg)?;
        let diff: Vec<f64> = x.iter().zip(&reference).map(|(a, b)| a - b).collect();
        let label = match cfg.method {
            Method::DirectCholesky => "chol".to_string(),
            Method::ConjugateGradient => format!("cg/{:?}", cfg.preconditioner),
        };
        println!(
            "{label:>26}: {:5} it, residual {:.2e}, backward error {:.2e}, |x - x_chol| {:.2e}",
            stats.iterations,
            stats.relative_residual,
            stats.backward_error,
            norm_inf(&diff)
        );
    }

    let uh = expand(&reference, &system.dofs, &mesh)?;
    let ih = interpolate(&mesh, |x, y| problem.u(x, y));
    let nodal = mesh.nh_nodes.iter().map(|&k| (uh.values[k] - ih.values[k]).abs()).fold(0.0, f64::max);
    println!("max nodal error at honeycomb vertices: {nodal:.3e}");
    Ok(())
}
