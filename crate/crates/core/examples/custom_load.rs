//! Solves `-Δu = f` for a load given as a plain closure, with no known exact
//! solution: here a unit load and a Gaussian source.
//!
//! ```text
//! cargo run --release --example custom_load
//! ```

use hive_vem::mesh::build_mesh;
use hive_vem::solver::solve;
use hive_vem::system::{assemble_with, expand};
use hive_vem::SolverConfig;

fn main() -> hive_vem::Result<()> {
    let loads: [(&str, fn(f64, f64) -> f64); 2] =
        [("unit", |_, _| 1.0), ("gaussian", |x, y| (-40.0 * ((x - 0.3).powi(2) + y * y)).exp())];
    for (name, f) in loads {
        println!("{name} load: centre value per level");
        let mut previous: Option<f64> = None;
        for level in 2..=7 {
            let mesh = build_mesh(level)?;
            let system = assemble_with(&mesh, f, 4)?;
            let (x, stats) = solve(&system.matrix, &system.rhs, &SolverConfig::default())?;
            let uh = expand(&x, &system.dofs, &mesh)?;
            let origin = mesh.node_index(hive_vem::LatticePoint::new(0, 0)).expect("origin is a node");
            let value = uh.values[origin];
            let change = previous.map_or("-".to_string(), |p: f64| format!("{:.2e}", (value - p).abs()));
            println!("  level {level}: u_h(0,0) = {value:.10}  change {change:>8}  ({} cg iterations)", stats.iterations);
            previous = Some(value);
        }
    }
    Ok(())
}
