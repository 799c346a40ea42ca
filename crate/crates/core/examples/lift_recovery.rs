//! Recovers a piecewise cubic from the P1 solution patch by patch and compares
//! it with the exact solution, pointwise and in norm.
//!
//! ```text
//! cargo run --release --example lift_recovery
//! ```

use hive_vem::analysis::{lift_errors, observed_order};
use hive_vem::lift::{evaluate_lift, LiftScheme};
use hive_vem::problem::hex_sine;
use hive_vem::study::{lift_level, solve_level};
use hive_vem::SolverConfig;

fn main() -> hive_vem::Result<()> {
    let problem = hex_sine();
    let probe = [0.3, -0.2];
    let mut previous: Option<(f64, f64)> = None;
    println!("level   patches   |u-lift|0     r   |u-lift|1h     r   error at {probe:?}");
    for level in 3..=7 {
        let sol = solve_level(level, &problem, 4, &SolverConfig::default())?;
        let (grid, lifted) = lift_level(&sol, &problem, LiftScheme::default())?;
        let (l2, h1) = lift_errors(&lifted, &problem, &sol.mesh, &grid, 6)?;
        let (value, _) = evaluate_lift(&lifted, &grid, probe)?;
        let (r0, r1) = previous.map_or((0.0, 0.0), |(a, b)| (observed_order(a, l2), observed_order(b, h1)));
        println!(
            "{level:5} {:9}  {l2:10.4e} {r0:5.2}  {h1:10.4e} {r1:5.2}   {:.3e}",
            grid.patches.len(),
            (value - problem.u(probe[0], probe[1])).abs()
        );
        previous = Some((l2, h1));
    }
    Ok(())
}
