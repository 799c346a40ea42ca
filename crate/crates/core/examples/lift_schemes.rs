//! Compares the recovery site/data schemes: errors, rank and conditioning of
//! the patch fits.
//!
//! ```text
//! cargo run --release --example lift_schemes -- 6
//! ```

use hive_vem::analysis::{lift_errors, norm_l2_true, norm_l2_vertex_reconstruction};
use hive_vem::lift::{corrected_center_error, LIFT_SCHEMES};
use hive_vem::problem::hex_sine;
use hive_vem::study::{lift_level, solve_level};
use hive_vem::SolverConfig;

fn main() -> hive_vem::Result<()> {
    let max_level: u32 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(6);
    let problem = hex_sine();
    for level in 3..=max_level {
        let sol = solve_level(level, &problem, 4, &SolverConfig::default())?;
        let mesh = &sol.mesh;
        println!(
            "level {level}: |u-uh|0 {:.4e}, with exact centres {:.4e}, corrected centre error {:.2e}",
            norm_l2_true(&sol.uh, &problem, mesh, 6)?,
            norm_l2_vertex_reconstruction(&sol.uh, &problem, mesh, 6)?,
            corrected_center_error(&sol.uh, &problem, mesh)
        );
        for scheme in LIFT_SCHEMES {
            let (grid, lifted) = lift_level(&sol, &problem, scheme)?;
            let (l2, h1) = lift_errors(&lifted, &problem, mesh, &grid, 6)?;
            println!(
                "  {:<22} |u-lift|0 {l2:.4e}  |u-lift|1h {h1:.4e}  min rank {:2}  min sigma {:.3e}",
                scheme.name(),
                lifted.min_rank(),
                lifted.min_singular_value()
            );
        }
    }
    Ok(())
}
