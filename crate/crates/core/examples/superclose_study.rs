//! Convergence study of the discrete solution against the nodal interpolant:
//! fourth-order supercloseness in L², H¹ and at the vertices.
//!
//! ```text
//! cargo run --release --example superclose_study -- 8
//! ```

use hive_vem::study::{render_table, study, StudyConfig};

fn main() -> hive_vem::Result<()> {
    let max_level: u32 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(7);
    let cfg = StudyConfig { min_level: 1, max_level, lift: false, ..Default::default() };
    let rows = study(&cfg)?;
    print!("{}", render_table(&rows));
    Ok(())
}
