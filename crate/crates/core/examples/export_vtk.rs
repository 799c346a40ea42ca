//! Writes the mesh, the discrete solution and the recovered cubic as VTK
//! legacy files for ParaView or VisIt.
//!
//! ```text
//! cargo run --release --example export_vtk -- /tmp/hive 5
//! ```

use std::path::PathBuf;

use hive_vem::lift::LiftScheme;
use hive_vem::study::{export, ExportKind, StudyConfig};

fn main() -> hive_vem::Result<()> {
    let mut args = std::env::args().skip(1);
    let dir = PathBuf::from(args.next().unwrap_or_else(|| std::env::temp_dir().join("hive-vem").display().to_string()));
    let level: u32 = args.next().and_then(|a| a.parse().ok()).unwrap_or(5);
    std::fs::create_dir_all(&dir)?;
    let cfg = StudyConfig::default();
    for (kind, name) in [(ExportKind::Mesh, "mesh"), (ExportKind::Solution, "solution"), (ExportKind::Lift, "lift")] {
        let path = dir.join(format!("{name}_{level}.vtk"));
        export(level, kind, &cfg, LiftScheme::default(), &path)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}
