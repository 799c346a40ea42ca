//! Builds honeycomb meshes of the unit hexagon and prints their cell counts.
//!
//! ```text
//! cargo run --release --example mesh_census -- 6
//! ```

use hive_vem::mesh::{boundary_nodes, build_mesh};

fn main() -> hive_vem::Result<()> {
    let max_level: u32 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(6);
    println!("level        s    nodes  triangles  hexagons  pentagons  boundary        area");
    for level in 1..=max_level {
        let mesh = build_mesh(level)?;
        let c = mesh.census();
        let area = mesh.triangle_area() * mesh.subtriangles.len() as f64;
        println!(
            "{level:5} {:8.5} {:8} {:10} {:9} {:10} {:9} {:11.9}",
            mesh.s,
            mesh.nodes.len(),
            mesh.subtriangles.len(),
            c.hexagons,
            c.pentagons,
            boundary_nodes(&mesh).len(),
            area
        );
    }
    Ok(())
}
