//! VTK legacy ASCII export of the triangular submesh.

use std::io::Write;

use crate::mesh::HoneycombMesh;

/// Writes `mesh` as an `UNSTRUCTURED_GRID` of triangles (cell type 5) with
/// optional nodal scalar fields.
pub fn write_vtk<W: Write>(
    out: &mut W,
    mesh: &HoneycombMesh,
    title: &str,
    point_scalars: &[(&str, &[f64])],
) -> std::io::Result<()> {
    let n_points = mesh.nodes.len();
    let n_cells = mesh.subtriangles.len();
    writeln!(out, "# vtk DataFile Version 3.0")?;
    writeln!(out, "{}", title.lines().next().unwrap_or(""))?;
    writeln!(out, "ASCII")?;
    writeln!(out, "DATASET UNSTRUCTURED_GRID")?;

    writeln!(out, "POINTS {n_points} double")?;
    for k in 0..n_points {
        let [x, y] = mesh.position(k);
        writeln!(out, "{x:e} {y:e} 0")?;
    }

    writeln!(out, "CELLS {n_cells} {}", 4 * n_cells)?;
    for [a, b, c] in &mesh.subtriangles {
        writeln!(out, "3 {a} {b} {c}")?;
    }
    writeln!(out, "CELL_TYPES {n_cells}")?;
    for _ in 0..n_cells {
        writeln!(out, "5")?;
    }

    if !point_scalars.is_empty() {
        writeln!(out, "POINT_DATA {n_points}")?;
        for (name, values) in point_scalars {
            assert_eq!(values.len(), n_points, "scalar field `{name}` has wrong length");
            writeln!(out, "SCALARS {name} double 1")?;
            writeln!(out, "LOOKUP_TABLE default")?;
            for v in values.iter() {
                writeln!(out, "{v:e}")?;
            }
        }
    }
    Ok(())
}
