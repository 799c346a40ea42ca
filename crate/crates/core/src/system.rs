//! The stabilizer-free P1 virtual element system.
//!
//! A discrete function is stored by its values at every lattice node, i.e. as a
//! continuous piecewise-linear function on the equilateral submesh. It belongs
//! to the virtual element space when each interior hexagon centre carries the
//! mean of the hexagon's six corner values: on the six-triangle fan this is the
//! discrete harmonic (energy minimising) extension of the corner values, so the
//! space is parametrised by the honeycomb vertices alone.
//!
//! The Galerkin system is therefore `A = Cᵀ K C`, `b = Cᵀ ℓ`, where `K` and `ℓ`
//! are the P1 stiffness matrix and load vector on all lattice nodes and `C`
//! maps interior honeycomb-vertex values to node values (identity on vertices,
//! zero on the boundary, corner averages at centres).

use crate::error::{Result, VemError};
use crate::mesh::HoneycombMesh;
use crate::problem::ManufacturedProblem;
use crate::quadrature::{self, QuadratureRule};
use crate::sparse::SparseSpd;

/// Default quadrature degree for the load vector.
pub const DEFAULT_LOAD_DEGREE: u32 = 4;

/// Values at every lattice node of a mesh.
#[derive(Clone, Debug, PartialEq)]
pub struct FieldP1 {
    pub level: u32,
    pub values: Vec<f64>,
}

impl FieldP1 {
    pub fn zeros(mesh: &HoneycombMesh) -> Self {
        Self { level: mesh.level, values: vec![0.0; mesh.nodes.len()] }
    }

    pub fn check_mesh(&self, mesh: &HoneycombMesh) -> Result<()> {
        if self.level != mesh.level {
            return Err(VemError::MeshMismatch { field: self.level, mesh: mesh.level });
        }
        if self.values.len() != mesh.nodes.len() {
            return Err(VemError::DimensionMismatch { expected: mesh.nodes.len(), actual: self.values.len() });
        }
        Ok(())
    }

    /// Largest violation of the centre-average constraint.
    pub fn center_defect(&self, mesh: &HoneycombMesh) -> f64 {
        mesh.centers
            .iter()
            .map(|&c| (self.values[c] - corner_mean(mesh, &self.values, c)).abs())
            .fold(0.0, f64::max)
    }

    pub fn sub(&self, other: &FieldP1) -> FieldP1 {
        assert_eq!(self.level, other.level);
        FieldP1 {
            level: self.level,
            values: self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect(),
        }
    }

    /// Value at a point of triangle `t` given by barycentric coordinates.
    pub fn eval_in(&self, mesh: &HoneycombMesh, t: usize, bary: [f64; 3]) -> f64 {
        let tri = mesh.subtriangles[t];
        bary[0] * self.values[tri[0]] + bary[1] * self.values[tri[1]] + bary[2] * self.values[tri[2]]
    }
}

fn corner_mean(mesh: &HoneycombMesh, values: &[f64], center: usize) -> f64 {
    mesh.hexagon_corners(center).iter().map(|&k| values[k]).sum::<f64>() / 6.0
}

/// Numbering of the interior honeycomb vertices.
#[derive(Clone, Debug)]
pub struct DofMap {
    dof_of_node: Vec<Option<usize>>,
    node_of_dof: Vec<usize>,
}

impl DofMap {
    pub fn new(mesh: &HoneycombMesh) -> Self {
        let mut dof_of_node = vec![None; mesh.nodes.len()];
        let mut node_of_dof = Vec::new();
        for &k in &mesh.nh_nodes {
            if !mesh.nodes[k].on_boundary {
                dof_of_node[k] = Some(node_of_dof.len());
                node_of_dof.push(k);
            }
        }
        Self { dof_of_node, node_of_dof }
    }

    pub fn len(&self) -> usize {
        self.node_of_dof.len()
    }

    pub fn is_empty(&self) -> bool {
        self.node_of_dof.is_empty()
    }

    pub fn dof(&self, node: usize) -> Option<usize> {
        self.dof_of_node[node]
    }

    pub fn node(&self, dof: usize) -> usize {
        self.node_of_dof[dof]
    }

    /// Row of the prolongation `C` for one node: `(dof, weight)` pairs.
    fn prolongation_row(&self, mesh: &HoneycombMesh, node: usize) -> Vec<(usize, f64)> {
        if mesh.nodes[node].is_center {
            mesh.hexagon_corners(node)
                .iter()
                .filter_map(|&k| self.dof(k).map(|d| (d, 1.0 / 6.0)))
                .collect()
        } else {
            self.dof(node).map(|d| vec![(d, 1.0)]).unwrap_or_default()
        }
    }
}

/// P1 stiffness of an arbitrary nondegenerate triangle.
pub fn triangle_stiffness(tri: &[[f64; 2]; 3]) -> [[f64; 3]; 3] {
    let area2 = (tri[1][0] - tri[0][0]) * (tri[2][1] - tri[0][1])
        - (tri[2][0] - tri[0][0]) * (tri[1][1] - tri[0][1]);
    // ∇λ_a = perp(edge opposite a) / (2|T|)
    let grads: [[f64; 2]; 3] = std::array::from_fn(|a| {
        let p = tri[(a + 1) % 3];
        let q = tri[(a + 2) % 3];
        [(p[1] - q[1]) / area2, (q[0] - p[0]) / area2]
    });
    let area = 0.5 * area2.abs();
    std::array::from_fn(|a| std::array::from_fn(|b| area * (grads[a][0] * grads[b][0] + grads[a][1] * grads[b][1])))
}

/// P1 stiffness of the equilateral triangle of edge `s`; independent of `s`.
pub fn element_stiffness(s: f64) -> [[f64; 3]; 3] {
    let h = 0.5 * crate::mesh::SQRT_3 * s;
    triangle_stiffness(&[[0.0, 0.0], [s, 0.0], [0.5 * s, h]])
}

/// `[∫ f λ_a]` on one triangle.
fn element_load(tri: &[[f64; 2]; 3], f: impl Fn(f64, f64) -> f64, q: &QuadratureRule) -> [f64; 3] {
    let area = quadrature::triangle_area(tri);
    let mut out = [0.0; 3];
    for (l, w) in q.points.iter().zip(&q.weights) {
        let x = l[0] * tri[0][0] + l[1] * tri[1][0] + l[2] * tri[2][0];
        let y = l[0] * tri[0][1] + l[1] * tri[1][1] + l[2] * tri[2][1];
        let fw = w * area * f(x, y);
        for a in 0..3 {
            out[a] += fw * l[a];
        }
    }
    out
}

/// The reduced Galerkin system over interior honeycomb vertices.
#[derive(Clone, Debug)]
pub struct LinearSystem {
    pub matrix: SparseSpd,
    pub rhs: Vec<f64>,
    pub dofs: DofMap,
}

impl LinearSystem {
    /// True when there is nothing to solve (level 1: every vertex is on the boundary).
    pub fn is_empty(&self) -> bool {
        self.dofs.is_empty()
    }
}

/// Assembles `A = Cᵀ K C` and `b = Cᵀ ℓ` triangle by triangle in mesh order.
pub fn assemble(mesh: &HoneycombMesh, problem: &ManufacturedProblem, load_quad_degree: u32) -> Result<LinearSystem> {
    assemble_with(mesh, |x, y| problem.f(x, y), load_quad_degree)
}

/// [`assemble`] for an arbitrary right-hand side.
pub fn assemble_with(
    mesh: &HoneycombMesh,
    f: impl Fn(f64, f64) -> f64,
    load_quad_degree: u32,
) -> Result<LinearSystem> {
    let q = quadrature::rule(load_quad_degree)?;
    let dofs = DofMap::new(mesh);
    let n = dofs.len();
    let prolong: Vec<Vec<(usize, f64)>> =
        (0..mesh.nodes.len()).map(|k| dofs.prolongation_row(mesh, k)).collect();

    let ke = element_stiffness(mesh.s);
    let mut triplets = Vec::with_capacity(mesh.subtriangles.len() * 24);
    let mut rhs = vec![0.0; n];
    for (t, tri) in mesh.subtriangles.iter().enumerate() {
        let load = element_load(&mesh.triangle_vertices(t), &f, q);
        for a in 0..3 {
            for &(da, wa) in &prolong[tri[a]] {
                rhs[da] += wa * load[a];
                for b in 0..3 {
                    for &(db, wb) in &prolong[tri[b]] {
                        triplets.push((da, db, wa * wb * ke[a][b]));
                    }
                }
            }
        }
    }
    let matrix = SparseSpd::from_triplets(n, triplets);
    Ok(LinearSystem { matrix, rhs, dofs })
}

/// Extends dof values to a field: zero on the boundary, corner means at centres.
pub fn expand(x: &[f64], dofs: &DofMap, mesh: &HoneycombMesh) -> Result<FieldP1> {
    if x.len() != dofs.len() {
        return Err(VemError::DimensionMismatch { expected: dofs.len(), actual: x.len() });
    }
    let mut field = FieldP1::zeros(mesh);
    for (d, &v) in x.iter().enumerate() {
        field.values[dofs.node(d)] = v;
    }
    fill_centers(mesh, &mut field.values);
    Ok(field)
}

/// Dof values of a field (its interior honeycomb-vertex values).
pub fn restrict(field: &FieldP1, dofs: &DofMap) -> Vec<f64> {
    (0..dofs.len()).map(|d| field.values[dofs.node(d)]).collect()
}

fn fill_centers(mesh: &HoneycombMesh, values: &mut [f64]) {
    for &c in &mesh.centers {
        values[c] = corner_mean(mesh, values, c);
    }
}

/// Nodal interpolation at honeycomb vertices, extended to centres by corner means.
pub fn interpolate(mesh: &HoneycombMesh, g: impl Fn(f64, f64) -> f64) -> FieldP1 {
    let mut field = interpolate_bar(mesh, g);
    fill_centers(mesh, &mut field.values);
    field
}

/// Nodal interpolation at every lattice node, centres included.
pub fn interpolate_bar(mesh: &HoneycombMesh, g: impl Fn(f64, f64) -> f64) -> FieldP1 {
    let values = (0..mesh.nodes.len())
        .map(|k| {
            let [x, y] = mesh.position(k);
            g(x, y)
        })
        .collect();
    FieldP1 { level: mesh.level, values }
}
