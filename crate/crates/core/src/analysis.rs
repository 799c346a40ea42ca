//! Error norms and observed convergence orders.

use rayon::prelude::*;

use crate::error::{Result, VemError};
use crate::lift::{LiftedSolution, PatchGrid};
use crate::mesh::HoneycombMesh;
use crate::problem::ManufacturedProblem;
use crate::quadrature::{self, QuadratureRule};
use crate::system::{element_stiffness, FieldP1};

/// Default quadrature degree for errors against the exact solution.
pub const DEFAULT_ERROR_DEGREE: u32 = 6;

/// Errors below this are treated as round-off when forming orders.
pub const ROUND_OFF_FLOOR: f64 = 1e2 * f64::EPSILON;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SupercloseNorms {
    pub l2: f64,
    pub h1: f64,
    /// Maximum over honeycomb vertices.
    pub linf: f64,
}

/// Norms of `e_h = I_h u - u_h`; `q` of degree 2 integrates the squared linear error exactly.
pub fn norms_superclose(
    uh: &FieldP1,
    ih: &FieldP1,
    mesh: &HoneycombMesh,
    q: &QuadratureRule,
) -> Result<SupercloseNorms> {
    uh.check_mesh(mesh)?;
    ih.check_mesh(mesh)?;
    let e = ih.sub(uh);
    let ke = element_stiffness(mesh.s);
    let parts: Vec<(f64, f64)> = (0..mesh.subtriangles.len())
        .into_par_iter()
        .map(|t| {
            let tri = mesh.triangle_vertices(t);
            let area = quadrature::triangle_area(&tri);
            let l2: f64 = q
                .points
                .iter()
                .zip(&q.weights)
                .map(|(l, w)| w * e.eval_in(mesh, t, *l).powi(2))
                .sum::<f64>()
                * area;
            let v = mesh.subtriangles[t].map(|k| e.values[k]);
            let mut h1 = 0.0;
            for a in 0..3 {
                for b in 0..3 {
                    h1 += v[a] * ke[a][b] * v[b];
                }
            }
            (l2, h1)
        })
        .collect();
    let (l2, h1) = parts.iter().fold((0.0, 0.0), |(a, b), (x, y)| (a + x, b + y));
    let linf = mesh.nh_nodes.iter().map(|&k| e.values[k].abs()).fold(0.0, f64::max);
    Ok(SupercloseNorms { l2: l2.sqrt(), h1: h1.max(0.0).sqrt(), linf })
}

fn check_error_degree(degree: u32) -> Result<&'static QuadratureRule> {
    if degree < 6 {
        return Err(VemError::Config(format!("error quadrature degree {degree} below 6")));
    }
    quadrature::rule(degree)
}

/// `‖u - u_h‖_{L²}` over the subtriangles.
pub fn norm_l2_true(uh: &FieldP1, problem: &ManufacturedProblem, mesh: &HoneycombMesh, degree: u32) -> Result<f64> {
    uh.check_mesh(mesh)?;
    let q = check_error_degree(degree)?;
    let parts: Vec<f64> = (0..mesh.subtriangles.len())
        .into_par_iter()
        .map(|t| {
            let tri = mesh.triangle_vertices(t);
            q.points
                .iter()
                .zip(q.on_triangle(&tri))
                .map(|(l, (x, w))| w * (problem.u(x[0], x[1]) - uh.eval_in(mesh, t, *l)).powi(2))
                .sum::<f64>()
        })
        .collect();
    Ok(parts.iter().sum::<f64>().sqrt())
}

/// `‖u - w_h‖_{L²}` where `w_h` keeps `u_h` at honeycomb vertices and takes the
/// exact solution at hexagon centres. Not a norm of `u - u_h`; a diagnostic.
pub fn norm_l2_vertex_reconstruction(
    uh: &FieldP1,
    problem: &ManufacturedProblem,
    mesh: &HoneycombMesh,
    degree: u32,
) -> Result<f64> {
    uh.check_mesh(mesh)?;
    let mut w = uh.clone();
    for &c in &mesh.centers {
        let [x, y] = mesh.position(c);
        w.values[c] = problem.u(x, y);
    }
    norm_l2_true(&w, problem, mesh, degree)
}

/// `‖u - ũ_h‖_{L²}` and the broken `|u - ũ_h|_{H¹,h}`, patch by patch.
pub fn lift_errors(
    lifted: &LiftedSolution,
    problem: &ManufacturedProblem,
    mesh: &HoneycombMesh,
    grid: &PatchGrid,
    degree: u32,
) -> Result<(f64, f64)> {
    let q = check_error_degree(degree)?;
    if grid.level != mesh.level || lifted.fits.len() != grid.patches.len() {
        return Err(VemError::MeshMismatch { field: grid.level, mesh: mesh.level });
    }
    let parts: Vec<(f64, f64)> = grid
        .patches
        .par_iter()
        .zip(lifted.fits.par_iter())
        .map(|(patch, fit)| {
            let mut l2 = 0.0;
            let mut h1 = 0.0;
            for &t in &patch.members {
                let tri = mesh.triangle_vertices(t);
                for (x, w) in q.on_triangle(&tri) {
                    let jet = problem.jet(x[0], x[1]);
                    let g = fit.gradient(x);
                    l2 += w * (jet.val - fit.value(x)).powi(2);
                    h1 += w * ((jet.dx - g[0]).powi(2) + (jet.dy - g[1]).powi(2));
                }
            }
            (l2, h1)
        })
        .collect();
    let (l2, h1) = parts.iter().fold((0.0, 0.0), |(a, b), (x, y)| (a + x, b + y));
    Ok((l2.sqrt(), h1.sqrt()))
}

/// `log₂(previous / current)`, or the `0` sentinel when either error is at round-off.
pub fn observed_order(previous: f64, current: f64) -> f64 {
    if previous <= ROUND_OFF_FLOOR || current <= ROUND_OFF_FLOOR {
        0.0
    } else {
        (previous / current).log2()
    }
}

/// One line of a convergence table.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct StudyRow {
    pub level: u32,
    pub h: f64,
    pub dofs: usize,
    pub e_ih_l2: f64,
    pub r_ih_l2: f64,
    pub e_ih_h1: f64,
    pub r_ih_h1: f64,
    pub e_ih_linf: f64,
    pub r_ih_linf: f64,
    pub e_l2: f64,
    pub r_l2: f64,
    pub e_lift_l2: Option<f64>,
    pub r_lift_l2: Option<f64>,
    pub e_lift_h1h: Option<f64>,
    pub r_lift_h1h: Option<f64>,
}

/// Fills the order columns; the first row (and the first lifted row) gets `0`.
pub fn orders(rows: &mut [StudyRow]) {
    for k in 0..rows.len() {
        let prev = if k > 0 { Some(rows[k - 1].clone()) } else { None };
        let row = &mut rows[k];
        match &prev {
            None => {
                row.r_ih_l2 = 0.0;
                row.r_ih_h1 = 0.0;
                row.r_ih_linf = 0.0;
                row.r_l2 = 0.0;
            }
            Some(p) => {
                row.r_ih_l2 = observed_order(p.e_ih_l2, row.e_ih_l2);
                row.r_ih_h1 = observed_order(p.e_ih_h1, row.e_ih_h1);
                row.r_ih_linf = observed_order(p.e_ih_linf, row.e_ih_linf);
                row.r_l2 = observed_order(p.e_l2, row.e_l2);
            }
        }
        let pair = |cur: Option<f64>, before: Option<f64>| match (before, cur) {
            (_, None) => None,
            (Some(b), Some(c)) => Some(observed_order(b, c)),
            (None, Some(_)) => Some(0.0),
        };
        row.r_lift_l2 = pair(row.e_lift_l2, prev.as_ref().and_then(|p| p.e_lift_l2));
        row.r_lift_h1h = pair(row.e_lift_h1h, prev.as_ref().and_then(|p| p.e_lift_h1h));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::build_mesh;
    use crate::problem;
    use crate::system::interpolate;

    fn row(level: u32, e: f64) -> StudyRow {
        StudyRow { level, e_ih_l2: e, e_ih_h1: e, e_ih_linf: e, e_l2: e, ..Default::default() }
    }

    #[test]
    fn order_examples() {
        assert!((observed_order(1e-2, 2.5e-3) - 2.0).abs() < 1e-12);
        assert!((observed_order(1.6e-3, 1e-4) - 4.0).abs() < 1e-12);
        assert!((observed_order(0.1138e-3, 0.7358e-5) - 3.95).abs() < 5e-3);
        assert!((observed_order(0.1567e-2, 0.1138e-3) - 3.78).abs() < 5e-3);
        assert_eq!(observed_order(1e-32, 1e-3), 0.0);
    }

    #[test]
    fn orders_fill_sentinels() {
        let mut rows = vec![row(1, 1e-2), row(2, 2.5e-3), row(3, 6.25e-4)];
        rows[2].e_lift_l2 = Some(1e-3);
        orders(&mut rows);
        assert_eq!(rows[0].r_ih_l2, 0.0);
        assert!((rows[1].r_ih_h1 - 2.0).abs() < 1e-12);
        assert!((rows[2].r_l2 - 2.0).abs() < 1e-12);
        assert_eq!(rows[1].r_lift_l2, None);
        assert_eq!(rows[2].r_lift_l2, Some(0.0));
        assert_eq!(rows[2].r_lift_h1h, None);
    }

    #[test]
    fn identical_fields_have_zero_norms() {
        let mesh = build_mesh(3).unwrap();
        let p = problem::hex_sine();
        let ih = interpolate(&mesh, |x, y| p.u(x, y));
        let n = norms_superclose(&ih, &ih, &mesh, quadrature::rule(2).unwrap()).unwrap();
        assert_eq!((n.l2, n.h1, n.linf), (0.0, 0.0, 0.0));
    }

    #[test]
    fn mesh_mismatch_is_reported() {
        let m3 = build_mesh(3).unwrap();
        let m4 = build_mesh(4).unwrap();
        let f3 = FieldP1::zeros(&m3);
        let f4 = FieldP1::zeros(&m4);
        assert!(matches!(
            norms_superclose(&f3, &f4, &m4, quadrature::rule(2).unwrap()),
            Err(VemError::MeshMismatch { .. })
        ));
    }

    #[test]
    fn l2_of_zero_solution_is_norm_of_u() {
        // With u_h = 0 the error is ‖u‖.
        let mesh = build_mesh(5).unwrap();
        let e = norm_l2_true(&FieldP1::zeros(&mesh), &problem::hex_sine(), &mesh, 6).unwrap();
        assert!((e - 0.8686e-1).abs() < 1e-3 * 0.8686e-1, "{e}");
    }

    #[test]
    fn low_error_degree_rejected() {
        let mesh = build_mesh(1).unwrap();
        assert!(norm_l2_true(&FieldP1::zeros(&mesh), &problem::zero(), &mesh, 4).is_err());
    }
}
