//! Patchwise least-squares P3 recovery of the P1 solution.
//!
//! The recovery grid tiles the domain with equilateral patches of edge `4s`,
//! the coarse lattice whose corners have both axial coordinates divisible by
//! four. Each patch covers 16 subtriangles and holds the 15 points of the
//! degree-4 principal lattice; a cubic is fitted to nodal data at a subset of
//! those points, chosen by a [`LiftScheme`].
//!
//! Points of class 0 strictly inside the domain are hexagon centres, not
//! honeycomb vertices: an interior patch carries 10 vertices and 5 centres. On
//! the first admissible level (3) every patch touches the boundary and carries
//! 11 vertices.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use rayon::prelude::*;

use crate::error::{Result, VemError};
use crate::mesh::{position, triangle_points, HoneycombMesh, LatticePoint, Orientation, SQRT_3};
use crate::problem::ManufacturedProblem;
use crate::system::FieldP1;

/// Patch edge in units of the mesh edge length.
pub const PATCH_SCALE: i64 = 4;
/// Dimension of P3 in two variables.
pub const CUBIC_DIM: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SiteKind {
    MeshVertex,
    InteriorCenter,
}

#[derive(Clone, Copy, Debug)]
pub struct Site {
    pub node: usize,
    pub point: LatticePoint,
    pub kind: SiteKind,
}

#[derive(Clone, Debug)]
pub struct Patch {
    /// Lattice corners, counterclockwise.
    pub corners: [LatticePoint; 3],
    pub orientation: Orientation,
    pub centroid: [f64; 2],
    /// The 16 subtriangles covered by the patch.
    pub members: Vec<usize>,
    /// The 15 principal-lattice points.
    pub sites: Vec<Site>,
    /// Index into `corners` of the unique class-0 corner.
    pub c0_corner: usize,
}

impl Patch {
    pub fn mesh_vertex_count(&self) -> usize {
        self.sites.iter().filter(|s| s.kind == SiteKind::MeshVertex).count()
    }

    pub fn center_count(&self) -> usize {
        self.sites.len() - self.mesh_vertex_count()
    }

    /// True when some site lies on the domain boundary.
    pub fn touches_boundary(&self, n: i64) -> bool {
        self.sites.iter().any(|s| s.point.hex_norm() == n)
    }
}

#[derive(Clone, Debug)]
pub struct PatchGrid {
    pub level: u32,
    /// Patch edge length `L = 4s`.
    pub edge: f64,
    /// Mesh edge length.
    pub s: f64,
    pub patches: Vec<Patch>,
    lookup: HashMap<(i64, i64, bool), usize>,
}

/// Tiles the level-`mesh.level` domain with recovery patches.
pub fn build_patch_grid(mesh: &HoneycombMesh) -> Result<PatchGrid> {
    if mesh.level < 3 {
        return Err(VemError::LiftLevel(mesh.level));
    }
    let n = mesh.n;
    let coarse_n = n / PATCH_SCALE;
    let mut patches = Vec::new();
    let mut lookup = HashMap::new();
    for b in -coarse_n..coarse_n {
        for a in -coarse_n - 1..=coarse_n {
            for orientation in [Orientation::Up, Orientation::Down] {
                let coarse = triangle_points(LatticePoint::new(a, b), orientation);
                let corners = coarse.map(|p| LatticePoint::new(PATCH_SCALE * p.i, PATCH_SCALE * p.j));
                if corners.iter().any(|p| p.hex_norm() > n) {
                    continue;
                }
                let patch = make_patch(mesh, corners, orientation)?;
                lookup.insert((a, b, orientation == Orientation::Up), patches.len());
                patches.push(patch);
            }
        }
    }
    Ok(PatchGrid { level: mesh.level, edge: PATCH_SCALE as f64 * mesh.s, s: mesh.s, patches, lookup })
}

fn make_patch(mesh: &HoneycombMesh, corners: [LatticePoint; 3], orientation: Orientation) -> Result<Patch> {
    let k = PATCH_SCALE;
    // Principal lattice relative to the corner with the right angle in axial
    // coordinates: `corners[0]` for Up, the `(+k, +k)` corner for Down.
    let (origin, sign) = match orientation {
        Orientation::Up => (corners[0], 1),
        Orientation::Down => (corners[1], -1),
    };
    let mut sites = Vec::with_capacity(15);
    for q in 0..=k {
        for p in 0..=k - q {
            let point = LatticePoint::new(origin.i + sign * p, origin.j + sign * q);
            let node = mesh.node_index(point).ok_or_else(|| {
                VemError::MeshInvariant(format!("patch site {point:?} outside the domain"))
            })?;
            let kind = if mesh.nodes[node].is_center { SiteKind::InteriorCenter } else { SiteKind::MeshVertex };
            sites.push(Site { node, point, kind });
        }
    }
    sites.sort_by_key(|s| (s.point.j, s.point.i));

    // Fine triangles: base points offset (p, q) from the lower-left lattice corner.
    let base = LatticePoint::new(corners.iter().map(|c| c.i).min().unwrap(), corners.iter().map(|c| c.j).min().unwrap());
    let mut members = Vec::with_capacity(16);
    for q in 0..k {
        for p in 0..k {
            for o in [Orientation::Up, Orientation::Down] {
                // Lattice sum of the triangle's lowest corner relative to `base`.
                let inside = match (orientation, o) {
                    (Orientation::Up, Orientation::Up) => p + q < k,
                    (Orientation::Up, Orientation::Down) => p + q < k - 1,
                    (Orientation::Down, Orientation::Down) => p + q >= k - 1,
                    (Orientation::Down, Orientation::Up) => p + q >= k,
                };
                if inside {
                    let t = mesh.triangle_index(LatticePoint::new(base.i + p, base.j + q), o).ok_or_else(|| {
                        VemError::MeshInvariant(format!("patch triangle at {:?} outside the mesh", (base.i + p, base.j + q)))
                    })?;
                    members.push(t);
                }
            }
        }
    }
    let c0: Vec<usize> = (0..3).filter(|&c| corners[c].class() == 0).collect();
    if c0.len() != 1 || members.len() != 16 || sites.len() != 15 {
        return Err(VemError::MeshInvariant(format!(
            "patch {corners:?}: {} class-0 corners, {} triangles, {} sites",
            c0.len(),
            members.len(),
            sites.len()
        )));
    }
    let s = mesh.s;
    let pos = corners.map(|c| position(c, s));
    let centroid = [(pos[0][0] + pos[1][0] + pos[2][0]) / 3.0, (pos[0][1] + pos[1][1] + pos[2][1]) / 3.0];
    Ok(Patch { corners, orientation, centroid, members, sites, c0_corner: c0[0] })
}

/// Which sites a patch fit uses and what data they carry.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum LiftScheme {
    /// All 15 sites; centre data corrected by `s²/4 f(x0)`.
    #[default]
    Lattice15Corrected,
    /// Honeycomb vertices plus the class-0 corner; plain data.
    CornerPlain,
    /// As [`LiftScheme::CornerPlain`] with corrected centre data.
    CornerCorrected,
    /// Honeycomb vertices only, minimum-norm least squares.
    VerticesOnlyMinNorm,
    /// All 15 sites; centres take the exact solution (diagnostic).
    OracleCenter,
}

pub const LIFT_SCHEMES: [LiftScheme; 5] = [
    LiftScheme::Lattice15Corrected,
    LiftScheme::CornerPlain,
    LiftScheme::CornerCorrected,
    LiftScheme::VerticesOnlyMinNorm,
    LiftScheme::OracleCenter,
];

impl LiftScheme {
    pub fn name(self) -> &'static str {
        match self {
            LiftScheme::Lattice15Corrected => "lattice15-corrected",
            LiftScheme::CornerPlain => "paper11-plain",
            LiftScheme::CornerCorrected => "paper11-corrected",
            LiftScheme::VerticesOnlyMinNorm => "vertices-only-minnorm",
            LiftScheme::OracleCenter => "oracle-center",
        }
    }

    pub fn requires_full_rank(self) -> bool {
        self != LiftScheme::VerticesOnlyMinNorm
    }

    fn corrects_centers(self) -> bool {
        matches!(self, LiftScheme::Lattice15Corrected | LiftScheme::CornerCorrected)
    }

    /// Sites of `patch` used by this scheme, in patch order.
    pub fn select_sites(self, patch: &Patch) -> Vec<Site> {
        match self {
            LiftScheme::Lattice15Corrected | LiftScheme::OracleCenter => patch.sites.clone(),
            LiftScheme::VerticesOnlyMinNorm => {
                patch.sites.iter().copied().filter(|s| s.kind == SiteKind::MeshVertex).collect()
            }
            LiftScheme::CornerPlain | LiftScheme::CornerCorrected => {
                let corner = patch.corners[patch.c0_corner];
                patch
                    .sites
                    .iter()
                    .copied()
                    .filter(|s| s.kind == SiteKind::MeshVertex || s.point == corner)
                    .collect()
            }
        }
    }
}

impl fmt::Display for LiftScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LiftScheme {
    type Err = VemError;
    fn from_str(s: &str) -> Result<Self> {
        LIFT_SCHEMES
            .iter()
            .copied()
            .find(|k| k.name() == s)
            .ok_or_else(|| VemError::UnknownScheme(s.to_string()))
    }
}

/// Cubic on one patch in the scaled frame `ξ = (x - c) / L`.
#[derive(Clone, Debug, PartialEq)]
pub struct CubicFit {
    pub patch: usize,
    /// Coefficients of `1, ξ, η, ξ², ξη, η², ξ³, ξ²η, ξη², η³`.
    pub coeffs: [f64; CUBIC_DIM],
    pub center: [f64; 2],
    pub scale: f64,
    /// Smallest singular value of the scaled design matrix.
    pub min_singular_value: f64,
    pub rank: usize,
    /// `‖D c - data‖₂`
    pub residual_norm: f64,
}

fn monomials(xi: f64, eta: f64) -> [f64; CUBIC_DIM] {
    [1.0, xi, eta, xi * xi, xi * eta, eta * eta, xi * xi * xi, xi * xi * eta, xi * eta * eta, eta * eta * eta]
}

/// Partial derivatives of the monomials in the scaled frame.
fn monomial_gradients(xi: f64, eta: f64) -> ([f64; CUBIC_DIM], [f64; CUBIC_DIM]) {
    let dxi = [0.0, 1.0, 0.0, 2.0 * xi, eta, 0.0, 3.0 * xi * xi, 2.0 * xi * eta, eta * eta, 0.0];
    let deta = [0.0, 0.0, 1.0, 0.0, xi, 2.0 * eta, 0.0, xi * xi, 2.0 * xi * eta, 3.0 * eta * eta];
    (dxi, deta)
}

impl CubicFit {
    fn local(&self, p: [f64; 2]) -> (f64, f64) {
        ((p[0] - self.center[0]) / self.scale, (p[1] - self.center[1]) / self.scale)
    }

    pub fn value(&self, p: [f64; 2]) -> f64 {
        let (xi, eta) = self.local(p);
        monomials(xi, eta).iter().zip(&self.coeffs).map(|(m, c)| m * c).sum()
    }

    pub fn gradient(&self, p: [f64; 2]) -> [f64; 2] {
        let (xi, eta) = self.local(p);
        let (gx, gy) = monomial_gradients(xi, eta);
        let dot = |g: &[f64; CUBIC_DIM]| g.iter().zip(&self.coeffs).map(|(m, c)| m * c).sum::<f64>();
        [dot(&gx) / self.scale, dot(&gy) / self.scale]
    }
}

/// Design matrix rows for `points` in the frame of `patch`.
pub fn design_matrix(patch: &Patch, edge: f64, points: &[[f64; 2]]) -> Vec<[f64; CUBIC_DIM]> {
    points
        .iter()
        .map(|p| monomials((p[0] - patch.centroid[0]) / edge, (p[1] - patch.centroid[1]) / edge))
        .collect()
}

/// Least-squares solution by Householder QR; returns the coefficients and the
/// residual norm. `rows` must have full column rank.
fn householder_lstsq(rows: &[[f64; CUBIC_DIM]], data: &[f64]) -> ([f64; CUBIC_DIM], f64) {
    let m = rows.len();
    let mut a: Vec<[f64; CUBIC_DIM]> = rows.to_vec();
    let mut b = data.to_vec();
    for k in 0..CUBIC_DIM {
        let norm = (k..m).map(|i| a[i][k] * a[i][k]).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        let alpha = if a[k][k] > 0.0 { -norm } else { norm };
        let mut v: Vec<f64> = (k..m).map(|i| a[i][k]).collect();
        v[0] -= alpha;
        let vnorm2: f64 = v.iter().map(|x| x * x).sum();
        if vnorm2 == 0.0 {
            continue;
        }
        for j in k..CUBIC_DIM {
            let proj = (k..m).map(|i| v[i - k] * a[i][j]).sum::<f64>() * 2.0 / vnorm2;
            for i in k..m {
                a[i][j] -= proj * v[i - k];
            }
        }
        let proj = (k..m).map(|i| v[i - k] * b[i]).sum::<f64>() * 2.0 / vnorm2;
        for i in k..m {
            b[i] -= proj * v[i - k];
        }
    }
    let mut c = [0.0; CUBIC_DIM];
    for k in (0..CUBIC_DIM).rev() {
        let s: f64 = (k + 1..CUBIC_DIM).map(|j| a[k][j] * c[j]).sum();
        c[k] = (b[k] - s) / a[k][k];
    }
    let residual = b[CUBIC_DIM..].iter().map(|x| x * x).sum::<f64>().sqrt();
    (c, residual)
}

fn to_dmatrix(rows: &[[f64; CUBIC_DIM]]) -> DMatrix<f64> {
    DMatrix::from_fn(rows.len(), CUBIC_DIM, |r, c| rows[r][c])
}

/// Singular values of the design matrix, descending.
pub fn singular_values(rows: &[[f64; CUBIC_DIM]]) -> Vec<f64> {
    let mut sv: Vec<f64> = to_dmatrix(rows).singular_values().iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    sv
}

/// Relative singular value threshold below which a direction counts as null.
const RANK_TOLERANCE: f64 = 1e-10;

/// Fits a cubic to `data` at `points` on patch `index` of `grid`.
pub fn fit_patch(
    grid: &PatchGrid,
    index: usize,
    points: &[[f64; 2]],
    data: &[f64],
    scheme: LiftScheme,
) -> Result<CubicFit> {
    if points.len() != data.len() {
        return Err(VemError::DimensionMismatch { expected: points.len(), actual: data.len() });
    }
    let patch = &grid.patches[index];
    let rows = design_matrix(patch, grid.edge, points);
    let sv = if rows.len() >= CUBIC_DIM { singular_values(&rows) } else { Vec::new() };
    let smax = sv.first().copied().unwrap_or(0.0);
    let rank = sv.iter().filter(|&&v| v > RANK_TOLERANCE * smax).count();
    let min_singular_value = if sv.len() >= CUBIC_DIM { sv[CUBIC_DIM - 1] } else { 0.0 };

    let (coeffs, residual_norm) = if scheme.requires_full_rank() {
        if points.len() < CUBIC_DIM {
            return Err(VemError::TooFewSites { patch: index, sites: points.len() });
        }
        if rank < CUBIC_DIM {
            return Err(VemError::RankDeficient { patch: index, rank, sites: points.len() });
        }
        householder_lstsq(&rows, data)
    } else {
        minimum_norm_lstsq(&rows, data)
    };
    Ok(CubicFit {
        patch: index,
        coeffs,
        center: patch.centroid,
        scale: grid.edge,
        min_singular_value,
        rank,
        residual_norm,
    })
}

fn minimum_norm_lstsq(rows: &[[f64; CUBIC_DIM]], data: &[f64]) -> ([f64; CUBIC_DIM], f64) {
    let a = to_dmatrix(rows);
    let svd = a.clone().svd(true, true);
    let smax = svd.singular_values.max();
    let b = nalgebra::DVector::from_column_slice(data);
    let x = svd
        .solve(&b, RANK_TOLERANCE * smax.max(f64::MIN_POSITIVE))
        .expect("both singular vector sets were computed");
    let residual = (&a * &x - &b).norm();
    let mut coeffs = [0.0; CUBIC_DIM];
    coeffs.copy_from_slice(x.as_slice());
    (coeffs, residual)
}

/// Fit data at one site of a patch.
fn site_value(site: &Site, uh: &FieldP1, problem: &ManufacturedProblem, s: f64, scheme: LiftScheme) -> f64 {
    match site.kind {
        SiteKind::MeshVertex => uh.values[site.node],
        SiteKind::InteriorCenter => {
            let [x, y] = position(site.point, s);
            if scheme == LiftScheme::OracleCenter {
                problem.u(x, y)
            } else if scheme.corrects_centers() {
                uh.values[site.node] + 0.25 * s * s * problem.f(x, y)
            } else {
                uh.values[site.node]
            }
        }
    }
}

/// Per-patch cubic recoveries of a discrete solution.
#[derive(Clone, Debug)]
pub struct LiftedSolution {
    pub scheme: LiftScheme,
    pub fits: Vec<CubicFit>,
}

impl LiftedSolution {
    pub fn min_singular_value(&self) -> f64 {
        self.fits.iter().map(|f| f.min_singular_value).fold(f64::INFINITY, f64::min)
    }

    pub fn min_rank(&self) -> usize {
        self.fits.iter().map(|f| f.rank).min().unwrap_or(0)
    }
}

/// Fits every patch of `grid` to `uh` under `scheme`.
pub fn lift_solution(
    uh: &FieldP1,
    problem: &ManufacturedProblem,
    mesh: &HoneycombMesh,
    grid: &PatchGrid,
    scheme: LiftScheme,
) -> Result<LiftedSolution> {
    uh.check_mesh(mesh)?;
    if grid.level != mesh.level {
        return Err(VemError::MeshMismatch { field: grid.level, mesh: mesh.level });
    }
    let fits = (0..grid.patches.len())
        .into_par_iter()
        .map(|index| {
            let sites = scheme.select_sites(&grid.patches[index]);
            let points: Vec<[f64; 2]> = sites.iter().map(|s| position(s.point, mesh.s)).collect();
            let data: Vec<f64> = sites.iter().map(|s| site_value(s, uh, problem, mesh.s, scheme)).collect();
            fit_patch(grid, index, &points, &data, scheme)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LiftedSolution { scheme, fits })
}

impl PatchGrid {
    /// Index of the lowest-numbered patch containing `p`.
    pub fn locate(&self, p: [f64; 2]) -> Option<usize> {
        const TOL: f64 = 1e-12;
        let scale = PATCH_SCALE as f64 * self.s;
        let b = 2.0 * p[1] / (SQRT_3 * scale);
        let a = p[0] / scale - 0.5 * b;
        let (fa, fb) = (a.floor() as i64, b.floor() as i64);
        let mut best: Option<usize> = None;
        for cb in fb - 1..=fb {
            for ca in fa - 1..=fa {
                let (al, be) = (a - ca as f64, b - cb as f64);
                for up in [true, false] {
                    let inside = if up {
                        al >= -TOL && be >= -TOL && al + be <= 1.0 + TOL
                    } else {
                        al <= 1.0 + TOL && be <= 1.0 + TOL && al + be >= 1.0 - TOL
                    };
                    if !inside {
                        continue;
                    }
                    if let Some(&idx) = self.lookup.get(&(ca, cb, up)) {
                        best = Some(best.map_or(idx, |b: usize| b.min(idx)));
                    }
                }
            }
        }
        best
    }
}

/// Value and gradient of the recovered cubic at `p`.
pub fn evaluate_lift(lifted: &LiftedSolution, grid: &PatchGrid, p: [f64; 2]) -> Result<(f64, [f64; 2])> {
    let idx = grid.locate(p).ok_or(VemError::PointOutside { x: p[0], y: p[1] })?;
    let fit = &lifted.fits[idx];
    Ok((fit.value(p), fit.gradient(p)))
}

/// `max |u_h(x0) + s²/4 f(x0) - u(x0)|` over interior hexagon centres.
pub fn corrected_center_error(uh: &FieldP1, problem: &ManufacturedProblem, mesh: &HoneycombMesh) -> f64 {
    let s = mesh.s;
    mesh.centers
        .iter()
        .map(|&c| {
            let [x, y] = mesh.position(c);
            (uh.values[c] + 0.25 * s * s * problem.f(x, y) - problem.u(x, y)).abs()
        })
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::build_mesh;
    use crate::problem;
    use crate::system::interpolate_bar;

    fn cubic(x: f64, y: f64) -> f64 {
        0.3 - x + 2.0 * y + 0.5 * x * x - x * y + 1.5 * y * y + x * x * x - 0.25 * x * x * y + 2.0 * x * y * y - y * y * y
    }

    #[test]
    fn level_three_grid() {
        let mesh = build_mesh(3).unwrap();
        let grid = build_patch_grid(&mesh).unwrap();
        assert_eq!(grid.patches.len(), 6);
        assert!((grid.edge - 1.0).abs() < 1e-15);
        for patch in &grid.patches {
            assert_eq!(patch.mesh_vertex_count(), 11);
            assert_eq!(patch.center_count(), 4);
            assert_eq!(patch.members.len(), 16);
            let boundary_vertices = patch.sites.iter().filter(|s| mesh.nodes[s.node].on_boundary).count();
            assert_eq!(boundary_vertices, 5);
        }
    }

    #[test]
    fn level_four_grid() {
        let mesh = build_mesh(4).unwrap();
        let grid = build_patch_grid(&mesh).unwrap();
        assert_eq!(grid.patches.len(), 24);
        let interior: Vec<_> = grid.patches.iter().filter(|p| !p.touches_boundary(mesh.n)).collect();
        assert!(!interior.is_empty());
        for p in interior {
            assert_eq!((p.mesh_vertex_count(), p.center_count()), (10, 5));
        }
    }

    #[test]
    fn low_levels_rejected() {
        let mesh = build_mesh(2).unwrap();
        assert!(matches!(build_patch_grid(&mesh), Err(VemError::LiftLevel(2))));
    }

    #[test]
    fn cubic_data_is_reproduced_by_every_scheme() {
        let mesh = build_mesh(4).unwrap();
        let grid = build_patch_grid(&mesh).unwrap();
        let field = interpolate_bar(&mesh, cubic);
        for scheme in LIFT_SCHEMES {
            if scheme == LiftScheme::VerticesOnlyMinNorm {
                continue;
            }
            // f ≡ 0 keeps the centre data uncorrected, and the oracle reads u ≡ 0.
            let lifted = match scheme {
                LiftScheme::OracleCenter => continue,
                _ => lift_solution(&field, &problem::zero(), &mesh, &grid, scheme).unwrap(),
            };
            for (fit, patch) in lifted.fits.iter().zip(&grid.patches) {
                let [cx, cy] = patch.centroid;
                assert!((fit.value([cx + 0.01, cy - 0.02]) - cubic(cx + 0.01, cy - 0.02)).abs() < 1e-12, "{scheme}");
            }
        }
    }

    #[test]
    fn zero_data_gives_zero_cubic() {
        let mesh = build_mesh(3).unwrap();
        let grid = build_patch_grid(&mesh).unwrap();
        let lifted = lift_solution(&FieldP1::zeros(&mesh), &problem::zero(), &mesh, &grid, LiftScheme::default()).unwrap();
        assert!(lifted.fits.iter().all(|f| f.coeffs.iter().all(|&c| c == 0.0)));
    }

    #[test]
    fn centroid_value_is_constant_coefficient() {
        let mesh = build_mesh(4).unwrap();
        let grid = build_patch_grid(&mesh).unwrap();
        let field = interpolate_bar(&mesh, |x, y| (x + 2.0 * y).sin());
        let lifted = lift_solution(&field, &problem::zero(), &mesh, &grid, LiftScheme::default()).unwrap();
        for fit in &lifted.fits {
            assert!((fit.value(fit.center) - fit.coeffs[0]).abs() < 1e-15);
        }
    }

    #[test]
    fn vertices_only_is_rank_deficient_inside() {
        let mesh = build_mesh(4).unwrap();
        let grid = build_patch_grid(&mesh).unwrap();
        let field = interpolate_bar(&mesh, |x, y| x * y);
        let lifted = lift_solution(&field, &problem::zero(), &mesh, &grid, LiftScheme::VerticesOnlyMinNorm).unwrap();
        for (fit, patch) in lifted.fits.iter().zip(&grid.patches) {
            if !patch.touches_boundary(mesh.n) {
                assert!(fit.rank < CUBIC_DIM);
            }
        }
    }

    #[test]
    fn scheme_names_round_trip() {
        for s in LIFT_SCHEMES {
            assert_eq!(s.name().parse::<LiftScheme>().unwrap(), s);
        }
        assert!("lattice16".parse::<LiftScheme>().is_err());
    }

    #[test]
    fn locate_breaks_ties_by_lowest_index() {
        let mesh = build_mesh(4).unwrap();
        let grid = build_patch_grid(&mesh).unwrap();
        // The origin is a corner of six patches.
        let idx = grid.locate([0.0, 0.0]).unwrap();
        let containing: Vec<usize> = grid
            .patches
            .iter()
            .enumerate()
            .filter(|(_, p)| p.corners.contains(&LatticePoint::new(0, 0)))
            .map(|(k, _)| k)
            .collect();
        assert_eq!(containing.len(), 6);
        assert_eq!(idx, *containing.iter().min().unwrap());
        assert!(grid.locate([2.0, 0.0]).is_none());
    }
}
