//! Honeycomb meshes of the regular hexagon domain.
//!
//! All geometry lives on the equilateral lattice spanned by `u = (s, 0)` and
//! `v = (s/2, s√3/2)`. Integer lattice coordinates are authoritative; floating
//! positions are derived from them, so boundary tests never use tolerances.
//!
//! The domain is the regular hexagon with corners `(±1, 0)`, `(±1/2, ±√3/2)`.
//! In lattice units with `n = 1/s` it is `max(|i|, |j|, |i + j|) <= n`.
//!
//! Every lattice triangle has exactly one vertex of class `(i - j) mod 3 == 0`.
//! Grouping the triangles inside the domain by that vertex yields the honeycomb
//! cells: six triangles around an interior anchor form a hexagon, three around
//! a boundary anchor form a pentagon (a half hexagon whose straight side carries
//! the anchor as an extra mesh vertex).
//!
//! On this domain the corners are never of class 0, so corner-triangle cells
//! never occur; the kind is kept for completeness of the cell taxonomy.

use crate::error::{Result, VemError};

pub const SQRT_3: f64 = 1.732_050_807_568_877_2;

pub const MIN_LEVEL: u32 = 1;
pub const MAX_LEVEL: u32 = 12;

/// A point of the equilateral lattice in axial coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePoint {
    pub i: i64,
    pub j: i64,
}

impl LatticePoint {
    pub const fn new(i: i64, j: i64) -> Self {
        Self { i, j }
    }

    /// Residue class `(i - j) mod 3`. Class 0 holds the origin, hence all
    /// hexagon centres.
    pub fn class(self) -> u8 {
        (self.i - self.j).rem_euclid(3) as u8
    }

    /// Hexagonal norm: the domain of half-width `n` is `hex_norm <= n`.
    pub fn hex_norm(self) -> i64 {
        self.i.abs().max(self.j.abs()).max((self.i + self.j).abs())
    }

    pub fn position(self, s: f64) -> [f64; 2] {
        position(self, s)
    }

    /// The six lattice neighbours, counterclockwise starting along `+u`.
    pub fn neighbours(self) -> [LatticePoint; 6] {
        let LatticePoint { i, j } = self;
        [
            LatticePoint::new(i + 1, j),
            LatticePoint::new(i, j + 1),
            LatticePoint::new(i - 1, j + 1),
            LatticePoint::new(i - 1, j),
            LatticePoint::new(i, j - 1),
            LatticePoint::new(i + 1, j - 1),
        ]
    }
}

/// Physical position `(i s + j s / 2, j s √3 / 2)`.
pub fn position(p: LatticePoint, s: f64) -> [f64; 2] {
    let (i, j) = (p.i as f64, p.j as f64);
    [i * s + 0.5 * j * s, 0.5 * SQRT_3 * j * s]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CellKind {
    Hexagon,
    Pentagon,
    CornerTriangle,
}

#[derive(Clone, Debug)]
pub struct Cell {
    pub kind: CellKind,
    /// Node index of the class-0 point the member triangles share.
    pub anchor: usize,
    /// Indices into [`HoneycombMesh::subtriangles`].
    pub members: Vec<usize>,
}

#[derive(Clone, Copy, Debug)]
pub struct Node {
    pub point: LatticePoint,
    pub on_boundary: bool,
    /// Strictly interior class-0 node: the centre of a hexagon, not a mesh vertex.
    pub is_center: bool,
}

/// Orientation of a lattice triangle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    /// `(i, j), (i + 1, j), (i, j + 1)`
    Up,
    /// `(i + 1, j), (i + 1, j + 1), (i, j + 1)`
    Down,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Census {
    pub hexagons: usize,
    pub pentagons: usize,
    pub corner_triangles: usize,
}

#[derive(Clone, Debug)]
pub struct HoneycombMesh {
    pub level: u32,
    /// Half-width of the domain in lattice steps, `n = 2^(level - 1)`.
    pub n: i64,
    /// Edge length of every subtriangle (and every honeycomb edge).
    pub s: f64,
    pub nodes: Vec<Node>,
    /// Counterclockwise vertex triples of the equilateral submesh.
    pub subtriangles: Vec<[usize; 3]>,
    pub cells: Vec<Cell>,
    /// Mesh vertices of the honeycomb (every node except hexagon centres).
    pub nh_nodes: Vec<usize>,
    /// Interior hexagon centres.
    pub centers: Vec<usize>,
    row_start: Vec<usize>,
    tri_row_start: Vec<usize>,
}

impl HoneycombMesh {
    /// Node index of a lattice point, if it lies in the closed domain.
    pub fn node_index(&self, p: LatticePoint) -> Option<usize> {
        let n = self.n;
        if p.hex_norm() > n {
            return None;
        }
        let row = (p.j + n) as usize;
        let i_min = (-n).max(-n - p.j);
        Some(self.row_start[row] + (p.i - i_min) as usize)
    }

    pub fn position(&self, node: usize) -> [f64; 2] {
        self.nodes[node].point.position(self.s)
    }

    pub fn triangle_vertices(&self, t: usize) -> [[f64; 2]; 3] {
        let [a, b, c] = self.subtriangles[t];
        [self.position(a), self.position(b), self.position(c)]
    }

    /// Area of one subtriangle, `√3 s² / 4`.
    pub fn triangle_area(&self) -> f64 {
        0.25 * SQRT_3 * self.s * self.s
    }

    /// The six corner nodes of the hexagon centred at `center`.
    pub fn hexagon_corners(&self, center: usize) -> [usize; 6] {
        let nb = self.nodes[center].point.neighbours();
        nb.map(|p| {
            self.node_index(p)
                .expect("hexagon corners of an interior centre lie in the domain")
        })
    }

    pub fn census(&self) -> Census {
        let mut c = Census::default();
        for cell in &self.cells {
            match cell.kind {
                CellKind::Hexagon => c.hexagons += 1,
                CellKind::Pentagon => c.pentagons += 1,
                CellKind::CornerTriangle => c.corner_triangles += 1,
            }
        }
        c
    }

    /// Index of the lattice triangle with base point `base` and orientation,
    /// if it lies in the domain.
    pub fn triangle_index(&self, base: LatticePoint, orient: Orientation) -> Option<usize> {
        let n = self.n;
        let LatticePoint { i, j } = base;
        if j < -n || j >= n {
            return None;
        }
        let (up_lo, up_hi) = up_range(n, j);
        let (dn_lo, dn_hi) = down_range(n, j);
        let inside = match orient {
            Orientation::Up => (up_lo..=up_hi).contains(&i),
            Orientation::Down => (dn_lo..=dn_hi).contains(&i),
        };
        if !inside {
            return None;
        }
        // Within a row: for each base i, Up then Down.
        let ups_before = (i - up_lo).clamp(0, up_hi - up_lo + 1) as usize;
        let downs_before = (i - dn_lo).clamp(0, (dn_hi - dn_lo + 1).max(0)) as usize;
        let mut idx = self.tri_row_start[(j + n) as usize] + ups_before + downs_before;
        if orient == Orientation::Down && (up_lo..=up_hi).contains(&i) {
            idx += 1;
        }
        Some(idx)
    }
}

fn up_range(n: i64, j: i64) -> (i64, i64) {
    ((-n).max(-n - j), (n - 1).min(n - j - 1))
}

fn down_range(n: i64, j: i64) -> (i64, i64) {
    ((-n).max(-n - j - 1), (n - 1).min(n - j - 2))
}

/// Lattice points of the triangle with the given base point and orientation.
pub fn triangle_points(base: LatticePoint, orient: Orientation) -> [LatticePoint; 3] {
    let LatticePoint { i, j } = base;
    match orient {
        Orientation::Up => [
            LatticePoint::new(i, j),
            LatticePoint::new(i + 1, j),
            LatticePoint::new(i, j + 1),
        ],
        Orientation::Down => [
            LatticePoint::new(i + 1, j),
            LatticePoint::new(i + 1, j + 1),
            LatticePoint::new(i, j + 1),
        ],
    }
}

/// Builds the level-`level` honeycomb mesh with edge length `2^(1 - level)`.
///
/// Each level is generated directly from the lattice; finer meshes are not
/// refinements of coarser ones.
pub fn build_mesh(level: u32) -> Result<HoneycombMesh> {
    if !(MIN_LEVEL..=MAX_LEVEL).contains(&level) {
        return Err(VemError::LevelOutOfRange { level, min: MIN_LEVEL, max: MAX_LEVEL });
    }
    let n: i64 = 1 << (level - 1);
    let s = 1.0 / n as f64;

    let mut nodes = Vec::with_capacity((3 * n * n + 3 * n + 1) as usize);
    let mut row_start = Vec::with_capacity((2 * n + 2) as usize);
    for j in -n..=n {
        row_start.push(nodes.len());
        let i_min = (-n).max(-n - j);
        let i_max = n.min(n - j);
        for i in i_min..=i_max {
            let point = LatticePoint::new(i, j);
            let on_boundary = point.hex_norm() == n;
            nodes.push(Node { point, on_boundary, is_center: !on_boundary && point.class() == 0 });
        }
    }
    row_start.push(nodes.len());

    let mut mesh = HoneycombMesh {
        level,
        n,
        s,
        nodes,
        subtriangles: Vec::with_capacity((6 * n * n) as usize),
        cells: Vec::new(),
        nh_nodes: Vec::new(),
        centers: Vec::new(),
        row_start,
        tri_row_start: Vec::with_capacity((2 * n) as usize),
    };

    for j in -n..n {
        mesh.tri_row_start.push(mesh.subtriangles.len());
        let (up_lo, up_hi) = up_range(n, j);
        let (dn_lo, dn_hi) = down_range(n, j);
        for i in up_lo.min(dn_lo)..=up_hi.max(dn_hi) {
            let base = LatticePoint::new(i, j);
            for (orient, lo, hi) in [(Orientation::Up, up_lo, up_hi), (Orientation::Down, dn_lo, dn_hi)] {
                if (lo..=hi).contains(&i) {
                    let tri = triangle_points(base, orient).map(|p| {
                        mesh.node_index(p).expect("triangle vertices lie in the domain")
                    });
                    mesh.subtriangles.push(tri);
                }
            }
        }
    }

    // Group triangles on their unique class-0 vertex.
    let mut groups: Vec<Vec<usize>> = vec![Vec::new(); mesh.nodes.len()];
    for (t, tri) in mesh.subtriangles.iter().enumerate() {
        let mut anchors = tri.iter().filter(|&&v| mesh.nodes[v].point.class() == 0);
        let anchor = *anchors.next().ok_or_else(|| {
            VemError::MeshInvariant(format!("triangle {t} has no class-0 vertex"))
        })?;
        if anchors.next().is_some() {
            return Err(VemError::MeshInvariant(format!(
                "triangle {t} has more than one class-0 vertex"
            )));
        }
        groups[anchor].push(t);
    }

    for (anchor, members) in groups.into_iter().enumerate() {
        if members.is_empty() {
            continue;
        }
        let node = mesh.nodes[anchor];
        match (node.on_boundary, members.len()) {
            (false, 6) => mesh.cells.push(Cell { kind: CellKind::Hexagon, anchor, members }),
            (true, 3) => mesh.cells.push(Cell { kind: CellKind::Pentagon, anchor, members }),
            // A class-0 domain corner: each triangle there stands alone.
            (true, 1 | 2) => {
                for t in members {
                    mesh.cells.push(Cell { kind: CellKind::CornerTriangle, anchor, members: vec![t] });
                }
            }
            (_, k) => {
                return Err(VemError::MeshInvariant(format!(
                    "anchor {:?} groups {k} triangles",
                    node.point
                )))
            }
        }
    }

    for (idx, node) in mesh.nodes.iter().enumerate() {
        if node.is_center {
            mesh.centers.push(idx);
        } else {
            mesh.nh_nodes.push(idx);
        }
    }
    Ok(mesh)
}

/// Nodes on the six domain edges (the Dirichlet set).
pub fn boundary_nodes(mesh: &HoneycombMesh) -> Vec<usize> {
    mesh.nodes
        .iter()
        .enumerate()
        .filter_map(|(k, nd)| nd.on_boundary.then_some(k))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn position_examples() {
        assert_eq!(position(LatticePoint::new(0, 0), 1.0), [0.0, 0.0]);
        assert_eq!(position(LatticePoint::new(1, 0), 0.5), [0.5, 0.0]);
        let p = position(LatticePoint::new(0, 2), 0.25);
        assert!((p[0] - 0.25).abs() < 1e-15);
        assert!((p[1] - SQRT_3 / 4.0).abs() < 1e-15);
    }

    #[test]
    fn censuses_of_first_levels() {
        let m1 = build_mesh(1).unwrap();
        assert_eq!(m1.census(), Census { hexagons: 1, pentagons: 0, corner_triangles: 0 });
        assert_eq!(m1.subtriangles.len(), 6);
        assert_eq!(m1.nodes.len(), 7);
        assert_eq!(m1.nh_nodes.iter().filter(|&&k| !m1.nodes[k].on_boundary).count(), 0);

        let m2 = build_mesh(2).unwrap();
        assert_eq!(m2.census(), Census { hexagons: 1, pentagons: 6, corner_triangles: 0 });
        assert_eq!(m2.subtriangles.len(), 24);

        let m3 = build_mesh(3).unwrap();
        assert_eq!(m3.census(), Census { hexagons: 13, pentagons: 6, corner_triangles: 0 });
        assert_eq!(m3.subtriangles.len(), 96);
    }

    #[test]
    fn boundary_counts() {
        for (level, expected) in [(1, 6), (2, 12), (3, 24)] {
            let m = build_mesh(level).unwrap();
            assert_eq!(boundary_nodes(&m).len(), expected);
        }
    }

    #[test]
    fn level_guard() {
        assert!(matches!(build_mesh(0), Err(VemError::LevelOutOfRange { .. })));
        assert!(matches!(build_mesh(13), Err(VemError::LevelOutOfRange { .. })));
    }

    #[test]
    fn node_lookup_round_trips() {
        let m = build_mesh(4).unwrap();
        for (k, nd) in m.nodes.iter().enumerate() {
            assert_eq!(m.node_index(nd.point), Some(k));
        }
        assert_eq!(m.node_index(LatticePoint::new(9, 0)), None);
    }

    #[test]
    fn triangle_lookup_round_trips() {
        for level in 1..=4 {
            let m = build_mesh(level).unwrap();
            let n = m.n;
            let mut found = 0;
            for j in -n - 1..=n {
                for i in -2 * n - 1..=2 * n + 1 {
                    for o in [Orientation::Up, Orientation::Down] {
                        if let Some(t) = m.triangle_index(LatticePoint::new(i, j), o) {
                            let mut want = triangle_points(LatticePoint::new(i, j), o)
                                .map(|p| m.node_index(p).unwrap());
                            let mut got = m.subtriangles[t];
                            want.sort_unstable();
                            got.sort_unstable();
                            assert_eq!(want, got);
                            found += 1;
                        }
                    }
                }
            }
            assert_eq!(found, m.subtriangles.len());
        }
    }

    #[test]
    fn domain_corners_are_mesh_vertices() {
        for level in 1..=8 {
            let m = build_mesh(level).unwrap();
            let n = m.n;
            for p in [(n, 0), (0, n), (-n, n), (-n, 0), (0, -n), (n, -n)] {
                let k = m.node_index(LatticePoint::new(p.0, p.1)).unwrap();
                assert!(!m.nodes[k].is_center);
                assert_ne!(m.nodes[k].point.class(), 0);
            }
        }
    }
}
