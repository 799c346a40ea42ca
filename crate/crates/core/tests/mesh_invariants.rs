use std::collections::HashMap;

use hive_vem::mesh::{boundary_nodes, build_mesh, CellKind, SQRT_3};

#[derive(Default)]
struct Neumaier {
    sum: f64,
    carry: f64,
}

impl Neumaier {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn total(&self) -> f64 {
        self.sum + self.carry
    }
}

fn domain_area() -> f64 {
    1.5 * SQRT_3
}

#[test]
fn counts_area_and_orientation() {
    for level in 1..=8u32 {
        let mesh = build_mesh(level).unwrap();
        let n = mesh.n as usize;
        assert_eq!(mesh.nodes.len(), 3 * n * n + 3 * n + 1, "level {level}");
        assert_eq!(mesh.subtriangles.len(), 6 * n * n);
        assert_eq!(boundary_nodes(&mesh).len(), 6 * n);
        let mut area = Neumaier::default();
        for t in 0..mesh.subtriangles.len() {
            let [a, b, c] = mesh.triangle_vertices(t);
            let signed = 0.5 * ((b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1]));
            assert!(signed > 0.0, "triangle {t} is not counterclockwise");
            area.add(signed);
        }
        let area = area.total();
        assert!((area - domain_area()).abs() <= 1e-12 * domain_area(), "level {level}: {area}");
    }
}

#[test]
fn cells_partition_the_triangles() {
    for level in 1..=8u32 {
        let mesh = build_mesh(level).unwrap();
        let mut owner = vec![usize::MAX; mesh.subtriangles.len()];
        for (c, cell) in mesh.cells.iter().enumerate() {
            let expected = match cell.kind {
                CellKind::Hexagon => 6,
                CellKind::Pentagon => 3,
                CellKind::CornerTriangle => 1,
            };
            assert_eq!(cell.members.len(), expected);
            for &t in &cell.members {
                assert_eq!(owner[t], usize::MAX, "triangle {t} in two cells");
                owner[t] = c;
                assert!(mesh.subtriangles[t].contains(&cell.anchor));
            }
            let anchor = &mesh.nodes[cell.anchor];
            assert_eq!(anchor.point.class(), 0);
            assert_eq!(anchor.is_center, cell.kind == CellKind::Hexagon);
        }
        assert!(owner.iter().all(|&o| o != usize::MAX), "level {level}: uncovered triangle");
        assert_eq!(mesh.census().corner_triangles, 0);
    }
}

#[test]
fn conforming_edges_and_euler_characteristic() {
    for level in 1..=8u32 {
        let mesh = build_mesh(level).unwrap();
        let mut edges: HashMap<(usize, usize), usize> = HashMap::new();
        for tri in &mesh.subtriangles {
            for k in 0..3 {
                let (a, b) = (tri[k], tri[(k + 1) % 3]);
                *edges.entry((a.min(b), a.max(b))).or_default() += 1;
            }
        }
        let mut boundary_edges = 0;
        for (&(a, b), &count) in &edges {
            let on = mesh.nodes[a].on_boundary && mesh.nodes[b].on_boundary;
            match count {
                1 => {
                    assert!(on, "level {level}: dangling interior edge {a}-{b}");
                    boundary_edges += 1;
                }
                2 => {}
                _ => panic!("edge {a}-{b} shared by {count} triangles"),
            }
        }
        assert_eq!(boundary_edges, 6 * mesh.n as usize);
        let euler = mesh.nodes.len() as i64 - edges.len() as i64 + mesh.subtriangles.len() as i64;
        assert_eq!(euler, 1);
    }
}

#[test]
fn honeycomb_vertices_and_centres_split_the_nodes() {
    for level in 1..=8u32 {
        let mesh = build_mesh(level).unwrap();
        assert_eq!(mesh.nh_nodes.len() + mesh.centers.len(), mesh.nodes.len());
        for &c in &mesh.centers {
            for k in mesh.hexagon_corners(c) {
                assert!(!mesh.nodes[k].is_center, "two adjacent centres");
                let [x0, y0] = mesh.position(c);
                let [x, y] = mesh.position(k);
                assert!(((x - x0).hypot(y - y0) - mesh.s).abs() < 1e-14);
            }
        }
    }
}

#[test]
fn small_level_censuses() {
    let census = |level| {
        let c = build_mesh(level).unwrap().census();
        (c.hexagons, c.pentagons, c.corner_triangles)
    };
    assert_eq!(census(1), (1, 0, 0));
    assert_eq!(census(2), (1, 6, 0));
    assert_eq!(census(3), (13, 6, 0));
}

#[test]
fn levels_out_of_range() {
    for level in [0u32, 13] {
        let err = build_mesh(level).unwrap_err();
        assert_eq!(err.exit_code(), 1);
    }
}
