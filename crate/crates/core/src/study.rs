//! Convergence studies over mesh levels and single-level exports.

use std::fmt::Write as _;
use std::path::Path;

use crate::analysis::{self, orders, StudyRow, DEFAULT_ERROR_DEGREE};
use crate::error::{Result, VemError};
use crate::lift::{build_patch_grid, evaluate_lift, lift_solution, LiftScheme, LiftedSolution, PatchGrid};
use crate::mesh::{build_mesh, HoneycombMesh, MAX_LEVEL, MIN_LEVEL};
use crate::problem::ManufacturedProblem;
use crate::quadrature;
use crate::solver::{solve, SolveStats, SolverConfig};
use crate::system::{assemble, expand, interpolate, FieldP1, DEFAULT_LOAD_DEGREE};
use crate::vtk::write_vtk;

/// Column header of the study CSV.
pub const CSV_HEADER: &str = "level,h,dofs,e_ih_l2,r_ih_l2,e_ih_h1,r_ih_h1,e_ih_linf,r_ih_linf,e_l2,r_l2,e_lift_l2,r_lift_l2,e_lift_h1h,r_lift_h1h";

/// Lowest level that supports recovery patches.
pub const LIFT_MIN_LEVEL: u32 = 3;

#[derive(Clone, Debug, PartialEq)]
pub struct StudyConfig {
    pub min_level: u32,
    pub max_level: u32,
    pub problem: String,
    pub lift: bool,
    pub scheme: LiftScheme,
    pub quad_load: u32,
    pub quad_error: u32,
    pub solver: SolverConfig,
}

impl Default for StudyConfig {
    fn default() -> Self {
        Self {
            min_level: 2,
            max_level: 7,
            problem: "hex-sine".into(),
            lift: true,
            scheme: LiftScheme::default(),
            quad_load: DEFAULT_LOAD_DEGREE,
            quad_error: DEFAULT_ERROR_DEGREE,
            solver: SolverConfig::default(),
        }
    }
}

impl StudyConfig {
    pub fn validate(&self) -> Result<()> {
        if self.min_level < MIN_LEVEL || self.max_level > MAX_LEVEL || self.min_level > self.max_level {
            return Err(VemError::Config(format!(
                "levels {}..={} must satisfy {MIN_LEVEL} <= min <= max <= {MAX_LEVEL}",
                self.min_level, self.max_level
            )));
        }
        if self.lift && self.max_level < LIFT_MIN_LEVEL {
            return Err(VemError::Config(format!("lifting needs a level >= {LIFT_MIN_LEVEL}")));
        }
        quadrature::rule(self.quad_load)?;
        if self.quad_error < 6 {
            return Err(VemError::Config(format!("error quadrature degree {} below 6", self.quad_error)));
        }
        quadrature::rule(self.quad_error)?;
        self.solver.validate()?;
        ManufacturedProblem::by_name(&self.problem)?;
        Ok(())
    }
}

/// The discrete solution on one level.
#[derive(Clone, Debug)]
pub struct LevelSolution {
    pub mesh: HoneycombMesh,
    pub uh: FieldP1,
    pub dofs: usize,
    pub stats: SolveStats,
}

pub fn solve_level(
    level: u32,
    problem: &ManufacturedProblem,
    quad_load: u32,
    solver: &SolverConfig,
) -> Result<LevelSolution> {
    let run = || -> Result<LevelSolution> {
        let mesh = build_mesh(level)?;
        let system = assemble(&mesh, problem, quad_load)?;
        let (x, stats) = solve(&system.matrix, &system.rhs, solver)?;
        let uh = expand(&x, &system.dofs, &mesh)?;
        Ok(LevelSolution { dofs: system.dofs.len(), mesh, uh, stats })
    };
    run().map_err(|e| e.at_level(level))
}

/// Lifted solution and its patch grid.
pub fn lift_level(sol: &LevelSolution, problem: &ManufacturedProblem, scheme: LiftScheme) -> Result<(PatchGrid, LiftedSolution)> {
    let grid = build_patch_grid(&sol.mesh)?;
    let lifted = lift_solution(&sol.uh, problem, &sol.mesh, &grid, scheme)?;
    Ok((grid, lifted))
}

/// Errors of one level (orders are filled by [`study`]).
pub fn measure_level(sol: &LevelSolution, problem: &ManufacturedProblem, cfg: &StudyConfig) -> Result<StudyRow> {
    let mesh = &sol.mesh;
    let run = || -> Result<StudyRow> {
        let ih = interpolate(mesh, |x, y| problem.u(x, y));
        let sc = analysis::norms_superclose(&sol.uh, &ih, mesh, quadrature::rule(2)?)?;
        let e_l2 = analysis::norm_l2_true(&sol.uh, problem, mesh, cfg.quad_error)?;
        let (e_lift_l2, e_lift_h1h) = if cfg.lift && mesh.level >= LIFT_MIN_LEVEL {
            let (grid, lifted) = lift_level(sol, problem, cfg.scheme)?;
            let (l2, h1) = analysis::lift_errors(&lifted, problem, mesh, &grid, cfg.quad_error)?;
            (Some(l2), Some(h1))
        } else {
            (None, None)
        };
        Ok(StudyRow {
            level: mesh.level,
            h: mesh.s,
            dofs: sol.dofs,
            e_ih_l2: sc.l2,
            e_ih_h1: sc.h1,
            e_ih_linf: sc.linf,
            e_l2,
            e_lift_l2,
            e_lift_h1h,
            ..Default::default()
        })
    };
    run().map_err(|e| e.at_level(mesh.level))
}

/// Runs every level of `cfg` in order and fills the observed orders.
pub fn study(cfg: &StudyConfig) -> Result<Vec<StudyRow>> {
    cfg.validate()?;
    let problem = ManufacturedProblem::by_name(&cfg.problem)?;
    let mut rows = Vec::new();
    for level in cfg.min_level..=cfg.max_level {
        let sol = solve_level(level, &problem, cfg.quad_load, &cfg.solver)?;
        rows.push(measure_level(&sol, &problem, cfg)?);
    }
    orders(&mut rows);
    Ok(rows)
}

fn sci(v: f64) -> String {
    format!("{v:.3e}")
}

fn opt(v: Option<f64>) -> String {
    v.map(sci).unwrap_or_default()
}

pub fn to_csv(rows: &[StudyRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            r.level,
            sci(r.h),
            r.dofs,
            sci(r.e_ih_l2),
            sci(r.r_ih_l2),
            sci(r.e_ih_h1),
            sci(r.r_ih_h1),
            sci(r.e_ih_linf),
            sci(r.r_ih_linf),
            sci(r.e_l2),
            sci(r.r_l2),
            opt(r.e_lift_l2),
            opt(r.r_lift_l2),
            opt(r.e_lift_h1h),
            opt(r.r_lift_h1h),
        );
    }
    out
}

/// Human-readable convergence tables.
pub fn render_table(rows: &[StudyRow]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:>5} {:>7} | {:>10} {:>5} | {:>10} {:>5} | {:>10} {:>5}",
        "level", "dofs", "|Ihu-uh|0", "r", "|Ihu-uh|1", "r", "|Ihu-uh|oo", "r"
    );
    for r in rows {
        let _ = writeln!(
            out,
            "{:>5} {:>7} | {:>10.4e} {:>5.2} | {:>10.4e} {:>5.2} | {:>10.4e} {:>5.2}",
            r.level, r.dofs, r.e_ih_l2, r.r_ih_l2, r.e_ih_h1, r.r_ih_h1, r.e_ih_linf, r.r_ih_linf
        );
    }
    out.push('\n');
    let _ = writeln!(
        out,
        "{:>5} | {:>10} {:>5} | {:>10} {:>5} | {:>10} {:>5}",
        "level", "|u-uh|0", "r", "|u-lift|0", "r", "|u-lift|1h", "r"
    );
    let cell = |e: Option<f64>, r: Option<f64>| match (e, r) {
        (Some(e), Some(r)) => format!("{e:>10.4e} {r:>5.2}"),
        _ => format!("{:>10} {:>5}", "-", "-"),
    };
    for r in rows {
        let _ = writeln!(
            out,
            "{:>5} | {:>10.4e} {:>5.2} | {} | {}",
            r.level,
            r.e_l2,
            r.r_l2,
            cell(r.e_lift_l2, r.r_lift_l2),
            cell(r.e_lift_h1h, r.r_lift_h1h)
        );
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportKind {
    Mesh,
    Solution,
    Lift,
}

impl std::str::FromStr for ExportKind {
    type Err = VemError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mesh" => Ok(ExportKind::Mesh),
            "solution" => Ok(ExportKind::Solution),
            "lift" => Ok(ExportKind::Lift),
            other => Err(VemError::Config(format!("unknown export kind `{other}`"))),
        }
    }
}

/// Writes a VTK file for one level: the bare mesh, the discrete solution
/// (`u_h`, `error = u - u_h`), or the lift sampled at nodes (`u_lift`, `error = u - ũ_h`).
pub fn export(
    level: u32,
    what: ExportKind,
    cfg: &StudyConfig,
    scheme: LiftScheme,
    path: &Path,
) -> Result<()> {
    let problem = ManufacturedProblem::by_name(&cfg.problem)?;
    let mut out = std::io::BufWriter::new(std::fs::File::create(path)?);
    let title = format!("honeycomb level {level} {}", cfg.problem);
    match what {
        ExportKind::Mesh => {
            let mesh = build_mesh(level)?;
            write_vtk(&mut out, &mesh, &title, &[])?;
        }
        ExportKind::Solution => {
            let sol = solve_level(level, &problem, cfg.quad_load, &cfg.solver)?;
            let err = nodal_error(&sol.mesh, &problem, |k| sol.uh.values[k]);
            write_vtk(&mut out, &sol.mesh, &title, &[("u_h", &sol.uh.values), ("error", &err)])?;
        }
        ExportKind::Lift => {
            let sol = solve_level(level, &problem, cfg.quad_load, &cfg.solver)?;
            let (grid, lifted) = lift_level(&sol, &problem, scheme).map_err(|e| e.at_level(level))?;
            let values = (0..sol.mesh.nodes.len())
                .map(|k| evaluate_lift(&lifted, &grid, sol.mesh.position(k)).map(|(v, _)| v))
                .collect::<Result<Vec<f64>>>()?;
            let err = nodal_error(&sol.mesh, &problem, |k| values[k]);
            write_vtk(
                &mut out,
                &sol.mesh,
                &title,
                &[("u_h", &sol.uh.values), ("u_lift", &values), ("error", &err)],
            )?;
        }
    }
    std::io::Write::flush(&mut out)?;
    Ok(())
}

fn nodal_error(mesh: &HoneycombMesh, problem: &ManufacturedProblem, approx: impl Fn(usize) -> f64) -> Vec<f64> {
    (0..mesh.nodes.len())
        .map(|k| {
            let [x, y] = mesh.position(k);
            problem.u(x, y) - approx(k)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_validation() {
        assert!(StudyConfig::default().validate().is_ok());
        let bad = StudyConfig { min_level: 0, ..Default::default() };
        assert_eq!(bad.validate().unwrap_err().exit_code(), 1);
        let bad = StudyConfig { max_level: 2, min_level: 1, lift: true, ..Default::default() };
        assert!(bad.validate().is_err());
        let bad = StudyConfig { quad_error: 4, ..Default::default() };
        assert!(bad.validate().is_err());
        let bad = StudyConfig { problem: "sine".into(), ..Default::default() };
        assert!(matches!(bad.validate(), Err(VemError::UnknownProblem(_))));
    }

    #[test]
    fn csv_layout() {
        let cfg = StudyConfig { min_level: 1, max_level: 3, lift: false, ..Default::default() };
        let rows = study(&cfg).unwrap();
        let csv = to_csv(&rows);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], CSV_HEADER);
        assert_eq!(lines.len(), 4);
        for l in &lines[1..] {
            assert_eq!(l.split(',').count(), 15);
            assert!(l.ends_with(",,,,"));
        }
        assert!(lines[1].starts_with("1,1.000e0,0,"));
    }
}
