//! Stabilizer-free P1 virtual elements on honeycomb meshes of a regular
//! hexagon, with patchwise least-squares P3 recovery.
//!
//! The pipeline for one mesh level:
//!
//! 1. [`mesh::build_mesh`] generates the honeycomb and its equilateral submesh.
//! 2. [`system::assemble`] forms the condensed Galerkin system over interior
//!    honeycomb vertices for a [`problem::ManufacturedProblem`].
//! 3. [`solver::solve`] solves it; [`system::expand`] turns the result into a
//!    nodal field.
//! 4. [`lift::lift_solution`] fits one cubic per recovery patch.
//! 5. [`analysis`] measures supercloseness and recovery errors; [`study`]
//!    strings levels together into convergence tables.

pub mod analysis;
pub mod autodiff;
pub mod error;
pub mod lift;
pub mod mesh;
pub mod problem;
pub mod quadrature;
pub mod solver;
pub mod sparse;
pub mod study;
pub mod system;
pub mod vtk;

pub use error::{Result, VemError};
pub use lift::{LiftScheme, LiftedSolution, PatchGrid};
pub use mesh::{build_mesh, HoneycombMesh, LatticePoint};
pub use problem::ManufacturedProblem;
pub use solver::SolverConfig;
pub use study::{study, StudyConfig};
pub use system::FieldP1;
