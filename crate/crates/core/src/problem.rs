//! Manufactured Poisson problems `-Δu = f` on the hexagon with `u = 0` on the boundary.
//!
//! Each problem is written once, generically over [`Real`]; the load `f` and
//! the gradient come from evaluating the same expression on [`Jet2`].

use std::f64::consts::PI;

use crate::autodiff::{jet_at, Jet2, Real};
use crate::error::{Result, VemError};
use crate::mesh::SQRT_3;

pub const PROBLEM_NAMES: [&str; 3] = ["hex-sine", "hex-bubble", "zero"];

#[derive(Clone, Copy)]
pub struct ManufacturedProblem {
    pub name: &'static str,
    value: fn(f64, f64) -> f64,
    jet: fn(Jet2, Jet2) -> Jet2,
}

impl std::fmt::Debug for ManufacturedProblem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ManufacturedProblem").field("name", &self.name).finish()
    }
}

impl ManufacturedProblem {
    pub fn u(&self, x: f64, y: f64) -> f64 {
        (self.value)(x, y)
    }

    pub fn grad_u(&self, x: f64, y: f64) -> [f64; 2] {
        jet_at(self.jet, x, y).gradient()
    }

    /// `f = -Δu`
    pub fn f(&self, x: f64, y: f64) -> f64 {
        -jet_at(self.jet, x, y).laplacian()
    }

    pub fn jet(&self, x: f64, y: f64) -> Jet2 {
        jet_at(self.jet, x, y)
    }

    pub fn by_name(name: &str) -> Result<Self> {
        match name {
            "hex-sine" => Ok(hex_sine()),
            "hex-bubble" => Ok(hex_bubble()),
            "zero" => Ok(zero()),
            other => Err(VemError::UnknownProblem(other.to_string())),
        }
    }
}

fn hex_sine_expr<T: Real>(x: T, y: T) -> T {
    let half_pi = 0.5 * PI;
    let t = y * (1.0 / SQRT_3);
    let a = ((t + x + 1.0) * half_pi).sin();
    let b = ((t - x + 1.0) * half_pi).sin();
    let c = ((y + 0.5 * SQRT_3) * (PI / SQRT_3)).sin();
    x * x * a * b * c
}

/// `u = x² sin(π/2 (y/√3 + x + 1)) sin(π/2 (y/√3 - x + 1)) sin(π/√3 (y + √3/2))`
pub fn hex_sine() -> ManufacturedProblem {
    ManufacturedProblem { name: "hex-sine", value: hex_sine_expr::<f64>, jet: hex_sine_expr::<Jet2> }
}

fn hex_bubble_expr<T: Real>(x: T, y: T) -> T {
    let t = y * (1.0 / SQRT_3);
    let p = x + t;
    let m = x - t;
    (T::cst(0.75) - y * y) * (T::cst(1.0) - p * p) * (T::cst(1.0) - m * m)
}

/// Product of the six edge lines: a degree-6 polynomial bubble.
pub fn hex_bubble() -> ManufacturedProblem {
    ManufacturedProblem { name: "hex-bubble", value: hex_bubble_expr::<f64>, jet: hex_bubble_expr::<Jet2> }
}

fn zero_expr<T: Real>(_x: T, _y: T) -> T {
    T::cst(0.0)
}

/// `u ≡ 0`, `f ≡ 0`.
pub fn zero() -> ManufacturedProblem {
    ManufacturedProblem { name: "zero", value: zero_expr::<f64>, jet: zero_expr::<Jet2> }
}
