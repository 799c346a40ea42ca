//! Second-order forward-mode differentiation in two variables.
//!
//! [`Jet2`] carries a value, its gradient and its Hessian through arithmetic
//! and elementary functions (truncated Taylor arithmetic). Fields written once
//! against [`Real`] can be evaluated either on plain `f64` or on jets.

use std::ops::{Add, Div, Mul, Neg, Sub};

/// Scalar arithmetic shared by `f64` and [`Jet2`].
pub trait Real:
    Copy
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Add<f64, Output = Self>
    + Sub<f64, Output = Self>
    + Mul<f64, Output = Self>
{
    fn cst(v: f64) -> Self;
    fn sin(self) -> Self;
    fn cos(self) -> Self;
    fn exp(self) -> Self;
    fn value(self) -> f64;
}

impl Real for f64 {
    fn cst(v: f64) -> Self {
        v
    }
    fn sin(self) -> Self {
        f64::sin(self)
    }
    fn cos(self) -> Self {
        f64::cos(self)
    }
    fn exp(self) -> Self {
        f64::exp(self)
    }
    fn value(self) -> f64 {
        self
    }
}

/// Value, gradient and Hessian of a function of `(x, y)`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Jet2 {
    pub val: f64,
    pub dx: f64,
    pub dy: f64,
    pub dxx: f64,
    pub dxy: f64,
    pub dyy: f64,
}

impl Jet2 {
    pub fn constant(val: f64) -> Self {
        Self { val, ..Self::default() }
    }

    /// The independent variable `x` at `val`.
    pub fn var_x(val: f64) -> Self {
        Self { val, dx: 1.0, ..Self::default() }
    }

    /// The independent variable `y` at `val`.
    pub fn var_y(val: f64) -> Self {
        Self { val, dy: 1.0, ..Self::default() }
    }

    pub fn laplacian(&self) -> f64 {
        self.dxx + self.dyy
    }

    pub fn gradient(&self) -> [f64; 2] {
        [self.dx, self.dy]
    }

    /// Composes with a scalar function given its value and first two derivatives at `self.val`.
    fn chain(self, g: f64, g1: f64, g2: f64) -> Self {
        Self {
            val: g,
            dx: g1 * self.dx,
            dy: g1 * self.dy,
            dxx: g2 * self.dx * self.dx + g1 * self.dxx,
            dxy: g2 * self.dx * self.dy + g1 * self.dxy,
            dyy: g2 * self.dy * self.dy + g1 * self.dyy,
        }
    }

    pub fn recip(self) -> Self {
        let r = 1.0 / self.val;
        self.chain(r, -r * r, 2.0 * r * r * r)
    }

    pub fn powi(self, k: i32) -> Self {
        let v = self.val;
        let kf = f64::from(k);
        self.chain(v.powi(k), kf * v.powi(k - 1), kf * (kf - 1.0) * v.powi(k - 2))
    }
}

impl Add for Jet2 {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self {
            val: self.val + o.val,
            dx: self.dx + o.dx,
            dy: self.dy + o.dy,
            dxx: self.dxx + o.dxx,
            dxy: self.dxy + o.dxy,
            dyy: self.dyy + o.dyy,
        }
    }
}

impl Sub for Jet2 {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl Neg for Jet2 {
    type Output = Self;
    fn neg(self) -> Self {
        self * -1.0
    }
}

impl Mul for Jet2 {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Self {
            val: self.val * o.val,
            dx: self.dx * o.val + self.val * o.dx,
            dy: self.dy * o.val + self.val * o.dy,
            dxx: self.dxx * o.val + 2.0 * self.dx * o.dx + self.val * o.dxx,
            dxy: self.dxy * o.val + self.dx * o.dy + self.dy * o.dx + self.val * o.dxy,
            dyy: self.dyy * o.val + 2.0 * self.dy * o.dy + self.val * o.dyy,
        }
    }
}

impl Div for Jet2 {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Self) -> Self {
        self * o.recip()
    }
}

impl Add<f64> for Jet2 {
    type Output = Self;
    fn add(mut self, c: f64) -> Self {
        self.val += c;
        self
    }
}

impl Sub<f64> for Jet2 {
    type Output = Self;
    fn sub(mut self, c: f64) -> Self {
        self.val -= c;
        self
    }
}

impl Mul<f64> for Jet2 {
    type Output = Self;
    fn mul(self, c: f64) -> Self {
        Self {
            val: self.val * c,
            dx: self.dx * c,
            dy: self.dy * c,
            dxx: self.dxx * c,
            dxy: self.dxy * c,
            dyy: self.dyy * c,
        }
    }
}

impl Real for Jet2 {
    fn cst(v: f64) -> Self {
        Jet2::constant(v)
    }
    fn sin(self) -> Self {
        let (s, c) = self.val.sin_cos();
        self.chain(s, c, -s)
    }
    fn cos(self) -> Self {
        let (s, c) = self.val.sin_cos();
        self.chain(c, -s, -c)
    }
    fn exp(self) -> Self {
        let e = self.val.exp();
        self.chain(e, e, e)
    }
    fn value(self) -> f64 {
        self.val
    }
}

/// Evaluates `field` on jets seeded at `(x, y)`.
pub fn jet_at<F: Fn(Jet2, Jet2) -> Jet2>(field: F, x: f64, y: f64) -> Jet2 {
    field(Jet2::var_x(x), Jet2::var_y(y))
}

/// `Δg(x, y) = g_xx + g_yy`, exact up to rounding.
pub fn laplacian<F: Fn(Jet2, Jet2) -> Jet2>(field: F, x: f64, y: f64) -> f64 {
    jet_at(field, x, y).laplacian()
}
