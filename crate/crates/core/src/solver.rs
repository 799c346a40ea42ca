//! Solvers for the reduced SPD system: preconditioned conjugate gradients and
//! a profile (envelope) Cholesky factorization.

use std::fmt;
use std::str::FromStr;

use crate::error::{Result, VemError};
use crate::sparse::{dot, norm2, norm_inf, SparseSpd};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    ConjugateGradient,
    DirectCholesky,
}

impl FromStr for Method {
    type Err = VemError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cg" | "conjugate-gradient" => Ok(Method::ConjugateGradient),
            "chol" | "direct-cholesky" => Ok(Method::DirectCholesky),
            other => Err(VemError::SolverConfig(format!("unknown method `{other}`"))),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::ConjugateGradient => "cg",
            Method::DirectCholesky => "chol",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Preconditioner {
    None,
    Jacobi,
    IncompleteCholesky,
}

impl FromStr for Preconditioner {
    type Err = VemError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(Preconditioner::None),
            "jacobi" => Ok(Preconditioner::Jacobi),
            "ic" | "ic0" | "incomplete-cholesky" => Ok(Preconditioner::IncompleteCholesky),
            other => Err(VemError::SolverConfig(format!("unknown preconditioner `{other}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolverConfig {
    pub method: Method,
    /// Relative residual target `‖r‖₂ ≤ tol ‖b‖₂`.
    pub tol: f64,
    /// Iteration cap; never below the system dimension.
    pub max_iter: Option<usize>,
    pub preconditioner: Preconditioner,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            method: Method::ConjugateGradient,
            tol: 1e-14,
            max_iter: None,
            preconditioner: Preconditioner::Jacobi,
        }
    }
}

impl SolverConfig {
    pub fn direct() -> Self {
        Self { method: Method::DirectCholesky, ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0 && self.tol <= 1e-6) {
            return Err(VemError::SolverConfig(format!("tolerance {} outside (0, 1e-6]", self.tol)));
        }
        Ok(())
    }

    fn iteration_cap(&self, dim: usize) -> usize {
        self.max_iter.unwrap_or(10 * dim + 100).max(dim)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolveStats {
    pub method: Method,
    pub iterations: usize,
    /// True residual `‖b - A x‖₂ / ‖b‖₂` (zero when `b = 0`).
    pub relative_residual: f64,
    /// `‖b - A x‖∞ / (‖A‖∞ ‖x‖∞ + ‖b‖∞)`
    pub backward_error: f64,
}

/// Solves `A x = b`.
pub fn solve(a: &SparseSpd, b: &[f64], cfg: &SolverConfig) -> Result<(Vec<f64>, SolveStats)> {
    solve_observed(a, b, cfg, &mut |_, _| {})
}

/// [`solve`] calling `observer(k, x_k)` on every conjugate gradient iterate.
pub fn solve_observed(
    a: &SparseSpd,
    b: &[f64],
    cfg: &SolverConfig,
    observer: &mut dyn FnMut(usize, &[f64]),
) -> Result<(Vec<f64>, SolveStats)> {
    cfg.validate()?;
    if b.len() != a.dim {
        return Err(VemError::DimensionMismatch { expected: a.dim, actual: b.len() });
    }
    if a.dim == 0 {
        let stats = SolveStats { method: cfg.method, iterations: 0, relative_residual: 0.0, backward_error: 0.0 };
        return Ok((Vec::new(), stats));
    }
    let (x, iterations) = match cfg.method {
        Method::ConjugateGradient => conjugate_gradient(a, b, cfg, observer)?,
        Method::DirectCholesky => {
            let chol = ProfileCholesky::factor(a)?;
            let mut x = chol.solve(b);
            // One step of iterative refinement.
            let r = residual(a, &x, b);
            let dx = chol.solve(&r);
            x.iter_mut().zip(&dx).for_each(|(xi, di)| *xi += di);
            (x, 1)
        }
    };
    let stats = residual_stats(a, &x, b, cfg.method, iterations);
    Ok((x, stats))
}

fn residual(a: &SparseSpd, x: &[f64], b: &[f64]) -> Vec<f64> {
    let ax = a.mul_vec(x);
    b.iter().zip(&ax).map(|(bi, ai)| bi - ai).collect()
}

fn residual_stats(a: &SparseSpd, x: &[f64], b: &[f64], method: Method, iterations: usize) -> SolveStats {
    let r = residual(a, x, b);
    let bn = norm2(b);
    let relative_residual = if bn > 0.0 { norm2(&r) / bn } else { norm2(&r) };
    let scale = a.norm_inf() * norm_inf(x) + norm_inf(b);
    let backward_error = if scale > 0.0 { norm_inf(&r) / scale } else { 0.0 };
    SolveStats { method, iterations, relative_residual, backward_error }
}

enum Precond {
    Identity,
    Jacobi(Vec<f64>),
    Ic(IncompleteCholesky),
}

impl Precond {
    fn apply(&self, r: &[f64], z: &mut [f64]) {
        match self {
            Precond::Identity => z.copy_from_slice(r),
            Precond::Jacobi(inv) => z.iter_mut().zip(r.iter().zip(inv)).for_each(|(zi, (ri, di))| *zi = ri * di),
            Precond::Ic(ic) => ic.apply(r, z),
        }
    }
}

fn conjugate_gradient(
    a: &SparseSpd,
    b: &[f64],
    cfg: &SolverConfig,
    observer: &mut dyn FnMut(usize, &[f64]),
) -> Result<(Vec<f64>, usize)> {
    let n = a.dim;
    let precond = match cfg.preconditioner {
        Preconditioner::None => Precond::Identity,
        Preconditioner::Jacobi => {
            let diag = a.diagonal();
            if let Some(row) = diag.iter().position(|&d| d <= 0.0) {
                return Err(VemError::Breakdown { row, pivot: diag[row] });
            }
            Precond::Jacobi(diag.iter().map(|d| 1.0 / d).collect())
        }
        Preconditioner::IncompleteCholesky => Precond::Ic(IncompleteCholesky::factor(a)?),
    };

    let mut x = vec![0.0; n];
    let bnorm = norm2(b);
    if bnorm == 0.0 {
        observer(0, &x);
        return Ok((x, 0));
    }
    let target = cfg.tol * bnorm;
    let mut r = b.to_vec();
    let mut z = vec![0.0; n];
    precond.apply(&r, &mut z);
    let mut p = z.clone();
    let mut rz = dot(&r, &z);
    let mut ap = vec![0.0; n];
    observer(0, &x);

    let cap = cfg.iteration_cap(n);
    for k in 1..=cap {
        a.mul_vec_into(&p, &mut ap);
        let pap = dot(&p, &ap);
        if pap <= 0.0 {
            return Err(VemError::Breakdown { row: k, pivot: pap });
        }
        let alpha = rz / pap;
        for i in 0..n {
            x[i] += alpha * p[i];
            r[i] -= alpha * ap[i];
        }
        observer(k, &x);
        if norm2(&r) <= target {
            return Ok((x, k));
        }
        precond.apply(&r, &mut z);
        let rz_new = dot(&r, &z);
        let beta = rz_new / rz;
        rz = rz_new;
        for i in 0..n {
            p[i] = z[i] + beta * p[i];
        }
    }
    Err(VemError::NotConverged { iterations: cap, residual: norm2(&r) / bnorm })
}

/// Cholesky factor stored by row envelope: row `i` keeps columns `first[i]..=i`.
#[derive(Clone, Debug)]
pub struct ProfileCholesky {
    first: Vec<usize>,
    start: Vec<usize>,
    values: Vec<f64>,
}

impl ProfileCholesky {
    pub fn factor(a: &SparseSpd) -> Result<Self> {
        let n = a.dim;
        let first: Vec<usize> = (0..n)
            .map(|i| a.row(i).map(|(c, _)| c).filter(|&c| c <= i).min().unwrap_or(i))
            .collect();
        let mut start = Vec::with_capacity(n + 1);
        let mut total = 0;
        for i in 0..n {
            start.push(total);
            total += i - first[i] + 1;
        }
        start.push(total);
        let mut values = vec![0.0; total];
        for i in 0..n {
            for (c, v) in a.row(i).filter(|&(c, _)| c <= i) {
                values[start[i] + c - first[i]] = v;
            }
        }

        for i in 0..n {
            let fi = first[i];
            for j in fi..=i {
                let fj = first[j];
                let lo = fi.max(fj);
                let row_i = &values[start[i] + lo - fi..start[i] + j - fi];
                let row_j = &values[start[j] + lo - fj..start[j] + j - fj];
                let s = values[start[i] + j - fi] - dot(row_i, row_j);
                if j < i {
                    let djj = values[start[j + 1] - 1];
                    values[start[i] + j - fi] = s / djj;
                } else {
                    if s <= 0.0 {
                        return Err(VemError::Breakdown { row: i, pivot: s });
                    }
                    values[start[i] + i - fi] = s.sqrt();
                }
            }
        }
        Ok(Self { first, start, values })
    }

    pub fn dim(&self) -> usize {
        self.first.len()
    }

    /// Number of stored factor entries.
    pub fn profile_size(&self) -> usize {
        self.values.len()
    }

    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = self.dim();
        let mut y = b.to_vec();
        for i in 0..n {
            let fi = self.first[i];
            let row = &self.values[self.start[i]..self.start[i + 1]];
            let s = y[i] - dot(&row[..i - fi], &y[fi..i]);
            y[i] = s / row[i - fi];
        }
        for i in (0..n).rev() {
            let fi = self.first[i];
            let row = &self.values[self.start[i]..self.start[i + 1]];
            y[i] /= row[i - fi];
            let yi = y[i];
            for (k, l) in (fi..i).zip(row) {
                y[k] -= l * yi;
            }
        }
        y
    }
}

/// Zero fill-in incomplete Cholesky factor on the lower pattern of `A`.
#[derive(Clone, Debug)]
pub struct IncompleteCholesky {
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
    values: Vec<f64>,
}

impl IncompleteCholesky {
    pub fn factor(a: &SparseSpd) -> Result<Self> {
        let n = a.dim;
        let mut row_ptr = vec![0usize];
        let mut col_idx = Vec::new();
        let mut values = Vec::new();
        for i in 0..n {
            for (c, v) in a.row(i).filter(|&(c, _)| c <= i) {
                col_idx.push(c);
                values.push(v);
            }
            if col_idx.last() != Some(&i) {
                return Err(VemError::Breakdown { row: i, pivot: 0.0 });
            }
            row_ptr.push(col_idx.len());
        }
        for i in 0..n {
            for e in row_ptr[i]..row_ptr[i + 1] {
                let k = col_idx[e];
                // Σ_{j<k} L_ij L_kj over the shared pattern.
                let (mut p, mut q) = (row_ptr[i], row_ptr[k]);
                let mut s = values[e];
                while p < e && q < row_ptr[k + 1] - 1 {
                    match col_idx[p].cmp(&col_idx[q]) {
                        std::cmp::Ordering::Less => p += 1,
                        std::cmp::Ordering::Greater => q += 1,
                        std::cmp::Ordering::Equal => {
                            s -= values[p] * values[q];
                            p += 1;
                            q += 1;
                        }
                    }
                }
                if k < i {
                    values[e] = s / values[row_ptr[k + 1] - 1];
                } else {
                    if s <= 0.0 {
                        return Err(VemError::Breakdown { row: i, pivot: s });
                    }
                    values[e] = s.sqrt();
                }
            }
        }
        Ok(Self { row_ptr, col_idx, values })
    }

    fn apply(&self, r: &[f64], z: &mut [f64]) {
        let n = r.len();
        for i in 0..n {
            let span = self.row_ptr[i]..self.row_ptr[i + 1] - 1;
            let s: f64 = self.col_idx[span.clone()].iter().zip(&self.values[span]).map(|(&c, v)| v * z[c]).sum();
            z[i] = (r[i] - s) / self.values[self.row_ptr[i + 1] - 1];
        }
        for i in (0..n).rev() {
            z[i] /= self.values[self.row_ptr[i + 1] - 1];
            let zi = z[i];
            for e in self.row_ptr[i]..self.row_ptr[i + 1] - 1 {
                z[self.col_idx[e]] -= self.values[e] * zi;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn laplacian_1d(n: usize) -> SparseSpd {
        let mut t = Vec::new();
        for i in 0..n {
            t.push((i, i, 2.0));
            if i + 1 < n {
                t.push((i, i + 1, -1.0));
                t.push((i + 1, i, -1.0));
            }
        }
        SparseSpd::from_triplets(n, t)
    }

    #[test]
    fn zero_rhs_gives_zero() {
        let a = laplacian_1d(10);
        for cfg in [SolverConfig::default(), SolverConfig::direct()] {
            let (x, _) = solve(&a, &[0.0; 10], &cfg).unwrap();
            assert!(x.iter().all(|&v| v == 0.0));
        }
    }

    #[test]
    fn diagonal_system() {
        let a = SparseSpd::from_diagonal(&[2.0, 4.0, 8.0]);
        let b = [1.0, 1.0, 1.0];
        for cfg in [SolverConfig::default(), SolverConfig::direct()] {
            let (x, _) = solve(&a, &b, &cfg).unwrap();
            assert!((x[0] - 0.5).abs() < 1e-15 && (x[1] - 0.25).abs() < 1e-15 && (x[2] - 0.125).abs() < 1e-15);
        }
    }

    #[test]
    fn empty_system() {
        let a = SparseSpd::from_triplets(0, vec![]);
        let (x, stats) = solve(&a, &[], &SolverConfig::default()).unwrap();
        assert!(x.is_empty());
        assert_eq!(stats.iterations, 0);
    }

    #[test]
    fn all_preconditioners_agree_with_direct() {
        let n = 50;
        let a = laplacian_1d(n);
        let b: Vec<f64> = (0..n).map(|i| (i as f64 * 0.37).sin()).collect();
        let (xd, _) = solve(&a, &b, &SolverConfig::direct()).unwrap();
        for pc in [Preconditioner::None, Preconditioner::Jacobi, Preconditioner::IncompleteCholesky] {
            let cfg = SolverConfig { preconditioner: pc, ..SolverConfig::default() };
            let (x, stats) = solve(&a, &b, &cfg).unwrap();
            assert!(stats.relative_residual < 1e-12, "{pc:?}: {stats:?}");
            for (u, v) in x.iter().zip(&xd) {
                assert!((u - v).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn ic0_is_exact_on_tridiagonal() {
        // No fill-in for a tridiagonal matrix: one preconditioned step suffices.
        let a = laplacian_1d(20);
        let b = vec![1.0; 20];
        let cfg = SolverConfig { preconditioner: Preconditioner::IncompleteCholesky, ..SolverConfig::default() };
        let (_, stats) = solve(&a, &b, &cfg).unwrap();
        assert!(stats.iterations <= 2);
    }

    #[test]
    fn tolerance_is_validated() {
        let a = laplacian_1d(3);
        let cfg = SolverConfig { tol: 1e-3, ..SolverConfig::default() };
        assert!(matches!(solve(&a, &[1.0; 3], &cfg), Err(VemError::SolverConfig(_))));
        assert!("qr".parse::<Method>().is_err());
        assert_eq!("chol".parse::<Method>().unwrap(), Method::DirectCholesky);
    }

    #[test]
    fn unreachable_tolerance_reports_failure() {
        let a = laplacian_1d(200);
        let b: Vec<f64> = (0..200).map(|i| (i as f64).cos()).collect();
        let cfg = SolverConfig { tol: 1e-300, max_iter: Some(200), preconditioner: Preconditioner::None, ..SolverConfig::default() };
        match solve(&a, &b, &cfg) {
            Err(VemError::NotConverged { iterations, residual }) => {
                assert_eq!(iterations, 200);
                assert!(residual.is_finite());
            }
            other => panic!("expected non-convergence, got {other:?}"),
        }
    }

    #[test]
    fn indefinite_matrix_breaks_cholesky() {
        let a = SparseSpd::from_triplets(2, vec![(0, 0, 1.0), (0, 1, 2.0), (1, 0, 2.0), (1, 1, 1.0)]);
        assert!(matches!(ProfileCholesky::factor(&a), Err(VemError::Breakdown { row: 1, .. })));
    }
}
