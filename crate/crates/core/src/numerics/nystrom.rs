use alloc::vec::Vec;

use super::{QuadratureGrid, SolverReport, LINEAR_TOL};
use crate::error::{bail_arg, Error, Result};

/// Discretized second-kind equation `φ(x) = f(x) + ∫ K(x, y) φ(y) dy` on a grid.
///
/// `kernel_matrix` is row-major with entries `K(x_i, x_j) · w_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct NystromSystem {
    grid: QuadratureGrid,
    kernel_matrix: Vec<f64>,
    inhomogeneity: Vec<f64>,
}

impl NystromSystem {
    pub fn new(grid: QuadratureGrid, kernel_matrix: Vec<f64>, inhomogeneity: Vec<f64>) -> Result<Self> {
        let n = grid.len();
        if kernel_matrix.len() != n * n {
            bail_arg!("kernel matrix has {} entries, expected {}", kernel_matrix.len(), n * n);
        }
        if inhomogeneity.len() != n {
            bail_arg!("inhomogeneity has {} entries, expected {n}", inhomogeneity.len());
        }
        if kernel_matrix.iter().chain(&inhomogeneity).any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("Nyström system"));
        }
        Ok(Self {
            grid,
            kernel_matrix,
            inhomogeneity,
        })
    }

    /// Samples `kernel(x_i, y_j) · w_j` and `rhs(x_i)` on the grid.
    pub fn from_fns<K, F>(grid: QuadratureGrid, kernel: K, rhs: F) -> Result<Self>
    where
        K: Fn(f64, f64) -> f64,
        F: Fn(f64) -> f64,
    {
        let n = grid.len();
        let mut matrix = Vec::with_capacity(n * n);
        for &x in grid.nodes() {
            for (y, w) in grid.iter() {
                matrix.push(kernel(x, y) * w);
            }
        }
        let rhs = grid.nodes().iter().map(|&x| rhs(x)).collect();
        Self::new(grid, matrix, rhs)
    }

    pub fn grid(&self) -> &QuadratureGrid {
        &self.grid
    }

    pub fn kernel_matrix(&self) -> &[f64] {
        &self.kernel_matrix
    }

    pub fn inhomogeneity(&self) -> &[f64] {
        &self.inhomogeneity
    }

    pub fn with_inhomogeneity(&self, inhomogeneity: Vec<f64>) -> Result<Self> {
        Self::new(self.grid.clone(), self.kernel_matrix.clone(), inhomogeneity)
    }

    /// Max-norm of `φ - Kφ - rhs`.
    pub fn residual(&self, phi: &[f64], rhs: &[f64]) -> f64 {
        let n = self.grid.len();
        (0..n)
            .map(|i| {
                let row = &self.kernel_matrix[i * n..(i + 1) * n];
                let k_phi: f64 = row.iter().zip(phi).map(|(k, p)| k * p).sum();
                (phi[i] - k_phi - rhs[i]).abs()
            })
            .fold(0.0, f64::max)
    }

    /// LU factorization of `I - K`, reusable across right-hand sides.
    pub fn factor(&self) -> Result<LuFactor> {
        let n = self.grid.len();
        let mut a: Vec<f64> = self.kernel_matrix.iter().map(|k| -k).collect();
        for i in 0..n {
            a[i * n + i] += 1.0;
        }
        LuFactor::new(a, n)
    }

    /// Solves for an arbitrary right side with an existing factorization,
    /// refining up to twice if the defect is above `LINEAR_TOL` relative to
    /// `max(|rhs|, |φ|)`.
    pub fn solve_with(&self, lu: &LuFactor, rhs: &[f64]) -> Result<(Vec<f64>, SolverReport)> {
        let n = self.grid.len();
        if rhs.len() != n {
            bail_arg!("right side has {} entries, expected {n}", rhs.len());
        }
        let rhs_scale = rhs.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let mut phi = lu.solve(rhs);
        // Roundoff in the defect grows with the solution, which can be much
        // larger than the right side when I - K is close to singular.
        let scale = phi.iter().fold(rhs_scale, |m, v| m.max(v.abs()));
        let mut residual = self.residual(&phi, rhs);
        let mut iterations = 1;
        while residual > LINEAR_TOL * scale && iterations < 3 {
            let defect: Vec<f64> = (0..n)
                .map(|i| {
                    let row = &self.kernel_matrix[i * n..(i + 1) * n];
                    let k_phi: f64 = row.iter().zip(&phi).map(|(k, p)| k * p).sum();
                    rhs[i] - (phi[i] - k_phi)
                })
                .collect();
            let correction = lu.solve(&defect);
            phi.iter_mut().zip(&correction).for_each(|(p, c)| *p += c);
            residual = self.residual(&phi, rhs);
            iterations += 1;
        }
        if !residual.is_finite() || phi.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("Nyström solution"));
        }
        let converged = residual <= LINEAR_TOL * scale;
        if !converged {
            return Err(Error::NotConverged {
                what: "Nyström solve",
                iterations,
                residual,
            });
        }
        Ok((
            phi,
            SolverReport {
                iterations,
                residual,
                converged,
                nodes_used: n,
            },
        ))
    }
}

/// Solves `(I - K) φ = rhs` by dense LU with partial pivoting.
pub fn nystrom_solve(system: &NystromSystem) -> Result<(Vec<f64>, SolverReport)> {
    let lu = system.factor()?;
    system.solve_with(&lu, &system.inhomogeneity)
}

/// Row-major LU factors with the row permutation applied during elimination.
#[derive(Debug, Clone)]
pub struct LuFactor {
    lu: Vec<f64>,
    perm: Vec<usize>,
    n: usize,
}

impl LuFactor {
    pub fn new(mut a: Vec<f64>, n: usize) -> Result<Self> {
        if a.len() != n * n {
            bail_arg!("matrix has {} entries, expected {}", a.len(), n * n);
        }
        let norm = (0..n)
            .map(|i| a[i * n..(i + 1) * n].iter().map(|v| v.abs()).sum::<f64>())
            .fold(0.0, f64::max);
        let threshold = n as f64 * f64::EPSILON * norm.max(f64::MIN_POSITIVE);
        let mut perm: Vec<usize> = (0..n).collect();
        for col in 0..n {
            let (pivot_row, pivot) = (col..n)
                .map(|r| (r, a[r * n + col].abs()))
                .fold((col, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            if !(pivot > threshold) {
                return Err(Error::SingularSystem { column: col, pivot });
            }
            if pivot_row != col {
                for j in 0..n {
                    a.swap(col * n + j, pivot_row * n + j);
                }
                perm.swap(col, pivot_row);
            }
            let diag = a[col * n + col];
            let (upper, lower) = a.split_at_mut((col + 1) * n);
            let pivot_row = &upper[col * n..];
            for row in lower.chunks_exact_mut(n) {
                let factor = row[col] / diag;
                row[col] = factor;
                if factor != 0.0 {
                    row[col + 1..]
                        .iter_mut()
                        .zip(&pivot_row[col + 1..n])
                        .for_each(|(r, p)| *r -= factor * p);
                }
            }
        }
        Ok(Self { lu: a, perm, n })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn solve(&self, rhs: &[f64]) -> Vec<f64> {
        let n = self.n;
        let mut x: Vec<f64> = self.perm.iter().map(|&p| rhs[p]).collect();
        for i in 0..n {
            let row = &self.lu[i * n..i * n + i];
            let s: f64 = row.iter().zip(&x[..i]).map(|(l, v)| l * v).sum();
            x[i] -= s;
        }
        for i in (0..n).rev() {
            let row = &self.lu[i * n..(i + 1) * n];
            let s: f64 = row[i + 1..].iter().zip(&x[i + 1..]).map(|(u, v)| u * v).sum();
            x[i] = (x[i] - s) / row[i];
        }
        x
    }
}
