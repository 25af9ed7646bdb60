//! Finite-difference spectrum of the deformed model Laplacian
//! `-d²/dx² + ε²x² + cε` on `[-L, L]` with Dirichlet ends.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};
use crate::exec::{self, Execution};

pub const SCALING_TOL: f64 = 1e-2;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Solver {
    /// Sturm-sequence bisection on the tridiagonal matrix.
    Sturm,
    /// Dense symmetric eigendecomposition.
    Dense,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModelOperator {
    pub epsilon: f64,
    pub half_width: f64,
    pub grid: usize,
    pub offset: f64,
}

impl ModelOperator {
    pub fn new(epsilon: f64, half_width: f64, grid: usize) -> Self {
        ModelOperator { epsilon, half_width, grid, offset: -1.0 }
    }

    pub fn with_offset(mut self, c: f64) -> Self {
        self.offset = c;
        self
    }

    fn step(&self) -> f64 {
        2.0 * self.half_width / (self.grid as f64 + 1.0)
    }

    fn check(&self) -> Result<()> {
        if !(self.epsilon > 0.0 && self.half_width > 0.0) || self.grid < 2 {
            return Err(Error::Precondition("need ε > 0, L > 0 and at least two grid points".into()));
        }
        Ok(())
    }

    /// Diagonal and (constant) off-diagonal of the discretized operator.
    pub fn tridiagonal(&self) -> (Vec<f64>, f64) {
        let h = self.step();
        let eps = self.epsilon;
        let diag = (1..=self.grid)
            .map(|j| {
                let x = -self.half_width + j as f64 * h;
                2.0 / (h * h) + eps * eps * x * x + self.offset * eps
            })
            .collect();
        (diag, -1.0 / (h * h))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumReport {
    pub eigenvalues: Vec<f64>,
    /// `λ_i / ε` for the positive eigenvalues reported.
    pub scaling_ratios: Vec<f64>,
}

/// Number of eigenvalues strictly below `x`.
fn sturm_count(diag: &[f64], off: f64, x: f64) -> usize {
    let mut count = 0;
    let mut q = 1.0;
    let off2 = off * off;
    for (j, d) in diag.iter().enumerate() {
        q = if j == 0 { d - x } else { d - x - off2 / q };
        if q == 0.0 {
            q = f64::EPSILON * (d.abs() + off.abs());
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

fn sturm_lowest(diag: &[f64], off: f64, count: usize) -> Vec<f64> {
    let radius = 2.0 * off.abs();
    let lo0 = diag.iter().fold(f64::INFINITY, |m, d| m.min(d - radius));
    let hi0 = diag.iter().fold(f64::NEG_INFINITY, |m, d| m.max(d + radius));
    (0..count.min(diag.len()))
        .map(|k| {
            let (mut lo, mut hi) = (lo0, hi0);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if sturm_count(diag, off, mid) > k {
                    hi = mid;
                } else {
                    lo = mid;
                }
                if hi - lo <= 1e-14 * hi.abs().max(1.0) {
                    break;
                }
            }
            0.5 * (lo + hi)
        })
        .collect()
}

fn dense_lowest(diag: &[f64], off: f64, count: usize) -> Result<Vec<f64>> {
    let n = diag.len();
    let m = DMatrix::from_fn(n, n, |i, j| {
        if i == j {
            diag[i]
        } else if i.abs_diff(j) == 1 {
            off
        } else {
            0.0
        }
    });
    let eig = SymmetricEigen::try_new(m, f64::EPSILON, 10_000)
        .ok_or_else(|| Error::Eigen("symmetric eigensolver did not converge".into()))?;
    let mut v: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    v.sort_by(f64::total_cmp);
    v.truncate(count);
    Ok(v)
}

/// Lowest `count` eigenvalues, ascending.
pub fn lowest_eigenvalues(op: &ModelOperator, count: usize, solver: Solver) -> Result<Vec<f64>> {
    op.check()?;
    let (diag, off) = op.tridiagonal();
    match solver {
        Solver::Sturm => Ok(sturm_lowest(&diag, off, count)),
        Solver::Dense => dense_lowest(&diag, off, count),
    }
}

/// Lowest ten eigenvalues and the ratios `λ_i/ε` for `i = 1..`.
pub fn spectrum(op: &ModelOperator) -> Result<SpectrumReport> {
    let eigenvalues = lowest_eigenvalues(op, 10, Solver::Sturm)?;
    let scaling_ratios = eigenvalues.iter().skip(1).map(|l| l / op.epsilon).collect();
    Ok(SpectrumReport { eigenvalues, scaling_ratios })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScalingReport {
    pub passed: bool,
    pub max_deviation: f64,
    pub spectra: Vec<(f64, SpectrumReport)>,
}

/// Compare `λ_i(ε)/ε` across every pair of `ε` values for the lowest five
/// positive eigenvalues.
pub fn scaling_check(eps: &[f64], half_width: f64, grid: usize, exec: Execution) -> Result<ScalingReport> {
    if eps.len() < 2 {
        return Err(Error::Precondition("scaling check needs at least two ε values".into()));
    }
    let spectra = exec::try_map(exec, eps, |&e| spectrum(&ModelOperator::new(e, half_width, grid)))?;
    let mut max_deviation: f64 = 0.0;
    for (a, sa) in spectra.iter().enumerate() {
        for sb in &spectra[a + 1..] {
            for (ra, rb) in sa.scaling_ratios.iter().zip(&sb.scaling_ratios).take(5) {
                max_deviation = max_deviation.max((ra - rb).abs() / rb.abs());
            }
        }
    }
    Ok(ScalingReport {
        passed: max_deviation < SCALING_TOL,
        max_deviation,
        spectra: eps.iter().copied().zip(spectra).collect(),
    })
}
