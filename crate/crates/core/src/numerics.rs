//! Finite-difference oracle for 1D Schrodinger operators -psi'' + V psi (hbar = 2m = 1).
//!
//! Three-point stencil with Dirichlet ends, Sturm-sequence bisection for the
//! eigenvalues below a threshold, and inverse iteration for the eigenvectors.
//! Nothing here is randomized, so results are reproducible bit for bit.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::potentials::Family;

pub const BISECTION_TOLERANCE: f64 = 1e-10;
const INVERSE_ITERATIONS: usize = 2;
const MAX_BISECTION_STEPS: usize = 400;

/// Uniform grid with `n_points` interior nodes and spacing (x_max - x_min)/(n_points + 1).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Grid {
    pub x_min: f64,
    pub x_max: f64,
    pub n_points: usize,
}

impl Grid {
    pub const MIN_POINTS: usize = 100;

    pub fn new(x_min: f64, x_max: f64, n_points: usize) -> Result<Self> {
        if !(x_min.is_finite() && x_max.is_finite() && x_min < x_max) {
            return Err(Error::InvalidGrid(format!("need finite x_min < x_max, got [{x_min}, {x_max}]")));
        }
        if n_points < Self::MIN_POINTS {
            return Err(Error::InvalidGrid(format!(
                "need at least {} interior points, got {n_points}",
                Self::MIN_POINTS
            )));
        }
        Ok(Self {
            x_min,
            x_max,
            n_points,
        })
    }

    pub fn spacing(&self) -> f64 {
        (self.x_max - self.x_min) / (self.n_points + 1) as f64
    }

    /// All n_points + 2 nodes, endpoints included.
    pub fn nodes(&self) -> Vec<f64> {
        let h = self.spacing();
        (0..self.n_points + 2)
            .map(|i| {
                if i == self.n_points + 1 {
                    self.x_max
                } else {
                    self.x_min + i as f64 * h
                }
            })
            .collect()
    }

    pub fn interior(&self) -> Vec<f64> {
        let mut nodes = self.nodes();
        nodes.pop();
        nodes.remove(0);
        nodes
    }
}

/// Symmetric tridiagonal matrix: `diagonal` of length n, `off_diagonal` of length n - 1.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SymTridiagonal {
    pub diagonal: Vec<f64>,
    pub off_diagonal: Vec<f64>,
}

impl SymTridiagonal {
    /// Stencil matrix 2/h^2 + V(x_i) on the diagonal and -1/h^2 off it.
    pub fn from_samples(potential: &[f64], h: f64) -> Self {
        let inv = 1.0 / (h * h);
        let n = potential.len();
        Self {
            diagonal: potential.iter().map(|v| 2.0 * inv + v).collect(),
            off_diagonal: vec![-inv; n.saturating_sub(1)],
        }
    }

    pub fn len(&self) -> usize {
        self.diagonal.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diagonal.is_empty()
    }

    /// Number of eigenvalues strictly below `lambda` (Sturm sequence / LDL^T inertia).
    pub fn count_below(&self, lambda: f64) -> usize {
        let mut count = 0;
        let mut q = 1.0;
        for (i, &d) in self.diagonal.iter().enumerate() {
            let coupling = if i == 0 {
                0.0
            } else {
                let e = self.off_diagonal[i - 1];
                e * e / q
            };
            q = d - lambda - coupling;
            if q == 0.0 {
                q = -f64::EPSILON * (d.abs() + lambda.abs()).max(f64::MIN_POSITIVE);
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// Gershgorin interval containing the whole spectrum.
    pub fn gershgorin(&self) -> (f64, f64) {
        let n = self.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let left = if i > 0 { self.off_diagonal[i - 1].abs() } else { 0.0 };
            let right = if i + 1 < n { self.off_diagonal[i].abs() } else { 0.0 };
            lo = lo.min(self.diagonal[i] - left - right);
            hi = hi.max(self.diagonal[i] + left + right);
        }
        (lo, hi)
    }

    /// k-th smallest eigenvalue (0-based) by bisection on [lo, hi].
    fn bisect(&self, k: usize, mut lo: f64, mut hi: f64) -> Result<f64> {
        for _ in 0..MAX_BISECTION_STEPS {
            if hi - lo <= BISECTION_TOLERANCE {
                return Ok(0.5 * (lo + hi));
            }
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                return Ok(mid);
            }
            if self.count_below(mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Err(Error::Convergence { lo, hi })
    }

    /// Solves (T - shift) x = rhs by Gaussian elimination with partial pivoting.
    fn solve_shifted(&self, shift: f64, rhs: &[f64]) -> Vec<f64> {
        let n = self.len();
        let scale = self
            .diagonal
            .iter()
            .map(|d| (d - shift).abs())
            .fold(0.0_f64, f64::max)
            .max(f64::MIN_POSITIVE);
        let tiny = f64::EPSILON * scale;
        // Row i holds u0[i] x_i + u1[i] x_{i+1} + u2[i] x_{i+2} after elimination.
        let mut u0: Vec<f64> = self.diagonal.iter().map(|d| d - shift).collect();
        let mut u1: Vec<f64> = self.off_diagonal.clone();
        u1.push(0.0);
        let mut u2 = vec![0.0; n];
        let mut lower = self.off_diagonal.clone();
        let mut b = rhs.to_vec();
        for i in 0..n.saturating_sub(1) {
            if lower[i].abs() > u0[i].abs() {
                // swap rows i and i + 1
                let (r0, r1, r2) = (lower[i], u0[i + 1], u1.get(i + 1).copied().unwrap_or(0.0));
                let (s0, s1, s2) = (u0[i], u1[i], u2[i]);
                u0[i] = r0;
                u1[i] = r1;
                u2[i] = r2;
                b.swap(i, i + 1);
                let factor = s0 / r0;
                u0[i + 1] = s1 - factor * r1;
                if i + 1 < n - 1 {
                    u1[i + 1] = s2 - factor * r2;
                }
                b[i + 1] -= factor * b[i];
                lower[i] = 0.0;
            } else {
                let pivot = if u0[i] == 0.0 { tiny } else { u0[i] };
                u0[i] = pivot;
                let factor = lower[i] / pivot;
                u0[i + 1] -= factor * u1[i];
                if i + 1 < n - 1 {
                    u1[i + 1] -= factor * u2[i];
                }
                b[i + 1] -= factor * b[i];
            }
        }
        if u0[n - 1] == 0.0 {
            u0[n - 1] = tiny;
        }
        let mut x = vec![0.0; n];
        for i in (0..n).rev() {
            let mut acc = b[i];
            if i + 1 < n {
                acc -= u1[i] * x[i + 1];
            }
            if i + 2 < n {
                acc -= u2[i] * x[i + 2];
            }
            x[i] = acc / u0[i];
        }
        x
    }
}

/// Eigen-pairs below a threshold. Eigenvectors are sampled on all grid nodes
/// (zero at both ends) and normalized to unit trapezoidal norm.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralResult {
    pub energies: Vec<f64>,
    pub eigenvectors: Vec<Vec<f64>>,
    pub threshold: f64,
}

impl SpectralResult {
    pub fn len(&self) -> usize {
        self.energies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.energies.is_empty()
    }
}

pub fn discretize_hamiltonian<F: Fn(f64) -> f64>(potential: F, grid: &Grid) -> Result<SymTridiagonal> {
    let mut samples = Vec::with_capacity(grid.n_points);
    for x in grid.interior() {
        let v = potential(x);
        if !v.is_finite() {
            return Err(Error::NonFinitePotential { x });
        }
        samples.push(v);
    }
    Ok(SymTridiagonal::from_samples(&samples, grid.spacing()))
}

fn seed(n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| 1.0 + 0.5 * (0.618_033_988_749_895 * i as f64 + 0.3).sin())
        .collect()
}

/// Eigenvalues strictly below `threshold` (at most `max_count`), with eigenvectors
/// on the interior nodes normalized so that h * sum v^2 = 1.
pub fn eigen_bound_states(
    matrix: &SymTridiagonal,
    h: f64,
    threshold: f64,
    max_count: usize,
) -> Result<SpectralResult> {
    let count = matrix.count_below(threshold).min(max_count);
    let (lo, hi) = matrix.gershgorin();
    let upper = threshold.min(hi + 1.0);
    let mut energies = Vec::with_capacity(count);
    let mut eigenvectors = Vec::with_capacity(count);
    for k in 0..count {
        let lambda = matrix.bisect(k, lo - 1.0, upper)?;
        let mut v = seed(matrix.len());
        for _ in 0..INVERSE_ITERATIONS {
            v = matrix.solve_shifted(lambda, &v);
            let norm = v.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
            if !(norm.is_finite() && norm > 0.0) {
                return Err(Error::Convergence {
                    lo: lambda,
                    hi: lambda,
                });
            }
            v.iter_mut().for_each(|x| *x /= norm);
        }
        let norm = (h * v.iter().map(|x| x * x).sum::<f64>()).sqrt();
        let peak = v.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
        let first = v.iter().find(|x| x.abs() > 1e-8 * peak).copied().unwrap_or(1.0);
        let sign = first.signum();
        v.iter_mut().for_each(|x| *x *= sign / norm);
        energies.push(lambda);
        eigenvectors.push(v);
    }
    Ok(SpectralResult {
        energies,
        eigenvectors,
        threshold,
    })
}

/// Discretizes and solves; eigenvectors are returned on all grid nodes.
pub fn numeric_spectrum<F: Fn(f64) -> f64>(potential: F, grid: &Grid, threshold: f64) -> Result<SpectralResult> {
    let matrix = discretize_hamiltonian(potential, grid)?;
    let mut result = eigen_bound_states(&matrix, grid.spacing(), threshold, usize::MAX)?;
    for v in result.eigenvectors.iter_mut() {
        v.insert(0, 0.0);
        v.push(0.0);
    }
    Ok(result)
}

/// Trapezoidal integral of f g over the grid; samples cover all n_points + 2 nodes.
pub fn inner_product(f: &[f64], g: &[f64], grid: &Grid) -> Result<f64> {
    let expected = grid.n_points + 2;
    for len in [f.len(), g.len()] {
        if len != expected {
            return Err(Error::LengthMismatch { expected, got: len });
        }
    }
    let h = grid.spacing();
    let interior: f64 = f[1..expected - 1]
        .iter()
        .zip(&g[1..expected - 1])
        .map(|(a, b)| a * b)
        .sum();
    Ok(h * (interior + 0.5 * (f[0] * g[0] + f[expected - 1] * g[expected - 1])))
}

/// Strict sign changes; samples below 1e-12 of the largest magnitude are skipped.
pub fn node_count(samples: &[f64]) -> usize {
    let peak = samples.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
    let cutoff = 1e-12 * peak;
    let mut last = 0.0;
    let mut changes = 0;
    for &s in samples {
        if s.abs() <= cutoff {
            continue;
        }
        let sign = s.signum();
        if last != 0.0 && sign != last {
            changes += 1;
        }
        last = sign;
    }
    changes
}

/// Left end of every Eckart grid: the potential grows like A(A-1)/x^2 at the origin.
pub const ECKART_X_MIN: f64 = 1e-3;

/// Heuristic grid for bound states between `deepest_energy` and `shallowest_energy`
/// below `threshold`: half-width L = max(30, 12/sqrt(threshold - shallowest)) and
/// spacing h <= min(0.01, 0.1/sqrt|deepest|).
pub fn default_grid(family: Family, deepest_energy: f64, shallowest_energy: f64, threshold: f64) -> Result<Grid> {
    if !(deepest_energy < threshold && shallowest_energy < threshold) {
        return Err(Error::InvalidGrid(format!(
            "energies {deepest_energy}, {shallowest_energy} must lie below the threshold {threshold}"
        )));
    }
    let length = (12.0 / (threshold - shallowest_energy).sqrt()).max(30.0);
    let h_max = (0.1 / deepest_energy.abs().sqrt()).min(0.01);
    let (x_min, x_max) = match family {
        Family::RosenMorseII => (-length, length),
        Family::Eckart => (ECKART_X_MIN, length),
    };
    let n_points = (((x_max - x_min) / h_max).ceil() as usize).saturating_sub(1).max(Grid::MIN_POINTS);
    Grid::new(x_min, x_max, n_points)
}
