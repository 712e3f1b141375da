//! Inner-product norms `‖y‖_M = √(yᵀMy)` and the adaptive metric
//! `M_k = ε₀I + Σ_k`, where `Σ_k` is the running average of `uᵢuᵢᵀ` over
//! the normalized cut normals seen so far.

use nalgebra::{DMatrix, DVector};

use crate::error::MetricError;
use crate::linalg::symmetrize;

const SYMMETRY_TOL: f64 = 1e-12;
const JACOBI_OFF_TOL: f64 = 1e-13;
const JACOBI_MAX_SWEEPS: usize = 100;

/// Default regularization of the adaptive metric.
pub const DEFAULT_EPS0: f64 = 0.1;

/// Eigen-decomposition of a symmetric matrix by cyclic Jacobi rotations.
///
/// Returns eigenvalues in ascending order and the matching eigenvectors as
/// columns. Sweeps stop once the off-diagonal Frobenius norm drops below
/// `1e-13` relative to the full Frobenius norm.
pub fn jacobi_eigen(a: &DMatrix<f64>) -> (DVector<f64>, DMatrix<f64>) {
    let n = a.nrows();
    let mut m = symmetrize(a);
    let mut v = DMatrix::<f64>::identity(n, n);
    let total = m.norm().max(f64::MIN_POSITIVE);
    for _ in 0..JACOBI_MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| m[(i, j)] * m[(i, j)])
            .sum::<f64>()
            .sqrt();
        if off <= JACOBI_OFF_TOL * total {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (m[(q, q)] - m[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let mkp = m[(k, p)];
                    let mkq = m[(k, q)];
                    m[(k, p)] = c * mkp - s * mkq;
                    m[(k, q)] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let mpk = m[(p, k)];
                    let mqk = m[(q, k)];
                    m[(p, k)] = c * mpk - s * mqk;
                    m[(q, k)] = s * mpk + c * mqk;
                }
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(i, i)].total_cmp(&m[(j, j)]));
    let values = DVector::from_iterator(n, order.iter().map(|&i| m[(i, i)]));
    let vectors = DMatrix::from_fn(n, n, |r, c| v[(r, order[c])]);
    (values, vectors)
}

/// Extreme eigenvalues and the quality ratio `θ = √(λ_min/λ_max)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Spectrum {
    pub lambda_min: f64,
    pub lambda_max: f64,
    pub theta: f64,
}

/// Symmetric positive definite matrix with cached eigen-decomposition.
#[derive(Debug, Clone, PartialEq)]
pub struct SpdMatrix {
    entries: DMatrix<f64>,
    eigenvalues: DVector<f64>,
    eigenvectors: DMatrix<f64>,
}

impl SpdMatrix {
    /// Validates symmetry (entrywise within 1e-12) and positive definiteness.
    pub fn new(entries: DMatrix<f64>) -> Result<Self, MetricError> {
        if !entries.is_square() || entries.nrows() == 0 {
            return Err(MetricError::NotSpd(format!(
                "shape {}x{} is not square",
                entries.nrows(),
                entries.ncols()
            )));
        }
        if entries.iter().any(|v| !v.is_finite()) {
            return Err(MetricError::NotSpd("non-finite entry".into()));
        }
        let asym = (&entries - entries.transpose()).amax();
        if asym > SYMMETRY_TOL {
            return Err(MetricError::NotSpd(format!("asymmetry {asym:.3e}")));
        }
        let entries = symmetrize(&entries);
        let (eigenvalues, eigenvectors) = jacobi_eigen(&entries);
        if eigenvalues[0] <= 0.0 {
            return Err(MetricError::NotSpd(format!(
                "smallest eigenvalue {:.3e}",
                eigenvalues[0]
            )));
        }
        Ok(Self {
            entries,
            eigenvalues,
            eigenvectors,
        })
    }

    /// Like [`SpdMatrix::new`] but symmetrizes first; for products that are
    /// symmetric only up to roundoff.
    pub fn from_symmetrized(entries: DMatrix<f64>) -> Result<Self, MetricError> {
        Self::new(symmetrize(&entries))
    }

    pub fn identity(q: usize) -> Self {
        Self::new(DMatrix::identity(q, q)).expect("identity is SPD")
    }

    pub fn diagonal(d: &[f64]) -> Result<Self, MetricError> {
        Self::new(DMatrix::from_diagonal(&DVector::from_row_slice(d)))
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.entries
    }

    pub fn eigenvalues(&self) -> &DVector<f64> {
        &self.eigenvalues
    }

    pub fn spectral(&self) -> Spectrum {
        let lambda_min = self.eigenvalues[0];
        let lambda_max = self.eigenvalues[self.dim() - 1];
        Spectrum {
            lambda_min,
            lambda_max,
            theta: (lambda_min / lambda_max).sqrt().min(1.0),
        }
    }

    fn spectral_map(&self, f: impl Fn(f64) -> f64) -> DMatrix<f64> {
        let d = DMatrix::from_diagonal(&self.eigenvalues.map(f));
        symmetrize(&(&self.eigenvectors * d * self.eigenvectors.transpose()))
    }

    /// The symmetric positive definite square root `T` with `T·T = M`.
    pub fn sqrt_factor(&self) -> SpdMatrix {
        Self::new(self.spectral_map(f64::sqrt)).expect("square root of SPD is SPD")
    }

    pub fn inverse(&self) -> SpdMatrix {
        Self::new(self.spectral_map(|l| 1.0 / l)).expect("inverse of SPD is SPD")
    }

    /// `‖y‖_M`
    pub fn norm(&self, y: &DVector<f64>) -> f64 {
        y.dot(&(&self.entries * y)).max(0.0).sqrt()
    }

    /// `‖u‖_{M⁻¹}`
    pub fn dual_norm(&self, u: &DVector<f64>) -> f64 {
        let coords = self.eigenvectors.transpose() * u;
        coords
            .iter()
            .zip(self.eigenvalues.iter())
            .map(|(c, l)| c * c / l)
            .sum::<f64>()
            .sqrt()
    }

    pub fn apply(&self, y: &DVector<f64>) -> DVector<f64> {
        &self.entries * y
    }
}

/// Extreme eigenvalues and `θ` of an SPD matrix.
pub fn spectral(m: &SpdMatrix) -> Spectrum {
    m.spectral()
}

pub fn sqrt_factor(m: &SpdMatrix) -> SpdMatrix {
    m.sqrt_factor()
}

pub fn m_norm(m: &SpdMatrix, y: &DVector<f64>) -> f64 {
    m.norm(y)
}

/// Running state of the adaptive metric.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricState {
    eps0: f64,
    k: usize,
    sum_outer: DMatrix<f64>,
    prior: DMatrix<f64>,
}

impl MetricState {
    /// Empty state with the isotropic prior `I/q` used before the first cut.
    pub fn new(q: usize, eps0: f64) -> Result<Self, MetricError> {
        Self::with_prior(q, eps0, DMatrix::identity(q, q) / q as f64)
    }

    pub fn with_prior(q: usize, eps0: f64, prior: DMatrix<f64>) -> Result<Self, MetricError> {
        if !(eps0 > 0.0 && eps0.is_finite()) {
            return Err(MetricError::NotSpd(format!(
                "eps0 must be positive, got {eps0}"
            )));
        }
        if prior.shape() != (q, q) {
            return Err(MetricError::NotSpd("prior has wrong shape".into()));
        }
        Ok(Self {
            eps0,
            k: 0,
            sum_outer: DMatrix::zeros(q, q),
            prior: symmetrize(&prior),
        })
    }

    pub fn eps0(&self) -> f64 {
        self.eps0
    }

    /// Number of normals accumulated.
    pub fn count(&self) -> usize {
        self.k
    }

    pub fn dim(&self) -> usize {
        self.sum_outer.nrows()
    }

    pub fn sum_outer(&self) -> &DMatrix<f64> {
        &self.sum_outer
    }

    /// Adds `uuᵀ` for `u = w/‖w‖₂`.
    pub fn push_normal(&self, w: &DVector<f64>) -> Result<Self, MetricError> {
        let norm = w.norm();
        if !(norm > 1e-12) {
            return Err(MetricError::ZeroNormal);
        }
        let u = w / norm;
        let mut next = self.clone();
        next.sum_outer += &u * u.transpose();
        next.k += 1;
        Ok(next)
    }

    /// `Σ_k = (1/k)Σ uᵢuᵢᵀ`, or `None` before the first normal.
    pub fn sigma(&self) -> Option<DMatrix<f64>> {
        (self.k > 0).then(|| symmetrize(&(&self.sum_outer / self.k as f64)))
    }

    /// `M_k = ε₀I + Σ_k`, falling back to `ε₀I + prior` when `k = 0`.
    pub fn materialize(&self) -> SpdMatrix {
        let q = self.dim();
        let sigma = self.sigma().unwrap_or_else(|| self.prior.clone());
        SpdMatrix::from_symmetrized(DMatrix::identity(q, q) * self.eps0 + sigma)
            .expect("eps0·I plus a PSD matrix is SPD")
    }

    /// Extreme eigenvalues of `Σ_k`.
    pub fn sigma_stats(&self) -> Result<(f64, f64), MetricError> {
        let sigma = self.sigma().ok_or(MetricError::NoNormalsYet)?;
        let (values, _) = jacobi_eigen(&sigma);
        Ok((values[0], values[values.len() - 1]))
    }
}
