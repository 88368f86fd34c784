//! Gibbs-state variances from a full or partial eigendecomposition.

use nalgebra::DMatrix;

use super::operators::QuadratureOperator;
use super::solver::GroundStateResult;
use super::sparse::SparseHamiltonian;
use crate::error::{Error, Result};

/// Largest Boltzmann weight e^{−β(E_cut − E₀)} allowed on the first level
/// left out of the thermal sum.
pub const TAIL_BOUND: f64 = 1e-10;

/// Ascending eigenvalues with eigenvectors in matching columns.
#[derive(Debug, Clone)]
pub struct Spectrum {
    pub values: Vec<f64>,
    pub vectors: DMatrix<f64>,
}

impl Spectrum {
    /// Complete eigendecomposition. When the Hamiltonian carries a parity
    /// the even and odd blocks are diagonalized separately.
    pub fn full(h: &SparseHamiltonian) -> Self {
        let dim = h.dim();
        let dense = h.to_dense();
        let blocks: Vec<Vec<usize>> = match &h.parity {
            Some(parity) => [1i8, -1]
                .iter()
                .map(|&sign| (0..dim).filter(|&i| parity[i] == sign).collect::<Vec<_>>())
                .filter(|b| !b.is_empty())
                .collect(),
            None => vec![(0..dim).collect()],
        };
        let mut pairs: Vec<(f64, Vec<f64>)> = Vec::with_capacity(dim);
        for idx in &blocks {
            let sub = DMatrix::from_fn(idx.len(), idx.len(), |r, c| dense[(idx[r], idx[c])]);
            let eig = sub.symmetric_eigen();
            for k in 0..idx.len() {
                let mut v = vec![0.0; dim];
                for (r, &i) in idx.iter().enumerate() {
                    v[i] = eig.eigenvectors[(r, k)];
                }
                pairs.push((eig.eigenvalues[k], v));
            }
        }
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        Spectrum {
            values: pairs.iter().map(|p| p.0).collect(),
            vectors: DMatrix::from_fn(dim, pairs.len(), |r, c| pairs[c].1[r]),
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn eigenvector(&self, k: usize) -> Vec<f64> {
        self.vectors.column(k).iter().copied().collect()
    }

    /// Lowest eigenpair in the form returned by the ground-state solver.
    pub fn ground_state(&self, h: &SparseHamiltonian) -> GroundStateResult {
        let vector = self.eigenvector(0);
        let hv = h.apply(&vector);
        let residual = hv
            .iter()
            .zip(&vector)
            .map(|(a, b)| (a - self.values[0] * b).powi(2))
            .sum::<f64>()
            .sqrt();
        GroundStateResult {
            energy: self.values[0],
            vector,
            residual,
            tolerance: f64::INFINITY,
            gap: self.values.get(1).map(|e| e - self.values[0]),
            near_degenerate: false,
            iterations: 0,
            method: super::solver::SolverMethod::Dense,
        }
    }

    /// Gibbs variance of `q` from the lowest `n_eigenpairs` levels.
    ///
    /// The highest retained level plays the role of E_cut: the truncated
    /// basis cannot represent anything above it, so it is used even when the
    /// whole spectrum is retained.
    pub fn thermal_variance(
        &self,
        q: &QuadratureOperator,
        temperature: f64,
        n_eigenpairs: usize,
    ) -> Result<f64> {
        if !(temperature >= 0.0) {
            return Err(Error::invalid("temperature", "must be >= 0"));
        }
        if q.dim() != self.vectors.nrows() {
            return Err(Error::DimensionMismatch {
                expected: self.vectors.nrows(),
                got: q.dim(),
            });
        }
        let n = n_eigenpairs.min(self.len());
        if n == 0 {
            return Err(Error::invalid("n_eigenpairs", "must be >= 1"));
        }
        if temperature == 0.0 {
            return q.variance_in(&self.eigenvector(0));
        }
        let e0 = self.values[0];
        let tail = (-(self.values[n - 1] - e0) / temperature).exp();
        if !(tail < TAIL_BOUND) {
            return Err(Error::TailBound {
                tail,
                bound: TAIL_BOUND,
            });
        }
        let mut z = 0.0;
        let mut acc = 0.0;
        for k in 0..n {
            let w = (-(self.values[k] - e0) / temperature).exp();
            if w == 0.0 {
                break;
            }
            z += w;
            acc += w * q.variance_in(&self.eigenvector(k))?;
        }
        Ok(acc / z)
    }
}

/// Full-spectrum convenience wrapper around [`Spectrum::thermal_variance`].
pub fn thermal_variance(
    h: &SparseHamiltonian,
    q: &QuadratureOperator,
    temperature: f64,
    n_eigenpairs: usize,
) -> Result<f64> {
    Spectrum::full(h).thermal_variance(q, temperature, n_eigenpairs)
}
