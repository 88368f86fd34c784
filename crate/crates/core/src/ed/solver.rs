//! Lowest eigenpair of a real-symmetric sparse matrix.
//!
//! Small problems go through a dense symmetric eigendecomposition. Larger
//! ones use Lanczos with full reorthogonalization from the normalized
//! all-ones vector, so a given matrix always yields the same iterates.

use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};

use super::sparse::{matvec, SparseHamiltonian};
use crate::error::{Error, Result};

/// Two lowest levels closer than this are treated as a degenerate doublet.
pub const DEGENERACY_GAP: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SolverSettings {
    /// Relative tolerance; the residual bound is `tol · ‖H‖∞`.
    pub tol: f64,
    pub max_iterations: usize,
    /// Problems with dim at or below this go straight to the dense path.
    pub dense_threshold: usize,
    /// Lanczos failures at or below this dimension retry densely.
    pub dense_fallback_limit: usize,
}

impl Default for SolverSettings {
    fn default() -> Self {
        SolverSettings {
            tol: 1e-10,
            max_iterations: 5000,
            dense_threshold: 256,
            dense_fallback_limit: 2048,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SolverMethod {
    Dense,
    Lanczos,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GroundStateResult {
    pub energy: f64,
    pub vector: Vec<f64>,
    /// ‖Hv − Ev‖₂ of the returned vector.
    pub residual: f64,
    /// Residual bound the solve was held to.
    pub tolerance: f64,
    /// E₁ − E₀ as seen by the solver; `None` when dim = 1.
    pub gap: Option<f64>,
    pub near_degenerate: bool,
    pub iterations: usize,
    pub method: SolverMethod,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn residual(h: &SparseHamiltonian, v: &[f64], e: f64) -> f64 {
    let hv = h.apply(v);
    hv.iter()
        .zip(v)
        .map(|(a, b)| (a - e * b).powi(2))
        .sum::<f64>()
        .sqrt()
}

fn sorted_eigen(m: DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>) {
    let eig = SymmetricEigen::new(m);
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = DMatrix::from_fn(eig.eigenvectors.nrows(), order.len(), |r, c| {
        eig.eigenvectors[(r, order[c])]
    });
    (values, vectors)
}

/// Fixes the sign so the largest-magnitude component is positive.
fn canonical_sign(v: &mut [f64]) {
    let lead = v
        .iter()
        .copied()
        .fold(0.0_f64, |m, x| if x.abs() > m.abs() { x } else { m });
    if lead < 0.0 {
        v.iter_mut().for_each(|x| *x = -*x);
    }
}

/// Parity-even member of a near-degenerate doublet spanned by `a`, `b`.
fn parity_even(parity: &[i8], a: &[f64], b: &[f64]) -> Option<Vec<f64>> {
    let project = |v: &[f64]| -> Vec<f64> {
        v.iter()
            .zip(parity)
            .map(|(&x, &p)| if p > 0 { x } else { 0.0 })
            .collect()
    };
    let (pa, pb) = (project(a), project(b));
    let mut best = if norm(&pa) >= norm(&pb) { pa } else { pb };
    let n = norm(&best);
    if n < 1e-6 {
        return None;
    }
    best.iter_mut().for_each(|x| *x /= n);
    Some(best)
}

pub fn ground_state(h: &SparseHamiltonian, settings: &SolverSettings) -> Result<GroundStateResult> {
    let dim = h.dim();
    if dim == 0 {
        return Err(Error::invalid("dim", "must be >= 1"));
    }
    if !(settings.tol > 0.0) {
        return Err(Error::invalid("tol", "must be > 0"));
    }
    let bound = settings.tol * h.inf_norm().max(f64::MIN_POSITIVE);
    let dense = || {
        let (values, vectors) = sorted_eigen(h.to_dense());
        let v0: Vec<f64> = vectors.column(0).iter().copied().collect();
        let v1 = (dim > 1).then(|| vectors.column(1).iter().copied().collect::<Vec<f64>>());
        (values[0], values.get(1).copied(), v0, v1, 0, SolverMethod::Dense)
    };
    let (energy, second, mut vector, other, iterations, method) = if dim <= settings.dense_threshold {
        dense()
    } else {
        match lanczos(h, bound, settings.max_iterations) {
            Ok(l) if residual(h, &l.vector, l.energy) <= bound => (
                l.energy,
                l.second,
                l.vector,
                l.second_vector,
                l.iterations,
                SolverMethod::Lanczos,
            ),
            Ok(_) | Err(Error::NoConvergence { .. }) if dim <= settings.dense_fallback_limit => dense(),
            Ok(l) => {
                return Err(Error::NoConvergence {
                    iterations: l.iterations,
                    residual: residual(h, &l.vector, l.energy),
                })
            }
            Err(e) => return Err(e),
        }
    };

    let gap = second.map(|s| s - energy);
    let near_degenerate = gap.is_some_and(|g| g < DEGENERACY_GAP);
    if near_degenerate {
        if let (Some(parity), Some(other)) = (&h.parity, &other) {
            if let Some(even) = parity_even(parity, &vector, other) {
                vector = even;
            }
        }
    }
    canonical_sign(&mut vector);
    let res = residual(h, &vector, energy);
    if res > bound && method == SolverMethod::Lanczos {
        return Err(Error::NoConvergence {
            iterations,
            residual: res,
        });
    }
    Ok(GroundStateResult {
        energy,
        vector,
        residual: res,
        tolerance: bound,
        gap,
        near_degenerate,
        iterations,
        method,
    })
}

struct LanczosOutcome {
    energy: f64,
    second: Option<f64>,
    vector: Vec<f64>,
    second_vector: Option<Vec<f64>>,
    iterations: usize,
}

/// How often the tridiagonal problem is re-solved to test convergence.
const CHECK_EVERY: usize = 8;

fn lanczos(h: &SparseHamiltonian, bound: f64, cap: usize) -> Result<LanczosOutcome> {
    let dim = h.dim();
    let max_k = cap.min(dim).max(1);
    let mut basis: Vec<Vec<f64>> = Vec::new();
    let mut alpha: Vec<f64> = Vec::new();
    let mut beta: Vec<f64> = Vec::new();

    let start = 1.0 / (dim as f64).sqrt();
    let mut v = vec![start; dim];
    let mut w = vec![0.0; dim];
    let mut best_residual = f64::INFINITY;

    for k in 0..max_k {
        matvec(&h.matrix, &v, &mut w);
        let a = dot(&v, &w);
        for (wi, vi) in w.iter_mut().zip(&v) {
            *wi -= a * vi;
        }
        if let (Some(prev), Some(&b)) = (basis.last(), beta.last()) {
            for (wi, pi) in w.iter_mut().zip(prev) {
                *wi -= b * pi;
            }
        }
        basis.push(std::mem::take(&mut v));
        alpha.push(a);
        // Two Gram-Schmidt passes against the whole Krylov basis.
        for _ in 0..2 {
            for q in &basis {
                let c = dot(q, &w);
                for (wi, qi) in w.iter_mut().zip(q) {
                    *wi -= c * qi;
                }
            }
        }
        let b = norm(&w);
        let exhausted = b <= 1e-13 * bound.max(1.0) || k + 1 == max_k;

        if exhausted || (k + 1) % CHECK_EVERY == 0 {
            let m = alpha.len();
            let t = DMatrix::from_fn(m, m, |i, j| {
                if i == j {
                    alpha[i]
                } else if i + 1 == j {
                    beta[i]
                } else if j + 1 == i {
                    beta[j]
                } else {
                    0.0
                }
            });
            let (theta, s) = sorted_eigen(t);
            let estimate = (b * s[(m - 1, 0)]).abs();
            best_residual = best_residual.min(estimate);
            if estimate <= 0.5 * bound || exhausted {
                let ritz = |col: usize| -> Vec<f64> {
                    let mut out = vec![0.0; dim];
                    for (j, q) in basis.iter().enumerate() {
                        let c = s[(j, col)];
                        for (o, qi) in out.iter_mut().zip(q) {
                            *o += c * qi;
                        }
                    }
                    let n = norm(&out);
                    out.iter_mut().for_each(|x| *x /= n);
                    out
                };
                let vector = ritz(0);
                let true_res = residual(h, &vector, theta[0]);
                if true_res <= bound || exhausted {
                    return Ok(LanczosOutcome {
                        energy: theta[0],
                        second: theta.get(1).copied(),
                        second_vector: (m > 1).then(|| ritz(1)),
                        vector,
                        iterations: k + 1,
                    });
                }
                best_residual = best_residual.min(true_res);
            }
        }
        if exhausted {
            break;
        }
        beta.push(b);
        v = w.iter().map(|x| x / b).collect();
    }
    Err(Error::NoConvergence {
        iterations: alpha.len(),
        residual: best_residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag(values: &[f64]) -> SparseHamiltonian {
        SparseHamiltonian::from_dense(&DMatrix::from_diagonal(&nalgebra::DVector::from_row_slice(
            values,
        )))
    }

    #[test]
    fn diagonal_matrix_both_paths() {
        let h = diag(&[3.0, -2.0, 5.0, 0.5]);
        for threshold in [0, 100] {
            let s = SolverSettings {
                dense_threshold: threshold,
                ..Default::default()
            };
            let gs = ground_state(&h, &s).unwrap();
            assert_eq!(gs.energy, -2.0);
            assert!((gs.vector[1] - 1.0).abs() < 1e-12);
            assert!(gs.vector[0].abs() < 1e-12);
        }
    }

    #[test]
    fn lanczos_matches_dense_on_random_symmetric() {
        let n = 120;
        let mut state = 12345u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        let mut m = DMatrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let x = next();
                m[(i, j)] = x;
                m[(j, i)] = x;
            }
        }
        let h = SparseHamiltonian::from_dense(&m);
        let dense = ground_state(&h, &SolverSettings::default()).unwrap();
        let lz = ground_state(
            &h,
            &SolverSettings {
                dense_threshold: 0,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(lz.method, SolverMethod::Lanczos);
        assert!((dense.energy - lz.energy).abs() < 1e-10);
        let overlap: f64 = dense.vector.iter().zip(&lz.vector).map(|(a, b)| a * b).sum();
        assert!((overlap.abs() - 1.0).abs() < 1e-8);
        assert!(lz.residual <= lz.tolerance);
    }

    #[test]
    fn iteration_cap_reports_failure() {
        let values: Vec<f64> = (0..500).map(|i| (i as f64 * 0.37).sin()).collect();
        let h = diag(&values);
        let s = SolverSettings {
            tol: 1e-14,
            max_iterations: 3,
            dense_threshold: 0,
            dense_fallback_limit: 0,
        };
        match ground_state(&h, &s) {
            Err(Error::NoConvergence { iterations, .. }) => assert_eq!(iterations, 3),
            other => panic!("expected NoConvergence, got {other:?}"),
        }
    }

    #[test]
    fn small_failures_fall_back_to_dense() {
        let values: Vec<f64> = (0..50).map(|i| (i as f64 * 0.37).sin()).collect();
        let s = SolverSettings {
            max_iterations: 3,
            dense_threshold: 0,
            ..Default::default()
        };
        let gs = ground_state(&diag(&values), &s).unwrap();
        assert_eq!(gs.method, SolverMethod::Dense);
        assert_eq!(gs.energy, values.iter().copied().fold(f64::INFINITY, f64::min));
    }

    #[test]
    fn degenerate_doublet_resolved_by_parity() {
        // Two degenerate levels, one even and one odd basis state.
        let mut h = diag(&[1.0, 1.0, 2.0]);
        h.parity = Some(vec![-1, 1, 1]);
        let gs = ground_state(&h, &SolverSettings::default()).unwrap();
        assert!(gs.near_degenerate);
        assert!((gs.vector[1] - 1.0).abs() < 1e-12);
    }
}
