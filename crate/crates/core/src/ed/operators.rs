//! Observables for the exact-diagonalization engine.
//!
//! A momentum-type quadrature O = iM is stored through its real antisymmetric
//! generator M. For a real state v, ⟨O⟩ = i·vᵀMv vanishes identically and
//! ⟨O²⟩ = −vᵀM²v = ‖Mv‖², so every variance reduces to a squared norm.
//! Position-type observables are real symmetric and stored directly.

use nalgebra_sparse::CsrMatrix;

use super::basis::{BasisDescriptor, TwoBosonBasis};
use super::sparse::{apply, is_antisymmetric, is_symmetric, TripletBuilder};
use crate::bogoliubov::{normal_modes, two_mode_quadrature_coefficients, QuadratureId};
use crate::disorder::{renormalized_coupling, DisorderEnsemble};
use crate::error::{Error, Result};
use crate::ising::{squeezed_quadrature_coefficients_k, IsingParams};
use crate::model::DickeParams;

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn check_dim(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, got })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureOperator {
    pub generator: CsrMatrix<f64>,
    pub label: QuadratureId,
}

impl QuadratureOperator {
    /// O = w_b·i(a†−a) − Σᵢ wᵢ·i(S⁺ᵢ − S⁻ᵢ).
    pub fn two_mode(
        basis: &BasisDescriptor,
        boson_weight: f64,
        spin_weights: &[f64],
        label: QuadratureId,
    ) -> Result<Self> {
        check_dim(basis.n_spins, spin_weights.len())?;
        let mut b = TripletBuilder::new(basis.dim);
        for idx in 0..basis.dim {
            let (n, mask) = basis.decompose(idx);
            if boson_weight != 0.0 && n < basis.n_max {
                let j = basis.index(n + 1, mask);
                b.push_antisymmetric(j, idx, boson_weight * ((n + 1) as f64).sqrt());
            }
            for (s, &w) in spin_weights.iter().enumerate() {
                if w != 0.0 && mask >> s & 1 == 0 {
                    let j = basis.index(n, mask | 1 << s);
                    b.push_antisymmetric(j, idx, -w);
                }
            }
        }
        Ok(QuadratureOperator {
            generator: b.finish(),
            label,
        })
    }

    /// i(a†−a)/√2 − i(S₊−S₋)/√(2N): the resonant critical two-mode quadrature
    /// with bosonized spins replaced by exact collective spin operators.
    pub fn p_tilde_minus(basis: &BasisDescriptor) -> Result<Self> {
        let n = basis.n_spins as f64;
        let w = vec![(0.5 / n).sqrt(); basis.n_spins];
        Self::two_mode(basis, std::f64::consts::FRAC_1_SQRT_2, &w, QuadratureId::PTildeMinus)
    }

    /// i(S₊−S₋)/√N.
    pub fn spin_y_tilde(basis: &BasisDescriptor) -> Result<Self> {
        let w = vec![-1.0 / (basis.n_spins as f64).sqrt(); basis.n_spins];
        Self::two_mode(basis, 0.0, &w, QuadratureId::SpinY)
    }

    /// Squeezed quadrature p₋ of the ideal model with coefficients from the
    /// thermodynamic-limit mixing angle.
    pub fn p_minus(p: &DickeParams, basis: &BasisDescriptor) -> Result<Self> {
        let c = two_mode_quadrature_coefficients(p)?;
        let per_site = c.spin / (basis.n_spins as f64).sqrt();
        Self::two_mode(basis, c.boson, &vec![per_site; basis.n_spins], QuadratureId::PMinus)
    }

    /// Defect-inclusive quadrature p_d with angle γ̄ at the renormalized ḡ.
    pub fn p_d(p: &DickeParams, d: &DisorderEnsemble, basis: &BasisDescriptor) -> Result<Self> {
        let total = d.total_spins();
        check_dim(total, basis.n_spins)?;
        let bar = p.with_coupling(renormalized_coupling(p.g, d.n_clean, d.m()))?;
        let gamma = normal_modes(&bar)?.gamma;
        let boson = (p.omega / 2.0).sqrt() * gamma.cos();
        let spin = (p.omega0 / (2.0 * total as f64)).sqrt() * gamma.sin();
        Self::two_mode(basis, boson, &vec![spin; total], QuadratureId::Pd)
    }

    /// k = 0 quadrature of the Dicke-Ising model; every site phase is 1.
    pub fn p_minus_k0(ip: &IsingParams, basis: &BasisDescriptor) -> Result<Self> {
        check_dim(ip.n_spins, basis.n_spins)?;
        let c = squeezed_quadrature_coefficients_k(ip, 0.0)?;
        Self::two_mode(
            basis,
            c.boson,
            &vec![c.spin_per_site; basis.n_spins],
            QuadratureId::PMinusK,
        )
    }

    /// p₋ = √(ω/2)cosγ·i(a†−a) − √(ω₀/2)sinγ·i(b†−b) on the two-boson grid.
    pub fn hopfield_p_minus(p: &DickeParams, basis: &TwoBosonBasis) -> Result<Self> {
        let c = two_mode_quadrature_coefficients(p)?;
        let mut b = TripletBuilder::new(basis.dim);
        for idx in 0..basis.dim {
            let (na, nb) = basis.decompose(idx);
            if c.boson != 0.0 && na < basis.n_max_a {
                let j = basis.index(na + 1, nb);
                b.push_antisymmetric(j, idx, c.boson * ((na + 1) as f64).sqrt());
            }
            if c.spin != 0.0 && nb < basis.n_max_b {
                let j = basis.index(na, nb + 1);
                b.push_antisymmetric(j, idx, -c.spin * ((nb + 1) as f64).sqrt());
            }
        }
        Ok(QuadratureOperator {
            generator: b.finish(),
            label: QuadratureId::PMinus,
        })
    }

    pub fn dim(&self) -> usize {
        self.generator.nrows()
    }

    pub fn is_antisymmetric(&self) -> bool {
        is_antisymmetric(&self.generator)
    }

    /// Variance of O = iM in the real unit vector `v`.
    pub fn variance_in(&self, v: &[f64]) -> Result<f64> {
        check_dim(self.dim(), v.len())?;
        let mv = apply(&self.generator, v);
        Ok(dot(&mv, &mv))
    }
}

/// Real symmetric observable such as a+a† or a position quadrature.
#[derive(Debug, Clone, PartialEq)]
pub struct Observable {
    pub matrix: CsrMatrix<f64>,
    pub label: &'static str,
}

impl Observable {
    /// a + a†
    pub fn boson_position(basis: &BasisDescriptor) -> Self {
        let mut b = TripletBuilder::new(basis.dim);
        for idx in 0..basis.dim {
            let (n, mask) = basis.decompose(idx);
            if n < basis.n_max {
                b.push_symmetric(basis.index(n + 1, mask), idx, ((n + 1) as f64).sqrt());
            }
        }
        Observable {
            matrix: b.finish(),
            label: "a+a_dag",
        }
    }

    /// Σᵢ Sˣᵢ
    pub fn total_sx(basis: &BasisDescriptor) -> Self {
        let mut b = TripletBuilder::new(basis.dim);
        for idx in 0..basis.dim {
            let (n, mask) = basis.decompose(idx);
            for s in 0..basis.n_spins {
                if mask >> s & 1 == 0 {
                    b.push_symmetric(basis.index(n, mask | 1 << s), idx, 0.5);
                }
            }
        }
        Observable {
            matrix: b.finish(),
            label: "S_x",
        }
    }

    /// q₋ = cosγ·x − sinγ·y with x = (a+a†)/√(2ω), y = (b+b†)/√(2ω₀).
    pub fn hopfield_q_minus(p: &DickeParams, basis: &TwoBosonBasis) -> Result<Self> {
        let gamma = normal_modes(p)?.gamma;
        let cx = gamma.cos() / (2.0 * p.omega).sqrt();
        let cy = -gamma.sin() / (2.0 * p.omega0).sqrt();
        let mut b = TripletBuilder::new(basis.dim);
        for idx in 0..basis.dim {
            let (na, nb) = basis.decompose(idx);
            if cx != 0.0 && na < basis.n_max_a {
                b.push_symmetric(basis.index(na + 1, nb), idx, cx * ((na + 1) as f64).sqrt());
            }
            if cy != 0.0 && nb < basis.n_max_b {
                b.push_symmetric(basis.index(na, nb + 1), idx, cy * ((nb + 1) as f64).sqrt());
            }
        }
        Ok(Observable {
            matrix: b.finish(),
            label: "q_minus",
        })
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn is_symmetric(&self) -> bool {
        is_symmetric(&self.matrix)
    }

    pub fn expectation_in(&self, v: &[f64]) -> Result<f64> {
        check_dim(self.dim(), v.len())?;
        Ok(dot(v, &apply(&self.matrix, v)))
    }

    pub fn variance_in(&self, v: &[f64]) -> Result<f64> {
        check_dim(self.dim(), v.len())?;
        let av = apply(&self.matrix, v);
        let mean = dot(v, &av);
        Ok((dot(&av, &av) - mean * mean).max(0.0))
    }
}

/// ⟨S²⟩ for a real state, from S² = S₋S₊ + Sz² + Sz and ⟨S₋S₊⟩ = ‖S₊v‖².
pub fn total_spin_in(v: &[f64], basis: &BasisDescriptor) -> Result<f64> {
    check_dim(basis.dim, v.len())?;
    let mut raised = vec![0.0; basis.dim];
    let mut diag = 0.0;
    for (idx, &amp) in v.iter().enumerate() {
        if amp == 0.0 {
            continue;
        }
        let (n, mask) = basis.decompose(idx);
        let sz = mask.count_ones() as f64 - basis.n_spins as f64 / 2.0;
        diag += amp * amp * (sz * sz + sz);
        for s in 0..basis.n_spins {
            if mask >> s & 1 == 0 {
                raised[basis.index(n, mask | 1 << s)] += amp;
            }
        }
    }
    Ok(dot(&raised, &raised) + diag)
}
