//! Sparse Hamiltonians in the truncated boson ⊗ spin-½ product basis.

use serde::{Deserialize, Serialize};

use super::basis::{BasisDescriptor, TwoBosonBasis};
use super::sparse::{SparseHamiltonian, TripletBuilder};
use crate::disorder::DisorderEnsemble;
use crate::error::{Error, Result};
use crate::model::DickeParams;

/// How a collective coupling g enters the spin-½ Hamiltonian.
///
/// With `Hopfield` the light-matter term is (2g/√N)(a+a†)ΣSˣᵢ, whose
/// large-N bosonization is exactly g(a+a†)(b+b†). The critical point is then
/// g_c = √(ωω₀)/2 in both engines. `LiteralSpinHalf` uses (g/√N)(a+a†)ΣSˣᵢ,
/// which bosonizes to (g/2)(a+a†)(b+b†) and moves the finite-N critical
/// point to √(ωω₀).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CouplingConvention {
    #[default]
    Hopfield,
    LiteralSpinHalf,
}

impl CouplingConvention {
    /// Prefactor c in c·(a+a†)Sˣᵢ for a collective coupling g over `total` spins.
    pub fn per_spin(self, g: f64, total: usize) -> f64 {
        let scale = match self {
            CouplingConvention::Hopfield => 2.0,
            CouplingConvention::LiteralSpinHalf => 1.0,
        };
        scale * g / (total as f64).sqrt()
    }
}

/// ωᵢSᶻᵢ + cᵢ(a+a†)Sˣᵢ for one spin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinTerm {
    pub splitting: f64,
    pub coupling: f64,
}

/// ω a†a + D(a+a†)² + Σᵢ [ωᵢSᶻᵢ + cᵢ(a+a†)Sˣᵢ] + 4J Σₙ SˣₙSˣₙ₊₁ (periodic).
#[derive(Debug, Clone, PartialEq)]
pub struct SpinBosonModel {
    pub omega: f64,
    pub a2_coeff: f64,
    pub spins: Vec<SpinTerm>,
    pub ising_j: f64,
}

impl SpinBosonModel {
    pub fn dicke(p: &DickeParams, convention: CouplingConvention) -> Self {
        let c = convention.per_spin(p.g, p.n_spins);
        SpinBosonModel {
            omega: p.omega,
            a2_coeff: p.a2_coeff,
            spins: vec![
                SpinTerm {
                    splitting: p.omega0,
                    coupling: c
                };
                p.n_spins
            ],
            ising_j: 0.0,
        }
    }

    pub fn build(&self, basis: &BasisDescriptor) -> Result<SparseHamiltonian> {
        let n_spins = self.spins.len();
        if n_spins != basis.n_spins {
            return Err(Error::DimensionMismatch {
                expected: basis.n_spins,
                got: n_spins,
            });
        }
        if self.ising_j != 0.0 && n_spins < 2 {
            return Err(Error::invalid("n_spins", "must be >= 2 for the Ising ring"));
        }
        let d = self.a2_coeff;
        let mut b = TripletBuilder::new(basis.dim);
        for idx in 0..basis.dim {
            let (n, mask) = basis.decompose(idx);
            let nf = n as f64;

            let mut diag = self.omega * nf;
            for (s, term) in self.spins.iter().enumerate() {
                let sz = if mask >> s & 1 == 1 { 0.5 } else { -0.5 };
                diag += sz * term.splitting;
            }
            if d != 0.0 {
                // D(a+a†)² = D(a² + a†² + 2a†a + 1)
                diag += d * (2.0 * nf + 1.0);
            }
            b.push(idx, idx, diag);

            if n < basis.n_max {
                let up = (nf + 1.0).sqrt();
                for (s, term) in self.spins.iter().enumerate() {
                    if term.coupling != 0.0 {
                        let j = basis.index(n + 1, mask ^ (1 << s));
                        b.push_symmetric(idx, j, 0.5 * term.coupling * up);
                    }
                }
            }
            if d != 0.0 && n + 2 <= basis.n_max {
                let j = basis.index(n + 2, mask);
                b.push_symmetric(idx, j, d * ((nf + 1.0) * (nf + 2.0)).sqrt());
            }
            if self.ising_j != 0.0 {
                // 4J SˣSˣ flips both spins with amplitude 4J·¼; each bond is
                // reached once from each endpoint configuration, so only the
                // forward element is pushed here.
                for s in 0..n_spins {
                    let t = (s + 1) % n_spins;
                    let j = basis.index(n, mask ^ (1 << s) ^ (1 << t));
                    b.push(idx, j, self.ising_j);
                }
            }
        }
        Ok(SparseHamiltonian {
            matrix: b.finish(),
            parity: Some(basis.parity()),
        })
    }
}

pub fn build_dicke_hamiltonian(p: &DickeParams, basis: &BasisDescriptor) -> Result<SparseHamiltonian> {
    build_dicke_hamiltonian_with(p, basis, CouplingConvention::default())
}

pub fn build_dicke_hamiltonian_with(
    p: &DickeParams,
    basis: &BasisDescriptor,
    convention: CouplingConvention,
) -> Result<SparseHamiltonian> {
    SpinBosonModel::dicke(p, convention).build(basis)
}

/// Clean spins first, then defects, all normalized by √(N+m).
///
/// `p.n_spins` is ignored in favour of `d.n_clean`.
pub fn build_disordered_hamiltonian(
    p: &DickeParams,
    d: &DisorderEnsemble,
    basis: &BasisDescriptor,
) -> Result<SparseHamiltonian> {
    build_disordered_hamiltonian_with(p, d, basis, CouplingConvention::default())
}

pub fn build_disordered_hamiltonian_with(
    p: &DickeParams,
    d: &DisorderEnsemble,
    basis: &BasisDescriptor,
    convention: CouplingConvention,
) -> Result<SparseHamiltonian> {
    let total = d.total_spins();
    let clean = SpinTerm {
        splitting: p.omega0,
        coupling: convention.per_spin(p.g, total),
    };
    let mut spins = vec![clean; d.n_clean];
    spins.extend(d.defects.iter().map(|df| SpinTerm {
        splitting: df.omega_prime,
        coupling: convention.per_spin(df.g_prime, total),
    }));
    SpinBosonModel {
        omega: p.omega,
        a2_coeff: p.a2_coeff,
        spins,
        ising_j: 0.0,
    }
    .build(basis)
}

/// Ideal Dicke model on the k = 0 boson plus the Ising ring with J = η ω₀.
pub fn build_dicke_ising_hamiltonian(
    p: &DickeParams,
    eta: f64,
    basis: &BasisDescriptor,
) -> Result<SparseHamiltonian> {
    build_dicke_ising_hamiltonian_with(p, eta, basis, CouplingConvention::default())
}

pub fn build_dicke_ising_hamiltonian_with(
    p: &DickeParams,
    eta: f64,
    basis: &BasisDescriptor,
    convention: CouplingConvention,
) -> Result<SparseHamiltonian> {
    if !eta.is_finite() {
        return Err(Error::invalid("eta", "must be finite"));
    }
    let mut model = SpinBosonModel::dicke(p, convention);
    model.ising_j = eta * p.omega0;
    model.build(basis)
}

/// ω a†a + ω₀ b†b + g(a+a†)(b+b†) + D(a+a†)² on a two-boson grid.
pub fn build_hopfield_hamiltonian(
    p: &DickeParams,
    n_max_a: usize,
    n_max_b: usize,
) -> Result<(SparseHamiltonian, TwoBosonBasis)> {
    let basis = TwoBosonBasis::new(n_max_a, n_max_b)?;
    let (g, d) = (p.g, p.a2_coeff);
    let mut b = TripletBuilder::new(basis.dim);
    for idx in 0..basis.dim {
        let (na, nb) = basis.decompose(idx);
        let (fa, fb) = (na as f64, nb as f64);
        let mut diag = p.omega * fa + p.omega0 * fb;
        if d != 0.0 {
            diag += d * (2.0 * fa + 1.0);
        }
        b.push(idx, idx, diag);
        if g != 0.0 && na < n_max_a {
            if nb < n_max_b {
                let j = basis.index(na + 1, nb + 1);
                b.push_symmetric(idx, j, g * ((fa + 1.0) * (fb + 1.0)).sqrt());
            }
            if nb > 0 {
                let j = basis.index(na + 1, nb - 1);
                b.push_symmetric(idx, j, g * ((fa + 1.0) * fb).sqrt());
            }
        }
        if d != 0.0 && na + 2 <= n_max_a {
            let j = basis.index(na + 2, nb);
            b.push_symmetric(idx, j, d * ((fa + 1.0) * (fa + 2.0)).sqrt());
        }
    }
    Ok((
        SparseHamiltonian {
            matrix: b.finish(),
            parity: Some(basis.parity()),
        },
        basis,
    ))
}
