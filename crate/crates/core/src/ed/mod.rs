//! Exact diagonalization in a truncated boson ⊗ spin-½ basis, plus a
//! two-boson grid for checking the quadratic theory directly.

pub mod basis;
pub mod dump;
pub mod hamiltonian;
pub mod operators;
pub mod solver;
pub mod sparse;
pub mod thermal;

pub use basis::{build_basis, BasisDescriptor, TwoBosonBasis};
pub use hamiltonian::{
    build_dicke_hamiltonian, build_dicke_hamiltonian_with, build_dicke_ising_hamiltonian,
    build_dicke_ising_hamiltonian_with, build_disordered_hamiltonian,
    build_disordered_hamiltonian_with, build_hopfield_hamiltonian, CouplingConvention,
    SpinBosonModel, SpinTerm,
};
pub use operators::{Observable, QuadratureOperator};
pub use solver::{ground_state, GroundStateResult, SolverMethod, SolverSettings};
pub use sparse::SparseHamiltonian;
pub use thermal::{thermal_variance, Spectrum};

use crate::error::Result;

/// Ground-state variance of a quadrature.
pub fn variance(gs: &GroundStateResult, q: &QuadratureOperator) -> Result<f64> {
    q.variance_in(&gs.vector)
}

/// ⟨S²⟩ of the ground state.
pub fn total_spin_expectation(gs: &GroundStateResult, basis: &BasisDescriptor) -> Result<f64> {
    operators::total_spin_in(&gs.vector, basis)
}
