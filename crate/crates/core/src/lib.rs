//! Quantum squeezing in the Dicke model and its perturbations.
//!
//! Two engines cross-check each other: closed-form Bogoliubov results
//! ([`bogoliubov`], [`disorder`], [`ising`]) and exact diagonalization over a
//! truncated boson ⊗ spin-½ basis ([`ed`]). The [`experiment`] module turns
//! both into deterministic CSV sweeps.

// Parameter checks use `!(x > 0.0)` so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bogoliubov;
pub mod disorder;
pub mod ed;
pub mod error;
pub mod experiment;
pub mod ising;
pub mod model;

pub use error::{Error, Result};
