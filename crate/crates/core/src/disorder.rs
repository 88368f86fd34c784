//! First-order perturbative squeezing with a dilute set of defect spins.
//!
//! N clean spins share (ω₀, g) and m defects carry their own (ω′ᵢ, g′ᵢ), all
//! coupled through the same 1/√(N+m) collective normalization. At zeroth
//! order the clean spins alone see a renormalized coupling ḡ = g√(N/(N+m))
//! and the defects sit in their bare Sᶻ eigenstates.

use serde::{Deserialize, Serialize};

use crate::bogoliubov::normal_modes;
use crate::error::{Error, Result};
use crate::model::DickeParams;

/// A defect counts as perturbative while α·cos γ̄·g′ ≤ this fraction of |ω′|.
pub const PERTURBATIVITY_THRESHOLD: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Defect {
    pub omega_prime: f64,
    pub g_prime: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DisorderEnsemble {
    pub n_clean: usize,
    pub defects: Vec<Defect>,
}

impl DisorderEnsemble {
    pub fn new(n_clean: usize, defects: Vec<Defect>) -> Result<Self> {
        Self { n_clean, defects }.validate()
    }

    /// `m` identical defects.
    pub fn uniform(n_clean: usize, m: usize, omega_prime: f64, g_prime: f64) -> Result<Self> {
        Self::new(
            n_clean,
            vec![
                Defect {
                    omega_prime,
                    g_prime
                };
                m
            ],
        )
    }

    pub fn validate(self) -> Result<Self> {
        if self.n_clean < 1 {
            return Err(Error::invalid("n_clean", "must be >= 1"));
        }
        for d in &self.defects {
            if !d.omega_prime.is_finite() || d.omega_prime == 0.0 {
                return Err(Error::invalid("omega_prime", "must be finite and nonzero"));
            }
            if !(d.g_prime >= 0.0) || !d.g_prime.is_finite() {
                return Err(Error::invalid("g_prime", "must be >= 0"));
            }
        }
        Ok(self)
    }

    pub fn m(&self) -> usize {
        self.defects.len()
    }

    pub fn total_spins(&self) -> usize {
        self.n_clean + self.m()
    }

    pub fn fraction(&self) -> f64 {
        self.m() as f64 / self.total_spins() as f64
    }
}

pub fn renormalized_coupling(g: f64, n: usize, m: usize) -> f64 {
    g * (n as f64 / (n + m) as f64).sqrt()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PerturbativeReport {
    pub xi: f64,
    pub alpha: f64,
    pub term_clean: f64,
    pub term_pinned: f64,
    pub term_coupling: f64,
    /// One entry per defect; `true` while the defect stays perturbative.
    pub validity: Vec<bool>,
    pub eps_minus_bar: f64,
    pub gamma_bar: f64,
}

impl PerturbativeReport {
    pub fn all_valid(&self) -> bool {
        self.validity.iter().all(|&v| v)
    }
}

/// Zeroth-order quantities shared by the report and the validity check.
struct Renormalized {
    eps_minus: f64,
    gamma: f64,
    alpha: f64,
    total: f64,
}

fn renormalize(p: &DickeParams, d: &DisorderEnsemble) -> Result<Renormalized> {
    if p.a2_coeff != 0.0 {
        return Err(Error::Unsupported("disorder with an A² term".into()));
    }
    let total = d.total_spins() as f64;
    let g_bar = renormalized_coupling(p.g, d.n_clean, d.m());
    let bar = p.with_coupling(g_bar)?;
    let modes = normal_modes(&bar).map_err(|e| match e {
        // Report an imaginary frequency as a negative one.
        Error::SuperradiantInput { eps_minus_sq } => Error::PerturbationInvalid {
            eps_minus: -(-eps_minus_sq).sqrt(),
        },
        other => other,
    })?;
    if modes.eps_minus <= 0.0 {
        return Err(Error::PerturbationInvalid {
            eps_minus: modes.eps_minus,
        });
    }
    Ok(Renormalized {
        eps_minus: modes.eps_minus,
        gamma: modes.gamma,
        alpha: (p.omega / (total * modes.eps_minus)).sqrt(),
        total,
    })
}

/// Squeezing ratio of the defect-inclusive quadrature p_d to first order in α.
///
/// Terms are referenced to min(ω, ω₀)/2 like every other ratio in the crate,
/// so at m = 0 the result coincides with the clean ground-state ratio. A
/// defect with ω′ < 0 starts spin-up, contributes ⟨Sᶻ⟩ = +½ and uses the gap
/// |ω′| in its energy denominator.
pub fn disorder_xi_perturbative(p: &DickeParams, d: &DisorderEnsemble) -> Result<PerturbativeReport> {
    let r = renormalize(p, d)?;
    let reference = p.min_frequency();
    let (sin_g, cos_g) = r.gamma.sin_cos();
    let m = d.m() as f64;

    let term_clean = r.eps_minus / reference;
    let term_pinned = sin_g * sin_g * (p.omega0 / reference) * m / r.total;

    let sum: f64 = d
        .defects
        .iter()
        .map(|df| {
            let sz = -0.5 * df.omega_prime.signum();
            2.0 * sz * df.g_prime / (r.eps_minus + df.omega_prime.abs())
        })
        .sum();
    let term_coupling =
        -(r.alpha * cos_g / reference) * (r.eps_minus * p.omega0 / r.total).sqrt() * sum;

    Ok(PerturbativeReport {
        xi: term_clean + term_pinned + term_coupling,
        alpha: r.alpha,
        term_clean,
        term_pinned,
        term_coupling,
        validity: validity_flags(&r, d),
        eps_minus_bar: r.eps_minus,
        gamma_bar: r.gamma,
    })
}

fn validity_flags(r: &Renormalized, d: &DisorderEnsemble) -> Vec<bool> {
    let scale = r.alpha * r.gamma.cos();
    d.defects
        .iter()
        .map(|df| scale * df.g_prime <= PERTURBATIVITY_THRESHOLD * df.omega_prime.abs())
        .collect()
}

/// Per-defect flags, `true` meaning the defect may be treated perturbatively.
pub fn perturbativity_check(p: &DickeParams, d: &DisorderEnsemble) -> Result<Vec<bool>> {
    Ok(validity_flags(&renormalize(p, d)?, d))
}
