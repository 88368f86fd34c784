//! Magnon normal modes of the Dicke model with a transverse nearest-neighbour
//! Ising ring 4J Σ Sˣₙ Sˣₙ₊₁, η = J/ω₀.
//!
//! To linear order in η the spins become magnons with E_k = ω₀(1 + 2η cos k)
//! and each momentum k is an independent two-oscillator problem with boson
//! frequency ω_k, spin frequency E_k and coupling g̃_k = g(1 + η cos k).

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bogoliubov::CoupledOscillators;
use crate::error::{Error, Result};
use crate::model::{magnon_dispersion, PhaseLabel};

/// |η| above this is reported as outside the weak-Ising regime.
pub const ETA_WARNING: f64 = 0.3;

/// Boson frequency as a function of momentum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Dispersion {
    Flat { omega: f64 },
    Lattice { omega_r: f64, j_r: f64 },
}

impl Dispersion {
    pub fn omega_k(&self, k: f64) -> f64 {
        match *self {
            Dispersion::Flat { omega } => omega,
            Dispersion::Lattice { omega_r, j_r } => magnon_dispersion(omega_r, j_r, k),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IsingParams {
    pub eta: f64,
    pub omega0: f64,
    pub dispersion: Dispersion,
    pub g: f64,
    pub n_spins: usize,
}

impl IsingParams {
    pub fn new(eta: f64, omega0: f64, dispersion: Dispersion, g: f64, n_spins: usize) -> Result<Self> {
        if !eta.is_finite() {
            return Err(Error::invalid("eta", "must be finite"));
        }
        if !(omega0 > 0.0) {
            return Err(Error::invalid("omega0", "must be > 0"));
        }
        if !(g >= 0.0) {
            return Err(Error::invalid("g", "must be >= 0"));
        }
        if n_spins < 1 {
            return Err(Error::invalid("n_spins", "must be >= 1"));
        }
        let bad = match dispersion {
            Dispersion::Flat { omega } => !(omega > 0.0),
            Dispersion::Lattice { omega_r, j_r } => !(omega_r > 0.0) || !(j_r >= 0.0),
        };
        if bad {
            return Err(Error::invalid("dispersion", "boson frequencies must be > 0"));
        }
        Ok(IsingParams {
            eta,
            omega0,
            dispersion,
            g,
            n_spins,
        })
    }

    /// Exchange J = η ω₀.
    pub fn j(&self) -> f64 {
        self.eta * self.omega0
    }

    pub fn outside_weak_regime(&self) -> bool {
        self.eta.abs() > ETA_WARNING
    }
}

/// Leading-order magnon band data at one momentum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MagnonBand {
    pub k: f64,
    pub e_k: f64,
    pub alpha_k: f64,
    pub beta_k: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MagnonMode {
    pub band: MagnonBand,
    pub omega_k: f64,
    pub g_tilde_k: f64,
    pub eps_minus_k: f64,
    pub eps_plus_k: f64,
    pub gamma_k: f64,
    pub phase: PhaseLabel,
}

pub fn magnon_spectrum(ip: &IsingParams, k: f64) -> MagnonBand {
    let c = ip.eta * k.cos();
    MagnonBand {
        k,
        e_k: ip.omega0 * (1.0 + 2.0 * c),
        alpha_k: 1.0,
        beta_k: c,
    }
}

fn oscillators_at(ip: &IsingParams, k: f64) -> Result<(MagnonBand, CoupledOscillators)> {
    let band = magnon_spectrum(ip, k);
    if !(band.e_k > 0.0) {
        return Err(Error::Unsupported(format!(
            "magnon energy E_k = {} is not positive (eta = {}, k = {k})",
            band.e_k, ip.eta
        )));
    }
    let osc = CoupledOscillators {
        boson: ip.dispersion.omega_k(k),
        spin: band.e_k,
        coupling: ip.g * (1.0 + band.beta_k),
    };
    Ok((band, osc))
}

pub fn dicke_ising_modes(ip: &IsingParams, k: f64) -> Result<MagnonMode> {
    let (band, osc) = oscillators_at(ip, k)?;
    let sol = osc.solve();
    if sol.eps_minus_sq < 0.0 {
        return Err(Error::SuperradiantInput {
            eps_minus_sq: sol.eps_minus_sq,
        });
    }
    Ok(MagnonMode {
        band,
        omega_k: osc.boson,
        g_tilde_k: osc.coupling,
        eps_minus_k: sol.eps_minus_sq.sqrt(),
        eps_plus_k: sol.eps_plus_sq.sqrt(),
        gamma_k: sol.gamma,
        phase: PhaseLabel::Normal,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CriticalCouplingK {
    /// Solves g̃_k = √(ω_k E_k)/2 within the quadratic magnon model.
    pub exact_quadratic: f64,
    /// √(ω_k ω₀)/2, correct through linear order in η.
    pub leading: f64,
}

pub fn critical_coupling_k(ip: &IsingParams, k: f64) -> Result<CriticalCouplingK> {
    let (band, osc) = oscillators_at(ip, k)?;
    Ok(CriticalCouplingK {
        exact_quadratic: (osc.boson * band.e_k).sqrt() / (2.0 * (1.0 + band.beta_k)),
        leading: (osc.boson * ip.omega0).sqrt() / 2.0,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KQuadrature {
    pub k: f64,
    pub gamma_k: f64,
    /// Weight of i(a†₋ₖ − aₖ).
    pub boson: f64,
    /// Weight of each site's i(S⁺ₙ − S⁻ₙ), before its phase factor.
    pub spin_per_site: f64,
    /// e^{ikn} for n = 0..N.
    pub phases: Vec<Complex64>,
}

/// Coefficients of the momentum-k squeezed quadrature in site language.
///
/// The mixing angle comes from tan 2γ_k alone, so this is defined whenever
/// E_k > 0, including couplings past the quadratic model's critical point
/// where [`dicke_ising_modes`] refuses to return frequencies.
pub fn squeezed_quadrature_coefficients_k(ip: &IsingParams, k: f64) -> Result<KQuadrature> {
    let (band, osc) = oscillators_at(ip, k)?;
    let gamma_k = osc.mixing_angle();
    let n = ip.n_spins;
    Ok(KQuadrature {
        k,
        gamma_k,
        boson: (osc.boson / 2.0).sqrt() * gamma_k.cos(),
        spin_per_site: (band.e_k / (2.0 * n as f64)).sqrt() * gamma_k.sin() * (1.0 - band.beta_k),
        phases: (0..n)
            .map(|site| Complex64::from_polar(1.0, k * site as f64))
            .collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bogoliubov::{normal_modes, two_mode_quadrature_coefficients};
    use crate::model::DickeParams;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn flat(eta: f64, g: f64) -> IsingParams {
        IsingParams::new(eta, 1.0, Dispersion::Flat { omega: 1.0 }, g, 6).unwrap()
    }

    #[test]
    fn spectrum_examples() {
        for k in [0.0, 0.7, PI] {
            assert_eq!(magnon_spectrum(&flat(0.0, 0.3), k).e_k, 1.0);
        }
        for eta in [-0.4, 0.2, 1.0] {
            assert!((magnon_spectrum(&flat(eta, 0.3), FRAC_PI_2).e_k - 1.0).abs() < 1e-15);
        }
        let b = magnon_spectrum(&flat(0.1, 0.3), 0.0);
        assert!((b.e_k - 1.2).abs() < 1e-15);
        assert!((b.beta_k - 0.1).abs() < 1e-15);
        assert_eq!(b.alpha_k, 1.0);
    }

    #[test]
    fn eta_zero_reduces_to_ideal() {
        let ideal = normal_modes(&DickeParams::new(1.0, 1.0, 0.3, 6).unwrap()).unwrap();
        let m = dicke_ising_modes(&flat(0.0, 0.3), 0.0).unwrap();
        assert_eq!(m.eps_minus_k, ideal.eps_minus);
        assert_eq!(m.eps_plus_k, ideal.eps_plus);
        assert_eq!(m.gamma_k, ideal.gamma);
    }

    #[test]
    fn weak_ising_identities() {
        let m = dicke_ising_modes(&flat(0.1, 0.4), 0.0).unwrap();
        assert!((m.g_tilde_k - 0.44).abs() < 1e-15);
        let (w, e, g) = (1.0, 1.2, 0.44);
        let sum = m.eps_minus_k.powi(2) + m.eps_plus_k.powi(2);
        let prod = m.eps_minus_k.powi(2) * m.eps_plus_k.powi(2);
        assert!((sum - (w * w + e * e)).abs() < 1e-12 * sum);
        let det = w * w * e * e - 4.0 * g * g * w * e;
        assert!((prod - det).abs() < 1e-12 * det);
    }

    #[test]
    fn ferromagnetic_k0_softest() {
        let ip = flat(-0.1, 0.3);
        let k0 = dicke_ising_modes(&ip, 0.0).unwrap();
        let kpi = dicke_ising_modes(&ip, PI).unwrap();
        assert!((k0.band.e_k - 0.8).abs() < 1e-15);
        assert!(k0.eps_minus_k < kpi.eps_minus_k);
    }

    #[test]
    fn critical_coupling_examples() {
        let c = critical_coupling_k(&flat(0.0, 0.3), 0.0).unwrap();
        assert_eq!(c.exact_quadratic, c.leading);
        assert_eq!(c.leading, 0.5);

        let c = critical_coupling_k(&flat(0.1, 0.3), 0.0).unwrap();
        assert!((c.exact_quadratic - 0.497930).abs() < 1e-6);
        assert_eq!(c.leading, 0.5);
        assert!((c.leading - c.exact_quadratic - 2.07e-3).abs() < 1e-5);

        let c = critical_coupling_k(&flat(0.1, 0.3), PI).unwrap();
        assert!((c.exact_quadratic - 0.8_f64.sqrt() / 1.8).abs() < 1e-15);
    }

    #[test]
    fn critical_shift_is_second_order() {
        // Expanding √(1+2η)/(1+η) gives a shift of η²/4 at k = 0.
        const C: f64 = 0.25;
        for eta in [0.01, 0.02, 0.05, 0.1, 0.2] {
            let c = critical_coupling_k(&flat(eta, 0.3), 0.0).unwrap();
            assert!((c.leading - c.exact_quadratic).abs() <= C * eta * eta, "eta {eta}");
        }
    }

    #[test]
    fn quadrature_reduction_and_phases() {
        let ip = flat(0.0, 0.3);
        let q = squeezed_quadrature_coefficients_k(&ip, 0.0).unwrap();
        let ideal = two_mode_quadrature_coefficients(&DickeParams::new(1.0, 1.0, 0.3, 6).unwrap())
            .unwrap();
        assert_eq!(q.boson, ideal.boson);
        assert!((q.spin_per_site * 6.0_f64.sqrt() - ideal.spin).abs() < 1e-14);

        let q = squeezed_quadrature_coefficients_k(&flat(0.1, 0.3), 0.0).unwrap();
        let expect = 0.9 * (1.2_f64 / 12.0).sqrt() * q.gamma_k.sin();
        assert!((q.spin_per_site - expect).abs() < 1e-15);

        let q = squeezed_quadrature_coefficients_k(&flat(0.1, 0.3), PI).unwrap();
        for (n, z) in q.phases.iter().enumerate() {
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            assert!((z.re - sign).abs() < 1e-14 && z.im.abs() < 1e-14);
        }
    }

    #[test]
    fn quadrature_defined_past_quadratic_critical_point() {
        let ip = flat(0.5, 0.5);
        assert!(dicke_ising_modes(&ip, 0.0).is_err());
        let q = squeezed_quadrature_coefficients_k(&ip, 0.0).unwrap();
        assert!(q.gamma_k > 0.0 && q.gamma_k < FRAC_PI_2);
    }

    #[test]
    fn nonpositive_magnon_energy_rejected() {
        assert!(dicke_ising_modes(&flat(-0.6, 0.1), 0.0).is_err());
        assert!(critical_coupling_k(&flat(-0.5, 0.1), 0.0).is_err());
    }

    #[test]
    fn lattice_dispersion() {
        let ip = IsingParams::new(0.0, 1.0, Dispersion::Lattice { omega_r: 1.0, j_r: 10.0 }, 0.3, 4)
            .unwrap();
        assert!((dicke_ising_modes(&ip, PI).unwrap().omega_k - 21.0).abs() < 1e-12);
        assert!(ip.j() == 0.0 && !ip.outside_weak_regime());
        assert!(flat(0.31, 0.1).outside_weak_regime());
    }
}
