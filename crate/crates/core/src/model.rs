//! Model parameters and the two-leg ladder to effective Dicke mapping.
//!
//! Units: ħ = k_B = 1. Every energy is an absolute positive real; ratios
//! such as g/ω are formed by callers when they need them.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Separation-of-scales threshold: "a ≪ b" is considered violated when a > 0.1·b.
pub const SCALE_SEPARATION: f64 = 0.1;

/// One Dicke model instance: ω a†a + ω₀ Σ Sᶻ + (g/√N)(a+a†) Σ Sˣ + D(a+a†)².
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DickeParams {
    pub omega: f64,
    pub omega0: f64,
    pub g: f64,
    pub n_spins: usize,
    #[serde(default)]
    pub a2_coeff: f64,
}

impl DickeParams {
    pub fn new(omega: f64, omega0: f64, g: f64, n_spins: usize) -> Result<Self> {
        validate_params(DickeParams {
            omega,
            omega0,
            g,
            n_spins,
            a2_coeff: 0.0,
        })
    }

    pub fn with_a2(self, a2_coeff: f64) -> Result<Self> {
        validate_params(DickeParams { a2_coeff, ..self })
    }

    /// A² coefficient fixed by the TRK sum rule, D = g²/ω₀.
    pub fn with_trk_a2(self) -> Result<Self> {
        self.with_a2(self.g * self.g / self.omega0)
    }

    pub fn with_coupling(self, g: f64) -> Result<Self> {
        validate_params(DickeParams { g, ..self })
    }

    /// Smaller of the two bare frequencies; its ground-state momentum
    /// variance min(ω, ω₀)/2 is the squeezing reference.
    pub fn min_frequency(&self) -> f64 {
        self.omega.min(self.omega0)
    }

    pub fn phase(&self) -> PhaseLabel {
        PhaseLabel::classify(self)
    }
}

pub fn validate_params(p: DickeParams) -> Result<DickeParams> {
    if !(p.omega > 0.0) || !p.omega.is_finite() {
        return Err(Error::invalid("omega", "must be > 0"));
    }
    if !(p.omega0 > 0.0) || !p.omega0.is_finite() {
        return Err(Error::invalid("omega0", "must be > 0"));
    }
    if !(p.g >= 0.0) || !p.g.is_finite() {
        return Err(Error::invalid("g", "must be >= 0"));
    }
    if !(p.a2_coeff >= 0.0) || !p.a2_coeff.is_finite() {
        return Err(Error::invalid("a2_coeff", "must be >= 0"));
    }
    if p.n_spins < 1 {
        return Err(Error::invalid("n_spins", "must be >= 1"));
    }
    Ok(p)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PhaseLabel {
    Normal,
    Superradiant,
    NoTransition,
}

impl PhaseLabel {
    pub fn classify(p: &DickeParams) -> PhaseLabel {
        match critical_coupling(p) {
            CriticalCoupling::NoTransition => PhaseLabel::NoTransition,
            CriticalCoupling::At(g_c) if p.g > g_c => PhaseLabel::Superradiant,
            CriticalCoupling::At(_) => PhaseLabel::Normal,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CriticalCoupling {
    At(f64),
    NoTransition,
}

impl CriticalCoupling {
    pub fn value(self) -> Option<f64> {
        match self {
            CriticalCoupling::At(g) => Some(g),
            CriticalCoupling::NoTransition => None,
        }
    }
}

/// Critical coupling of the (possibly A²-augmented) model.
///
/// Solving g̃ = √(ω̃ω₀)/2 with ω̃ = √(ω(ω+4D)) and g̃ = g/(1+4D/ω)^{1/4}
/// gives g_c = √(ω₀(ω+4D))/2. When D ≥ g²/ω₀ the queried g can never reach
/// it and the model has no transition along its own coupling axis.
pub fn critical_coupling(p: &DickeParams) -> CriticalCoupling {
    let d = p.a2_coeff;
    if d > 0.0 && d >= p.g * p.g / p.omega0 {
        return CriticalCoupling::NoTransition;
    }
    CriticalCoupling::At((p.omega0 * (p.omega + 4.0 * d)).sqrt() / 2.0)
}

/// Critical coupling when the A² coefficient tracks the coupling as
/// D = λ·g²/ω₀. Diverges as λ → 1⁻ and vanishes for λ ≥ 1.
pub fn critical_coupling_trk_fraction(omega: f64, omega0: f64, lambda: f64) -> CriticalCoupling {
    if lambda >= 1.0 {
        return CriticalCoupling::NoTransition;
    }
    CriticalCoupling::At((omega * omega0 / (4.0 * (1.0 - lambda))).sqrt())
}

/// Two-leg spin ladder: fast red leg, slow blue leg, inter-leg exchange.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LadderParams {
    pub j_r: f64,
    pub j_b: f64,
    pub j_rb_x: f64,
    pub j_rb_y: f64,
    #[serde(default)]
    pub j_rb_z: f64,
    pub omega_r: f64,
    pub omega_b: f64,
    pub n_sites: usize,
}

impl LadderParams {
    pub fn validate(self) -> Result<Self> {
        if self.n_sites < 2 {
            return Err(Error::invalid("n_sites", "must be >= 2"));
        }
        if !(self.omega_r > 0.0) {
            return Err(Error::invalid("omega_r", "must be > 0"));
        }
        if !(self.omega_b > 0.0) {
            return Err(Error::invalid("omega_b", "must be > 0"));
        }
        if !(self.j_r >= 0.0) {
            return Err(Error::invalid("j_r", "must be >= 0"));
        }
        if !(self.j_b >= 0.0) {
            return Err(Error::invalid("j_b", "must be >= 0"));
        }
        for (field, v) in [
            ("j_rb_x", self.j_rb_x),
            ("j_rb_y", self.j_rb_y),
            ("j_rb_z", self.j_rb_z),
        ] {
            if !v.is_finite() {
                return Err(Error::invalid(field, "must be finite"));
            }
        }
        Ok(self)
    }
}

/// Red-leg magnon dispersion ω_k = ω_r + J_r(1 − cos k).
pub fn magnon_dispersion(omega_r: f64, j_r: f64, k: f64) -> f64 {
    omega_r + j_r * (1.0 - k.cos())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MomentumMode {
    pub k: f64,
    pub omega_k: f64,
    pub g_x: f64,
    pub g_y: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum ValidityFlag {
    /// J_r ≫ J_b does not hold.
    IntraLegNotSeparated { j_b: f64, j_r: f64 },
    /// J_b ≪ ω_b does not hold.
    BlueExchangeNotSmall { j_b: f64, omega_b: f64 },
    /// J_rb^z is nonlinear in the magnons and is dropped from the mapping.
    ZExchangeDropped { j_rb_z: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EffectiveDickeSpec {
    pub omega_r: f64,
    pub j_r: f64,
    pub omega_b: f64,
    pub n_sites: usize,
    pub modes: Vec<MomentumMode>,
    pub validity_flags: Vec<ValidityFlag>,
}

impl EffectiveDickeSpec {
    /// Ideal single-mode Dicke parameters of the k = 0 magnon.
    ///
    /// The 1/√N collective normalization lives in the Hamiltonian builder, so
    /// g is the bare inter-leg exchange. Requires J_rb^y = 0.
    pub fn k0_dicke_params(&self) -> Result<DickeParams> {
        let mode = self.modes[0];
        if mode.g_y != 0.0 {
            return Err(Error::Unsupported(
                "y inter-leg exchange has no ideal Dicke counterpart".into(),
            ));
        }
        DickeParams::new(mode.omega_k, self.omega_b, mode.g_x.abs(), self.n_sites)
    }

    pub fn is_valid(&self) -> bool {
        self.validity_flags
            .iter()
            .all(|f| matches!(f, ValidityFlag::ZExchangeDropped { .. }))
    }
}

pub fn map_ladder_to_dicke(lp: &LadderParams) -> Result<EffectiveDickeSpec> {
    let lp = lp.validate()?;
    let n = lp.n_sites;
    let modes = (0..n)
        .map(|j| {
            let k = 2.0 * PI * j as f64 / n as f64;
            MomentumMode {
                k,
                omega_k: magnon_dispersion(lp.omega_r, lp.j_r, k),
                g_x: lp.j_rb_x,
                g_y: lp.j_rb_y,
            }
        })
        .collect();

    let mut validity_flags = Vec::new();
    if lp.j_b > SCALE_SEPARATION * lp.j_r {
        validity_flags.push(ValidityFlag::IntraLegNotSeparated {
            j_b: lp.j_b,
            j_r: lp.j_r,
        });
    }
    if lp.j_b > SCALE_SEPARATION * lp.omega_b {
        validity_flags.push(ValidityFlag::BlueExchangeNotSmall {
            j_b: lp.j_b,
            omega_b: lp.omega_b,
        });
    }
    if lp.j_rb_z != 0.0 {
        validity_flags.push(ValidityFlag::ZExchangeDropped { j_rb_z: lp.j_rb_z });
    }

    Ok(EffectiveDickeSpec {
        omega_r: lp.omega_r,
        j_r: lp.j_r,
        omega_b: lp.omega_b,
        n_sites: n,
        modes,
        validity_flags,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ladder() -> LadderParams {
        LadderParams {
            j_r: 10.0,
            j_b: 0.05,
            j_rb_x: 0.4,
            j_rb_y: 0.0,
            j_rb_z: 0.0,
            omega_r: 1.0,
            omega_b: 1.0,
            n_sites: 8,
        }
    }

    #[test]
    fn accepts_valid_params() {
        let p = DickeParams::new(1.0, 1.0, 0.5, 6).unwrap();
        assert_eq!(p.a2_coeff, 0.0);
        DickeParams::new(1.0, 0.04, 0.1, 1).unwrap();
    }

    #[test]
    fn rejection_names_the_field() {
        let err = DickeParams::new(-1.0, 1.0, 0.5, 6).unwrap_err();
        assert_eq!(err.to_string(), "omega must be > 0");
        let err = DickeParams::new(1.0, 0.0, 0.5, 6).unwrap_err();
        assert!(err.to_string().starts_with("omega0"));
        let err = DickeParams::new(1.0, 1.0, -0.1, 6).unwrap_err();
        assert!(err.to_string().starts_with("g "));
        let err = DickeParams::new(1.0, 1.0, 0.1, 0).unwrap_err();
        assert!(err.to_string().starts_with("n_spins"));
        let p = DickeParams::new(1.0, 1.0, 0.1, 2).unwrap();
        assert!(p.with_a2(-1.0).unwrap_err().to_string().starts_with("a2_coeff"));
    }

    #[test]
    fn critical_coupling_examples() {
        let p = DickeParams::new(1.0, 1.0, 0.0, 1).unwrap();
        assert_eq!(critical_coupling(&p), CriticalCoupling::At(0.5));
        let p = DickeParams::new(1.0, 0.04, 0.1, 1).unwrap();
        let gc = critical_coupling(&p).value().unwrap();
        assert!((gc - 0.1).abs() < 1e-15);
        let p = DickeParams::new(1.0, 1.0, 0.7, 1).unwrap().with_trk_a2().unwrap();
        assert_eq!(critical_coupling(&p), CriticalCoupling::NoTransition);
        assert_eq!(p.phase(), PhaseLabel::NoTransition);
    }

    #[test]
    fn critical_coupling_increases_with_a2() {
        let base = DickeParams::new(1.0, 1.0, 2.0, 4).unwrap();
        let limit = base.g * base.g / base.omega0;
        let mut prev = 0.0;
        for i in 0..200 {
            let d = limit * i as f64 / 200.0;
            let gc = critical_coupling(&base.with_a2(d).unwrap()).value().unwrap();
            assert!(gc > prev);
            prev = gc;
        }
    }

    #[test]
    fn trk_fraction_diverges_at_one() {
        let mut prev = 0.0;
        for lambda in [0.0, 0.5, 0.9, 0.99, 0.9999] {
            let gc = critical_coupling_trk_fraction(1.0, 1.0, lambda).value().unwrap();
            assert!(gc > prev);
            prev = gc;
        }
        assert!(prev > 40.0);
        assert_eq!(
            critical_coupling_trk_fraction(1.0, 1.0, 1.0),
            CriticalCoupling::NoTransition
        );
    }

    #[test]
    fn phase_labels() {
        let p = DickeParams::new(1.0, 1.0, 0.3, 2).unwrap();
        assert_eq!(p.phase(), PhaseLabel::Normal);
        assert_eq!(p.with_coupling(0.5).unwrap().phase(), PhaseLabel::Normal);
        assert_eq!(p.with_coupling(0.6).unwrap().phase(), PhaseLabel::Superradiant);
        // zero coupling, zero A² is an ordinary normal phase
        assert_eq!(p.with_coupling(0.0).unwrap().phase(), PhaseLabel::Normal);
    }

    #[test]
    fn dispersion_endpoints() {
        assert_eq!(magnon_dispersion(1.0, 10.0, 0.0), 1.0);
        assert!((magnon_dispersion(1.0, 10.0, PI) - 21.0).abs() < 1e-12);
    }

    #[test]
    fn ladder_covers_every_momentum_once() {
        let spec = map_ladder_to_dicke(&ladder()).unwrap();
        assert_eq!(spec.modes.len(), 8);
        for (j, m) in spec.modes.iter().enumerate() {
            assert!((m.k - 2.0 * PI * j as f64 / 8.0).abs() < 1e-15);
            let shift = m.omega_k - spec.omega_r;
            assert!((0.0..=2.0 * spec.j_r + 1e-12).contains(&shift));
        }
        assert!(spec.validity_flags.is_empty());
    }

    #[test]
    fn ladder_flags_both_scale_conditions() {
        let lp = LadderParams {
            j_b: 5.0,
            ..ladder()
        };
        let spec = map_ladder_to_dicke(&lp).unwrap();
        assert!(spec
            .validity_flags
            .iter()
            .any(|f| matches!(f, ValidityFlag::IntraLegNotSeparated { .. })));
        assert!(spec
            .validity_flags
            .iter()
            .any(|f| matches!(f, ValidityFlag::BlueExchangeNotSmall { .. })));
        assert!(!spec.is_valid());
    }

    #[test]
    fn z_exchange_is_dropped_with_flag() {
        let lp = LadderParams {
            j_rb_z: 0.3,
            ..ladder()
        };
        let spec = map_ladder_to_dicke(&lp).unwrap();
        assert_eq!(
            spec.validity_flags,
            vec![ValidityFlag::ZExchangeDropped { j_rb_z: 0.3 }]
        );
        assert!(spec.is_valid());
    }

    #[test]
    fn ladder_rejects_short_chain() {
        let lp = LadderParams {
            n_sites: 1,
            ..ladder()
        };
        assert!(map_ladder_to_dicke(&lp).is_err());
    }

    #[test]
    fn k0_mode_is_the_ideal_dicke_tuple() {
        let spec = map_ladder_to_dicke(&ladder()).unwrap();
        let p = spec.k0_dicke_params().unwrap();
        assert_eq!(p, DickeParams::new(1.0, 1.0, 0.4, 8).unwrap());

        let lp = LadderParams {
            j_rb_y: 0.1,
            ..ladder()
        };
        assert!(map_ladder_to_dicke(&lp).unwrap().k0_dicke_params().is_err());
    }

    #[test]
    fn params_parse_from_json() {
        let p: DickeParams =
            serde_json::from_str(r#"{"omega":1.0,"omega0":0.04,"g":0.1,"n_spins":1}"#).unwrap();
        assert_eq!(p.a2_coeff, 0.0);
        validate_params(p).unwrap();
    }
}
