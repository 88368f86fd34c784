//! Closed-form normal modes and squeezing ratios of the bosonized Dicke model.
//!
//! After the large-N Holstein–Primakoff step the model is two coupled
//! oscillators, ½(ω²x² + p_x² + ω₀²y² + p_y² + 4g√(ωω₀)xy). Rotating by the
//! mixing angle γ decouples it into modes ε₋ ≤ ε₊. The squeezing ratio of a
//! quadrature is its variance over min(ω, ω₀)/2, the smaller uncoupled
//! ground-state momentum variance.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{critical_coupling, CriticalCoupling, DickeParams, PhaseLabel};

/// Which quadrature a variance or ratio refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum QuadratureId {
    PMinus,
    Px,
    Py,
    /// Two-mode quadrature including defect spins.
    Pd,
    /// Momentum-k two-mode quadrature of the Dicke-Ising model.
    PMinusK,
    /// Finite-N spin quadrature i(S₊ − S₋)/√N.
    SpinY,
    /// Finite-N two-mode quadrature built from exact spin operators.
    PTildeMinus,
}

impl QuadratureId {
    pub fn as_str(self) -> &'static str {
        match self {
            QuadratureId::PMinus => "p_minus",
            QuadratureId::Px => "p_x",
            QuadratureId::Py => "p_y",
            QuadratureId::Pd => "p_d",
            QuadratureId::PMinusK => "p_minus_k",
            QuadratureId::SpinY => "s_tilde_y",
            QuadratureId::PTildeMinus => "p_tilde_minus",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SqueezingReport {
    pub xi: f64,
    pub variance: f64,
    pub reference_variance: f64,
    pub quadrature: QuadratureId,
    pub temperature: f64,
}

impl SqueezingReport {
    pub fn new(
        variance: f64,
        reference_variance: f64,
        quadrature: QuadratureId,
        temperature: f64,
    ) -> Self {
        SqueezingReport {
            xi: variance / reference_variance,
            variance,
            reference_variance,
            quadrature,
            temperature,
        }
    }

    pub fn is_squeezed(&self) -> bool {
        self.xi < 1.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NormalModeData {
    pub eps_minus: f64,
    pub eps_plus: f64,
    /// Mixing angle in [0, π/2].
    pub gamma: f64,
    pub phase: PhaseLabel,
    pub g_renormalized: f64,
    /// Effective boson frequency ω̃ = √(ω(ω+4D)); equals ω when D = 0.
    pub omega_eff: f64,
}

impl NormalModeData {
    /// Ground-state Δp±² = ε±/2.
    pub fn momentum_variances(&self) -> (f64, f64) {
        (self.eps_minus / 2.0, self.eps_plus / 2.0)
    }

    /// Ground-state Δq±² = 1/(2ε±).
    pub fn position_variances(&self) -> (f64, f64) {
        (0.5 / self.eps_minus, 0.5 / self.eps_plus)
    }
}

/// Two coupled oscillators ½(ω_b²x² + p_x² + ω_s²y² + p_y² + 4c√(ω_bω_s)xy).
#[derive(Debug, Clone, Copy)]
pub(crate) struct CoupledOscillators {
    pub boson: f64,
    pub spin: f64,
    pub coupling: f64,
}

pub(crate) struct ModeSolution {
    pub eps_minus_sq: f64,
    pub eps_plus_sq: f64,
    pub gamma: f64,
}

impl CoupledOscillators {
    pub fn solve(self) -> ModeSolution {
        let (wb, ws, c) = (self.boson, self.spin, self.coupling);
        let tr = wb * wb + ws * ws;
        let detune = ws * ws - wb * wb;
        let disc = (detune * detune + 16.0 * c * c * wb * ws).sqrt();
        let eps_plus_sq = 0.5 * (tr + disc);
        // Factored determinant: exact zero when 2c == √(ω_b ω_s) to the last bit.
        let s = (wb * ws).sqrt();
        let det = wb * ws * (s - 2.0 * c) * (s + 2.0 * c);
        ModeSolution {
            eps_minus_sq: det / eps_plus_sq,
            eps_plus_sq,
            gamma: self.mixing_angle(),
        }
    }

    /// γ = ½·atan2(4c√(ω_bω_s), ω_s² − ω_b²), which lies in [0, π/2] and
    /// connects the "−" mode to the lower bare oscillator as c → 0.
    pub fn mixing_angle(self) -> f64 {
        let (wb, ws, c) = (self.boson, self.spin, self.coupling);
        0.5 * (4.0 * c * (wb * ws).sqrt()).atan2(ws * ws - wb * wb)
    }
}

/// Effective boson frequency and coupling absorbing the A² term.
fn a2_renormalized(p: &DickeParams) -> (f64, f64) {
    if p.a2_coeff == 0.0 {
        return (p.omega, p.g);
    }
    let stiff = 1.0 + 4.0 * p.a2_coeff / p.omega;
    ((p.omega * (p.omega + 4.0 * p.a2_coeff)).sqrt(), p.g / stiff.powf(0.25))
}

pub fn normal_modes(p: &DickeParams) -> Result<NormalModeData> {
    let (omega_eff, g_eff) = a2_renormalized(p);
    let sol = CoupledOscillators {
        boson: omega_eff,
        spin: p.omega0,
        coupling: g_eff,
    }
    .solve();
    if sol.eps_minus_sq < 0.0 {
        return Err(Error::SuperradiantInput {
            eps_minus_sq: sol.eps_minus_sq,
        });
    }
    let phase = match p.phase() {
        PhaseLabel::Superradiant => PhaseLabel::Normal,
        other => other,
    };
    Ok(NormalModeData {
        eps_minus: sol.eps_minus_sq.sqrt(),
        eps_plus: sol.eps_plus_sq.sqrt(),
        gamma: sol.gamma,
        phase,
        g_renormalized: p.g,
        omega_eff,
    })
}

/// Excitations about either displaced ground state for g > g_c (D = 0).
pub fn superradiant_modes(p: &DickeParams) -> Result<NormalModeData> {
    if p.a2_coeff != 0.0 {
        return Err(Error::Unsupported(
            "superradiant modes with an A² term".into(),
        ));
    }
    let g_c = (p.omega * p.omega0).sqrt() / 2.0;
    if p.g <= g_c {
        return Err(Error::NotSuperradiant { g: p.g, g_c });
    }
    let (w, w0) = (p.omega, p.omega0);
    let ratio = (p.g / g_c).powi(4);
    let spin_sq = ratio * w0 * w0;
    let tr = w * w + spin_sq;
    let off = w * w0;
    let disc = ((spin_sq - w * w).powi(2) + 4.0 * off * off).sqrt();
    let eps_plus_sq = 0.5 * (tr + disc);
    let eps_minus_sq = off * off * (ratio - 1.0) / eps_plus_sq;
    Ok(NormalModeData {
        eps_minus: eps_minus_sq.sqrt(),
        eps_plus: eps_plus_sq.sqrt(),
        gamma: 0.5 * (2.0 * off).atan2(spin_sq - w * w),
        phase: PhaseLabel::Superradiant,
        g_renormalized: p.g,
        omega_eff: w,
    })
}

/// Modes for whichever phase `p` is in.
pub fn modes_for_phase(p: &DickeParams) -> Result<NormalModeData> {
    match p.phase() {
        PhaseLabel::Superradiant => superradiant_modes(p),
        _ => normal_modes(p),
    }
}

pub fn squeezing_ratio_ground(p: &DickeParams) -> Result<SqueezingReport> {
    let modes = modes_for_phase(p)?;
    let reference = p.min_frequency() / 2.0;
    Ok(SqueezingReport::new(
        modes.eps_minus / 2.0,
        reference,
        QuadratureId::PMinus,
        0.0,
    ))
}

/// Ground-state (Δp_x², Δp_y²) of the bare quadratures in the normal phase.
pub fn single_mode_variances(p: &DickeParams) -> Result<(f64, f64)> {
    let m = normal_modes(p)?;
    let (c2, s2) = (m.gamma.cos().powi(2), m.gamma.sin().powi(2));
    let var_px = 0.5 * (m.eps_minus * c2 + m.eps_plus * s2);
    let var_py = 0.5 * (m.eps_minus * s2 + m.eps_plus * c2);
    Ok((var_px, var_py))
}

/// Weights of p₋ = w_b·i(a†−a) − w_s·i(b†−b).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureWeights {
    pub boson: f64,
    pub spin: f64,
}

pub fn two_mode_quadrature_coefficients(p: &DickeParams) -> Result<QuadratureWeights> {
    let m = normal_modes(p)?;
    Ok(QuadratureWeights {
        boson: (p.omega / 2.0).sqrt() * m.gamma.cos(),
        spin: (p.omega0 / 2.0).sqrt() * m.gamma.sin(),
    })
}

/// coth(x) for x > 0 as 1 + 2/(e^{2x} − 1).
pub(crate) fn coth(x: f64) -> f64 {
    1.0 + 2.0 / (2.0 * x).exp_m1()
}

/// Gibbs-state ratio ξ(T) = (ε₋/min(ω,ω₀))·coth(ε₋/2T) in the normal phase.
///
/// ε₋ = 0 at T > 0 yields an infinite variance rather than an error.
pub fn thermal_squeezing_ratio(p: &DickeParams, temperature: f64) -> Result<SqueezingReport> {
    if !(temperature >= 0.0) {
        return Err(Error::invalid("temperature", "must be >= 0"));
    }
    if p.phase() == PhaseLabel::Superradiant {
        return Err(Error::Unsupported(
            "thermal squeezing in the superradiant phase".into(),
        ));
    }
    let m = normal_modes(p)?;
    let reference = p.min_frequency() / 2.0;
    let variance = if temperature == 0.0 {
        m.eps_minus / 2.0
    } else if m.eps_minus == 0.0 {
        f64::INFINITY
    } else {
        0.5 * m.eps_minus * coth(m.eps_minus / (2.0 * temperature))
    };
    Ok(SqueezingReport::new(
        variance,
        reference,
        QuadratureId::PMinus,
        temperature,
    ))
}

/// k_B T_c = ω₀ / (2 atanh(ωω₀/4g²)) of the all-sector thermal transition.
pub fn classical_critical_temperature(p: &DickeParams) -> Result<f64> {
    if p.a2_coeff != 0.0 {
        return Err(Error::Unsupported("thermal transition with an A² term".into()));
    }
    let g_c = match critical_coupling(p) {
        CriticalCoupling::At(g_c) => g_c,
        CriticalCoupling::NoTransition => unreachable!("D = 0 always has a transition"),
    };
    let arg = p.omega * p.omega0 / (4.0 * p.g * p.g);
    if p.g <= g_c || arg >= 1.0 {
        return Err(Error::NoThermalTransition { g: p.g, g_c });
    }
    Ok(p.omega0 / (2.0 * arg.atanh()))
}

/// Kitagawa–Ueda parameter 4Δ(S⊥)²/N, which reduces to 2Δp_y²/ω₀.
pub fn spin_squeezing_parameter(var_py: f64, omega0: f64) -> f64 {
    2.0 * var_py / omega0
}
