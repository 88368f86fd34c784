use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::ed::{CouplingConvention, SolverSettings};
use crate::error::{Error, Result};
use crate::model::LadderParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExperimentId {
    Fig2,
    Fig3,
    Fig4,
    Fig5,
    Fig6,
    Fig7,
    Sweep,
}

impl ExperimentId {
    pub const ALL: [ExperimentId; 7] = [
        ExperimentId::Fig2,
        ExperimentId::Fig3,
        ExperimentId::Fig4,
        ExperimentId::Fig5,
        ExperimentId::Fig6,
        ExperimentId::Fig7,
        ExperimentId::Sweep,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ExperimentId::Fig2 => "fig2",
            ExperimentId::Fig3 => "fig3",
            ExperimentId::Fig4 => "fig4",
            ExperimentId::Fig5 => "fig5",
            ExperimentId::Fig6 => "fig6",
            ExperimentId::Fig7 => "fig7",
            ExperimentId::Sweep => "sweep",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|e| e.as_str() == s)
            .ok_or_else(|| Error::Config(format!("unknown experiment '{s}'")))
    }

    pub fn uses_ed(self) -> bool {
        matches!(self, ExperimentId::Fig3 | ExperimentId::Fig6 | ExperimentId::Fig7)
    }
}

/// Either an explicit list of values or `{"linspace": [min, max, count]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Grid {
    Values(Vec<f64>),
    Linspace { linspace: (f64, f64, usize) },
}

impl Grid {
    pub fn linspace(min: f64, max: f64, count: usize) -> Self {
        Grid::Linspace {
            linspace: (min, max, count),
        }
    }

    pub fn values(&self) -> Vec<f64> {
        match *self {
            Grid::Values(ref v) => v.clone(),
            Grid::Linspace {
                linspace: (lo, hi, n),
            } => match n {
                0 => Vec::new(),
                1 => vec![lo],
                _ => (0..n)
                    .map(|i| {
                        if i == n - 1 {
                            hi
                        } else {
                            lo + (hi - lo) * i as f64 / (n - 1) as f64
                        }
                    })
                    .collect(),
            },
        }
    }
}

/// Model parameters shared by all experiments. Missing fields take the
/// experiment's default; `omega0` defaults to resonance.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega0: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a2_coeff: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_spins: Option<usize>,
}

impl ModelConfig {
    pub fn omega(&self) -> f64 {
        self.omega.unwrap_or(1.0)
    }

    pub fn omega0(&self) -> f64 {
        self.omega0.unwrap_or_else(|| self.omega())
    }

    pub fn g_or(&self, default: f64) -> f64 {
        self.g.unwrap_or(default)
    }

    pub fn require_resonance(&self) -> Result<()> {
        if self.omega0() != self.omega() {
            return Err(Error::Config(format!(
                "experiment requires resonance, got omega={} omega0={}",
                self.omega(),
                self.omega0()
            )));
        }
        Ok(())
    }
}

fn default_n_max() -> Vec<usize> {
    vec![40, 50]
}

fn default_true() -> bool {
    true
}

fn default_convergence_tol() -> f64 {
    1e-3
}

fn default_oracle_tol() -> f64 {
    1e-5
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdConfig {
    #[serde(default = "default_n_max")]
    pub n_max: Vec<usize>,
    #[serde(default)]
    pub solver: SolverSettings,
    #[serde(default)]
    pub convention: CouplingConvention,
    /// Emit per-point deltas between consecutive truncations.
    #[serde(default = "default_true")]
    pub convergence_report: bool,
    #[serde(default = "default_convergence_tol")]
    pub convergence_tol: f64,
    /// Allowed |ED − analytic| for oracle rows.
    #[serde(default = "default_oracle_tol")]
    pub oracle_tol: f64,
}

impl Default for EdConfig {
    fn default() -> Self {
        EdConfig {
            n_max: default_n_max(),
            solver: SolverSettings::default(),
            convention: CouplingConvention::default(),
            convergence_report: true,
            convergence_tol: default_convergence_tol(),
            oracle_tol: default_oracle_tol(),
        }
    }
}

/// A defect parameter: fixed, or drawn uniformly from `[lo, hi)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Draw {
    Fixed(f64),
    Uniform { uniform: (f64, f64) },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DisorderConfig {
    pub m: usize,
    pub omega_prime: Draw,
    pub g_prime: Draw,
}

impl Default for DisorderConfig {
    fn default() -> Self {
        DisorderConfig {
            m: 1,
            omega_prime: Draw::Fixed(2.1),
            g_prime: Draw::Fixed(2.0),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepQuantity {
    GroundXi,
    ThermalXi,
    DisorderXi,
    IsingCritical,
    LadderDispersion,
    EdGroundXi,
    Hopfield,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepOptions {
    pub quantity: SweepQuantity,
    /// Zero out thermal rows that sit inside the superradiant phase.
    #[serde(default)]
    pub mask_tc: bool,
    /// Use the sum-rule A² coefficient D = g²/ω₀ at every point.
    #[serde(default)]
    pub trk_a2: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ladder: Option<LadderParams>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub experiment: ExperimentId,
    #[serde(default)]
    pub grids: BTreeMap<String, Grid>,
    #[serde(default)]
    pub model: ModelConfig,
    #[serde(default)]
    pub ed: EdConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub disorder: Option<DisorderConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepOptions>,
    #[serde(default)]
    pub rng_seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
}

impl SweepConfig {
    pub fn new(experiment: ExperimentId) -> Self {
        SweepConfig {
            experiment,
            grids: BTreeMap::new(),
            model: ModelConfig::default(),
            ed: EdConfig::default(),
            disorder: None,
            sweep: None,
            rng_seed: 0,
            output: None,
        }
    }

    pub fn with_grid(mut self, name: &str, grid: Grid) -> Self {
        self.grids.insert(name.to_string(), grid);
        self
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: SweepConfig =
            serde_json::from_str(text).map_err(|e| Error::Config(format!("config: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// Canonical JSON, the input to the config hash.
    pub fn canonical_json(&self) -> String {
        serde_json::to_string(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<()> {
        for (name, grid) in &self.grids {
            let values = grid.values();
            if values.is_empty() {
                return Err(Error::Config(format!("grid '{name}' is empty")));
            }
            if values.iter().any(|v| !v.is_finite()) {
                return Err(Error::Config(format!("grid '{name}' has a non-finite value")));
            }
        }
        if self.experiment.uses_ed() || self.sweep_is_ed() {
            if self.ed.n_max.is_empty() {
                return Err(Error::Config("ed.n_max must not be empty".into()));
            }
            if self.ed.convergence_report && self.ed.n_max.len() < 2 {
                return Err(Error::Config(
                    "convergence report needs at least two n_max entries".into(),
                ));
            }
            if self.ed.n_max.iter().any(|&n| n < 1) {
                return Err(Error::Config("n_max entries must be >= 1".into()));
            }
        }
        if self.experiment == ExperimentId::Sweep && self.sweep.is_none() {
            return Err(Error::Config("sweep experiment needs a 'sweep' block".into()));
        }
        if let Some(d) = &self.disorder {
            for draw in [d.omega_prime, d.g_prime] {
                if let Draw::Uniform { uniform: (lo, hi) } = draw {
                    if !(lo <= hi) || !lo.is_finite() || !hi.is_finite() {
                        return Err(Error::Config("uniform range needs finite lo <= hi".into()));
                    }
                }
            }
        }
        Ok(())
    }

    fn sweep_is_ed(&self) -> bool {
        matches!(
            self.sweep.as_ref().map(|s| s.quantity),
            Some(SweepQuantity::EdGroundXi | SweepQuantity::Hopfield)
        )
    }

    /// Grid values for `name`, or the experiment default.
    pub fn grid_or(&self, name: &str, default: Grid) -> Vec<f64> {
        self.grids.get(name).unwrap_or(&default).values()
    }

    pub fn check_grid_names(&self, allowed: &[&str]) -> Result<()> {
        for name in self.grids.keys() {
            if !allowed.contains(&name.as_str()) {
                return Err(Error::Config(format!(
                    "grid '{name}' not recognised by {} (allowed: {})",
                    self.experiment.as_str(),
                    allowed.join(", ")
                )));
            }
        }
        Ok(())
    }
}
