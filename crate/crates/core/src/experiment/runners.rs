use std::time::{Duration, Instant};

use rayon::prelude::*;

use super::config::{DisorderConfig, Draw, ExperimentId, Grid, SweepConfig, SweepOptions, SweepQuantity};
use super::output::{Method, Row, RunMetadata, Status, SweepResult};
use super::rng::SplitMix64;
use crate::bogoliubov::{classical_critical_temperature, normal_modes, squeezing_ratio_ground, thermal_squeezing_ratio};
use crate::disorder::{disorder_xi_perturbative, Defect, DisorderEnsemble};
use crate::ed::{
    build_basis, build_dicke_hamiltonian_with, build_dicke_ising_hamiltonian_with,
    build_disordered_hamiltonian_with, build_hopfield_hamiltonian, ground_state,
    QuadratureOperator, SparseHamiltonian,
};
use crate::error::{Error, Result};
use crate::ising::{critical_coupling_k, Dispersion, IsingParams};
use crate::model::{magnon_dispersion, map_ladder_to_dicke, DickeParams, PhaseLabel};

/// Worker pool that hands results back in input order.
pub struct Executor {
    pool: rayon::ThreadPool,
}

impl Executor {
    /// `jobs = 0` lets rayon pick the thread count.
    pub fn new(jobs: usize) -> Result<Self> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
        Ok(Executor { pool })
    }

    pub fn sequential() -> Self {
        Self::new(1).expect("single-thread pool")
    }

    pub fn threads(&self) -> usize {
        self.pool.current_num_threads()
    }

    pub fn map<T, R, F>(&self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        self.pool.install(|| items.par_iter().map(f).collect())
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RunOptions {
    pub jobs: usize,
    pub strict: bool,
}

/// Validate, pick the runner for `cfg.experiment` and execute it.
/// Strict mode always runs on a single worker.
pub fn run(cfg: &SweepConfig, opts: &RunOptions) -> Result<SweepResult> {
    cfg.validate()?;
    let exec = Executor::new(if opts.strict { 1 } else { opts.jobs })?;
    match cfg.experiment {
        ExperimentId::Fig2 => run_fig2(cfg, &exec),
        ExperimentId::Fig3 => run_fig3(cfg, &exec),
        ExperimentId::Fig4 => run_fig4(cfg, &exec),
        ExperimentId::Fig5 => run_fig5(cfg, &exec),
        ExperimentId::Fig6 => run_fig6(cfg, &exec),
        ExperimentId::Fig7 => run_fig7(cfg, &exec),
        ExperimentId::Sweep => run_sweep(cfg, &exec),
    }
}

fn metadata(cfg: &SweepConfig) -> RunMetadata {
    RunMetadata::new(cfg.experiment.as_str(), &cfg.canonical_json(), cfg.rng_seed)
}

fn count(name: &str, v: f64) -> Result<usize> {
    if v >= 0.0 && v.fract() == 0.0 && v <= u32::MAX as f64 {
        Ok(v as usize)
    } else {
        Err(Error::Config(format!("grid '{name}' needs non-negative integers, got {v}")))
    }
}

fn nan_row(coords: Vec<f64>, series: &str, status: Status) -> Row {
    Row::analytic(coords, series, f64::NAN).with_status(status)
}

/// Cartesian product, last axis fastest.
fn cartesian(axes: &[Vec<f64>]) -> Vec<Vec<f64>> {
    axes.iter().fold(vec![Vec::new()], |acc, axis| {
        acc.iter()
            .flat_map(|prefix| {
                axis.iter().map(move |&v| {
                    let mut p = prefix.clone();
                    p.push(v);
                    p
                })
            })
            .collect()
    })
}

/// Ground-state solve shared by all ED series at one point.
struct EdProblem {
    hamiltonian: SparseHamiltonian,
    /// (series, operator, reference variance the result is divided by).
    observables: Vec<(String, QuadratureOperator, f64)>,
}

fn solve_ed(
    coords: &[f64],
    n_max: usize,
    problem: Result<EdProblem>,
    cfg: &SweepConfig,
) -> Result<Vec<Row>> {
    let start = Instant::now();
    let problem = problem?;
    let outcome = ground_state(&problem.hamiltonian, &cfg.ed.solver);
    let wall_time = start.elapsed();
    let mut rows = Vec::with_capacity(problem.observables.len());
    for (series, op, reference) in &problem.observables {
        let mut row = Row {
            coords: coords.to_vec(),
            series: series.clone(),
            method: Method::Ed,
            n_max: Some(n_max),
            value: f64::NAN,
            residual: None,
            residual_bound: None,
            status: Status::SolverFailed,
            wall_time,
        };
        match &outcome {
            Ok(gs) => {
                row.value = op.variance_in(&gs.vector)? / reference;
                row.residual = Some(gs.residual);
                row.residual_bound = Some(gs.tolerance);
                row.status = if gs.residual <= gs.tolerance {
                    Status::Ok
                } else {
                    Status::ResidualExceeded
                };
            }
            Err(Error::NoConvergence { residual, .. }) => row.residual = Some(*residual),
            Err(_) => {}
        }
        rows.push(row);
    }
    if let Err(e) = outcome {
        if !matches!(e, Error::NoConvergence { .. }) {
            return Err(e);
        }
    }
    Ok(rows)
}

/// Run one ED problem per (point, n_max) on the pool, then regroup by point
/// and append convergence deltas between consecutive truncations.
fn ed_sweep<F>(cfg: &SweepConfig, exec: &Executor, points: &[Vec<f64>], build: F) -> Result<Vec<Vec<Row>>>
where
    F: Fn(&[f64], usize) -> Result<EdProblem> + Sync + Send,
{
    let n_max = &cfg.ed.n_max;
    let jobs: Vec<(usize, usize)> = (0..points.len())
        .flat_map(|i| n_max.iter().map(move |&n| (i, n)))
        .collect();
    let results = exec.map(&jobs, |&(i, n)| solve_ed(&points[i], n, build(&points[i], n), cfg));
    let mut grouped: Vec<Vec<Row>> = vec![Vec::new(); points.len()];
    for ((i, _), rows) in jobs.iter().zip(results) {
        grouped[*i].extend(rows?);
    }
    if cfg.ed.convergence_report {
        for rows in &mut grouped {
            let deltas = convergence_rows(rows, n_max, cfg.ed.convergence_tol);
            rows.extend(deltas);
        }
    }
    Ok(grouped)
}

fn convergence_rows(rows: &[Row], n_max: &[usize], tol: f64) -> Vec<Row> {
    let mut out = Vec::new();
    for pair in n_max.windows(2) {
        for hi in rows.iter().filter(|r| r.method == Method::Ed && r.n_max == Some(pair[1])) {
            let Some(lo) = rows
                .iter()
                .find(|r| r.method == Method::Ed && r.n_max == Some(pair[0]) && r.series == hi.series)
            else {
                continue;
            };
            let delta = (hi.value - lo.value).abs();
            out.push(Row {
                coords: hi.coords.clone(),
                series: hi.series.clone(),
                method: Method::EdDelta,
                n_max: Some(pair[1]),
                value: delta,
                residual: None,
                residual_bound: None,
                status: if delta <= tol { Status::Ok } else { Status::NotConverged },
                wall_time: Duration::ZERO,
            });
        }
    }
    out
}

fn finish(cfg: &SweepConfig, coord_names: &[&str], rows: Vec<Row>, notes: Vec<(String, String)>) -> SweepResult {
    let mut meta = metadata(cfg);
    meta.notes = notes;
    SweepResult {
        coord_names: coord_names.iter().map(|s| s.to_string()).collect(),
        rows,
        metadata: meta,
    }
}

fn ed_notes(cfg: &SweepConfig) -> Vec<(String, String)> {
    vec![(
        "coupling_convention".into(),
        serde_json::to_value(cfg.ed.convention)
            .ok()
            .and_then(|v| v.as_str().map(str::to_string))
            .unwrap_or_default(),
    )]
}

/// ξ(g/ω) at resonance without and with the sum-rule A² term.
pub fn run_fig2(cfg: &SweepConfig, exec: &Executor) -> Result<SweepResult> {
    cfg.check_grid_names(&["g_over_omega"])?;
    cfg.model.require_resonance()?;
    let omega = cfg.model.omega();
    let xs = cfg.grid_or("g_over_omega", Grid::linspace(0.0, 1.0, 101));
    let rows = exec.map(&xs, |&x| -> Result<Vec<Row>> {
        let p = DickeParams::new(omega, omega, x * omega, 1)?;
        let bare = squeezing_ratio_ground(&p)?.xi;
        let trk = squeezing_ratio_ground(&p.with_trk_a2()?)?.xi;
        Ok(vec![
            Row::analytic(vec![x], "xi_d0", bare),
            Row::analytic(vec![x], "xi_trk", trk),
        ])
    });
    let rows = rows.into_iter().collect::<Result<Vec<_>>>()?.concat();
    Ok(finish(cfg, &["g_over_omega"], rows, Vec::new()))
}

/// Finite-N variances of p̃₋ and S̃_y at the thermodynamic critical point.
pub fn run_fig3(cfg: &SweepConfig, exec: &Executor) -> Result<SweepResult> {
    cfg.check_grid_names(&["n_spins"])?;
    cfg.model.require_resonance()?;
    let omega = cfg.model.omega();
    let g = cfg.model.g_or(0.5 * omega);
    let ns = cfg.grid_or("n_spins", Grid::Values((1..=7).map(f64::from).collect()));
    for &n in &ns {
        count("n_spins", n)?;
    }
    let points: Vec<Vec<f64>> = ns.iter().map(|&n| vec![n]).collect();
    let conv = cfg.ed.convention;
    let grouped = ed_sweep(cfg, exec, &points, |pt, n_max| {
        let p = DickeParams::new(omega, omega, g, pt[0] as usize)?;
        let basis = build_basis(p.n_spins, n_max)?;
        Ok(EdProblem {
            hamiltonian: build_dicke_hamiltonian_with(&p, &basis, conv)?,
            observables: vec![
                ("var_p_tilde_minus".into(), QuadratureOperator::p_tilde_minus(&basis)?, 1.0),
                ("var_spin_y_tilde".into(), QuadratureOperator::spin_y_tilde(&basis)?, 1.0),
            ],
        })
    })?;
    let mut notes = ed_notes(cfg);
    notes.push((
        "large_n_limits".into(),
        format!("var_p_tilde_minus=0 var_spin_y_tilde={}", std::f64::consts::FRAC_1_SQRT_2),
    ));
    Ok(finish(cfg, &["n_spins"], grouped.concat(), notes))
}

fn thermal_row(p: &DickeParams, coords: Vec<f64>, temperature: f64) -> Result<Row> {
    if p.phase() == PhaseLabel::Superradiant {
        return Ok(nan_row(coords, "xi", Status::NotApplicable));
    }
    let r = thermal_squeezing_ratio(p, temperature)?;
    Ok(Row::analytic(coords, "xi", r.xi))
}

/// Thermal ξ over (T, g_c − g) at fixed ω₀.
pub fn run_fig4(cfg: &SweepConfig, exec: &Executor) -> Result<SweepResult> {
    cfg.check_grid_names(&["temperature", "g_c_minus_g"])?;
    let (omega, omega0) = (cfg.model.omega(), cfg.model.omega0());
    let g_c = (omega * omega0).sqrt() / 2.0;
    let ts = cfg.grid_or("temperature", Grid::linspace(0.0, 0.6, 61));
    let xs = cfg.grid_or("g_c_minus_g", Grid::linspace(0.0, g_c, 51));
    if let Some(&bad) = xs.iter().find(|&&x| x > g_c || x < 0.0) {
        return Err(Error::Config(format!("g_c_minus_g={bad} outside [0, g_c={g_c}]")));
    }
    let points = cartesian(&[ts, xs]);
    let rows = exec.map(&points, |pt| -> Result<Row> {
        let g = if pt[1] == 0.0 { g_c } else { (g_c - pt[1]).max(0.0) };
        let p = DickeParams::new(omega, omega0, g, 1)?;
        thermal_row(&p, pt.clone(), pt[0])
    });
    let rows = rows.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(finish(cfg, &["temperature", "g_c_minus_g"], rows, Vec::new()))
}

/// Thermal ξ over (T, ω₀/ω) at fixed g.
pub fn run_fig5(cfg: &SweepConfig, exec: &Executor) -> Result<SweepResult> {
    cfg.check_grid_names(&["temperature", "omega0_over_omega"])?;
    let omega = cfg.model.omega();
    let g = cfg.model.g_or(0.1 * omega);
    let ts = cfg.grid_or("temperature", Grid::linspace(0.005, 0.05, 46));
    let ws = cfg.grid_or("omega0_over_omega", Grid::linspace(0.04, 0.2, 161));
    let points = cartesian(&[ts, ws]);
    let rows = exec.map(&points, |pt| -> Result<Row> {
        let p = DickeParams::new(omega, pt[1] * omega, g, 1)?;
        thermal_row(&p, pt.clone(), pt[0])
    });
    let rows = rows.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(finish(cfg, &["temperature", "omega0_over_omega"], rows, Vec::new()))
}

fn draw(rng: &SplitMix64, counter: u64, d: Draw) -> f64 {
    match d {
        Draw::Fixed(v) => v,
        Draw::Uniform { uniform: (lo, hi) } => rng.uniform_at(counter, lo, hi),
    }
}

/// Defect list from the disorder block. Defect `j` uses counters `2j` (ω′)
/// and `2j + 1` (g′) of the seeded stream, so the draws do not depend on
/// the grid or on the number of workers.
pub fn generate_defects(d: &DisorderConfig, seed: u64) -> Vec<Defect> {
    let rng = SplitMix64::new(seed);
    (0..d.m as u64)
        .map(|j| Defect {
            omega_prime: draw(&rng, 2 * j, d.omega_prime),
            g_prime: draw(&rng, 2 * j + 1, d.g_prime),
        })
        .collect()
}

/// ED ξ of p_d against the disordered-spin fraction, plus the perturbative formula.
pub fn run_fig6(cfg: &SweepConfig, exec: &Executor) -> Result<SweepResult> {
    cfg.check_grid_names(&["n_clean"])?;
    cfg.model.require_resonance()?;
    let omega = cfg.model.omega();
    let g = cfg.model.g_or(0.5 * omega);
    let dcfg = cfg.disorder.unwrap_or_default();
    let defects = generate_defects(&dcfg, cfg.rng_seed);
    let ns = cfg.grid_or("n_clean", Grid::Values((1..=6).rev().map(f64::from).collect()));
    let mut points = Vec::with_capacity(ns.len());
    for &n in &ns {
        let d = DisorderEnsemble::new(count("n_clean", n)?, defects.clone())?;
        points.push(vec![n, d.fraction()]);
    }
    let conv = cfg.ed.convention;
    let ensemble = |pt: &[f64]| DisorderEnsemble::new(pt[0] as usize, defects.clone());
    let grouped = ed_sweep(cfg, exec, &points, |pt, n_max| {
        let d = ensemble(pt)?;
        let p = DickeParams::new(omega, omega, g, d.n_clean)?;
        let basis = build_basis(d.total_spins(), n_max)?;
        Ok(EdProblem {
            hamiltonian: build_disordered_hamiltonian_with(&p, &d, &basis, conv)?,
            observables: vec![(
                "xi_p_d".into(),
                QuadratureOperator::p_d(&p, &d, &basis)?,
                p.min_frequency() / 2.0,
            )],
        })
    })?;
    let mut rows = Vec::new();
    for (pt, ed_rows) in points.iter().zip(grouped) {
        rows.extend(ed_rows);
        let d = ensemble(pt)?;
        let p = DickeParams::new(omega, omega, g, d.n_clean)?;
        rows.push(match disorder_xi_perturbative(&p, &d) {
            Ok(rep) => {
                let status = if rep.all_valid() { Status::Ok } else { Status::NonPerturbative };
                Row::analytic(pt.clone(), "xi_p_d", rep.xi).with_status(status)
            }
            Err(Error::PerturbationInvalid { .. }) => nan_row(pt.clone(), "xi_p_d", Status::NotApplicable),
            Err(e) => return Err(e),
        });
    }
    let mut notes = ed_notes(cfg);
    let listed: Vec<String> = defects
        .iter()
        .map(|df| format!("({},{})", df.omega_prime, df.g_prime))
        .collect();
    notes.push(("defects_omega_prime_g_prime".into(), listed.join(" ")));
    Ok(finish(cfg, &["n_clean", "fraction"], rows, notes))
}

/// ED ξ of the k = 0 quadrature against the Ising ratio η.
pub fn run_fig7(cfg: &SweepConfig, exec: &Executor) -> Result<SweepResult> {
    cfg.check_grid_names(&["eta"])?;
    cfg.model.require_resonance()?;
    let omega = cfg.model.omega();
    let g = cfg.model.g_or(0.5 * omega);
    let n = cfg.model.n_spins.unwrap_or(6);
    let etas = cfg.grid_or("eta", Grid::linspace(0.0, 1.5, 16));
    let points: Vec<Vec<f64>> = etas.iter().map(|&e| vec![e]).collect();
    let conv = cfg.ed.convention;
    let grouped = ed_sweep(cfg, exec, &points, |pt, n_max| {
        let p = DickeParams::new(omega, omega, g, n)?;
        let ip = IsingParams::new(pt[0], omega, Dispersion::Flat { omega }, g, n)?;
        let basis = build_basis(n, n_max)?;
        Ok(EdProblem {
            hamiltonian: build_dicke_ising_hamiltonian_with(&p, pt[0], &basis, conv)?,
            observables: vec![(
                "xi_p_minus_k0".into(),
                QuadratureOperator::p_minus_k0(&ip, &basis)?,
                p.min_frequency() / 2.0,
            )],
        })
    })?;
    let mut notes = ed_notes(cfg);
    notes.push(("n_spins".into(), n.to_string()));
    Ok(finish(cfg, &["eta"], grouped.concat(), notes))
}

/// Axis lookup for one sweep point.
struct Point<'a> {
    names: &'a [String],
    values: &'a [f64],
}

impl Point<'_> {
    fn get(&self, name: &str, default: f64) -> f64 {
        self.names
            .iter()
            .position(|n| n == name)
            .map_or(default, |i| self.values[i])
    }

    fn count(&self, name: &str, default: usize) -> Result<usize> {
        count(name, self.get(name, default as f64))
    }
}

fn allowed_axes(q: SweepQuantity) -> &'static [&'static str] {
    match q {
        SweepQuantity::GroundXi => &["omega", "omega0", "g", "a2_coeff"],
        SweepQuantity::ThermalXi => &["omega", "omega0", "g", "a2_coeff", "temperature"],
        SweepQuantity::DisorderXi => &["omega", "omega0", "g", "n_clean", "m", "omega_prime", "g_prime"],
        SweepQuantity::IsingCritical => &["omega", "omega0", "g", "eta", "k"],
        SweepQuantity::LadderDispersion => &["k"],
        SweepQuantity::EdGroundXi => &["omega", "omega0", "g", "n_spins"],
        SweepQuantity::Hopfield => &["omega", "omega0", "g", "a2_coeff"],
    }
}

/// Cartesian grid over the named axes (alphabetical, last fastest),
/// dispatched to one analytic or ED quantity.
pub fn run_sweep(cfg: &SweepConfig, exec: &Executor) -> Result<SweepResult> {
    let opts = cfg
        .sweep
        .as_ref()
        .ok_or_else(|| Error::Config("sweep experiment needs a 'sweep' block".into()))?;
    cfg.check_grid_names(allowed_axes(opts.quantity))?;
    let names: Vec<String> = cfg.grids.keys().cloned().collect();
    let axes: Vec<Vec<f64>> = cfg.grids.values().map(Grid::values).collect();
    let points = cartesian(&axes);
    let mut notes = Vec::new();

    let rows: Vec<Row> = match opts.quantity {
        SweepQuantity::EdGroundXi => ed_ground_sweep(cfg, exec, &names, &points)?,
        SweepQuantity::Hopfield => hopfield_sweep(cfg, exec, &names, &points)?,
        q => {
            if q == SweepQuantity::LadderDispersion {
                let ladder = opts
                    .ladder
                    .ok_or_else(|| Error::Config("ladder_dispersion needs sweep.ladder".into()))?;
                let spec = map_ladder_to_dicke(&ladder)?;
                for flag in &spec.validity_flags {
                    notes.push(("ladder_flag".into(), format!("{flag:?}")));
                }
            }
            let results = exec.map(&points, |values| {
                analytic_point(cfg, opts, &Point { names: &names, values })
            });
            results.into_iter().collect::<Result<Vec<_>>>()?.concat()
        }
    };
    let coord_names: Vec<&str> = names.iter().map(String::as_str).collect();
    Ok(finish(cfg, &coord_names, rows, notes))
}

fn base_params(cfg: &SweepConfig, pt: &Point, n_spins: usize) -> Result<DickeParams> {
    let omega = pt.get("omega", cfg.model.omega());
    let omega0 = pt.get("omega0", cfg.model.omega0.unwrap_or(omega));
    let g = pt.get("g", cfg.model.g_or(0.0));
    DickeParams::new(omega, omega0, g, n_spins)
}

fn with_a2(cfg: &SweepConfig, opts: &SweepOptions, pt: &Point, p: DickeParams) -> Result<DickeParams> {
    if opts.trk_a2 {
        p.with_trk_a2()
    } else {
        p.with_a2(pt.get("a2_coeff", cfg.model.a2_coeff.unwrap_or(0.0)))
    }
}

fn analytic_point(cfg: &SweepConfig, opts: &SweepOptions, pt: &Point) -> Result<Vec<Row>> {
    let coords = pt.values.to_vec();
    match opts.quantity {
        SweepQuantity::GroundXi => {
            let p = with_a2(cfg, opts, pt, base_params(cfg, pt, 1)?)?;
            Ok(vec![match squeezing_ratio_ground(&p) {
                Ok(r) => Row::analytic(coords, "xi", r.xi),
                Err(Error::Unsupported(_)) => nan_row(coords, "xi", Status::NotApplicable),
                Err(e) => return Err(e),
            }])
        }
        SweepQuantity::ThermalXi => {
            let p = with_a2(cfg, opts, pt, base_params(cfg, pt, 1)?)?;
            let t = pt.get("temperature", 0.0);
            if p.phase() == PhaseLabel::Superradiant && opts.mask_tc {
                let inside = classical_critical_temperature(&p).is_ok_and(|t_c| t < t_c);
                let row = if inside {
                    Row::analytic(coords, "xi", 0.0).with_status(Status::Masked)
                } else {
                    nan_row(coords, "xi", Status::NotApplicable)
                };
                return Ok(vec![row]);
            }
            Ok(vec![thermal_row(&p, coords, t)?])
        }
        SweepQuantity::DisorderXi => {
            let p = base_params(cfg, pt, 1)?;
            let dflt = cfg.disorder.unwrap_or_default();
            let fixed = |d: Draw, name: &str| match d {
                Draw::Fixed(v) => Ok(v),
                Draw::Uniform { .. } => Err(Error::Config(format!(
                    "disorder_xi sweeps need a fixed {name}; use an axis instead"
                ))),
            };
            let d = DisorderEnsemble::uniform(
                pt.count("n_clean", cfg.model.n_spins.unwrap_or(1))?,
                pt.count("m", dflt.m)?,
                pt.get("omega_prime", fixed(dflt.omega_prime, "omega_prime")?),
                pt.get("g_prime", fixed(dflt.g_prime, "g_prime")?),
            )?;
            Ok(vec![match disorder_xi_perturbative(&p, &d) {
                Ok(rep) => {
                    let status = if rep.all_valid() { Status::Ok } else { Status::NonPerturbative };
                    Row::analytic(coords, "xi", rep.xi).with_status(status)
                }
                Err(Error::PerturbationInvalid { .. }) => nan_row(coords, "xi", Status::NotApplicable),
                Err(e) => return Err(e),
            }])
        }
        SweepQuantity::IsingCritical => {
            let omega = pt.get("omega", cfg.model.omega());
            let omega0 = pt.get("omega0", cfg.model.omega0.unwrap_or(omega));
            let ip = IsingParams::new(
                pt.get("eta", 0.0),
                omega0,
                Dispersion::Flat { omega },
                pt.get("g", cfg.model.g_or(0.0)),
                cfg.model.n_spins.unwrap_or(1),
            )?;
            let c = critical_coupling_k(&ip, pt.get("k", 0.0))?;
            let status = if ip.outside_weak_regime() { Status::NonPerturbative } else { Status::Ok };
            Ok(vec![
                Row::analytic(coords.clone(), "g_c_exact_quadratic", c.exact_quadratic).with_status(status),
                Row::analytic(coords, "g_c_leading", c.leading).with_status(status),
            ])
        }
        SweepQuantity::LadderDispersion => {
            let l = opts.ladder.expect("checked by run_sweep");
            Ok(vec![Row::analytic(
                coords,
                "omega_k",
                magnon_dispersion(l.omega_r, l.j_r, pt.get("k", 0.0)),
            )])
        }
        SweepQuantity::EdGroundXi | SweepQuantity::Hopfield => unreachable!("dispatched to ED sweeps"),
    }
}

fn ed_ground_sweep(cfg: &SweepConfig, exec: &Executor, names: &[String], points: &[Vec<f64>]) -> Result<Vec<Row>> {
    let conv = cfg.ed.convention;
    let params = |values: &[f64]| -> Result<DickeParams> {
        let pt = Point { names, values };
        base_params(cfg, &pt, pt.count("n_spins", cfg.model.n_spins.unwrap_or(1))?)
    };
    let grouped = ed_sweep(cfg, exec, points, |values, n_max| {
        let p = params(values)?;
        let basis = build_basis(p.n_spins, n_max)?;
        Ok(EdProblem {
            hamiltonian: build_dicke_hamiltonian_with(&p, &basis, conv)?,
            observables: vec![(
                "xi_p_minus".into(),
                QuadratureOperator::p_minus(&p, &basis)?,
                p.min_frequency() / 2.0,
            )],
        })
    })?;
    let mut rows = Vec::new();
    for (values, ed_rows) in points.iter().zip(grouped) {
        let p = params(values)?;
        rows.push(match normal_modes(&p) {
            Ok(m) => Row::analytic(values.clone(), "xi_p_minus", m.eps_minus / p.min_frequency()),
            Err(Error::SuperradiantInput { .. }) => nan_row(values.clone(), "xi_p_minus", Status::NotApplicable),
            Err(e) => return Err(e),
        });
        rows.extend(ed_rows);
    }
    Ok(rows)
}

/// Two-boson ED of the quadratic model next to ε₋/2; disagreement beyond
/// `ed.oracle_tol` marks the ED row.
fn hopfield_sweep(cfg: &SweepConfig, exec: &Executor, names: &[String], points: &[Vec<f64>]) -> Result<Vec<Row>> {
    let params = |values: &[f64]| -> Result<DickeParams> {
        let pt = Point { names, values };
        base_params(cfg, &pt, 1)?.with_a2(pt.get("a2_coeff", cfg.model.a2_coeff.unwrap_or(0.0)))
    };
    let normal: Vec<bool> = points
        .iter()
        .map(|v| params(v).map(|p| p.phase() != PhaseLabel::Superradiant && normal_modes(&p).is_ok()))
        .collect::<Result<_>>()?;
    let ed_points: Vec<Vec<f64>> = points
        .iter()
        .zip(&normal)
        .filter(|(_, &ok)| ok)
        .map(|(v, _)| v.clone())
        .collect();
    let grouped = ed_sweep(cfg, exec, &ed_points, |values, n_max| {
        let p = params(values)?;
        let (h, basis) = build_hopfield_hamiltonian(&p, n_max, n_max)?;
        Ok(EdProblem {
            hamiltonian: h,
            observables: vec![("var_p_minus".into(), QuadratureOperator::hopfield_p_minus(&p, &basis)?, 1.0)],
        })
    })?;
    let mut grouped = grouped.into_iter();
    let mut rows = Vec::new();
    for (values, ok) in points.iter().zip(normal) {
        if !ok {
            rows.push(nan_row(values.clone(), "var_p_minus", Status::NotApplicable));
            continue;
        }
        let exact = normal_modes(&params(values)?)?.eps_minus / 2.0;
        rows.push(Row::analytic(values.clone(), "var_p_minus", exact));
        for mut r in grouped.next().expect("one group per normal point") {
            if r.method == Method::Ed && r.status == Status::Ok && (r.value - exact).abs() > cfg.ed.oracle_tol {
                r.status = Status::OracleMismatch;
            }
            rows.push(r);
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cartesian_order_last_axis_fastest() {
        let pts = cartesian(&[vec![1.0, 2.0], vec![10.0, 20.0, 30.0]]);
        assert_eq!(pts.len(), 6);
        assert_eq!(pts[0], vec![1.0, 10.0]);
        assert_eq!(pts[1], vec![1.0, 20.0]);
        assert_eq!(pts[3], vec![2.0, 10.0]);
    }

    #[test]
    fn executor_preserves_order() {
        let exec = Executor::new(3).unwrap();
        let items: Vec<u64> = (0..200).collect();
        let out = exec.map(&items, |&i| i * i);
        assert_eq!(out, items.iter().map(|i| i * i).collect::<Vec<_>>());
    }

    #[test]
    fn defects_follow_counter_stream() {
        let d = DisorderConfig {
            m: 2,
            omega_prime: Draw::Uniform { uniform: (1.0, 3.0) },
            g_prime: Draw::Fixed(0.5),
        };
        let defects = generate_defects(&d, 42);
        let rng = SplitMix64::new(42);
        assert_eq!(defects[0].omega_prime, rng.uniform_at(0, 1.0, 3.0));
        assert_eq!(defects[1].omega_prime, rng.uniform_at(2, 1.0, 3.0));
        assert_eq!(defects[1].g_prime, 0.5);
        assert_eq!(generate_defects(&d, 42), defects);
    }

    #[test]
    fn fig2_reference_points() {
        let cfg = SweepConfig::new(ExperimentId::Fig2)
            .with_grid("g_over_omega", Grid::Values(vec![0.0, 0.5]));
        let res = run_fig2(&cfg, &Executor::sequential()).unwrap();
        let d0: Vec<f64> = res.select("xi_d0", Method::Analytic).map(|r| r.value).collect();
        let trk: Vec<f64> = res.select("xi_trk", Method::Analytic).map(|r| r.value).collect();
        assert_eq!(d0[0], 1.0);
        assert_eq!(trk[0], 1.0);
        assert!(d0[1].abs() < 1e-12);
        assert!((trk[1] - 0.618034).abs() < 1e-6);
    }

    #[test]
    fn fig4_marks_infinite_at_critical_point() {
        let cfg = SweepConfig::new(ExperimentId::Fig4)
            .with_grid("temperature", Grid::Values(vec![0.0, 0.55]))
            .with_grid("g_c_minus_g", Grid::Values(vec![0.0, 0.2]));
        let res = run_fig4(&cfg, &Executor::sequential()).unwrap();
        let r = &res.rows;
        assert_eq!(r[0].value, 0.0);
        assert_eq!(r[2].status, Status::Infinite);
        assert!(r[3].value > 1.0);
        let p = DickeParams::new(1.0, 1.0, 0.3, 1).unwrap();
        assert_eq!(r[1].value, squeezing_ratio_ground(&p).unwrap().xi);
    }

    #[test]
    fn sweep_single_point_matches_direct_call() {
        let mut cfg = SweepConfig::new(ExperimentId::Sweep).with_grid("g", Grid::Values(vec![0.3]));
        cfg.sweep = Some(SweepOptions {
            quantity: SweepQuantity::GroundXi,
            mask_tc: false,
            trk_a2: false,
            ladder: None,
        });
        let res = run_sweep(&cfg, &Executor::sequential()).unwrap();
        assert_eq!(res.rows.len(), 1);
        let p = DickeParams::new(1.0, 1.0, 0.3, 1).unwrap();
        assert_eq!(res.rows[0].value, squeezing_ratio_ground(&p).unwrap().xi);
    }

    #[test]
    fn sweep_tc_mask_zeroes_superradiant_rows() {
        let mut cfg = SweepConfig::new(ExperimentId::Sweep)
            .with_grid("g", Grid::Values(vec![0.3, 0.8]))
            .with_grid("temperature", Grid::Values(vec![0.1]));
        let mut opts = SweepOptions {
            quantity: SweepQuantity::ThermalXi,
            mask_tc: true,
            trk_a2: false,
            ladder: None,
        };
        cfg.sweep = Some(opts.clone());
        let res = run_sweep(&cfg, &Executor::sequential()).unwrap();
        assert_eq!(res.rows[0].status, Status::Ok);
        assert_eq!(res.rows[1].value, 0.0);
        assert_eq!(res.rows[1].status, Status::Masked);
        opts.mask_tc = false;
        cfg.sweep = Some(opts);
        let res = run_sweep(&cfg, &Executor::sequential()).unwrap();
        assert!(res.rows[1].value.is_nan());
        assert_eq!(res.rows[1].status, Status::NotApplicable);
    }

    #[test]
    fn sweep_ladder_dispersion_table() {
        let mut cfg = SweepConfig::new(ExperimentId::Sweep)
            .with_grid("k", Grid::linspace(0.0, std::f64::consts::PI, 5));
        cfg.sweep = Some(SweepOptions {
            quantity: SweepQuantity::LadderDispersion,
            mask_tc: false,
            trk_a2: false,
            ladder: Some(crate::model::LadderParams {
                j_r: 1.0,
                j_b: 0.01,
                j_rb_x: 0.05,
                j_rb_y: 0.0,
                j_rb_z: 0.0,
                omega_r: 2.0,
                omega_b: 1.0,
                n_sites: 8,
            }),
        });
        let res = run_sweep(&cfg, &Executor::sequential()).unwrap();
        for r in &res.rows {
            let k = r.coords[0];
            assert!((r.value - (2.0 + 1.0 - k.cos())).abs() < 1e-15);
        }
        assert_eq!(res.rows.last().unwrap().value, 4.0);
    }

    #[test]
    fn rejects_foreign_grid_names() {
        let cfg = SweepConfig::new(ExperimentId::Fig2).with_grid("eta", Grid::Values(vec![0.1]));
        assert!(matches!(run_fig2(&cfg, &Executor::sequential()), Err(Error::Config(_))));
        let mut cfg = SweepConfig::new(ExperimentId::Fig3);
        cfg.model.omega0 = Some(2.0);
        assert!(run_fig3(&cfg, &Executor::sequential()).is_err());
    }

    #[test]
    fn convergence_rows_pair_consecutive_truncations() {
        let ed = |n, v| Row {
            coords: vec![1.0],
            series: "s".into(),
            method: Method::Ed,
            n_max: Some(n),
            value: v,
            residual: None,
            residual_bound: None,
            status: Status::Ok,
            wall_time: Duration::ZERO,
        };
        let rows = vec![ed(10, 0.5), ed(20, 0.5004), ed(30, 0.51)];
        let d = convergence_rows(&rows, &[10, 20, 30], 1e-3);
        assert_eq!(d.len(), 2);
        assert_eq!(d[0].status, Status::Ok);
        assert_eq!(d[1].status, Status::NotConverged);
        assert_eq!(d[1].n_max, Some(30));
    }
}
