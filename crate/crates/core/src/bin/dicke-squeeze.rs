use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::Parser;
use dicke_squeeze::experiment::{plot_script, run, ExperimentId, RunOptions, SweepConfig};
use dicke_squeeze::Error;

/// Reproduce the squeezing figures or run a parameter sweep; writes CSV.
#[derive(Parser, Debug)]
#[command(name = "dicke-squeeze", version)]
struct Cli {
    /// fig2 | fig3 | fig4 | fig5 | fig6 | fig7 | sweep
    experiment: String,
    /// JSON config file
    #[arg(long)]
    config: PathBuf,
    /// Output CSV (default: config "output", else stdout)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Boson truncations, e.g. 40,50
    #[arg(long, value_delimiter = ',')]
    n_max: Option<Vec<usize>>,
    /// Exit with status 2 if any row fails a tolerance or invariant
    #[arg(long)]
    strict: bool,
    /// Worker threads (0 = all cores); forced to 1 by --strict
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    /// Also write a gnuplot script next to the CSV
    #[arg(long)]
    emit_plot_script: bool,
}

fn load_config(cli: &Cli, experiment: ExperimentId) -> Result<SweepConfig, Error> {
    let text = std::fs::read_to_string(&cli.config)
        .map_err(|e| Error::Config(format!("cannot read {}: {e}", cli.config.display())))?;
    let mut value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| Error::Config(format!("config: {e}")))?;
    let obj = value
        .as_object_mut()
        .ok_or_else(|| Error::Config("config must be a JSON object".into()))?;
    match obj.get("experiment").and_then(|v| v.as_str()) {
        Some(id) if id != experiment.as_str() => {
            return Err(Error::Config(format!(
                "config is for '{id}' but '{}' was requested",
                experiment.as_str()
            )))
        }
        _ => {
            obj.insert("experiment".into(), experiment.as_str().into());
        }
    }
    if let Some(n_max) = &cli.n_max {
        let ed = obj.entry("ed").or_insert_with(|| serde_json::json!({}));
        ed.as_object_mut()
            .ok_or_else(|| Error::Config("'ed' must be an object".into()))?
            .insert("n_max".into(), serde_json::json!(n_max));
    }
    SweepConfig::from_json(&value.to_string())
}

fn execute(cli: &Cli) -> Result<bool, Error> {
    let experiment = ExperimentId::parse(&cli.experiment)?;
    let cfg = load_config(cli, experiment)?;
    let out = cli.out.clone().or_else(|| cfg.output.clone());
    if cli.emit_plot_script && out.is_none() {
        return Err(Error::Config("--emit-plot-script needs an output file".into()));
    }
    let result = run(
        &cfg,
        &RunOptions {
            jobs: cli.jobs,
            strict: cli.strict,
        },
    )?;
    match &out {
        Some(path) => {
            let file = std::fs::File::create(path)?;
            let mut w = std::io::BufWriter::new(file);
            result.write_csv(&mut w)?;
            w.flush()?;
        }
        None => result.write_csv(std::io::stdout().lock())?,
    }
    if let (true, Some(path)) = (cli.emit_plot_script, &out) {
        let script = plot_script(experiment, &result, &path.to_string_lossy());
        std::fs::write(path.with_extension("gp"), script)?;
    }
    let wall: Duration = result.rows.iter().map(|r| r.wall_time).sum();
    let failures: Vec<_> = result.failures().collect();
    eprintln!(
        "{}: {} rows, {} flagged, solver time {:.2}s",
        experiment.as_str(),
        result.rows.len(),
        failures.len(),
        wall.as_secs_f64()
    );
    for r in &failures {
        eprintln!(
            "  {} {} n_max={:?} at {:?}: {}",
            r.series,
            r.method.as_str(),
            r.n_max,
            r.coords,
            r.status.as_str()
        );
    }
    Ok(failures.is_empty())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) if cli.strict => ExitCode::from(2),
        Ok(false) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
