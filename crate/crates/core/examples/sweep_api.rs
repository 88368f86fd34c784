//! Driving a figure run from code instead of the command line.

use dicke_squeeze::experiment::{run, ExperimentId, Grid, Method, RunOptions, SweepConfig};

fn main() -> dicke_squeeze::Result<()> {
    let mut cfg = SweepConfig::new(ExperimentId::Fig7).with_grid("eta", Grid::linspace(0.0, 1.5, 7));
    cfg.ed.n_max = vec![30, 40];
    let result = run(&cfg, &RunOptions { jobs: 0, strict: false })?;
    for row in result.select("xi_p_minus_k0", Method::Ed).filter(|r| r.n_max == Some(40)) {
        println!("eta = {:.2}  xi = {:.5}  residual = {:.1e}", row.coords[0], row.value, row.residual.unwrap());
    }
    println!("flagged rows: {}", result.failures().count());
    result.write_csv(std::io::stdout().lock())?;
    Ok(())
}
