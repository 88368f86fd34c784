//! Thermal squeezing ratio, the classical transition temperature and the
//! optimum detuning at low temperature.

use dicke_squeeze::bogoliubov::{classical_critical_temperature, thermal_squeezing_ratio};
use dicke_squeeze::model::DickeParams;

fn main() -> dicke_squeeze::Result<()> {
    let p = DickeParams::new(1.0, 1.0, 0.4, 1)?;
    println!("g = 0.4 at resonance");
    for t in [0.0, 0.05, 0.1, 0.2, 0.3, 0.5, 0.55] {
        println!("  T = {t:<5} xi = {:.6}", thermal_squeezing_ratio(&p, t)?.xi);
    }

    let sr = DickeParams::new(1.0, 1.0, 0.8, 1)?;
    println!("T_c at g = 0.8: {:.6}", classical_critical_temperature(&sr)?);

    println!("\nbest omega0 at g = 0.1 (critical at omega0 = 0.04):");
    for t in [0.015, 0.017, 0.019] {
        let (best_w0, best_xi) = (0..=16_000)
            .map(|i| 0.04 + 0.16 * i as f64 / 16_000.0)
            .filter_map(|w0| {
                let p = DickeParams::new(1.0, w0, 0.1, 1).ok()?;
                Some((w0, thermal_squeezing_ratio(&p, t).ok()?.xi))
            })
            .filter(|(_, xi)| xi.is_finite())
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap();
        println!("  T = {t}: omega0 = {best_w0:.5}, xi = {best_xi:.5}");
    }
    Ok(())
}
