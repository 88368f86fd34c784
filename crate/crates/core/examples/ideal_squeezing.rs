//! Ground-state squeezing of the two-mode quadrature across the transition.

use dicke_squeeze::bogoliubov::{modes_for_phase, squeezing_ratio_ground, two_mode_quadrature_coefficients};
use dicke_squeeze::model::{critical_coupling, DickeParams};

fn main() -> dicke_squeeze::Result<()> {
    for (omega, omega0) in [(1.0, 1.0), (1.0, 2.0)] {
        let g_c = critical_coupling(&DickeParams::new(omega, omega0, 0.0, 1)?).value().unwrap();
        println!("omega = {omega}, omega0 = {omega0}, g_c = {g_c:.6}");
        println!("{:>8} {:>12} {:>12} {:>10} {:>14}", "g/g_c", "xi", "eps_minus", "gamma", "phase");
        for step in 0..=12 {
            let g = g_c * step as f64 / 8.0;
            let p = DickeParams::new(omega, omega0, g, 1)?;
            let m = modes_for_phase(&p)?;
            let xi = squeezing_ratio_ground(&p)?.xi;
            println!("{:>8.3} {:>12.6} {:>12.6} {:>10.6} {:>14?}", g / g_c, xi, m.eps_minus, m.gamma, m.phase);
        }
        let w = two_mode_quadrature_coefficients(&DickeParams::new(omega, omega0, 0.9 * g_c, 1)?)?;
        println!("p_minus weights at 0.9 g_c: boson {:.6}, spin {:.6}\n", w.boson, w.spin);
    }
    Ok(())
}
