//! The sum-rule A² term removes the transition and caps the squeezing.

use dicke_squeeze::bogoliubov::squeezing_ratio_ground;
use dicke_squeeze::model::{critical_coupling_trk_fraction, CriticalCoupling, DickeParams};

fn main() -> dicke_squeeze::Result<()> {
    println!("{:>6} {:>12} {:>12}", "g", "xi (D=0)", "xi (D=g^2/w0)");
    for g in [0.0, 0.1, 0.25, 0.4, 0.5, 0.75, 1.0, 2.0, 5.0] {
        let p = DickeParams::new(1.0, 1.0, g, 1)?;
        let bare = squeezing_ratio_ground(&p)?.xi;
        let trk = squeezing_ratio_ground(&p.with_trk_a2()?)?.xi;
        println!("{g:>6.2} {bare:>12.6} {trk:>12.6}");
    }
    println!("\ncritical coupling when D = lambda * g^2/w0:");
    for lambda in [0.0, 0.5, 0.9, 0.99, 1.0] {
        match critical_coupling_trk_fraction(1.0, 1.0, lambda) {
            CriticalCoupling::At(g) => println!("  lambda = {lambda:<5} g_c = {g:.4}"),
            CriticalCoupling::NoTransition => println!("  lambda = {lambda:<5} no transition"),
        }
    }
    Ok(())
}
