//! Two-leg spin ladder mapped onto an effective Dicke model.

use dicke_squeeze::bogoliubov::squeezing_ratio_ground;
use dicke_squeeze::model::{map_ladder_to_dicke, LadderParams};

fn main() -> dicke_squeeze::Result<()> {
    let ladder = LadderParams {
        j_r: 1.0,
        j_b: 0.02,
        j_rb_x: 0.4,
        j_rb_y: 0.0,
        j_rb_z: 0.05,
        omega_r: 1.2,
        omega_b: 0.8,
        n_sites: 8,
    };
    let spec = map_ladder_to_dicke(&ladder)?;
    for m in &spec.modes {
        println!("k = {:.4}  omega_k = {:.4}  g_x = {:.3}", m.k, m.omega_k, m.g_x);
    }
    println!("flags: {:?}", spec.validity_flags);
    println!("usable: {}", spec.is_valid());
    let p = spec.k0_dicke_params()?;
    println!("k = 0 Dicke model: {p:?}");
    println!("xi = {:.5}", squeezing_ratio_ground(&p)?.xi);
    Ok(())
}
