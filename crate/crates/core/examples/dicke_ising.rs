//! Magnon modes with a transverse Ising ring, and the ED squeezing of the
//! k = 0 quadrature as the exchange grows.

use std::f64::consts::PI;

use dicke_squeeze::ed::{build_basis, build_dicke_ising_hamiltonian, ground_state, QuadratureOperator, SolverSettings};
use dicke_squeeze::ising::{critical_coupling_k, dicke_ising_modes, squeezed_quadrature_coefficients_k, Dispersion, IsingParams};
use dicke_squeeze::model::DickeParams;

fn main() -> dicke_squeeze::Result<()> {
    let disp = Dispersion::Lattice { omega_r: 1.0, j_r: 0.5 };
    let ip = IsingParams::new(0.1, 1.0, disp, 0.3, 8)?;
    println!("{:>8} {:>10} {:>12} {:>10} {:>12}", "k", "omega_k", "eps_minus", "gamma", "g_c exact");
    for j in 0..=4 {
        let k = PI * j as f64 / 4.0;
        let m = dicke_ising_modes(&ip, k)?;
        let c = critical_coupling_k(&ip, k)?;
        println!("{k:>8.4} {:>10.4} {:>12.6} {:>10.6} {:>12.6}", m.omega_k, m.eps_minus_k, m.gamma_k, c.exact_quadratic);
    }
    let q = squeezed_quadrature_coefficients_k(&ip, 0.0)?;
    println!("k=0 quadrature: boson {:.5}, per site {:.5}", q.boson, q.spin_per_site);

    println!("\nN = 6, g = 0.5, n_max = 30");
    let p = DickeParams::new(1.0, 1.0, 0.5, 6)?;
    let basis = build_basis(6, 30)?;
    for eta in [0.0, 0.25, 0.5, 1.0, 1.5] {
        let ip = IsingParams::new(eta, 1.0, Dispersion::Flat { omega: 1.0 }, 0.5, 6)?;
        let gs = ground_state(&build_dicke_ising_hamiltonian(&p, eta, &basis)?, &SolverSettings::default())?;
        let xi = QuadratureOperator::p_minus_k0(&ip, &basis)?.variance_in(&gs.vector)? / 0.5;
        println!("  eta = {eta:<5} xi = {xi:.5}");
    }
    Ok(())
}
