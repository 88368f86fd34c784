//! Two-boson exact diagonalization of the quadratic model against the closed
//! forms, at zero and finite temperature.

use dicke_squeeze::bogoliubov::{normal_modes, thermal_squeezing_ratio};
use dicke_squeeze::ed::{build_hopfield_hamiltonian, ground_state, QuadratureOperator, SolverSettings, Spectrum};
use dicke_squeeze::model::DickeParams;

fn main() -> dicke_squeeze::Result<()> {
    for g in [0.1, 0.3, 0.45] {
        let p = DickeParams::new(1.0, 1.0, g, 1)?;
        let (h, basis) = build_hopfield_hamiltonian(&p, 60, 60)?;
        let gs = ground_state(&h, &SolverSettings::default())?;
        let var = QuadratureOperator::hopfield_p_minus(&p, &basis)?.variance_in(&gs.vector)?;
        println!("g = {g}: ED {var:.10}, eps_minus/2 {:.10}", normal_modes(&p)?.eps_minus / 2.0);
    }

    let p = DickeParams::new(1.0, 1.5, 0.35, 1)?;
    let (h, basis) = build_hopfield_hamiltonian(&p, 24, 24)?;
    let q = QuadratureOperator::hopfield_p_minus(&p, &basis)?;
    let spectrum = Spectrum::full(&h);
    for t in [0.05, 0.2, 0.4] {
        let ed = spectrum.thermal_variance(&q, t, spectrum.len())? / 0.5;
        println!("T = {t}: Gibbs {ed:.8}, formula {:.8}", thermal_squeezing_ratio(&p, t)?.xi);
    }
    Ok(())
}
