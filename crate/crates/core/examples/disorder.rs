//! Pinned defect spins: first-order formula next to exact diagonalization.

use dicke_squeeze::disorder::{disorder_xi_perturbative, DisorderEnsemble};
use dicke_squeeze::ed::{build_basis, build_disordered_hamiltonian, ground_state, QuadratureOperator, SolverSettings};
use dicke_squeeze::model::DickeParams;

fn main() -> dicke_squeeze::Result<()> {
    let p = DickeParams::new(1.0, 1.0, 0.4, 99)?;
    let d = DisorderEnsemble::uniform(99, 1, 2.0, 1.0)?;
    let r = disorder_xi_perturbative(&p, &d)?;
    println!(
        "N=99, m=1: xi = {:.5} (clean {:.5} + pinned {:.5} + coupling {:.5}), perturbative: {}",
        r.xi, r.term_clean, r.term_pinned, r.term_coupling, r.all_valid()
    );

    println!("\nN clean + 1 defect (w'=2, g'=0.1), g = 0.3, n_max = 30");
    for n in [2, 4, 6] {
        let p = DickeParams::new(1.0, 1.0, 0.3, n)?;
        let d = DisorderEnsemble::uniform(n, 1, 2.0, 0.1)?;
        let basis = build_basis(n + 1, 30)?;
        let gs = ground_state(&build_disordered_hamiltonian(&p, &d, &basis)?, &SolverSettings::default())?;
        let ed = QuadratureOperator::p_d(&p, &d, &basis)?.variance_in(&gs.vector)? / 0.5;
        let formula = disorder_xi_perturbative(&p, &d)?.xi;
        println!("  N = {n}: ED {ed:.5}, formula {formula:.5}");
    }
    Ok(())
}
