//! Finite-N squeezing at the thermodynamic critical coupling, with a
//! truncation check and the symmetry diagnostics of the ground state.

use dicke_squeeze::ed::{
    build_basis, build_dicke_hamiltonian, ground_state, total_spin_expectation, Observable, QuadratureOperator,
    SolverSettings,
};
use dicke_squeeze::model::DickeParams;

fn main() -> dicke_squeeze::Result<()> {
    println!("{:>3} {:>6} {:>12} {:>12} {:>10} {:>10} {:>9}", "N", "n_max", "Var(p~-)", "Var(S~y)", "<S^2>", "<x>", "method");
    for n in 1..=6 {
        for n_max in [30, 40] {
            let p = DickeParams::new(1.0, 1.0, 0.5, n)?;
            let basis = build_basis(n, n_max)?;
            let gs = ground_state(&build_dicke_hamiltonian(&p, &basis)?, &SolverSettings::default())?;
            let vp = QuadratureOperator::p_tilde_minus(&basis)?.variance_in(&gs.vector)?;
            let vs = QuadratureOperator::spin_y_tilde(&basis)?.variance_in(&gs.vector)?;
            let s2 = total_spin_expectation(&gs, &basis)?;
            let x = Observable::boson_position(&basis).expectation_in(&gs.vector)?;
            println!("{n:>3} {n_max:>6} {vp:>12.8} {vs:>12.8} {s2:>10.5} {x:>10.1e} {:>9?}", gs.method);
        }
    }
    Ok(())
}
