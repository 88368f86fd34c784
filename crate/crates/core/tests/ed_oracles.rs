//! Exact-diagonalization checks against independently assembled dense
//! matrices and against the closed-form quadratic theory.

use dicke_squeeze::bogoliubov::{normal_modes, thermal_squeezing_ratio};
use dicke_squeeze::ed::{
    build_basis, build_dicke_hamiltonian, build_dicke_ising_hamiltonian,
    build_disordered_hamiltonian, build_hopfield_hamiltonian, ground_state, thermal_variance,
    total_spin_expectation, variance, Observable, QuadratureOperator, SolverSettings,
    SparseHamiltonian, SpinBosonModel, SpinTerm, Spectrum,
};
use dicke_squeeze::disorder::DisorderEnsemble;
use dicke_squeeze::model::DickeParams;
use dicke_squeeze::Error;
use nalgebra::DMatrix;

fn lowest_dense(m: &DMatrix<f64>) -> f64 {
    m.clone()
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min)
}

/// Kronecker-product assembly: boson ⊗ spin_{N−1} ⊗ … ⊗ spin_0.
fn kron_dicke(omega: f64, omega0: f64, g: f64, n: usize, n_max: usize, j: f64) -> DMatrix<f64> {
    let nb = n_max + 1;
    let num = DMatrix::from_fn(nb, nb, |r, c| if r == c { r as f64 } else { 0.0 });
    let x = DMatrix::from_fn(nb, nb, |r, c| {
        if r == c + 1 {
            (r as f64).sqrt()
        } else if c == r + 1 {
            (c as f64).sqrt()
        } else {
            0.0
        }
    });
    let sz = DMatrix::from_row_slice(2, 2, &[-0.5, 0.0, 0.0, 0.5]);
    let sx = DMatrix::from_row_slice(2, 2, &[0.0, 0.5, 0.5, 0.0]);
    let id2 = DMatrix::<f64>::identity(2, 2);
    let spin_op = |site: usize, op: &DMatrix<f64>| -> DMatrix<f64> {
        let mut out = DMatrix::<f64>::identity(1, 1);
        for s in (0..n).rev() {
            out = out.kronecker(if s == site { op } else { &id2 });
        }
        out
    };
    let ids = DMatrix::<f64>::identity(1 << n, 1 << n);
    let idb = DMatrix::<f64>::identity(nb, nb);
    let mut h = num.kronecker(&ids) * omega;
    let coupling = 2.0 * g / (n as f64).sqrt();
    for s in 0..n {
        h += idb.kronecker(&spin_op(s, &sz)) * omega0;
        h += x.kronecker(&spin_op(s, &sx)) * coupling;
        if j != 0.0 {
            let t = (s + 1) % n;
            let pair = spin_op(s, &sx) * spin_op(t, &sx);
            h += idb.kronecker(&pair) * (4.0 * j);
        }
    }
    h
}

#[test]
fn matches_kronecker_oracle() {
    for (n, n_max, g, eta) in [(1, 6, 0.2, 0.0), (2, 5, 0.45, 0.0), (3, 4, 0.3, 0.4)] {
        let p = DickeParams::new(1.0, 1.3, g, n).unwrap();
        let basis = build_basis(n, n_max).unwrap();
        let h = if eta == 0.0 {
            build_dicke_hamiltonian(&p, &basis).unwrap()
        } else {
            build_dicke_ising_hamiltonian(&p, eta, &basis).unwrap()
        };
        let oracle = kron_dicke(1.0, 1.3, g, n, n_max, eta * 1.3);
        assert!((h.to_dense() - oracle).abs().max() < 1e-14, "n = {n}");
    }
}

#[test]
fn rabi_ground_energy_vs_brute_force() {
    // N = 1, dim 64
    let p = DickeParams::new(1.0, 1.0, 0.2, 1).unwrap();
    let basis = build_basis(1, 31).unwrap();
    let gs = ground_state(&build_dicke_hamiltonian(&p, &basis).unwrap(), &SolverSettings::default())
        .unwrap();
    let oracle = lowest_dense(&kron_dicke(1.0, 1.0, 0.2, 1, 31, 0.0));
    assert!((gs.energy - oracle).abs() < 1e-10);
}

#[test]
fn decoupled_ground_energy() {
    for n in 1..=4 {
        let p = DickeParams::new(1.0, 0.7, 0.0, n).unwrap();
        let h = build_dicke_hamiltonian(&p, &build_basis(n, 3).unwrap()).unwrap();
        let gs = ground_state(&h, &SolverSettings::default()).unwrap();
        assert!((gs.energy + n as f64 * 0.35).abs() < 1e-14);
    }
}

#[test]
fn lanczos_agrees_with_dense_at_dim_168() {
    let p = DickeParams::new(1.0, 1.0, 0.3, 3).unwrap();
    let basis = build_basis(3, 20).unwrap();
    assert_eq!(basis.dim, 168);
    let h = build_dicke_hamiltonian(&p, &basis).unwrap();
    let lanczos = ground_state(
        &h,
        &SolverSettings {
            dense_threshold: 0,
            ..Default::default()
        },
    )
    .unwrap();
    let oracle = lowest_dense(&kron_dicke(1.0, 1.0, 0.3, 3, 20, 0.0));
    assert!((lanczos.energy - oracle).abs() < 1e-10);
    assert!(lanczos.residual <= lanczos.tolerance);
}

#[test]
fn ising_ring_ground_energy() {
    // ω₀ = 0 and g = 0 leave only 4J Σ SˣSˣ; the Néel state in x gives −NJ.
    for n in [2usize, 4, 6] {
        let j = 0.7;
        let model = SpinBosonModel {
            omega: 1.0,
            a2_coeff: 0.0,
            spins: vec![
                SpinTerm {
                    splitting: 0.0,
                    coupling: 0.0
                };
                n
            ],
            ising_j: j,
        };
        let h = model.build(&build_basis(n, 1).unwrap()).unwrap();
        let e = lowest_dense(&h.to_dense());
        // N = 2 visits the single bond from both sides.
        let bonds = if n == 2 { 2.0 } else { n as f64 };
        assert!((e + bonds * j).abs() < 1e-12, "n = {n}: {e}");
    }
}

#[test]
fn ground_state_variances_without_coupling() {
    let p = DickeParams::new(1.0, 1.0, 0.0, 3).unwrap();
    let basis = build_basis(3, 5).unwrap();
    let gs = ground_state(&build_dicke_hamiltonian(&p, &basis).unwrap(), &SolverSettings::default())
        .unwrap();
    let pm = QuadratureOperator::p_tilde_minus(&basis).unwrap();
    let sy = QuadratureOperator::spin_y_tilde(&basis).unwrap();
    assert!((variance(&gs, &pm).unwrap() - 1.0).abs() < 1e-12);
    assert!((variance(&gs, &sy).unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn parity_and_total_spin_in_normal_phase() {
    for (n, g) in [(2, 0.2), (3, 0.35), (4, 0.45)] {
        let p = DickeParams::new(1.0, 1.0, g, n).unwrap();
        let basis = build_basis(n, 30).unwrap();
        let gs = ground_state(&build_dicke_hamiltonian(&p, &basis).unwrap(), &SolverSettings::default())
            .unwrap();
        let x = Observable::boson_position(&basis).expectation_in(&gs.vector).unwrap();
        let sx = Observable::total_sx(&basis).expectation_in(&gs.vector).unwrap();
        assert!(x.abs() < 1e-8 && sx.abs() < 1e-8);
        let s = n as f64 / 2.0;
        let s2 = total_spin_expectation(&gs, &basis).unwrap();
        assert!((s2 - s * (s + 1.0)).abs() < 1e-8);
    }
}

#[test]
fn ising_breaks_collective_spin() {
    let p = DickeParams::new(1.0, 1.0, 0.5, 4).unwrap();
    let basis = build_basis(4, 20).unwrap();
    let gs = ground_state(
        &build_dicke_ising_hamiltonian(&p, 0.5, &basis).unwrap(),
        &SolverSettings::default(),
    )
    .unwrap();
    assert!(total_spin_expectation(&gs, &basis).unwrap() < 6.0);
}

#[test]
fn fig6_hamiltonian_shape() {
    let p = DickeParams::new(1.0, 1.0, 0.5, 6).unwrap();
    let d = DisorderEnsemble::uniform(6, 1, 2.1, 2.0).unwrap();
    let basis = build_basis(7, 4).unwrap();
    let h = build_disordered_hamiltonian(&p, &d, &basis).unwrap();
    assert!(h.is_symmetric());
    assert_eq!(h.dim(), 5 * 128);
    assert!(build_disordered_hamiltonian(&p, &d, &build_basis(6, 4).unwrap()).is_err());
}

#[test]
fn hopfield_oracle_ground_variances() {
    for g in [0.1, 0.3, 0.45] {
        let p = DickeParams::new(1.0, 1.0, g, 1).unwrap();
        let (h, basis) = build_hopfield_hamiltonian(&p, 60, 60).unwrap();
        let gs = ground_state(&h, &SolverSettings::default()).unwrap();
        let m = normal_modes(&p).unwrap();
        let pm = QuadratureOperator::hopfield_p_minus(&p, &basis).unwrap();
        let qm = Observable::hopfield_q_minus(&p, &basis).unwrap();
        assert!((variance(&gs, &pm).unwrap() - m.eps_minus / 2.0).abs() < 1e-6, "g = {g}");
        assert!((qm.variance_in(&gs.vector).unwrap() - 0.5 / m.eps_minus).abs() < 1e-5);
        // ground energy of the quadratic model is (ε₋ + ε₊ − ω − ω₀)/2
        let e0 = 0.5 * (m.eps_minus + m.eps_plus - 2.0);
        assert!((gs.energy - e0).abs() < 1e-6);
    }
}

#[test]
fn hopfield_oracle_excitation_gaps() {
    let p = DickeParams::new(1.0, 1.0, 0.49, 1).unwrap();
    let (h, _) = build_hopfield_hamiltonian(&p, 40, 40).unwrap();
    let spec = Spectrum::full(&h);
    let m = normal_modes(&p).unwrap();
    let gap = spec.values[1] - spec.values[0];
    assert!((gap - m.eps_minus).abs() < 1e-4, "{gap} vs {}", m.eps_minus);
}

#[test]
fn hopfield_thermal_matches_coth_formula() {
    let p = DickeParams::new(1.0, 1.0, 0.375, 1).unwrap();
    let (h, basis) = build_hopfield_hamiltonian(&p, 30, 30).unwrap();
    let q = QuadratureOperator::hopfield_p_minus(&p, &basis).unwrap();
    let spec = Spectrum::full(&h);
    let cold = spec.thermal_variance(&q, 0.0, spec.len()).unwrap();
    let gs = spec.ground_state(&h);
    assert_eq!(cold, variance(&gs, &q).unwrap());
    let xi = 2.0 * spec.thermal_variance(&q, 0.25, spec.len()).unwrap();
    let analytic = thermal_squeezing_ratio(&p, 0.25).unwrap().xi;
    assert!((xi - 0.65652).abs() < 1e-4);
    assert!((xi - analytic).abs() < 1e-6);
}

#[test]
fn thermal_tail_bound_guard() {
    let p = DickeParams::new(1.0, 1.0, 0.3, 1).unwrap();
    let (h, basis) = build_hopfield_hamiltonian(&p, 2, 2).unwrap();
    let q = QuadratureOperator::hopfield_p_minus(&p, &basis).unwrap();
    assert!(matches!(
        thermal_variance(&h, &q, 50.0, h.dim()),
        Err(Error::TailBound { .. })
    ));
}

#[test]
fn quadrature_generators_antisymmetric() {
    let p = DickeParams::new(1.0, 1.0, 0.4, 3).unwrap();
    let basis = build_basis(3, 6).unwrap();
    for q in [
        QuadratureOperator::p_tilde_minus(&basis).unwrap(),
        QuadratureOperator::spin_y_tilde(&basis).unwrap(),
        QuadratureOperator::p_minus(&p, &basis).unwrap(),
    ] {
        assert!(q.is_antisymmetric());
    }
}

#[test]
fn dump_round_trip_through_file() {
    let p = DickeParams::new(1.0, 1.0, 0.3, 2).unwrap();
    let basis = build_basis(2, 6).unwrap();
    let gs = ground_state(&build_dicke_hamiltonian(&p, &basis).unwrap(), &SolverSettings::default())
        .unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("gs.dsq");
    dicke_squeeze::ed::dump::write_vector(std::fs::File::create(&path).unwrap(), &gs.vector).unwrap();
    let back = dicke_squeeze::ed::dump::read_vector(std::fs::File::open(&path).unwrap()).unwrap();
    assert_eq!(back, gs.vector);
}

#[test]
fn sparse_from_dense_round_trip() {
    let m = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 2.0, 0.0]);
    assert_eq!(SparseHamiltonian::from_dense(&m).to_dense(), m);
}
