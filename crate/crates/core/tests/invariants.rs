use num_complex::Complex64 as C64;

use qubit_thermo::dynamics::TimeGrid;
use qubit_thermo::numerics::{eigh, kron, ComplexMatrix};
use qubit_thermo::runner::{run, ModelConfig, RunSpec};
use qubit_thermo::spin_boson::gad::GadConfig;
use qubit_thermo::spin_boson::jcm::JcmConfig;
use qubit_thermo::spin_boson::nmad::{g_function, nmad_channel, NmadConfig};
use qubit_thermo::spin_spin::central_spin::CentralSpinConfig;
use qubit_thermo::spin_spin::collision::CollisionConfig;
use qubit_thermo::states::DensityMatrix;

fn unit(i: usize, j: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(2, 2);
    m[(i, j)] = C64::new(1.0, 0.0);
    m
}

fn state(m: ComplexMatrix) -> DensityMatrix {
    DensityMatrix::single(m).unwrap()
}

/// Choi matrix Σ |i⟩⟨j| ⊗ Φ(|i⟩⟨j|), with the off-diagonal units
/// reached through the |±⟩ and |±i⟩ projectors so Φ only sees states.
fn choi(phi: impl Fn(&DensityMatrix) -> ComplexMatrix) -> ComplexMatrix {
    let half = C64::new(0.5, 0.0);
    let i = C64::new(0.0, 1.0);
    let plus = ComplexMatrix::from_fn(2, 2, |_, _| half);
    let plus_i = ComplexMatrix::from_fn(2, 2, |r, c| match (r, c) {
        (0, 1) => -i * 0.5,
        (1, 0) => i * 0.5,
        _ => half,
    });
    let ee = phi(&state(unit(0, 0)));
    let gg = phi(&state(unit(1, 1)));
    let p = phi(&state(plus));
    let pi = phi(&state(plus_i));
    let diag_sum = &ee + &gg;
    let eg = &(&p + &pi.scale(i)) - &diag_sum.scale(C64::new(0.5, 0.5));
    let ge = &(&p - &pi.scale(i)) - &diag_sum.scale(C64::new(0.5, -0.5));
    let images = [[ee, eg], [ge, gg]];
    let mut out = ComplexMatrix::zeros(4, 4);
    for (r, row) in images.iter().enumerate() {
        for (c, img) in row.iter().enumerate() {
            out = &out + &kron(&unit(r, c), img);
        }
    }
    out
}

#[test]
fn choi_detects_non_cp_map() {
    let transpose = |rho: &DensityMatrix| {
        let m = rho.mat();
        ComplexMatrix::from_fn(2, 2, |r, c| m[(c, r)])
    };
    assert!(eigh(&choi(transpose)).unwrap().eigenvalues[0] < -0.5);
    let identity = |rho: &DensityMatrix| rho.mat().clone();
    assert!(eigh(&choi(identity)).unwrap().eigenvalues[0] > -1e-15);
}

#[test]
fn nmad_map_is_completely_positive() {
    for &(lambda, gamma0) in &[(0.05, 50.0), (5.0, 1.0), (2.0, 1.0), (1e4, 1.0)] {
        for k in 0..300 {
            let t = 0.05 * k as f64;
            let g = g_function(lambda, gamma0, t);
            let c = choi(|rho| nmad_channel(rho, g).unwrap().mat().clone());
            let min = eigh(&c).unwrap().eigenvalues[0];
            assert!(min >= -1e-10, "lambda {lambda} t {t}: Choi eigenvalue {min}");
            // Trace preservation: Tr_out of the Choi matrix is the identity.
            let tr_out = qubit_thermo::numerics::partial_trace(&c, &[2, 2], &[0]).unwrap();
            assert!((&tr_out - &ComplexMatrix::identity(2)).max_abs() < 1e-14);
        }
    }
}

#[test]
fn engines_are_bitwise_deterministic() {
    let grid = TimeGrid::uniform(0.0, 4.0, 9).unwrap();
    let models = [
        ModelConfig::Collision(CollisionConfig {
            n_collisions: 12,
            ..CollisionConfig::figure2()
        }),
        ModelConfig::CentralSpin(CentralSpinConfig {
            n_bath: 6,
            t_grid: grid.clone(),
            ..CentralSpinConfig::figure3()
        }),
        ModelConfig::Nmad(NmadConfig {
            t_grid: grid.clone(),
            ..NmadConfig::figure4()
        }),
        ModelConfig::Gad(GadConfig {
            t_grid: grid.clone(),
            ..GadConfig::figure5()
        }),
        ModelConfig::Jcm(JcmConfig {
            n_max: 8,
            t_grid: grid,
            ..JcmConfig::figure6()
        }),
    ];
    for m in models {
        let spec = RunSpec::new(m);
        let a = run(&spec).unwrap();
        let b = run(&spec).unwrap();
        let bits = |o: &qubit_thermo::runner::RunOutput| -> Vec<[u64; 5]> {
            o.records
                .iter()
                .map(|r| [r.abscissa, r.delta, r.entropy, r.sigma, r.ergotropy].map(f64::to_bits))
                .collect()
        };
        assert_eq!(bits(&a), bits(&b), "{}", a.model);
        for r in &a.records {
            r.check_qubit_invariants().unwrap();
        }
    }
}
