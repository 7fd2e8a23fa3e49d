//! Qubit collision model with partial-swap correlated ancillas.
//!
//! The engine carries the joint (system, incoming ancilla) state. After each
//! system–ancilla collision a fresh thermal ancilla is adjoined, the two
//! ancillas undergo a partial swap, and the used ancilla is traced out.
//! With θ = 0 the swap is trivial and the dynamics is Markovian.

use std::f64::consts::FRAC_PI_2;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;

use crate::error::{invalid, Error, Result};
use crate::numerics::{expm_generator, kron, partial_trace, ComplexMatrix};
use crate::quantifiers::{entropy_production_joint, qubit_record, EntropyProduction, QuadratureSpec, QuantifierRecord};
use crate::states::{from_bloch, pauli, qubit_hamiltonian, thermal_qubit, BlochVector, DensityMatrix};

#[derive(Debug, Clone, PartialEq)]
pub struct CollisionConfig {
    pub omega_s: f64,
    pub omega_r: f64,
    pub beta: f64,
    pub g_sr: f64,
    pub tau: f64,
    pub theta: f64,
    pub n_collisions: usize,
    pub initial_state: BlochVector,
}

impl CollisionConfig {
    /// ω_s = 1.5, ω_R = 1, β = 50, g_SR = 0.5, Θ = 0.98·π/2, τ = 0.5, 100 collisions.
    pub fn figure2() -> Self {
        Self {
            omega_s: 1.5,
            omega_r: 1.0,
            beta: 50.0,
            g_sr: 0.5,
            tau: 0.5,
            theta: 0.98 * FRAC_PI_2,
            n_collisions: 100,
            initial_state: BlochVector::NS1,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("omega_s", self.omega_s),
            ("omega_r", self.omega_r),
            ("g_sr", self.g_sr),
        ] {
            if !v.is_finite() {
                return Err(invalid(name, "must be finite"));
            }
        }
        if !(self.omega_r > 0.0) {
            return Err(invalid("omega_r", format!("must be positive, got {}", self.omega_r)));
        }
        if !(self.beta >= 0.0) || !self.beta.is_finite() {
            return Err(invalid(
                "beta",
                format!("must be finite and non-negative, got {}", self.beta),
            ));
        }
        if !(self.tau > 0.0) || !self.tau.is_finite() {
            return Err(invalid("tau", format!("must be positive, got {}", self.tau)));
        }
        check_theta(self.theta)?;
        if self.n_collisions == 0 {
            return Err(invalid("n_collisions", "must be at least 1"));
        }
        BlochVector::new(self.initial_state.x, self.initial_state.y, self.initial_state.z)?;
        Ok(())
    }

    pub fn system_hamiltonian(&self) -> ComplexMatrix {
        qubit_hamiltonian(self.omega_s)
    }
}

fn check_theta(theta: f64) -> Result<()> {
    if !(0.0..=FRAC_PI_2 + 1e-12).contains(&theta) {
        return Err(invalid("theta", format!("theta out of range [0, π/2]: {theta}")));
    }
    Ok(())
}

/// exp(−i(H_S + H_R + H_SR)τ) on system ⊗ ancilla with H_SR = g(σₓσₓ + σ_yσ_y).
pub fn collision_unitary(cfg: &CollisionConfig) -> Result<ComplexMatrix> {
    let i2 = ComplexMatrix::identity(2);
    let h_s = kron(&qubit_hamiltonian(cfg.omega_s), &i2);
    let h_r = kron(&i2, &qubit_hamiltonian(cfg.omega_r));
    let h_sr = (&kron(&pauli::x(), &pauli::x()) + &kron(&pauli::y(), &pauli::y())).scale_re(cfg.g_sr);
    let h = &(&h_s + &h_r) + &h_sr;
    expm_generator(&h, cfg.tau)
}

/// ½(σ⃗·σ⃗ + I₄), which is the two-qubit SWAP.
pub fn swap_generator() -> ComplexMatrix {
    let dots = &(&kron(&pauli::x(), &pauli::x()) + &kron(&pauli::y(), &pauli::y())) + &kron(&pauli::z(), &pauli::z());
    (&dots + &ComplexMatrix::identity(4)).scale_re(0.5)
}

/// cos Θ I − i sin Θ SWAP.
pub fn partial_swap_unitary(theta: f64) -> Result<ComplexMatrix> {
    check_theta(theta)?;
    let (s, c) = theta.sin_cos();
    Ok(&ComplexMatrix::identity(4).scale_re(c) - &swap_generator().scale(C64::new(0.0, s)))
}

/// State of the engine after one collision.
#[derive(Debug, Clone)]
pub struct CollisionStep {
    /// Collision index, starting at 1.
    pub index: usize,
    /// Joint (system, ancilla) state right after the collision.
    pub joint: DensityMatrix,
    /// Reduced system state right after the collision.
    pub system: DensityMatrix,
    pub entropy_production: EntropyProduction,
}

/// Sequential collision engine.
#[derive(Debug, Clone)]
pub struct CollisionEngine {
    collision: ComplexMatrix,
    ancilla_swap: ComplexMatrix,
    ancilla: DensityMatrix,
    joint: DensityMatrix,
    completed: usize,
}

impl CollisionEngine {
    pub fn new(cfg: &CollisionConfig) -> Result<Self> {
        cfg.validate()?;
        let ancilla = thermal_qubit(cfg.beta, cfg.omega_r)?;
        let system = from_bloch(cfg.initial_state)?;
        Ok(Self {
            collision: collision_unitary(cfg)?,
            ancilla_swap: kron(&ComplexMatrix::identity(2), &partial_swap_unitary(cfg.theta)?),
            joint: system.tensor(&ancilla),
            ancilla,
            completed: 0,
        })
    }

    /// Fresh thermal ancilla state.
    pub fn ancilla(&self) -> &DensityMatrix {
        &self.ancilla
    }

    /// Joint (system, incoming ancilla) state awaiting the next collision.
    pub fn incoming_joint(&self) -> &DensityMatrix {
        &self.joint
    }

    /// Runs one collision and prepares the next incoming ancilla.
    pub fn step(&mut self) -> Result<CollisionStep> {
        let after = self.joint.evolve(&self.collision)?;
        let system = after.partial_trace(&[0])?;
        let entropy_production = entropy_production_joint(&after, &self.ancilla, 1)?;

        let extended = after.tensor(&self.ancilla).evolve(&self.ancilla_swap)?;
        self.joint = extended.partial_trace(&[0, 2])?;
        self.completed += 1;
        Ok(CollisionStep {
            index: self.completed,
            joint: after,
            system,
            entropy_production,
        })
    }
}

/// Record for the unevolved initial state (collision index 0).
pub fn collision_initial_record(cfg: &CollisionConfig, q: QuadratureSpec) -> Result<QuantifierRecord> {
    let engine = CollisionEngine::new(cfg)?;
    let joint = engine.incoming_joint();
    let ep = entropy_production_joint(joint, engine.ancilla(), 1)?;
    qubit_record(0.0, &joint.partial_trace(&[0])?, cfg.omega_s, ep.sigma, q)
}

/// One record per collision n = 1..=n_collisions, Σ_n evaluated against the
/// fresh thermal ancilla.
pub fn run_collision(cfg: &CollisionConfig, q: QuadratureSpec) -> Result<Vec<QuantifierRecord>> {
    let mut engine = CollisionEngine::new(cfg)?;
    (0..cfg.n_collisions)
        .map(|_| {
            let step = engine.step()?;
            qubit_record(
                step.index as f64,
                &step.system,
                cfg.omega_s,
                step.entropy_production.sigma,
                q,
            )
        })
        .collect()
}

/// Matrix of the Markovian one-collision map ρ ↦ Tr_R[U(ρ ⊗ ρ_R)U†]
/// acting on row-major vec(ρ).
pub fn one_collision_map(cfg: &CollisionConfig) -> Result<ComplexMatrix> {
    cfg.validate()?;
    let u = collision_unitary(cfg)?;
    let ancilla = thermal_qubit(cfg.beta, cfg.omega_r)?;
    let mut map = ComplexMatrix::zeros(4, 4);
    for col in 0..4 {
        let mut basis = ComplexMatrix::zeros(2, 2);
        basis[(col / 2, col % 2)] = C64::new(1.0, 0.0);
        let image = partial_trace(&kron(&basis, ancilla.mat()).conjugate_by(&u), &[2, 2], &[0])?;
        for row in 0..4 {
            map[(row, col)] = image[(row / 2, row % 2)];
        }
    }
    Ok(map)
}

/// Applies a 4×4 map matrix to a qubit operator.
pub fn apply_map(map: &ComplexMatrix, rho: &ComplexMatrix) -> ComplexMatrix {
    ComplexMatrix::from_fn(2, 2, |i, j| {
        (0..4).map(|k| map[(2 * i + j, k)] * rho[(k / 2, k % 2)]).sum()
    })
}

/// Unit-trace eigenoperator of the one-collision map with eigenvalue 1.
pub fn markovian_fixed_point(cfg: &CollisionConfig) -> Result<DensityMatrix> {
    let map = one_collision_map(cfg)?;
    let mut a = DMatrix::<C64>::from_fn(4, 4, |i, j| {
        let delta = if i == j { 1.0 } else { 0.0 };
        map[(i, j)] - C64::new(delta, 0.0)
    });
    // Trace preservation makes the rows linearly dependent; swap one for Tr ρ = 1.
    for j in 0..4 {
        a[(0, j)] = C64::new(if j == 0 || j == 3 { 1.0 } else { 0.0 }, 0.0);
    }
    let mut rhs = DVector::<C64>::zeros(4);
    rhs[0] = C64::new(1.0, 0.0);
    let v = a
        .lu()
        .solve(&rhs)
        .ok_or_else(|| Error::Statistics("one-collision map has no unique fixed point".into()))?;
    let rho = ComplexMatrix::from_fn(2, 2, |i, j| v[2 * i + j]);
    DensityMatrix::single(rho)
}

/// ½‖ρ − σ‖₁ for Hermitian operators.
pub fn trace_distance(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    let diff = rho.mat() - sigma.mat();
    let eig = crate::numerics::eigh(&diff)?;
    Ok(0.5 * eig.eigenvalues.iter().map(|l| l.abs()).sum::<f64>())
}
