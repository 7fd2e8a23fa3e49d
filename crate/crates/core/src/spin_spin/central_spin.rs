//! Central qubit coupled uniformly to N bath spins, solved exactly in the
//! symmetric (Dicke) sector of the bath.

use crate::dynamics::{JointEvolution, TimeGrid};
use crate::error::{invalid, Result};
use crate::numerics::{kron, ComplexMatrix};
use crate::quantifiers::{QuadratureSpec, QuantifierRecord};
use crate::states::{dicke_operators, from_bloch, gibbs_state, pauli, BlochVector, DensityMatrix};

#[derive(Debug, Clone, PartialEq)]
pub struct CentralSpinConfig {
    pub omega0: f64,
    pub omega: f64,
    pub beta: f64,
    pub epsilon: f64,
    pub n_bath: usize,
    pub t_grid: TimeGrid,
    pub initial_state: BlochVector,
}

impl CentralSpinConfig {
    /// Default sampling window: 400 points on t ∈ [0, 20].
    pub const DEFAULT_T_MAX: f64 = 20.0;
    pub const DEFAULT_SAMPLES: usize = 400;

    /// ω₀ = 1.5, ω = 1, β = 100, ε = 0.5, N = 50.
    pub fn figure3() -> Self {
        Self {
            omega0: 1.5,
            omega: 1.0,
            beta: 100.0,
            epsilon: 0.5,
            n_bath: 50,
            t_grid: TimeGrid::uniform(0.0, Self::DEFAULT_T_MAX, Self::DEFAULT_SAMPLES).expect("default grid is valid"),
            initial_state: BlochVector::NS1,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("omega0", self.omega0),
            ("omega", self.omega),
            ("epsilon", self.epsilon),
        ] {
            if !v.is_finite() {
                return Err(invalid(name, "must be finite"));
            }
        }
        if !(self.beta >= 0.0) || !self.beta.is_finite() {
            return Err(invalid(
                "beta",
                format!("must be finite and non-negative, got {}", self.beta),
            ));
        }
        if self.n_bath == 0 {
            return Err(invalid("n_bath", "must be at least 1"));
        }
        BlochVector::new(self.initial_state.x, self.initial_state.y, self.initial_state.z)?;
        Ok(())
    }
}

/// Bath Hamiltonian (ω/N) J_z on the Dicke space.
pub fn bath_hamiltonian(cfg: &CentralSpinConfig) -> Result<ComplexMatrix> {
    let ops = dicke_operators(cfg.n_bath)?;
    Ok(ops.jz.scale_re(cfg.omega / cfg.n_bath as f64))
}

/// H = (ω₀/2)σ_z ⊗ I + I ⊗ (ω/N)J_z + (ε/√N)(σₓ ⊗ Jₓ + σ_y ⊗ J_y).
pub fn central_spin_hamiltonian(cfg: &CentralSpinConfig) -> Result<ComplexMatrix> {
    cfg.validate()?;
    let ops = dicke_operators(cfg.n_bath)?;
    let n = cfg.n_bath as f64;
    let local_s = kron(
        &pauli::z().scale_re(0.5 * cfg.omega0),
        &ComplexMatrix::identity(ops.dim()),
    );
    let local_b = kron(&ComplexMatrix::identity(2), &ops.jz.scale_re(cfg.omega / n));
    let coupling = (&kron(&pauli::x(), &ops.jx) + &kron(&pauli::y(), &ops.jy)).scale_re(cfg.epsilon / n.sqrt());
    Ok(&(&local_s + &local_b) + &coupling)
}

/// Initial bath state e^{−βH_B}/Z.
pub fn central_spin_bath(cfg: &CentralSpinConfig) -> Result<DensityMatrix> {
    gibbs_state(&bath_hamiltonian(cfg)?, cfg.beta)
}

/// Exact propagator for ρ_S(0) ⊗ ρ_B(0).
pub fn central_spin_evolution(cfg: &CentralSpinConfig) -> Result<JointEvolution> {
    let h = central_spin_hamiltonian(cfg)?;
    let joint = from_bloch(cfg.initial_state)?.tensor(&central_spin_bath(cfg)?);
    JointEvolution::new(h, joint)
}

pub fn run_central_spin(cfg: &CentralSpinConfig, q: QuadratureSpec) -> Result<Vec<QuantifierRecord>> {
    let evolution = central_spin_evolution(cfg)?;
    let bath = central_spin_bath(cfg)?;
    evolution.qubit_records(&bath, cfg.omega0, &cfg.t_grid, q)
}
