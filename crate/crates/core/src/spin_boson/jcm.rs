//! Jaynes–Cummings qubit coupled to a single thermal cavity mode, truncated
//! at n_max photons and propagated exactly.

use crate::dynamics::{JointEvolution, TimeGrid};
use crate::error::{invalid, Result};
use crate::numerics::{kron, ComplexMatrix};
use crate::quantifiers::{QuadratureSpec, QuantifierRecord};
use crate::states::{from_bloch, pauli, thermal_fock, BlochVector, FockSpace, ThermalFock};

/// Population of |n_max⟩ above which truncation is reported.
pub const LEAKAGE_THRESHOLD: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub struct JcmConfig {
    pub omega0: f64,
    pub omega_c: f64,
    pub beta: f64,
    pub g: f64,
    pub n_max: usize,
    pub t_grid: TimeGrid,
    pub initial_state: BlochVector,
}

impl JcmConfig {
    pub const DEFAULT_N_MAX: usize = 32;
    /// Sampling interval τ = 0.5, 400 samples from t = 0.
    pub const DEFAULT_TAU: f64 = 0.5;
    pub const DEFAULT_SAMPLES: usize = 400;

    /// ω₀ = 1.5, ω_c = 1, β = 3, g = 0.5.
    pub fn figure6() -> Self {
        let t_max = Self::DEFAULT_TAU * (Self::DEFAULT_SAMPLES - 1) as f64;
        Self {
            omega0: 1.5,
            omega_c: 1.0,
            beta: 3.0,
            g: 0.5,
            n_max: Self::DEFAULT_N_MAX,
            t_grid: TimeGrid::uniform(0.0, t_max, Self::DEFAULT_SAMPLES).expect("default grid is valid"),
            initial_state: BlochVector::NS1,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.omega0.is_finite() {
            return Err(invalid("omega0", "must be finite"));
        }
        if !(self.g >= 0.0) || !self.g.is_finite() {
            return Err(invalid("g", format!("must be finite and non-negative, got {}", self.g)));
        }
        if self.n_max < 4 {
            return Err(invalid("n_max", format!("must be at least 4, got {}", self.n_max)));
        }
        BlochVector::new(self.initial_state.x, self.initial_state.y, self.initial_state.z)?;
        // beta and omega_c are checked by thermal_fock.
        Ok(())
    }
}

/// H = (ω₀/2)σ_z ⊗ I + ω_c I ⊗ a†a + g(σ⁺ ⊗ a + σ⁻ ⊗ a†).
pub fn jcm_hamiltonian(cfg: &JcmConfig) -> Result<ComplexMatrix> {
    cfg.validate()?;
    let fock = FockSpace::new(cfg.n_max)?;
    let local_s = kron(
        &pauli::z().scale_re(0.5 * cfg.omega0),
        &ComplexMatrix::identity(fock.dim()),
    );
    let local_b = kron(&ComplexMatrix::identity(2), &fock.number().scale_re(cfg.omega_c));
    let coupling =
        (&kron(&pauli::raising(), &fock.annihilate) + &kron(&pauli::lowering(), &fock.create)).scale_re(cfg.g);
    Ok(&(&local_s + &local_b) + &coupling)
}

/// N_ex = |e⟩⟨e| ⊗ I + I ⊗ a†a.
pub fn excitation_number(n_max: usize) -> Result<ComplexMatrix> {
    let fock = FockSpace::new(n_max)?;
    Ok(&kron(&pauli::excited_projector(), &ComplexMatrix::identity(fock.dim()))
        + &kron(&ComplexMatrix::identity(2), &fock.number()))
}

pub fn jcm_bath(cfg: &JcmConfig) -> Result<ThermalFock> {
    thermal_fock(cfg.beta, cfg.omega_c, cfg.n_max)
}

pub fn jcm_evolution(cfg: &JcmConfig) -> Result<JointEvolution> {
    let h = jcm_hamiltonian(cfg)?;
    let joint = from_bloch(cfg.initial_state)?.tensor(&jcm_bath(cfg)?.state);
    JointEvolution::new(h, joint)
}

#[derive(Debug, Clone, PartialEq)]
pub struct JcmRun {
    pub records: Vec<QuantifierRecord>,
    /// Boltzmann weight dropped from the initial bath by truncation.
    pub tail_weight: f64,
    /// Largest population of |n_max⟩ seen over the grid.
    pub max_edge_population: f64,
    pub leakage_warning: Option<String>,
}

pub fn run_jcm(cfg: &JcmConfig, q: QuadratureSpec) -> Result<JcmRun> {
    let bath = jcm_bath(cfg)?;
    let evolution = jcm_evolution(cfg)?;
    let records = evolution.qubit_records(&bath.state, cfg.omega0, &cfg.t_grid, q)?;
    let mut max_edge = 0.0f64;
    for &t in cfg.t_grid.times() {
        let field = evolution.state_at(t)?.partial_trace(&[1])?;
        max_edge = max_edge.max(field.mat()[(cfg.n_max, cfg.n_max)].re);
    }
    let leakage_warning = (max_edge > LEAKAGE_THRESHOLD).then(|| {
        format!(
            "population of |n_max = {}> reached {max_edge:.3e}; increase n_max",
            cfg.n_max
        )
    });
    Ok(JcmRun {
        records,
        tail_weight: bath.tail_weight,
        max_edge_population: max_edge,
        leakage_warning,
    })
}
