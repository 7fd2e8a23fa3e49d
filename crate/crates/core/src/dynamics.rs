//! Shared pieces of the model engines: sampling grids and exact joint
//! system–environment propagation.

use crate::error::{invalid, Result};
use crate::numerics::{eigh, ComplexMatrix, HermitianEigen};
use crate::quantifiers::{entropy_production_joint, qubit_record, QuadratureSpec, QuantifierRecord};
use crate::states::DensityMatrix;

/// Strictly increasing, non-negative sample times.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeGrid(Vec<f64>);

impl TimeGrid {
    pub fn new(times: Vec<f64>) -> Result<Self> {
        if times.is_empty() {
            return Err(invalid("t_grid", "must contain at least one time"));
        }
        if times.iter().any(|t| !t.is_finite()) {
            return Err(invalid("t_grid", "times must be finite"));
        }
        if times[0] < 0.0 {
            return Err(invalid("t_grid", format!("must start at t >= 0, got {}", times[0])));
        }
        if times.windows(2).any(|w| w[1] <= w[0]) {
            return Err(invalid("t_grid", "times must be strictly increasing"));
        }
        Ok(Self(times))
    }

    /// `n_samples` evenly spaced times from `t_min` to `t_max` inclusive.
    pub fn uniform(t_min: f64, t_max: f64, n_samples: usize) -> Result<Self> {
        match n_samples {
            0 => Err(invalid("n_samples", "must be at least 1")),
            1 => Self::new(vec![t_min]),
            _ => {
                if !(t_max > t_min) {
                    return Err(invalid("t_max", format!("must exceed t_min = {t_min}, got {t_max}")));
                }
                let step = (t_max - t_min) / (n_samples - 1) as f64;
                Self::new((0..n_samples).map(|k| t_min + k as f64 * step).collect())
            }
        }
    }

    pub fn times(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn min_spacing(&self) -> f64 {
        self.0.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min)
    }
}

/// ρ(t) = e^{−iHt} ρ(0) e^{iHt} from one eigendecomposition of H.
#[derive(Debug, Clone)]
pub struct JointEvolution {
    hamiltonian: ComplexMatrix,
    eig: HermitianEigen,
    initial: DensityMatrix,
    initial_eigenbasis: ComplexMatrix,
}

impl JointEvolution {
    pub fn new(hamiltonian: ComplexMatrix, initial: DensityMatrix) -> Result<Self> {
        let eig = eigh(&hamiltonian)?;
        let initial_eigenbasis = eig.to_eigenbasis(initial.mat());
        Ok(Self {
            hamiltonian,
            eig,
            initial,
            initial_eigenbasis,
        })
    }

    pub fn hamiltonian(&self) -> &ComplexMatrix {
        &self.hamiltonian
    }

    pub fn initial(&self) -> &DensityMatrix {
        &self.initial
    }

    /// Joint state at time `t`; `t == 0` returns the initial state unchanged.
    pub fn state_at(&self, t: f64) -> Result<DensityMatrix> {
        if t == 0.0 {
            return Ok(self.initial.clone());
        }
        let mat = self.eig.evolve_from_eigenbasis(&self.initial_eigenbasis, t);
        DensityMatrix::new(mat, self.initial.subsystem_dims().to_vec())
    }

    /// Records for a qubit (subsystem 0) coupled to an environment whose
    /// initial state is `env_initial`.
    pub fn qubit_records(
        &self,
        env_initial: &DensityMatrix,
        omega0: f64,
        grid: &TimeGrid,
        q: QuadratureSpec,
    ) -> Result<Vec<QuantifierRecord>> {
        grid.times()
            .iter()
            .map(|&t| {
                let joint = self.state_at(t)?;
                let system = joint.partial_trace(&[0])?;
                let ep = entropy_production_joint(&joint, env_initial, 1)?;
                qubit_record(t, &system, omega0, ep.sigma, q)
            })
            .collect()
    }
}
