//! Generalized amplitude damping: a qubit relaxing into a thermal bosonic
//! bath, integrated with fixed-step RK4 and checked against the exact Bloch
//! solution.

use num_complex::Complex64 as C64;

use crate::dynamics::TimeGrid;
use crate::error::{invalid, Result};
use crate::numerics::ComplexMatrix;
use crate::quantifiers::{entropy_production_fixed_point, qubit_record, QuadratureSpec, QuantifierRecord};
use crate::states::{from_bloch, thermal_qubit, BlochVector, DensityMatrix};

#[derive(Debug, Clone, PartialEq)]
pub struct GadConfig {
    pub omega0: f64,
    pub beta: f64,
    pub gamma: f64,
    pub t_grid: TimeGrid,
    /// Integrator step; each grid interval is split into equal steps no longer than this.
    pub dt: f64,
    pub initial_state: BlochVector,
}

impl GadConfig {
    pub const DEFAULT_DT: f64 = 1e-3;
    /// Default sampling window: 400 points on t ∈ [0, 100].
    pub const DEFAULT_T_MAX: f64 = 100.0;
    pub const DEFAULT_SAMPLES: usize = 400;

    /// ω₀ = 1.5, β = 1, γ = 0.05.
    pub fn figure5() -> Self {
        Self {
            omega0: 1.5,
            beta: 1.0,
            gamma: 0.05,
            t_grid: TimeGrid::uniform(0.0, Self::DEFAULT_T_MAX, Self::DEFAULT_SAMPLES).expect("default grid is valid"),
            dt: Self::DEFAULT_DT,
            initial_state: BlochVector::NS1,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.omega0 > 0.0) || !self.omega0.is_finite() {
            return Err(invalid("omega0", format!("must be positive, got {}", self.omega0)));
        }
        if !(self.beta > 0.0) || !self.beta.is_finite() {
            return Err(invalid(
                "beta",
                format!("must be positive and finite, got {}", self.beta),
            ));
        }
        if !(self.gamma > 0.0) || !self.gamma.is_finite() {
            return Err(invalid("gamma", format!("must be positive, got {}", self.gamma)));
        }
        if !(self.dt > 0.0) || !self.dt.is_finite() {
            return Err(invalid("dt", format!("must be positive, got {}", self.dt)));
        }
        if self.t_grid.len() > 1 && self.dt > self.t_grid.min_spacing() {
            return Err(invalid(
                "dt",
                format!(
                    "step {} exceeds the grid spacing {}",
                    self.dt,
                    self.t_grid.min_spacing()
                ),
            ));
        }
        BlochVector::new(self.initial_state.x, self.initial_state.y, self.initial_state.z)?;
        Ok(())
    }

    /// N^th = 1/(e^{βω₀} − 1).
    pub fn thermal_occupation(&self) -> f64 {
        thermal_photon_number(self.beta, self.omega0)
    }

    /// Bloch relaxation rate Γ = γ(2N^th + 1).
    pub fn relaxation_rate(&self) -> f64 {
        self.gamma * (2.0 * self.thermal_occupation() + 1.0)
    }

    /// Stationary z = −1/(2N^th + 1) = −tanh(βω₀/2).
    pub fn stationary_z(&self) -> f64 {
        -(0.5 * self.beta * self.omega0).tanh()
    }
}

pub fn thermal_photon_number(beta: f64, omega: f64) -> f64 {
    1.0 / (beta * omega).exp_m1()
}

// Row-major [ρ_ee, ρ_eg, ρ_ge, ρ_gg].
type Qubit = [C64; 4];

struct Rates {
    omega0: f64,
    down: f64,
    up: f64,
}

impl Rates {
    fn new(cfg: &GadConfig) -> Self {
        let n = cfg.thermal_occupation();
        Self {
            omega0: cfg.omega0,
            down: cfg.gamma * (n + 1.0),
            up: cfg.gamma * n,
        }
    }

    fn rhs(&self, r: &Qubit) -> Qubit {
        let (ee, eg, ge, gg) = (r[0], r[1], r[2], r[3]);
        let flow = self.up * gg - self.down * ee;
        let damp = C64::new(-0.5 * (self.down + self.up), -self.omega0);
        [flow, damp * eg, damp.conj() * ge, -flow]
    }

    fn rk4_step(&self, r: &Qubit, h: f64) -> Qubit {
        let axpy = |a: &Qubit, k: &Qubit, s: f64| -> Qubit { std::array::from_fn(|i| a[i] + k[i] * s) };
        let k1 = self.rhs(r);
        let k2 = self.rhs(&axpy(r, &k1, 0.5 * h));
        let k3 = self.rhs(&axpy(r, &k2, 0.5 * h));
        let k4 = self.rhs(&axpy(r, &k3, h));
        std::array::from_fn(|i| r[i] + (k1[i] + k2[i] * 2.0 + k3[i] * 2.0 + k4[i]) * (h / 6.0))
    }
}

/// dρ/dt = −i[H_s, ρ] + γ(N+1)D[σ⁻]ρ + γN D[σ⁺]ρ with H_s = (ω₀/2)σ_z.
pub fn gad_generator(cfg: &GadConfig, rho: &DensityMatrix) -> Result<ComplexMatrix> {
    if rho.dim() != 2 {
        return Err(invalid(
            "rho",
            format!("expected a single qubit, got dimension {}", rho.dim()),
        ));
    }
    let r: Qubit = rho.mat().as_slice().try_into().expect("2x2");
    ComplexMatrix::from_vec(2, 2, Rates::new(cfg).rhs(&r).to_vec())
}

/// States at each grid time from fixed-step RK4.
pub fn gad_trajectory(cfg: &GadConfig) -> Result<Vec<DensityMatrix>> {
    cfg.validate()?;
    let rates = Rates::new(cfg);
    let rho0 = from_bloch(cfg.initial_state)?;
    let mut r: Qubit = rho0.mat().as_slice().try_into().expect("2x2");
    let mut t = 0.0;
    let mut out = Vec::with_capacity(cfg.t_grid.len());
    for &target in cfg.t_grid.times() {
        let span = target - t;
        if span > 0.0 {
            let steps = (span / cfg.dt).ceil().max(1.0) as usize;
            let h = span / steps as f64;
            for _ in 0..steps {
                r = rates.rk4_step(&r, h);
            }
        }
        t = target;
        out.push(DensityMatrix::single(ComplexMatrix::from_vec(2, 2, r.to_vec())?)?);
    }
    Ok(out)
}

/// Exact Bloch vector at time `t`.
pub fn gad_closed_form(cfg: &GadConfig, t: f64) -> Result<BlochVector> {
    if !(t >= 0.0) {
        return Err(invalid("t", format!("must be non-negative, got {t}")));
    }
    let b = cfg.initial_state;
    let big_gamma = cfg.relaxation_rate();
    let z_inf = cfg.stationary_z();
    let z = z_inf + (b.z - z_inf) * (-big_gamma * t).exp();
    // x − iy is twice ρ_eg, which picks up e^{−iω₀t − Γt/2}.
    let c = C64::new(b.x, -b.y) * C64::new(-0.5 * big_gamma * t, -cfg.omega0 * t).exp();
    Ok(BlochVector { x: c.re, y: -c.im, z })
}

pub fn gad_fixed_point(cfg: &GadConfig) -> Result<DensityMatrix> {
    thermal_qubit(cfg.beta, cfg.omega0)
}

pub fn run_gad(cfg: &GadConfig, q: QuadratureSpec) -> Result<Vec<QuantifierRecord>> {
    let states = gad_trajectory(cfg)?;
    let rho0 = from_bloch(cfg.initial_state)?;
    let star = gad_fixed_point(cfg)?;
    cfg.t_grid
        .times()
        .iter()
        .zip(&states)
        .map(|(&t, rho)| {
            let sigma = entropy_production_fixed_point(&rho0, rho, &star)?;
            qubit_record(t, rho, cfg.omega0, sigma, q)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{qubit_hamiltonian, to_bloch};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn grid(t_max: f64, n: usize) -> TimeGrid {
        TimeGrid::uniform(0.0, t_max, n).unwrap()
    }

    #[test]
    fn thermal_numbers() {
        let cfg = GadConfig::figure5();
        let n = cfg.thermal_occupation();
        assert!((n - 1.0 / (1.5f64.exp() - 1.0)).abs() < 1e-15);
        assert!((n - 0.287217).abs() < 1e-6);
        assert!((cfg.stationary_z() + 1.0 / (2.0 * n + 1.0)).abs() < 1e-14);
        assert!((cfg.stationary_z() + 0.635149).abs() < 1e-6);
    }

    #[test]
    fn gibbs_state_is_stationary() {
        let cfg = GadConfig::figure5();
        let d = gad_generator(&cfg, &gad_fixed_point(&cfg).unwrap()).unwrap();
        assert!(d.max_abs() < 1e-15);
    }

    #[test]
    fn generator_matches_lindblad_form() {
        let cfg = GadConfig {
            beta: 0.7,
            gamma: 0.3,
            ..GadConfig::figure5()
        };
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let n = cfg.thermal_occupation();
        let (sm, sp) = (crate::states::pauli::lowering(), crate::states::pauli::raising());
        let dissipator = |l: &ComplexMatrix, rho: &ComplexMatrix| {
            let ld = l.adjoint();
            let ldl = ld.matmul(l);
            &(&l.matmul(rho).matmul(&ld) - &ldl.matmul(rho).scale_re(0.5)) - &rho.matmul(&ldl).scale_re(0.5)
        };
        for _ in 0..20 {
            let (x, y, z): (f64, f64, f64) = (
                rng.gen_range(-0.5..0.5),
                rng.gen_range(-0.5..0.5),
                rng.gen_range(-0.5..0.5),
            );
            let rho = from_bloch(BlochVector::new(x, y, z).unwrap()).unwrap();
            let h = qubit_hamiltonian(cfg.omega0);
            let m = rho.mat();
            let unitary = crate::numerics::commutator(&h, m).scale(C64::new(0.0, -1.0));
            let expected = &(&unitary + &dissipator(&sm, m).scale_re(cfg.gamma * (n + 1.0)))
                + &dissipator(&sp, m).scale_re(cfg.gamma * n);
            let d = gad_generator(&cfg, &rho).unwrap();
            assert!((&d - &expected).max_abs() < 1e-14);
            assert!(d.trace().norm() < 1e-15);
            assert!(d.anti_hermitian_deviation() < 1e-15);
        }
    }

    #[test]
    fn zero_temperature_reduces_to_amplitude_damping() {
        let cfg = GadConfig {
            beta: 1e3,
            ..GadConfig::figure5()
        };
        assert_eq!(cfg.thermal_occupation(), 0.0);
        let rho = from_bloch(BlochVector::NS1).unwrap();
        let d = gad_generator(&cfg, &rho).unwrap();
        let pe = rho.mat()[(0, 0)].re;
        assert!((d[(0, 0)].re + cfg.gamma * pe).abs() < 1e-15);
    }

    #[test]
    fn rk4_matches_closed_form() {
        let cfg = GadConfig {
            t_grid: grid(200.0, 201),
            ..GadConfig::figure5()
        };
        let states = gad_trajectory(&cfg).unwrap();
        for (&t, rho) in cfg.t_grid.times().iter().zip(&states) {
            let a = to_bloch(rho).unwrap();
            let b = gad_closed_form(&cfg, t).unwrap();
            assert!((a.x - b.x).abs() < 1e-9 && (a.y - b.y).abs() < 1e-9 && (a.z - b.z).abs() < 1e-9);
        }
        let last = to_bloch(states.last().unwrap()).unwrap();
        assert!((last.z - cfg.stationary_z()).abs() < 1e-6);
    }

    #[test]
    fn closed_form_limits() {
        let cfg = GadConfig::figure5();
        assert_eq!(gad_closed_form(&cfg, 0.0).unwrap(), BlochVector::NS1);
        let late = gad_closed_form(&cfg, 200.0 / cfg.gamma).unwrap();
        assert!(late.x.abs() < 1e-12 && late.y.abs() < 1e-12);
        assert!((late.z - cfg.stationary_z()).abs() < 1e-12);
        assert!(gad_closed_form(&cfg, -1.0).is_err());
    }

    #[test]
    fn unitary_limit_rotates_coherence() {
        // γ → 0 is outside the config invariants, so drive the raw integrator.
        let rates = Rates {
            omega0: 1.5,
            down: 0.0,
            up: 0.0,
        };
        let rho = from_bloch(BlochVector::NS1).unwrap();
        let mut r: Qubit = rho.mat().as_slice().try_into().unwrap();
        for _ in 0..2000 {
            r = rates.rk4_step(&r, 1e-3);
        }
        let b = BlochVector::NS1;
        let c = C64::new(b.x, -b.y) * C64::new(0.0, -1.5 * 2.0).exp();
        assert!((r[0].re - rho.mat()[(0, 0)].re).abs() < 1e-15);
        assert!((2.0 * r[1] - c).norm() < 1e-10);
    }

    #[test]
    fn step_larger_than_spacing_rejected() {
        let cfg = GadConfig {
            dt: 0.5,
            t_grid: grid(1.0, 11),
            ..GadConfig::figure5()
        };
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn sigma_nondecreasing_and_deterministic() {
        let cfg = GadConfig::figure5();
        let q = QuadratureSpec::default();
        let recs = run_gad(&cfg, q).unwrap();
        assert_eq!(recs[0].sigma, 0.0);
        for w in recs.windows(2) {
            assert!(w[1].sigma >= w[0].sigma - 1e-12);
        }
        assert_eq!(recs, run_gad(&cfg, q).unwrap());
    }
}
