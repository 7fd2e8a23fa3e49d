//! Non-Markovian amplitude damping from a Lorentzian vacuum bath, using the
//! closed-form decoherence function G(t).

use num_complex::Complex64 as C64;

use crate::dynamics::TimeGrid;
use crate::error::{invalid, Result};
use crate::numerics::ComplexMatrix;
use crate::quantifiers::{entropy_production_fixed_point, qubit_record, QuadratureSpec, QuantifierRecord};
use crate::states::{from_bloch, BlochVector, DensityMatrix};

#[derive(Debug, Clone, PartialEq)]
pub struct NmadConfig {
    pub omega0: f64,
    pub lambda: f64,
    pub gamma0: f64,
    pub t_grid: TimeGrid,
    /// Excited-state weight mixed into the pure fixed point |g⟩⟨g|.
    pub reg_epsilon: f64,
    pub initial_state: BlochVector,
}

impl NmadConfig {
    pub const DEFAULT_REG_EPSILON: f64 = 1e-9;
    /// Default sampling window: 400 points on t ∈ [0, 30].
    pub const DEFAULT_T_MAX: f64 = 30.0;
    pub const DEFAULT_SAMPLES: usize = 400;

    /// ω₀ = 10, λ = 0.05, γ₀ = 50.
    pub fn figure4() -> Self {
        Self {
            omega0: 10.0,
            lambda: 0.05,
            gamma0: 50.0,
            t_grid: TimeGrid::uniform(0.0, Self::DEFAULT_T_MAX, Self::DEFAULT_SAMPLES).expect("default grid is valid"),
            reg_epsilon: Self::DEFAULT_REG_EPSILON,
            initial_state: BlochVector::NS1,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.omega0.is_finite() {
            return Err(invalid("omega0", "must be finite"));
        }
        if !(self.lambda > 0.0) || !self.lambda.is_finite() {
            return Err(invalid("lambda", format!("must be positive, got {}", self.lambda)));
        }
        if !(self.gamma0 > 0.0) || !self.gamma0.is_finite() {
            return Err(invalid("gamma0", format!("must be positive, got {}", self.gamma0)));
        }
        if !(self.reg_epsilon > 0.0 && self.reg_epsilon < 0.5) {
            return Err(invalid(
                "reg_epsilon",
                format!("must lie in (0, 0.5), got {}", self.reg_epsilon),
            ));
        }
        BlochVector::new(self.initial_state.x, self.initial_state.y, self.initial_state.z)?;
        Ok(())
    }
}

/// l = √(λ² − 2γ₀λ), imaginary in the non-Markovian regime λ < 2γ₀.
fn l_parameter(lambda: f64, gamma0: f64) -> C64 {
    C64::new(lambda * lambda - 2.0 * gamma0 * lambda, 0.0).sqrt()
}

/// sinh(z)/z, with its Taylor series near zero.
fn sinhc(z: C64) -> C64 {
    if z.norm() < 1e-4 {
        let z2 = z * z;
        C64::new(1.0, 0.0) + z2 / 6.0 + z2 * z2 / 120.0
    } else {
        z.sinh() / z
    }
}

/// G(t) = e^{−λt/2}[cosh(lt/2) + (λ/l) sinh(lt/2)].
pub fn g_function(lambda: f64, gamma0: f64, t: f64) -> C64 {
    let l = l_parameter(lambda, gamma0);
    let half = l * (0.5 * t);
    let g = if l.im == 0.0 && half.re > 1.0 {
        // Overdamped: fold the envelope into each exponential so large λt cannot overflow.
        let (l, a) = (l.re, 0.5 * t);
        let fast = (-(l + lambda) * a).exp();
        let slow = ((l - lambda) * a).exp();
        C64::new(0.5 * (slow * (1.0 + lambda / l) + fast * (1.0 - lambda / l)), 0.0)
    } else {
        (-0.5 * lambda * t).exp() * (half.cosh() + sinhc(half) * (0.5 * lambda * t))
    };
    if g.im.abs() <= 1e-12 {
        C64::new(g.re, 0.0)
    } else {
        g
    }
}

/// dG/dt = −(γ₀λ/l) e^{−λt/2} sinh(lt/2).
pub fn g_derivative(lambda: f64, gamma0: f64, t: f64) -> C64 {
    let l = l_parameter(lambda, gamma0);
    let half = l * (0.5 * t);
    if l.im == 0.0 && half.re > 1.0 {
        let (l, a) = (l.re, 0.5 * t);
        let fast = (-(l + lambda) * a).exp();
        let slow = ((l - lambda) * a).exp();
        return C64::new(-(gamma0 * lambda) / (2.0 * l) * (slow - fast), 0.0);
    }
    -(gamma0 * lambda) * (-0.5 * lambda * t).exp() * sinhc(half) * (0.5 * t)
}

/// Time-dependent decay rate γ(t) = −2 Re(Ġ/G) and shift S(t) = −2 Im(Ġ/G).
///
/// Diagnostic only; both diverge at zeros of G.
pub fn nmad_rates(lambda: f64, gamma0: f64, t: f64) -> (f64, f64) {
    let ratio = g_derivative(lambda, gamma0, t) / g_function(lambda, gamma0, t);
    (-2.0 * ratio.re, -2.0 * ratio.im)
}

/// ρ_ee → ρ_ee|G|², ρ_ge → ρ_ge G, ρ_gg → ρ_gg + (1 − |G|²)ρ_ee.
pub fn nmad_channel(rho: &DensityMatrix, g: C64) -> Result<DensityMatrix> {
    let m = rho.mat();
    let decay = g.norm_sqr();
    let excited = m[(0, 0)].re;
    let out = ComplexMatrix::from_fn(2, 2, |i, j| match (i, j) {
        (0, 0) => C64::new(excited * decay, 0.0),
        (1, 1) => C64::new(m[(1, 1)].re + (1.0 - decay) * excited, 0.0),
        (1, 0) => m[(1, 0)] * g,
        _ => m[(0, 1)] * g.conj(),
    });
    DensityMatrix::single(out)
}

/// (1 − ε)|g⟩⟨g| + ε|e⟩⟨e|.
pub fn nmad_fixed_point(reg_epsilon: f64) -> Result<DensityMatrix> {
    DensityMatrix::single(ComplexMatrix::from_real_diag(&[reg_epsilon, 1.0 - reg_epsilon]))
}

/// State at each grid time.
pub fn nmad_states(cfg: &NmadConfig) -> Result<Vec<DensityMatrix>> {
    cfg.validate()?;
    let rho0 = from_bloch(cfg.initial_state)?;
    cfg.t_grid
        .times()
        .iter()
        .map(|&t| nmad_channel(&rho0, g_function(cfg.lambda, cfg.gamma0, t)))
        .collect()
}

pub fn run_nmad(cfg: &NmadConfig, q: QuadratureSpec) -> Result<Vec<QuantifierRecord>> {
    let states = nmad_states(cfg)?;
    let rho0 = nmad_channel(&from_bloch(cfg.initial_state)?, C64::new(1.0, 0.0))?;
    let star = nmad_fixed_point(cfg.reg_epsilon)?;
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

/// First positive zero of G in the non-Markovian regime, by bisection.
pub fn first_zero_of_g(lambda: f64, gamma0: f64) -> Option<f64> {
    let l = l_parameter(lambda, gamma0);
    if l.im == 0.0 {
        return None;
    }
    // G = e^{−λt/2}[cos(ωt) + (λ/2ω) sin(ωt)], ω = |l|/2: first root in (π/2ω, π/ω).
    let w = 0.5 * l.im.abs();
    let (mut a, mut b) = (0.5 * std::f64::consts::PI / w, std::f64::consts::PI / w);
    let f = |t: f64| g_function(lambda, gamma0, t).re;
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if f(a) * f(m) <= 0.0 {
            b = m;
        } else {
            a = m;
        }
    }
    Some(0.5 * (a + b))
}
