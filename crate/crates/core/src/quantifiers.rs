//! Non-classical volume, von Neumann entropy, entropy production and ergotropy.
//!
//! All entropies use the natural logarithm.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;

use crate::error::{invalid, Error, Result};
use crate::numerics::{check_hermitian, eigh, kron, ComplexMatrix, HermitianEigen, DEFAULT_LOG_FLOOR};
use crate::states::{pauli, to_bloch, BlochVector, DensityMatrix};

/// Weight a state may place outside the reference support before the
/// relative entropy is reported as infinite.
pub const DEFAULT_SUPPORT_TOL: f64 = 1e-12;

/// Maximum disagreement tolerated between the two entropy-production routes.
pub const ROUTE_AGREEMENT_TOL: f64 = 1e-8;

/// Sphere quadrature resolution for the non-classical volume.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadratureSpec {
    /// Gauss–Legendre nodes in cos θ.
    pub n_theta: usize,
    /// Uniform nodes in φ ∈ [0, 2π).
    pub n_phi: usize,
}

impl QuadratureSpec {
    pub const MIN_THETA: usize = 8;
    pub const MIN_PHI: usize = 16;

    pub fn new(n_theta: usize, n_phi: usize) -> Result<Self> {
        if n_theta < Self::MIN_THETA {
            return Err(invalid(
                "n_theta",
                format!("must be at least {}, got {n_theta}", Self::MIN_THETA),
            ));
        }
        if n_phi < Self::MIN_PHI {
            return Err(invalid(
                "n_phi",
                format!("must be at least {}, got {n_phi}", Self::MIN_PHI),
            ));
        }
        Ok(Self { n_theta, n_phi })
    }
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            n_theta: 64,
            n_phi: 128,
        }
    }
}

/// One sample of the four quantifiers along a trajectory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuantifierRecord {
    /// Time, or collision index for the collision model.
    pub abscissa: f64,
    pub delta: f64,
    pub entropy: f64,
    pub sigma: f64,
    pub ergotropy: f64,
}

impl QuantifierRecord {
    /// Checks the sign and range bounds of a qubit record.
    pub fn check_qubit_invariants(&self) -> Result<()> {
        let tol = 1e-9;
        let fail = |what: &str| Err(Error::Statistics(format!("record at {}: {what}", self.abscissa)));
        if !(self.delta >= -tol) {
            return fail("negative non-classical volume");
        }
        if !(self.entropy >= -tol && self.entropy <= 2f64.ln() + tol) {
            return fail("qubit entropy outside [0, ln 2]");
        }
        if !(self.ergotropy >= -tol) {
            return fail("negative ergotropy");
        }
        if self.sigma.is_nan() {
            return fail("entropy production is NaN");
        }
        Ok(())
    }
}

/// Gauss–Legendre nodes and weights on [−1, 1], nodes ascending.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n > 0, "need at least one node");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        // Tricomi initial guess for the i-th largest root.
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let step = p / d;
            x -= step;
            if step.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        dp = if d != 0.0 { d } else { dp };
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[n - 1 - i] = x;
        nodes[i] = -x;
        weights[n - 1 - i] = w;
        weights[i] = w;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let p = if n == 0 { 1.0 } else { p1 };
    let d = n as f64 * (x * p - p0) / (x * x - 1.0);
    (p, d)
}

/// Spin-½ Stratonovich–Weyl kernel Δ(θ, φ) = (1/4π)(I + √3 n·σ).
pub fn wigner_kernel(theta: f64, phi: f64) -> ComplexMatrix {
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi.sin_cos();
    let s3 = 3f64.sqrt();
    let n = [st * cp, st * sp, ct];
    let pref = 1.0 / (4.0 * PI);
    ComplexMatrix::from_fn(2, 2, |i, j| {
        let v = match (i, j) {
            (0, 0) => C64::new(1.0 + s3 * n[2], 0.0),
            (1, 1) => C64::new(1.0 - s3 * n[2], 0.0),
            (0, 1) => C64::new(s3 * n[0], -s3 * n[1]),
            _ => C64::new(s3 * n[0], s3 * n[1]),
        };
        v * pref
    })
}

/// W(θ, φ) = Tr[ρ Δ(θ, φ)].
pub fn wigner_function(rho: &DensityMatrix, theta: f64, phi: f64) -> Result<f64> {
    if rho.dim() != 2 {
        return Err(Error::DimensionMismatch(format!(
            "spin Wigner function needs a qubit, got dimension {}",
            rho.dim()
        )));
    }
    Ok(rho.mat().trace_product(&wigner_kernel(theta, phi)).re)
}

/// δ = ∫|W| dΩ − 1 by sphere quadrature.
///
/// Nodes are laid out in polar coordinates about the Bloch vector, so |W|
/// changes sign on a single circle of constant polar cosine; the
/// Gauss–Legendre rule is split at that circle.
pub fn nonclassical_volume(rho: &DensityMatrix, q: QuadratureSpec) -> Result<f64> {
    let r = to_bloch(rho)?;
    let norm = r.norm();
    let axis = if norm > 1e-300 {
        [r.x / norm, r.y / norm, r.z / norm]
    } else {
        [0.0, 0.0, 1.0]
    };
    let (e1, e2) = orthonormal_complement(axis);

    let s3 = 3f64.sqrt();
    let kink = -1.0 / (s3 * norm);
    let segments: Vec<(f64, f64)> = if kink > -1.0 && kink < 1.0 {
        vec![(-1.0, kink), (kink, 1.0)]
    } else {
        vec![(-1.0, 1.0)]
    };

    let (gl_x, gl_w) = gauss_legendre(q.n_theta);
    let dphi = 2.0 * PI / q.n_phi as f64;
    let mut total = 0.0;
    for (a, b) in segments {
        let (half, mid) = (0.5 * (b - a), 0.5 * (b + a));
        for (&x, &w) in gl_x.iter().zip(&gl_w) {
            let u = mid + half * x;
            let s = (1.0 - u * u).max(0.0).sqrt();
            let mut ring = 0.0;
            for k in 0..q.n_phi {
                let (sp, cp) = (k as f64 * dphi).sin_cos();
                let n: [f64; 3] = std::array::from_fn(|c| s * (cp * e1[c] + sp * e2[c]) + u * axis[c]);
                // Tr[ρΔ(n)] = (1 + √3 r·n)/4π.
                let rn = r.x * n[0] + r.y * n[1] + r.z * n[2];
                ring += ((1.0 + s3 * rn) / (4.0 * PI)).abs();
            }
            total += half * w * ring * dphi;
        }
    }
    let delta = total - 1.0;
    Ok(if (-1e-9..0.0).contains(&delta) { 0.0 } else { delta })
}

fn orthonormal_complement(a: [f64; 3]) -> ([f64; 3], [f64; 3]) {
    let helper = if a[0].abs() < 0.9 {
        [1.0, 0.0, 0.0]
    } else {
        [0.0, 1.0, 0.0]
    };
    let dot = helper[0] * a[0] + helper[1] * a[1] + helper[2] * a[2];
    let mut e1 = [helper[0] - dot * a[0], helper[1] - dot * a[1], helper[2] - dot * a[2]];
    let n1 = (e1[0] * e1[0] + e1[1] * e1[1] + e1[2] * e1[2]).sqrt();
    e1.iter_mut().for_each(|c| *c /= n1);
    let e2 = [
        a[1] * e1[2] - a[2] * e1[1],
        a[2] * e1[0] - a[0] * e1[2],
        a[0] * e1[1] - a[1] * e1[0],
    ];
    (e1, e2)
}

/// Analytic δ for a qubit with Bloch radius `r_norm` under the spin-½ kernel.
pub fn closed_form_delta(r_norm: f64) -> Result<f64> {
    if !(0.0..=1.0 + crate::states::BLOCH_TOL).contains(&r_norm) {
        return Err(invalid("r_norm", format!("must lie in [0, 1], got {r_norm}")));
    }
    let a = 3f64.sqrt() * r_norm;
    Ok(if a <= 1.0 { 0.0 } else { 0.5 * (a + 1.0 / a) - 1.0 })
}

fn entropy_of_spectrum(eigenvalues: &[f64]) -> f64 {
    -eigenvalues
        .iter()
        .filter(|&&l| l > 0.0)
        .map(|&l| l * l.ln())
        .sum::<f64>()
}

/// S(ρ) = −Tr ρ ln ρ with 0 ln 0 = 0.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    entropy_of_spectrum(&rho.eigenvalues()).max(0.0)
}

/// −Tr ρ ln σ given σ's spectral data (columns of `vectors`, any order).
fn cross_entropy(rho: &ComplexMatrix, vectors: &ComplexMatrix, values: &[f64], support_tol: f64) -> f64 {
    let rv = rho.matmul(vectors);
    let n = values.len();
    let mut acc = 0.0;
    for k in 0..n {
        let weight: f64 = (0..n).map(|i| (vectors[(i, k)].conj() * rv[(i, k)]).re).sum();
        if values[k] <= DEFAULT_LOG_FLOOR {
            if weight > support_tol {
                return f64::INFINITY;
            }
            continue;
        }
        acc -= weight * values[k].ln();
    }
    acc
}

fn check_same_dim(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<()> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch(format!(
            "relative entropy between dimensions {} and {}",
            rho.dim(),
            sigma.dim()
        )));
    }
    Ok(())
}

/// S(ρ‖σ) = Tr ρ ln ρ − Tr ρ ln σ; `f64::INFINITY` when ρ leaves σ's support.
pub fn relative_entropy(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    relative_entropy_with_tol(rho, sigma, DEFAULT_SUPPORT_TOL)
}

pub fn relative_entropy_with_tol(rho: &DensityMatrix, sigma: &DensityMatrix, support_tol: f64) -> Result<f64> {
    check_same_dim(rho, sigma)?;
    let se = eigh(sigma.mat())?;
    let cross = cross_entropy(rho.mat(), &se.eigenvectors, &se.eigenvalues, support_tol);
    if cross.is_infinite() {
        return Ok(f64::INFINITY);
    }
    Ok(cross - von_neumann_entropy(rho))
}

/// Splits a state's subsystem list at `split` into (first, second) index sets.
fn bipartition(rho: &DensityMatrix, split: usize) -> Result<(Vec<usize>, Vec<usize>)> {
    let n = rho.subsystem_dims().len();
    if n < 2 || split == 0 || split >= n {
        return Err(Error::DimensionMismatch(format!(
            "split {split} does not bipartition {n} subsystems"
        )));
    }
    Ok(((0..split).collect(), (split..n).collect()))
}

/// I(A:B) = S(ρ_A) + S(ρ_B) − S(ρ_AB), with A the subsystems before `split`.
pub fn mutual_information(rho_ab: &DensityMatrix, split: usize) -> Result<f64> {
    let (a, b) = bipartition(rho_ab, split)?;
    let rho_a = rho_ab.partial_trace(&a)?;
    let rho_b = rho_ab.partial_trace(&b)?;
    Ok(von_neumann_entropy(&rho_a) + von_neumann_entropy(&rho_b) - von_neumann_entropy(rho_ab))
}

/// Entropy production of a joint evolution and its two-term decomposition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyProduction {
    /// S(ρ'_SE ‖ ρ'_S ⊗ ρ_E).
    pub sigma: f64,
    /// I(S:E) of the evolved joint state.
    pub mutual_information: f64,
    /// S(ρ'_E ‖ ρ_E).
    pub environment_relative_entropy: f64,
}

/// Σ = S(ρ'_SE ‖ ρ'_S ⊗ ρ_E) for a joint state whose system part is the
/// subsystems before `split`. The mutual-information decomposition is
/// computed independently and must agree within [`ROUTE_AGREEMENT_TOL`].
pub fn entropy_production_joint(
    rho_se: &DensityMatrix,
    rho_e_initial: &DensityMatrix,
    split: usize,
) -> Result<EntropyProduction> {
    let (sys, env) = bipartition(rho_se, split)?;
    let env_dims: Vec<usize> = env.iter().map(|&k| rho_se.subsystem_dims()[k]).collect();
    let env_dim: usize = env_dims.iter().product();
    if rho_e_initial.dim() != env_dim {
        return Err(Error::DimensionMismatch(format!(
            "environment reference has dimension {}, joint state's environment has {env_dim}",
            rho_e_initial.dim()
        )));
    }
    let rho_s = rho_se.partial_trace(&sys)?;
    let rho_e = rho_se.partial_trace(&env)?;

    // Compact form against the product reference, diagonalized factor-wise.
    let es = eigh(rho_s.mat())?;
    let ee = eigh(rho_e_initial.mat())?;
    let vectors = kron(&es.eigenvectors, &ee.eigenvectors);
    let values: Vec<f64> = es
        .eigenvalues
        .iter()
        .flat_map(|&a| ee.eigenvalues.iter().map(move |&b| a.max(0.0) * b.max(0.0)))
        .collect();
    let joint_entropy = von_neumann_entropy(rho_se);
    let cross = cross_entropy(rho_se.mat(), &vectors, &values, DEFAULT_SUPPORT_TOL);
    let sigma = cross - joint_entropy;

    let mi = von_neumann_entropy(&rho_s) + von_neumann_entropy(&rho_e) - joint_entropy;
    let env_term = relative_entropy(&rho_e, rho_e_initial)?;

    if sigma.is_finite() && env_term.is_finite() {
        let diff = (sigma - (mi + env_term)).abs();
        if diff > ROUTE_AGREEMENT_TOL {
            return Err(Error::Statistics(format!(
                "entropy production routes disagree by {diff:.3e}"
            )));
        }
    }
    Ok(EntropyProduction {
        sigma,
        mutual_information: mi,
        environment_relative_entropy: env_term,
    })
}

/// Σ = S(ρ_s‖ρ*) − S(ρ'_s‖ρ*) for dynamics with global fixed point ρ*.
pub fn entropy_production_fixed_point(
    rho_initial: &DensityMatrix,
    rho_evolved: &DensityMatrix,
    rho_star: &DensityMatrix,
) -> Result<f64> {
    check_same_dim(rho_initial, rho_star)?;
    check_same_dim(rho_evolved, rho_star)?;
    let star = eigh(rho_star.mat())?;
    let lowest = star.eigenvalues[0];
    if lowest <= 0.0 {
        return Err(Error::RankDeficient { min_eigenvalue: lowest });
    }
    let before =
        cross_entropy(rho_initial.mat(), &star.eigenvectors, &star.eigenvalues, 0.0) - von_neumann_entropy(rho_initial);
    let after =
        cross_entropy(rho_evolved.mat(), &star.eigenvectors, &star.eigenvalues, 0.0) - von_neumann_entropy(rho_evolved);
    Ok(before - after)
}

fn check_operator_dim(rho: &DensityMatrix, h: &ComplexMatrix) -> Result<()> {
    check_hermitian(h)?;
    if h.rows() != rho.dim() {
        return Err(Error::DimensionMismatch(format!(
            "Hamiltonian dimension {} does not match state dimension {}",
            h.rows(),
            rho.dim()
        )));
    }
    Ok(())
}

/// Populations of ρ sorted descending, paired with h's eigenbasis ascending.
fn passive_data(rho: &DensityMatrix, h: &ComplexMatrix) -> Result<(Vec<f64>, HermitianEigen)> {
    check_operator_dim(rho, h)?;
    let mut populations = rho.eigenvalues();
    // Stable: equal values keep their eigh order.
    populations.reverse();
    populations.sort_by(|a, b| b.total_cmp(a));
    Ok((populations, eigh(h)?))
}

/// Passive state Σ r_i |ε_i⟩⟨ε_i| with r descending and ε ascending.
pub fn passive_state(rho: &DensityMatrix, h: &ComplexMatrix) -> Result<DensityMatrix> {
    let (populations, he) = passive_data(rho, h)?;
    DensityMatrix::new(he.with_spectrum(&populations), rho.subsystem_dims().to_vec())
}

/// Tr[ρh] − Tr[π(ρ)h].
pub fn ergotropy_general(rho: &DensityMatrix, h: &ComplexMatrix) -> Result<f64> {
    let (populations, he) = passive_data(rho, h)?;
    let passive_energy: f64 = populations.iter().zip(&he.eigenvalues).map(|(r, e)| r * e).sum();
    Ok(rho.expectation(h) - passive_energy)
}

/// (ω₀/2)(r_z + |r|) for H = (ω₀/2)σ_z.
pub fn ergotropy_qubit(b: BlochVector, omega0: f64) -> f64 {
    0.5 * omega0 * (b.z + b.norm())
}

/// δ, S and 𝒲 of a qubit state together with a precomputed Σ.
pub fn qubit_record(
    abscissa: f64,
    rho: &DensityMatrix,
    omega0: f64,
    sigma: f64,
    q: QuadratureSpec,
) -> Result<QuantifierRecord> {
    let h = pauli::z().scale_re(0.5 * omega0);
    Ok(QuantifierRecord {
        abscissa,
        delta: nonclassical_volume(rho, q)?,
        entropy: von_neumann_entropy(rho),
        sigma,
        ergotropy: ergotropy_general(rho, &h)?,
    })
}
