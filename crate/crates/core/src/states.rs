//! Physical states and operators: density matrices, Bloch vectors, thermal
//! states, collective spin operators and truncated bosonic modes.
//!
//! Qubit basis order is `[|e⟩, |g⟩]`, so σ_z = diag(1, −1) and
//! σ⁻ = |g⟩⟨e| has its single nonzero entry at (1, 0).

use num_complex::Complex64 as C64;

use crate::error::{invalid, Error, Result};
use crate::numerics::{check_hermitian, eigh, kron, partial_trace, ComplexMatrix, PSD_TOL};

/// Trace tolerance for a valid density matrix.
pub const TRACE_TOL: f64 = 1e-10;

/// Slack allowed on the Bloch-ball radius.
pub const BLOCH_TOL: f64 = 1e-9;

/// Pauli and ladder matrices in the `[|e⟩, |g⟩]` basis.
pub mod pauli {
    use super::{ComplexMatrix, C64};

    fn m(entries: [[C64; 2]; 2]) -> ComplexMatrix {
        ComplexMatrix::from_fn(2, 2, |i, j| entries[i][j])
    }

    const O: C64 = C64::new(0.0, 0.0);
    const ONE: C64 = C64::new(1.0, 0.0);
    const I: C64 = C64::new(0.0, 1.0);

    pub fn x() -> ComplexMatrix {
        m([[O, ONE], [ONE, O]])
    }

    pub fn y() -> ComplexMatrix {
        m([[O, -I], [I, O]])
    }

    pub fn z() -> ComplexMatrix {
        m([[ONE, O], [O, -ONE]])
    }

    /// σ⁺ = |e⟩⟨g|.
    pub fn raising() -> ComplexMatrix {
        m([[O, ONE], [O, O]])
    }

    /// σ⁻ = |g⟩⟨e|.
    pub fn lowering() -> ComplexMatrix {
        m([[O, O], [ONE, O]])
    }

    /// |e⟩⟨e|.
    pub fn excited_projector() -> ComplexMatrix {
        m([[ONE, O], [O, O]])
    }
}

/// Qubit Bloch vector (r_x, r_y, r_z).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BlochVector {
    /// Bloch vector of the single-qubit maximally negative state NS₁.
    pub const NS1: BlochVector = BlochVector {
        x: 0.50,
        y: 0.56,
        z: -0.66,
    };

    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let b = Self { x, y, z };
        let norm = b.norm();
        if !norm.is_finite() || norm > 1.0 + BLOCH_TOL {
            return Err(Error::UnphysicalBloch { norm });
        }
        Ok(b)
    }

    pub fn norm(&self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    pub fn transverse_norm(&self) -> f64 {
        self.x.hypot(self.y)
    }
}

/// A validated quantum state with its tensor-factor layout.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    mat: ComplexMatrix,
    subsystem_dims: Vec<usize>,
}

impl DensityMatrix {
    /// Validates and stores `mat`; the stored matrix is the Hermitian part of the input.
    pub fn new(mat: ComplexMatrix, subsystem_dims: Vec<usize>) -> Result<Self> {
        let rho = Self { mat, subsystem_dims };
        validate(&rho)?;
        Ok(Self {
            mat: rho.mat.hermitian_part(),
            subsystem_dims: rho.subsystem_dims,
        })
    }

    /// Single-subsystem state of dimension `mat.rows()`.
    pub fn single(mat: ComplexMatrix) -> Result<Self> {
        let d = mat.rows();
        Self::new(mat, vec![d])
    }

    pub fn mat(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn subsystem_dims(&self) -> &[usize] {
        &self.subsystem_dims
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        eigh(&self.mat)
            .expect("density matrices are Hermitian by construction")
            .eigenvalues
    }

    /// Tr ρ².
    pub fn purity(&self) -> f64 {
        self.mat.trace_product(&self.mat).re
    }

    /// Tr(ρ·O) real part.
    pub fn expectation(&self, op: &ComplexMatrix) -> f64 {
        self.mat.trace_product(op).re
    }

    pub fn tensor(&self, other: &DensityMatrix) -> DensityMatrix {
        let mut dims = self.subsystem_dims.clone();
        dims.extend_from_slice(&other.subsystem_dims);
        DensityMatrix {
            mat: kron(&self.mat, &other.mat),
            subsystem_dims: dims,
        }
    }

    /// Reduced state on the listed subsystems.
    pub fn partial_trace(&self, keep: &[usize]) -> Result<DensityMatrix> {
        let reduced = partial_trace(&self.mat, &self.subsystem_dims, keep)?;
        let mut kept = keep.to_vec();
        kept.sort_unstable();
        kept.dedup();
        let dims = kept.iter().map(|&k| self.subsystem_dims[k]).collect();
        DensityMatrix::new(reduced, dims)
    }

    /// U ρ U†, revalidated.
    pub fn evolve(&self, u: &ComplexMatrix) -> Result<DensityMatrix> {
        DensityMatrix::new(self.mat.conjugate_by(u), self.subsystem_dims.clone())
    }

    /// Same matrix with a different tensor layout.
    pub fn with_dims(self, subsystem_dims: Vec<usize>) -> Result<DensityMatrix> {
        DensityMatrix::new(self.mat, subsystem_dims)
    }
}

/// Checks every density-matrix invariant, naming the first violated bound.
pub fn validate(rho: &DensityMatrix) -> Result<()> {
    let m = &rho.mat;
    check_hermitian(m)?;
    let product: usize = rho.subsystem_dims.iter().product();
    if rho.subsystem_dims.is_empty() || rho.subsystem_dims.contains(&0) || product != m.rows() {
        return Err(Error::DimensionMismatch(format!(
            "subsystem dims {:?} do not multiply to {}",
            rho.subsystem_dims,
            m.rows()
        )));
    }
    let trace = m.trace();
    if (trace.re - 1.0).abs() > TRACE_TOL || trace.im.abs() > TRACE_TOL {
        return Err(Error::BadTrace {
            trace: trace.re,
            tolerance: TRACE_TOL,
        });
    }
    let lowest = eigh(m)?.eigenvalues[0];
    if lowest < -PSD_TOL {
        return Err(Error::NotPositive {
            eigenvalue: lowest,
            tolerance: PSD_TOL,
        });
    }
    Ok(())
}

/// ½(I + r·σ).
pub fn from_bloch(b: BlochVector) -> Result<DensityMatrix> {
    let b = BlochVector::new(b.x, b.y, b.z)?;
    let mat = ComplexMatrix::from_fn(2, 2, |i, j| match (i, j) {
        (0, 0) => C64::new(0.5 * (1.0 + b.z), 0.0),
        (1, 1) => C64::new(0.5 * (1.0 - b.z), 0.0),
        (0, 1) => C64::new(0.5 * b.x, -0.5 * b.y),
        _ => C64::new(0.5 * b.x, 0.5 * b.y),
    });
    DensityMatrix::single(mat)
}

/// (Tr σ_x ρ, Tr σ_y ρ, Tr σ_z ρ) for a qubit.
pub fn to_bloch(rho: &DensityMatrix) -> Result<BlochVector> {
    if rho.dim() != 2 {
        return Err(Error::DimensionMismatch(format!(
            "Bloch vector requires a qubit, got dimension {}",
            rho.dim()
        )));
    }
    let m = rho.mat();
    let coherence = m[(1, 0)];
    Ok(BlochVector {
        x: 2.0 * coherence.re,
        y: 2.0 * coherence.im,
        z: m[(0, 0)].re - m[(1, 1)].re,
    })
}

/// Qubit Hamiltonian (ω/2)σ_z.
pub fn qubit_hamiltonian(omega: f64) -> ComplexMatrix {
    pauli::z().scale_re(0.5 * omega)
}

/// Thermal state of (ω/2)σ_z at inverse temperature β.
pub fn thermal_qubit(beta: f64, omega: f64) -> Result<DensityMatrix> {
    if !(beta >= 0.0) || !beta.is_finite() {
        return Err(invalid("beta", format!("must be finite and non-negative, got {beta}")));
    }
    if !(omega > 0.0) || !omega.is_finite() {
        return Err(invalid("omega", format!("must be positive, got {omega}")));
    }
    // p_e = e^{-βω/2}/Z = 1/(1 + e^{βω}); both forms stay finite for large βω.
    let p_e = 1.0 / (1.0 + (beta * omega).exp());
    let p_g = 1.0 / (1.0 + (-beta * omega).exp());
    DensityMatrix::single(ComplexMatrix::from_real_diag(&[p_e, p_g]))
}

/// e^{−βH}/Tr e^{−βH}, computed with the exponent shifted by the ground energy.
pub fn gibbs_state(h: &ComplexMatrix, beta: f64) -> Result<DensityMatrix> {
    if !beta.is_finite() {
        return Err(invalid("beta", "must be finite"));
    }
    let eig = eigh(h)?;
    let shift = eig
        .eigenvalues
        .iter()
        .map(|&l| -beta * l)
        .fold(f64::NEG_INFINITY, f64::max);
    let weights: Vec<f64> = eig.eigenvalues.iter().map(|&l| (-beta * l - shift).exp()).collect();
    let z: f64 = weights.iter().sum();
    let populations: Vec<f64> = weights.iter().map(|w| w / z).collect();
    DensityMatrix::single(eig.with_spectrum(&populations))
}

/// Collective spin operators J_α = ½Σσ_α⁽ⁱ⁾ restricted to the symmetric
/// j = N/2 multiplet. Basis index k carries m = N/2 − k.
#[derive(Debug, Clone)]
pub struct CollectiveSpinOps {
    pub n_spins: usize,
    pub jx: ComplexMatrix,
    pub jy: ComplexMatrix,
    pub jz: ComplexMatrix,
}

impl CollectiveSpinOps {
    pub fn dim(&self) -> usize {
        self.n_spins + 1
    }

    /// j(j+1) with j = N/2.
    pub fn casimir(&self) -> f64 {
        let j = self.n_spins as f64 / 2.0;
        j * (j + 1.0)
    }
}

pub fn dicke_operators(n_spins: usize) -> Result<CollectiveSpinOps> {
    if n_spins == 0 {
        return Err(invalid("n_spins", "must be at least 1"));
    }
    let dim = n_spins + 1;
    let j = n_spins as f64 / 2.0;
    let m_of = |k: usize| j - k as f64;

    // J₊|m⟩ = √(j(j+1) − m(m+1)) |m+1⟩, and |m+1⟩ sits one index lower.
    let mut j_plus = ComplexMatrix::zeros(dim, dim);
    for k in 1..dim {
        let m = m_of(k);
        j_plus[(k - 1, k)] = C64::new((j * (j + 1.0) - m * (m + 1.0)).sqrt(), 0.0);
    }
    let j_minus = j_plus.adjoint();
    let jx = (&j_plus + &j_minus).scale_re(0.5);
    let jy = (&j_plus - &j_minus).scale(C64::new(0.0, -0.5));
    let jz = ComplexMatrix::from_real_diag(&(0..dim).map(m_of).collect::<Vec<_>>());
    Ok(CollectiveSpinOps { n_spins, jx, jy, jz })
}

/// Single bosonic mode truncated to number states 0..=n_max.
#[derive(Debug, Clone)]
pub struct FockSpace {
    pub n_max: usize,
    pub annihilate: ComplexMatrix,
    pub create: ComplexMatrix,
}

impl FockSpace {
    pub fn new(n_max: usize) -> Result<Self> {
        if n_max == 0 {
            return Err(invalid("n_max", "must be at least 1"));
        }
        let annihilate = ComplexMatrix::from_fn(n_max + 1, n_max + 1, |i, j| {
            if j == i + 1 {
                C64::new((j as f64).sqrt(), 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        });
        let create = annihilate.adjoint();
        Ok(Self {
            n_max,
            annihilate,
            create,
        })
    }

    pub fn dim(&self) -> usize {
        self.n_max + 1
    }

    /// a†a = diag(0, 1, …, n_max).
    pub fn number(&self) -> ComplexMatrix {
        ComplexMatrix::from_real_diag(&(0..=self.n_max).map(|n| n as f64).collect::<Vec<_>>())
    }
}

/// Truncated thermal mode state and the weight the truncation discarded.
#[derive(Debug, Clone)]
pub struct ThermalFock {
    pub state: DensityMatrix,
    /// Untruncated Boltzmann weight of number states above n_max.
    pub tail_weight: f64,
}

impl ThermalFock {
    pub fn mean_occupation(&self) -> f64 {
        self.state
            .mat()
            .diagonal_real()
            .iter()
            .enumerate()
            .map(|(n, p)| n as f64 * p)
            .sum()
    }
}

/// Thermal state of ω_c a†a on number states 0..=n_max, renormalized after truncation.
pub fn thermal_fock(beta: f64, omega_c: f64, n_max: usize) -> Result<ThermalFock> {
    if !(beta > 0.0) || !beta.is_finite() {
        return Err(invalid(
            "beta",
            format!("must be positive and finite, got {beta}; use vacuum_fock for T = 0"),
        ));
    }
    if !(omega_c > 0.0) || !omega_c.is_finite() {
        return Err(invalid("omega_c", format!("must be positive, got {omega_c}")));
    }
    if n_max == 0 {
        return Err(invalid("n_max", "must be at least 1"));
    }
    let x = beta * omega_c;
    let weights: Vec<f64> = (0..=n_max).map(|n| (-x * n as f64).exp()).collect();
    let z: f64 = weights.iter().sum();
    let populations: Vec<f64> = weights.iter().map(|w| w / z).collect();
    let state = DensityMatrix::single(ComplexMatrix::from_real_diag(&populations))?;
    Ok(ThermalFock {
        state,
        tail_weight: (-x * (n_max + 1) as f64).exp(),
    })
}

/// |0⟩⟨0| on number states 0..=n_max.
pub fn vacuum_fock(n_max: usize) -> Result<DensityMatrix> {
    if n_max == 0 {
        return Err(invalid("n_max", "must be at least 1"));
    }
    let mut p = vec![0.0; n_max + 1];
    p[0] = 1.0;
    DensityMatrix::single(ComplexMatrix::from_real_diag(&p))
}

/// ‖A − B‖_F.
#[cfg(test)]
pub(crate) fn frob_dist(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    (a - b).frobenius_norm()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::commutator;
    use proptest::prelude::*;

    #[test]
    fn bloch_poles_and_center() {
        let e = from_bloch(BlochVector::new(0.0, 0.0, 1.0).unwrap()).unwrap();
        assert_eq!(e.mat(), &pauli::excited_projector());
        let mixed = from_bloch(BlochVector::new(0.0, 0.0, 0.0).unwrap()).unwrap();
        assert_eq!(mixed.mat(), &ComplexMatrix::identity(2).scale_re(0.5));
        assert_eq!(to_bloch(&mixed).unwrap(), BlochVector { x: 0.0, y: 0.0, z: 0.0 });
    }

    #[test]
    fn ns1_matrix_and_round_trip() {
        let ns1 = from_bloch(BlochVector::NS1).unwrap();
        let m = ns1.mat();
        assert!((m[(0, 0)].re - 0.17).abs() < 1e-15);
        assert!((m[(1, 1)].re - 0.83).abs() < 1e-15);
        assert!((m[(1, 0)] - C64::new(0.25, 0.28)).norm() < 1e-15);
        let back = to_bloch(&ns1).unwrap();
        assert!((back.x - 0.50).abs() < 1e-12 && (back.y - 0.56).abs() < 1e-12 && (back.z + 0.66).abs() < 1e-12);
        // Literal definition ½(I + a·σ).
        let lit = &(&(&ComplexMatrix::identity(2) + &pauli::x().scale_re(0.50)) + &pauli::y().scale_re(0.56))
            + &pauli::z().scale_re(-0.66);
        assert!(frob_dist(&lit.scale_re(0.5), m) < 1e-15);
    }

    #[test]
    fn unphysical_bloch_rejected() {
        assert!(matches!(
            BlochVector::new(1.0, 0.1, 0.0),
            Err(Error::UnphysicalBloch { .. })
        ));
        assert!(from_bloch(BlochVector { x: 0.0, y: 0.0, z: 1.1 }).is_err());
        assert!(BlochVector::new(0.0, 0.0, 1.0 + 5e-10).is_ok());
    }

    #[test]
    fn to_bloch_rejects_non_qubit() {
        let rho = DensityMatrix::single(ComplexMatrix::identity(3).scale_re(1.0 / 3.0)).unwrap();
        assert!(to_bloch(&rho).is_err());
    }

    #[test]
    fn thermal_qubit_values() {
        assert_eq!(
            thermal_qubit(0.0, 1.0).unwrap().mat(),
            &ComplexMatrix::identity(2).scale_re(0.5)
        );
        let t = thermal_qubit(1.0, 1.0).unwrap();
        let expected = 1.0 / (1.0 + (-1.0f64).exp());
        assert!((t.mat()[(1, 1)].re - expected).abs() < 1e-15);
        assert!((expected - 0.731059).abs() < 1e-6);
        let cold = thermal_qubit(50.0, 1.0).unwrap();
        assert!((cold.mat()[(1, 1)].re - 1.0).abs() < 1e-20);
        assert!(cold.mat()[(0, 0)].re > 0.0);
    }

    #[test]
    fn gibbs_matches_thermal_qubit() {
        let g = gibbs_state(&pauli::z().scale_re(0.5), 2.0).unwrap();
        let t = thermal_qubit(2.0, 1.0).unwrap();
        assert!(frob_dist(g.mat(), t.mat()) < 1e-15);
        let flat = gibbs_state(&ComplexMatrix::from_real_diag(&[0.3, -1.0, 2.0]), 0.0).unwrap();
        assert!(frob_dist(flat.mat(), &ComplexMatrix::identity(3).scale_re(1.0 / 3.0)) < 1e-15);
    }

    #[test]
    fn gibbs_three_level_dicke_bath() {
        // H_B = (ω/N) J_z with N = 2, ω = 1.
        let ops = dicke_operators(2).unwrap();
        let g = gibbs_state(&ops.jz.scale_re(0.5), 1.0).unwrap();
        let w = [(-0.5f64).exp(), 1.0, 0.5f64.exp()];
        let z: f64 = w.iter().sum();
        let p = g.mat().diagonal_real();
        for k in 0..3 {
            assert!((p[k] - w[k] / z).abs() < 1e-15);
        }
    }

    #[test]
    fn gibbs_survives_large_beta() {
        let ops = dicke_operators(50).unwrap();
        let g = gibbs_state(&ops.jz.scale_re(1.0 / 50.0), 100.0).unwrap();
        let p = g.mat().diagonal_real();
        assert!(p.iter().all(|x| x.is_finite() && *x > 0.0));
        assert!(p[50] > 0.86);
    }

    #[test]
    fn dicke_small_cases() {
        let one = dicke_operators(1).unwrap();
        assert!(frob_dist(&one.jx, &pauli::x().scale_re(0.5)) < 1e-15);
        assert!(frob_dist(&one.jy, &pauli::y().scale_re(0.5)) < 1e-15);
        assert!(frob_dist(&one.jz, &pauli::z().scale_re(0.5)) < 1e-15);
        let two = dicke_operators(2).unwrap();
        assert_eq!(two.jz, ComplexMatrix::from_real_diag(&[1.0, 0.0, -1.0]));
        assert!(dicke_operators(0).is_err());
    }

    #[test]
    fn dicke_su2_algebra_and_casimir() {
        for n in [1, 2, 5, 50] {
            let ops = dicke_operators(n).unwrap();
            let i = C64::new(0.0, 1.0);
            let tol = 1e-12 * (n as f64).max(1.0);
            assert!(frob_dist(&commutator(&ops.jx, &ops.jy), &ops.jz.scale(i)) < tol);
            assert!(frob_dist(&commutator(&ops.jy, &ops.jz), &ops.jx.scale(i)) < tol);
            assert!(frob_dist(&commutator(&ops.jz, &ops.jx), &ops.jy.scale(i)) < tol);
            let c2 = &(&ops.jx.matmul(&ops.jx) + &ops.jy.matmul(&ops.jy)) + &ops.jz.matmul(&ops.jz);
            let expected = ComplexMatrix::identity(n + 1).scale_re(ops.casimir());
            assert!(frob_dist(&c2, &expected) < 1e-10);
        }
    }

    #[test]
    fn fock_ladder_entries_and_commutator() {
        let f = FockSpace::new(6).unwrap();
        for n in 1..=6 {
            assert_eq!(f.annihilate[(n - 1, n)], C64::new((n as f64).sqrt(), 0.0));
        }
        let comm = commutator(&f.annihilate, &f.create);
        for i in 0..7 {
            for j in 0..7 {
                let expected = if i != j {
                    0.0
                } else if i < 6 {
                    1.0
                } else {
                    // Truncation corner: −n_max instead of 1.
                    -6.0
                };
                assert!((comm[(i, j)] - C64::new(expected, 0.0)).norm() < 1e-12, "({i},{j})");
            }
        }
        assert!(frob_dist(&f.create.matmul(&f.annihilate), &f.number()) < 1e-14);
    }

    #[test]
    fn thermal_fock_cases() {
        let cold = thermal_fock(50.0, 1.0, 32).unwrap();
        assert!(frob_dist(cold.state.mat(), vacuum_fock(32).unwrap().mat()) < 1e-15);

        let fig6 = thermal_fock(3.0, 1.0, 32).unwrap();
        let nbar = 1.0 / (3.0f64.exp() - 1.0);
        assert!((nbar - 0.052396).abs() < 1e-6);
        assert!((fig6.mean_occupation() - nbar).abs() < 1e-9);
        assert!(fig6.tail_weight <= 1e-9);
        let p = fig6.state.mat().diagonal_real();
        assert!(p.windows(2).all(|w| w[0] > w[1]));

        let sixteen = thermal_fock(3.0, 1.0, 16).unwrap();
        assert!((sixteen.mean_occupation() - nbar).abs() < 1e-9);
        assert!(thermal_fock(0.0, 1.0, 8).is_err());
    }

    #[test]
    fn validate_reports_violations() {
        let ok = DensityMatrix::single(ComplexMatrix::identity(2).scale_re(0.5));
        assert!(ok.is_ok());
        let neg = DensityMatrix::single(ComplexMatrix::from_real_diag(&[1.5, -0.5]));
        assert!(matches!(neg, Err(Error::NotPositive { .. })));
        let mut skew = ComplexMatrix::identity(2).scale_re(0.5);
        skew[(0, 1)] = C64::new(1e-6, 0.0);
        assert!(matches!(DensityMatrix::single(skew), Err(Error::NotHermitian { .. })));
        let bad_trace = DensityMatrix::single(ComplexMatrix::identity(2));
        assert!(matches!(bad_trace, Err(Error::BadTrace { .. })));
        let bad_dims = DensityMatrix::new(ComplexMatrix::identity(4).scale_re(0.25), vec![2, 3]);
        assert!(matches!(bad_dims, Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn reduced_state_dims() {
        let a = from_bloch(BlochVector::NS1).unwrap();
        let b = thermal_fock(3.0, 1.0, 4).unwrap().state;
        let ab = a.tensor(&b);
        assert_eq!(ab.subsystem_dims(), &[2, 5]);
        let back = ab.partial_trace(&[0]).unwrap();
        assert_eq!(back.subsystem_dims(), &[2]);
        assert!(frob_dist(back.mat(), a.mat()) < 1e-15);
    }

    proptest! {
        #[test]
        fn bloch_round_trip(x in -1.0f64..1.0, y in -1.0f64..1.0, z in -1.0f64..1.0) {
            let n = (x * x + y * y + z * z).sqrt();
            let s = if n > 1.0 { 1.0 / n } else { 1.0 };
            let b = BlochVector::new(x * s, y * s, z * s).unwrap();
            let back = to_bloch(&from_bloch(b).unwrap()).unwrap();
            prop_assert!((back.x - b.x).abs() <= 1e-12);
            prop_assert!((back.y - b.y).abs() <= 1e-12);
            prop_assert!((back.z - b.z).abs() <= 1e-12);
        }

        #[test]
        fn thermal_qubit_is_gibbs(beta in 0.0f64..20.0, omega in 0.01f64..5.0) {
            let t = thermal_qubit(beta, omega).unwrap();
            let g = gibbs_state(&qubit_hamiltonian(omega), beta).unwrap();
            prop_assert!(frob_dist(t.mat(), g.mat()) < 1e-12);
        }
    }
}
