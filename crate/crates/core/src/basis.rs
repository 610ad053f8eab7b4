//! Local measurement bases: the `μ` probe basis, the complementary `u` basis,
//! the projections that turn a state into outcome statistics, and the
//! rewriting of Bell-diagonal states in the three optimal bases.

use std::fmt;

use num_complex::Complex;

use crate::bd::{BdTriple, DensityMatrix4};
use crate::error::{Error, Result};
use crate::info::JointDistribution2x2;
use crate::linalg::{kron_vec, Mat2, Mat4, Vec2};
use crate::scalar::Real;

fn check_angle<T: Real>(what: &'static str, x: T, hi: T, closed: bool, range: &'static str) -> Result<()> {
    let ok = x >= T::zero() && if closed { x <= hi } else { x < hi };
    if ok {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            what,
            value: x.as_f64(),
            range,
        })
    }
}

/// Polar and azimuthal angles of the probe basis on each qubit.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProbeBasis<T> {
    pub theta_a: T,
    pub phi_a: T,
    pub theta_b: T,
    pub phi_b: T,
}

impl<T: Real> ProbeBasis<T> {
    /// `theta` in `[0, π]`, `phi` in `[0, 2π)` on both sides.
    pub fn new(theta_a: T, phi_a: T, theta_b: T, phi_b: T) -> Result<Self> {
        let pi = T::PI();
        let two_pi = pi + pi;
        check_angle("theta_a", theta_a, pi, true, "[0, π]")?;
        check_angle("phi_a", phi_a, two_pi, false, "[0, 2π)")?;
        check_angle("theta_b", theta_b, pi, true, "[0, π]")?;
        check_angle("phi_b", phi_b, two_pi, false, "[0, 2π)")?;
        Ok(Self {
            theta_a,
            phi_a,
            theta_b,
            phi_b,
        })
    }

    /// Same angles on both qubits.
    pub fn symmetric(theta: T, phi: T) -> Result<Self> {
        Self::new(theta, phi, theta, phi)
    }

    pub(crate) fn from_angles_unchecked(a: [T; 4]) -> Self {
        Self {
            theta_a: a[0],
            phi_a: a[1],
            theta_b: a[2],
            phi_b: a[3],
        }
    }
}

/// Phases `(Φ1, Φ2)` of the complementary basis on each qubit.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhasePair<T> {
    pub phi1: T,
    pub phi2: T,
}

impl<T: Real> PhasePair<T> {
    pub fn new(phi1: T, phi2: T) -> Result<Self> {
        let two_pi = T::PI() + T::PI();
        check_angle("phi1", phi1, two_pi, false, "[0, 2π)")?;
        check_angle("phi2", phi2, two_pi, false, "[0, 2π)")?;
        Ok(Self { phi1, phi2 })
    }

    pub fn equal(phi: T) -> Result<Self> {
        Self::new(phi, phi)
    }
}

/// The three candidate optimal computational bases of a Bell-diagonal state.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CaseLabel {
    /// `θ = 0, φ = 0`: the computational basis, measuring along `σ_3`.
    I,
    /// `θ = π/2, φ = 0`: measuring along `σ_1`.
    II,
    /// `θ = π/2, φ = π/2`: measuring along `σ_2`.
    III,
}

impl CaseLabel {
    pub const ALL: [CaseLabel; 3] = [CaseLabel::I, CaseLabel::II, CaseLabel::III];

    /// Symmetric probe angles `(θ, φ)` of this basis.
    pub fn angles<T: Real>(self) -> (T, T) {
        let half_pi = T::FRAC_PI_2();
        match self {
            CaseLabel::I => (T::zero(), T::zero()),
            CaseLabel::II => (half_pi, T::zero()),
            CaseLabel::III => (half_pi, half_pi),
        }
    }

    /// The case whose measurement axis is `σ_k` (k = 1, 2, 3).
    pub fn for_axis(k: usize) -> Self {
        match k {
            1 => CaseLabel::II,
            2 => CaseLabel::III,
            3 => CaseLabel::I,
            _ => panic!("axis must be 1, 2 or 3, got {k}"),
        }
    }

    /// Pauli index measured by this basis.
    pub fn axis(self) -> usize {
        match self {
            CaseLabel::I => 3,
            CaseLabel::II => 1,
            CaseLabel::III => 2,
        }
    }

    /// Coefficients of the state rewritten in this basis. The rewritten
    /// matrix is again Bell-diagonal; its `σ_3σ_3` weight is the coefficient
    /// along the measured axis.
    pub fn rotate<T: Real>(self, state: &BdTriple<T>) -> BdTriple<T> {
        let BdTriple { c1, c2, c3 } = *state;
        match self {
            CaseLabel::I => BdTriple::new(c1, c2, c3),
            CaseLabel::II => BdTriple::new(c3, c2, c1),
            CaseLabel::III => BdTriple::new(c3, c1, c2),
        }
    }
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CaseLabel::I => "I",
            CaseLabel::II => "II",
            CaseLabel::III => "III",
        })
    }
}

/// `|μ_0⟩ = cos(θ/2)|0⟩ + sin(θ/2)e^{iφ}|1⟩`, `|μ_1⟩ = -sin(θ/2)|0⟩ + cos(θ/2)e^{iφ}|1⟩`.
pub fn mu_basis<T: Real>(theta: T, phi: T) -> [Vec2<T>; 2] {
    let half = theta * T::lit(0.5);
    let (s, c) = half.sin_cos();
    let e = Complex::from_polar(T::one(), phi);
    let re = |x: T| Complex::new(x, T::zero());
    [[re(c), e * s], [re(-s), e * c]]
}

/// `|u_0⟩ = (|0⟩ + e^{iΦ}|1⟩)/√2`, `|u_1⟩ = (|0⟩ - e^{iΦ}|1⟩)/√2`.
pub fn u_basis<T: Real>(phase: T) -> [Vec2<T>; 2] {
    let r = T::FRAC_1_SQRT_2();
    let e = Complex::from_polar(r, phase);
    let a = Complex::new(r, T::zero());
    [[a, e], [a, -e]]
}

fn product_statistics<T: Real>(
    rho: &Mat4<T>,
    a: &[Vec2<T>; 2],
    b: &[Vec2<T>; 2],
) -> JointDistribution2x2<T> {
    let mut p = [[T::zero(); 2]; 2];
    for (i, ai) in a.iter().enumerate() {
        for (j, bj) in b.iter().enumerate() {
            p[i][j] = rho.expectation(&kron_vec(ai, bj)).re;
        }
    }
    JointDistribution2x2::from_table_unchecked(p)
}

/// Outcome probabilities `R_ij = ⟨μ_i^A μ_j^B| ρ |μ_i^A μ_j^B⟩`.
pub fn r_coefficients<T: Real>(rho: &DensityMatrix4<T>, basis: &ProbeBasis<T>) -> JointDistribution2x2<T> {
    let a = mu_basis(basis.theta_a, basis.phi_a);
    let b = mu_basis(basis.theta_b, basis.phi_b);
    product_statistics(rho.matrix(), &a, &b)
}

/// Closed-form `R_ij(θ, φ)` of a Bell-diagonal state in the symmetric basis.
pub fn r_coefficients_bd<T: Real>(state: &BdTriple<T>, theta: T, phi: T) -> JointDistribution2x2<T> {
    let quarter = T::lit(0.25);
    let half = T::lit(0.5);
    let BdTriple { c1, c2, c3 } = *state;
    let (s, c) = (theta * half).sin_cos();
    let two = T::lit(2.0);
    let bracket = (c1 + c2) + (two * phi).cos() * (c1 - c2) - two * c3;
    let shift = half * c * c * s * s * bracket;
    let same = quarter * (T::one() + c3) + shift;
    let diff = quarter * (T::one() - c3) - shift;
    JointDistribution2x2::from_table_unchecked([[same, diff], [diff, same]])
}

fn product_unitary<T: Real>(theta_a: T, phi_a: T, theta_b: T, phi_b: T) -> Mat4<T> {
    let [a0, a1] = mu_basis(theta_a, phi_a);
    let [b0, b1] = mu_basis(theta_b, phi_b);
    Mat2::from_columns(&a0, &a1).kron(&Mat2::from_columns(&b0, &b1))
}

/// `U_μ ⊗ U_μ`, columns `|μ_i μ_j⟩` in lexicographic order.
pub fn basis_change<T: Real>(theta: T, phi: T) -> Mat4<T> {
    product_unitary(theta, phi, theta, phi)
}

/// The dephased state `χ_ρ = Σ R_ij |μ_i μ_j⟩⟨μ_i μ_j|`.
pub fn chi_of_rho<T: Real>(rho: &DensityMatrix4<T>, basis: &ProbeBasis<T>) -> DensityMatrix4<T> {
    let u = product_unitary(basis.theta_a, basis.phi_a, basis.theta_b, basis.phi_b);
    let r = r_coefficients(rho, basis).table();
    let d = Mat4::from_real_diagonal([r[0][0], r[0][1], r[1][0], r[1][1]]);
    DensityMatrix4::from_matrix_unchecked(u * d * u.adjoint())
}

/// `(U_μ ⊗ U_μ)† ρ (U_μ ⊗ U_μ)`: the state written in the symmetric probe basis.
pub fn rewrite_in_basis<T: Real>(rho: &DensityMatrix4<T>, theta: T, phi: T) -> DensityMatrix4<T> {
    let u = basis_change(theta, phi);
    DensityMatrix4::from_matrix_unchecked(rho.matrix().conjugate_by(&u))
}

/// Bell-diagonal state written in one of the three optimal bases.
///
/// Built directly from the permuted coefficients; see [`CaseLabel::rotate`].
pub fn transform_to_optimal_basis<T: Real>(state: &BdTriple<T>, case: CaseLabel) -> DensityMatrix4<T> {
    case.rotate(state).density()
}

/// `P(i, j) = ⟨u_i^A u_j^B| ρ̃ |u_i^A u_j^B⟩` in the complementary basis.
pub fn u_basis_probabilities<T: Real>(rho_tilde: &DensityMatrix4<T>, phases: &PhasePair<T>) -> JointDistribution2x2<T> {
    phase_statistics(rho_tilde.matrix(), phases.phi1, phases.phi2)
}

pub(crate) fn phase_statistics<T: Real>(rho: &Mat4<T>, phi1: T, phi2: T) -> JointDistribution2x2<T> {
    product_statistics(rho, &u_basis(phi1), &u_basis(phi2))
}

/// Closed-form single-phase `P(i, j, Φ)` of a Bell-diagonal state rewritten
/// in `case`: `P(0,0) = [1 + (a+b)/2 + (a-b)/2 cos 2Φ]/4` with `(a, b)` the
/// transverse coefficients of that basis.
pub fn case_phase_distribution<T: Real>(state: &BdTriple<T>, case: CaseLabel, phase: T) -> JointDistribution2x2<T> {
    let rotated = case.rotate(state);
    let (a, b) = (rotated.c1, rotated.c2);
    let half = T::lit(0.5);
    let quarter = T::lit(0.25);
    let x = half * (a + b) + half * (a - b) * (T::lit(2.0) * phase).cos();
    let same = quarter * (T::one() + x);
    let diff = quarter * (T::one() - x);
    JointDistribution2x2::from_table_unchecked([[same, diff], [diff, same]])
}

/// Largest mutual information reachable by the single-phase formula of `case`.
///
/// The correlation is affine in `cos 2Φ` and mutual information is convex in
/// it, so the maximum sits at `Φ = 0` or `Φ = π/2`.
pub fn case_phase_maximum<T: Real>(state: &BdTriple<T>, case: CaseLabel) -> T {
    let at = |phase: T| case_phase_distribution(state, case, phase).mutual_information();
    at(T::zero()).max(at(T::FRAC_PI_2()))
}
