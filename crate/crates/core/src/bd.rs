//! Bell-diagonal states: the correlation triple, its density matrix and the
//! tetrahedron of physical states.

use std::fmt;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigen, Mat2, Mat4};
use crate::scalar::Real;

/// Default tolerance for physicality and density-matrix checks.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Pauli matrix entries as `(re, im)` pairs.
pub const SIGMA_1: [[(i8, i8); 2]; 2] = [[(0, 0), (1, 0)], [(1, 0), (0, 0)]];
pub const SIGMA_2: [[(i8, i8); 2]; 2] = [[(0, 0), (0, -1)], [(0, 1), (0, 0)]];
pub const SIGMA_3: [[(i8, i8); 2]; 2] = [[(1, 0), (0, 0)], [(0, 0), (-1, 0)]];

fn entries_to_mat<T: Real>(e: &[[(i8, i8); 2]; 2]) -> Mat2<T> {
    let z = |(re, im): (i8, i8)| Complex::new(T::lit(re as f64), T::lit(im as f64));
    Mat2([[z(e[0][0]), z(e[0][1])], [z(e[1][0]), z(e[1][1])]])
}

/// Pauli matrix `σ_k` for `k` in 1..=3.
pub fn pauli<T: Real>(k: usize) -> Mat2<T> {
    match k {
        1 => entries_to_mat(&SIGMA_1),
        2 => entries_to_mat(&SIGMA_2),
        3 => entries_to_mat(&SIGMA_3),
        _ => panic!("Pauli index must be 1, 2 or 3, got {k}"),
    }
}

/// One of the four linear forms whose non-negativity carves out the
/// tetrahedron of physical Bell-diagonal states. Listed in eigenvalue order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TetrahedronFace {
    /// `(1 - c1 - c2 - c3) / 4`
    MinusMinusMinus,
    /// `(1 - c1 + c2 + c3) / 4`
    MinusPlusPlus,
    /// `(1 + c1 - c2 + c3) / 4`
    PlusMinusPlus,
    /// `(1 + c1 + c2 - c3) / 4`
    PlusPlusMinus,
}

impl TetrahedronFace {
    pub const ALL: [TetrahedronFace; 4] = [
        Self::MinusMinusMinus,
        Self::MinusPlusPlus,
        Self::PlusMinusPlus,
        Self::PlusPlusMinus,
    ];

    /// Signs multiplying `(c1, c2, c3)`.
    pub fn signs(self) -> [i8; 3] {
        match self {
            Self::MinusMinusMinus => [-1, -1, -1],
            Self::MinusPlusPlus => [-1, 1, 1],
            Self::PlusMinusPlus => [1, -1, 1],
            Self::PlusPlusMinus => [1, 1, -1],
        }
    }

    pub fn index(self) -> usize {
        Self::ALL.iter().position(|&f| f == self).unwrap()
    }
}

impl fmt::Display for TetrahedronFace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.signs();
        let sym = |k: usize| if s[k] < 0 { '−' } else { '+' };
        write!(f, "(1{}c1{}c2{}c3)/4", sym(0), sym(1), sym(2))
    }
}

/// Correlation coefficients `(c1, c2, c3)` of a Bell-diagonal state.
///
/// Plain construction does not check physicality; use [`BdTriple::physical`]
/// to get a validated value, or [`BdTriple::violations`] to learn which
/// inequality fails.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BdTriple<T> {
    pub c1: T,
    pub c2: T,
    pub c3: T,
}

impl<T: Real> BdTriple<T> {
    pub fn new(c1: T, c2: T, c3: T) -> Self {
        Self { c1, c2, c3 }
    }

    /// Validated constructor: each `|c_i| <= 1` and every eigenvalue `>= -tol`.
    pub fn physical(c1: T, c2: T, c3: T, tol: T) -> Result<Self> {
        let s = Self::new(c1, c2, c3);
        s.check_physical(tol)?;
        Ok(s)
    }

    pub fn coefficients(&self) -> [T; 3] {
        [self.c1, self.c2, self.c3]
    }

    pub fn abs_coefficients(&self) -> [T; 3] {
        self.coefficients().map(|c| c.abs())
    }

    /// The four eigenvalues in [`TetrahedronFace::ALL`] order.
    pub fn eigenvalues(&self) -> [T; 4] {
        let quarter = T::lit(0.25);
        TetrahedronFace::ALL.map(|face| {
            let s = face.signs();
            let sum = self
                .coefficients()
                .iter()
                .zip(s)
                .fold(T::one(), |acc, (&c, sign)| if sign < 0 { acc - c } else { acc + c });
            sum * quarter
        })
    }

    pub fn is_physical(&self, tol: T) -> bool {
        self.eigenvalues().iter().all(|&l| l >= -tol)
    }

    /// Faces whose eigenvalue is below `-tol`, with the offending value.
    pub fn violations(&self, tol: T) -> Vec<(TetrahedronFace, T)> {
        TetrahedronFace::ALL
            .iter()
            .zip(self.eigenvalues())
            .filter(|(_, l)| *l < -tol)
            .map(|(&f, l)| (f, l))
            .collect()
    }

    /// Range and tetrahedron check; reports the most negative eigenvalue.
    pub fn check_physical(&self, tol: T) -> Result<()> {
        for (what, c) in ["c1", "c2", "c3"].into_iter().zip(self.coefficients()) {
            if !(c.abs() <= T::one()) {
                return Err(Error::OutOfRange {
                    what,
                    value: c.as_f64(),
                    range: "[-1, 1]",
                });
            }
        }
        let worst = self
            .violations(tol)
            .into_iter()
            .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap_or(std::cmp::Ordering::Equal));
        match worst {
            Some((face, eigenvalue)) => Err(Error::Unphysical {
                face,
                eigenvalue: eigenvalue.as_f64(),
            }),
            None => Ok(()),
        }
    }

    /// `(1/4)(1 + Σ c_i σ_i ⊗ σ_i)`. Hermitian with unit trace for any input;
    /// positive semidefinite only when the triple is physical.
    pub fn density(&self) -> DensityMatrix4<T> {
        let mut m = Mat4::identity();
        for (k, c) in self.coefficients().into_iter().enumerate() {
            let s = pauli::<T>(k + 1);
            m = m + s.kron(&s).scale(c);
        }
        DensityMatrix4(m.scale(T::lit(0.25)))
    }
}

/// Werner state `c = (-z, -z, -z)` for `z` in `[0, 1]`.
pub fn werner<T: Real>(z: T) -> Result<BdTriple<T>> {
    if !(z >= T::zero() && z <= T::one()) {
        return Err(Error::OutOfRange {
            what: "werner z",
            value: z.as_f64(),
            range: "[0, 1]",
        });
    }
    Ok(BdTriple::new(-z, -z, -z))
}

/// Two-qubit density matrix.
///
/// [`DensityMatrix4::new`] checks Hermiticity, unit trace and positivity.
/// Matrices produced by this crate from a physical state skip the check.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DensityMatrix4<T>(pub(crate) Mat4<T>);

impl<T: Real> DensityMatrix4<T> {
    pub fn new(m: Mat4<T>, tol: T) -> Result<Self> {
        let rho = Self(m);
        rho.validate(tol)?;
        Ok(rho)
    }

    pub(crate) fn from_matrix_unchecked(m: Mat4<T>) -> Self {
        Self(m)
    }

    pub fn maximally_mixed() -> Self {
        Self(Mat4::identity().scale(T::lit(0.25)))
    }

    pub fn matrix(&self) -> &Mat4<T> {
        &self.0
    }

    pub fn validate(&self, tol: T) -> Result<()> {
        let defect = self.0.hermiticity_defect();
        if !(defect <= tol) {
            return Err(Error::NotHermitian {
                deviation: defect.as_f64(),
            });
        }
        let tr = self.0.trace();
        if !((tr.re - T::one()).abs() <= tol && tr.im.abs() <= tol) {
            return Err(Error::TraceNotOne { trace: tr.re.as_f64() });
        }
        let min = self.eigenvalues()?[0];
        if min < -tol {
            return Err(Error::NotPositive {
                min_eigenvalue: min.as_f64(),
            });
        }
        Ok(())
    }

    /// Ascending eigenvalues from the Jacobi solver.
    pub fn eigenvalues(&self) -> Result<[T; 4]> {
        Ok(hermitian_eigen(&self.0)?.values)
    }

    pub fn reduced_a(&self) -> Mat2<T> {
        self.0.partial_trace_b()
    }

    pub fn reduced_b(&self) -> Mat2<T> {
        self.0.partial_trace_a()
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.0.max_abs_diff(&other.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Vec4;

    fn t(c1: f64, c2: f64, c3: f64) -> BdTriple<f64> {
        BdTriple::new(c1, c2, c3)
    }

    #[test]
    fn zero_triple_is_maximally_mixed() {
        let rho = t(0.0, 0.0, 0.0).density();
        assert!(rho.max_abs_diff(&DensityMatrix4::maximally_mixed()) == 0.0);
    }

    #[test]
    fn singlet_corner_is_rank_one_projector() {
        let rho = t(-1.0, -1.0, -1.0).density();
        let h = 0.5f64.sqrt();
        let singlet: Vec4<f64> = [
            Complex::new(0.0, 0.0),
            Complex::new(h, 0.0),
            Complex::new(-h, 0.0),
            Complex::new(0.0, 0.0),
        ];
        let mut proj = Mat4::zeros();
        for i in 0..4 {
            for j in 0..4 {
                proj.0[i][j] = singlet[i] * singlet[j].conj();
            }
        }
        assert!(rho.matrix().max_abs_diff(&proj) < 1e-15);
        let ev = rho.eigenvalues().unwrap();
        assert!((ev[3] - 1.0).abs() < 1e-12 && ev[0].abs() < 1e-12);
    }

    #[test]
    fn density_entries_for_sample_state() {
        let m = *t(0.1, 0.2, 0.6).density().matrix();
        let d = m.diagonal();
        for (got, want) in d.iter().zip([0.4, 0.1, 0.1, 0.4]) {
            assert!((got - want).abs() < 1e-15);
        }
        // corners carry (c1 - c2)/4, inner anti-diagonal (c1 + c2)/4
        assert!((m.0[0][3].re - (-0.1 / 4.0)).abs() < 1e-15);
        assert!((m.0[3][0].re - (-0.1 / 4.0)).abs() < 1e-15);
        assert!((m.0[1][2].re - 0.3 / 4.0).abs() < 1e-15);
        assert!((m.0[2][1].re - 0.3 / 4.0).abs() < 1e-15);
        assert!(m.0[0][3].im.abs() < 1e-15);
    }

    #[test]
    fn eigenvalue_examples() {
        assert_eq!(t(0.0, 0.0, 0.0).eigenvalues(), [0.25; 4]);
        assert_eq!(t(-1.0, -1.0, -1.0).eigenvalues(), [1.0, 0.0, 0.0, 0.0]);
        let ev = t(0.1, 0.2, 0.6).eigenvalues();
        for (got, want) in ev.iter().zip([0.025, 0.425, 0.375, 0.175]) {
            assert!((got - want).abs() < 1e-15, "{ev:?}");
        }
    }

    #[test]
    fn physicality_examples() {
        assert!(t(0.1, 0.2, 0.6).is_physical(1e-12));
        assert!(!t(1.0, 1.0, 1.0).is_physical(1e-12));
        assert!(t(-1.0, -1.0, -1.0).is_physical(0.0));
    }

    #[test]
    fn unphysical_error_names_the_face() {
        let err = BdTriple::physical(1.0, 1.0, 1.0, 1e-9).unwrap_err();
        assert_eq!(
            err,
            Error::Unphysical {
                face: TetrahedronFace::MinusMinusMinus,
                eigenvalue: -0.5
            }
        );
        assert!(err.to_string().contains("(1−c1−c2−c3)/4"));
    }

    #[test]
    fn out_of_range_coefficient_rejected() {
        let err = BdTriple::physical(1.5, 0.0, 0.0, 1e-9).unwrap_err();
        assert!(matches!(err, Error::OutOfRange { what: "c1", .. }));
    }

    #[test]
    fn werner_examples() {
        assert_eq!(werner(0.0).unwrap(), t(-0.0, -0.0, -0.0));
        assert_eq!(werner(1.0).unwrap(), t(-1.0, -1.0, -1.0));
        let w = werner(0.5).unwrap();
        assert_eq!(w, t(-0.5, -0.5, -0.5));
        assert!(w.is_physical(DEFAULT_TOL));
        assert_eq!(w.eigenvalues(), [0.625, 0.125, 0.125, 0.125]);
        assert!(werner(1.2f64).is_err());
        assert!(werner(-0.1f64).is_err());
        assert!(werner(f64::NAN).is_err());
    }

    #[test]
    fn validated_matrix_rejects_non_psd() {
        let m = *t(1.0, 1.0, 1.0).density().matrix();
        assert!(matches!(
            DensityMatrix4::new(m, 1e-9),
            Err(Error::NotPositive { .. })
        ));
        let mut bad = Mat4::<f64>::identity();
        bad.0[0][1] = Complex::new(0.1, 0.0);
        assert!(matches!(
            DensityMatrix4::new(bad.scale(0.25), 1e-9),
            Err(Error::NotHermitian { .. })
        ));
        assert!(matches!(
            DensityMatrix4::new(Mat4::<f64>::identity(), 1e-9),
            Err(Error::TraceNotOne { .. })
        ));
    }

    #[test]
    fn single_precision_density() {
        let rho = BdTriple::<f32>::new(0.1, 0.2, 0.6).density();
        assert!((rho.matrix().trace().re - 1.0).abs() < 1e-6);
        assert!((rho.eigenvalues().unwrap()[0] - 0.025).abs() < 1e-6);
    }
}
