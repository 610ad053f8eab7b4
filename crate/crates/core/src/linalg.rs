//! Fixed-size complex matrices for one and two qubits, plus a cyclic Jacobi
//! eigensolver for 4x4 Hermitian matrices.

use std::ops::{Add, Mul, Sub};

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Real;

pub type Vec2<T> = [Complex<T>; 2];
pub type Vec4<T> = [Complex<T>; 4];

/// Off-diagonal Frobenius norm below which the Jacobi iteration stops.
pub const JACOBI_THRESHOLD: f64 = 1e-13;
/// Maximum number of full sweeps over all (p, q) pairs.
pub const JACOBI_MAX_SWEEPS: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat2<T>(pub [[Complex<T>; 2]; 2]);

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat4<T>(pub [[Complex<T>; 4]; 4]);

impl<T: Real> Mat2<T> {
    pub fn zeros() -> Self {
        Self([[Complex::zero(); 2]; 2])
    }

    pub fn identity() -> Self {
        let mut m = Self::zeros();
        m.0[0][0] = Complex::one();
        m.0[1][1] = Complex::one();
        m
    }

    /// Matrix whose columns are `a` and `b`.
    pub fn from_columns(a: &Vec2<T>, b: &Vec2<T>) -> Self {
        Self([[a[0], b[0]], [a[1], b[1]]])
    }

    pub fn adjoint(&self) -> Self {
        let m = &self.0;
        Self([[m[0][0].conj(), m[1][0].conj()], [m[0][1].conj(), m[1][1].conj()]])
    }

    pub fn trace(&self) -> Complex<T> {
        self.0[0][0] + self.0[1][1]
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        let mut d = T::zero();
        for i in 0..2 {
            for j in 0..2 {
                d = d.max((self.0[i][j] - other.0[i][j]).norm());
            }
        }
        d
    }

    pub fn kron(&self, other: &Self) -> Mat4<T> {
        let mut out = Mat4::zeros();
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    for l in 0..2 {
                        out.0[2 * i + k][2 * j + l] = self.0[i][j] * other.0[k][l];
                    }
                }
            }
        }
        out
    }
}

impl<T: Real> Mul for Mat2<T> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        let mut out = Self::zeros();
        for i in 0..2 {
            for j in 0..2 {
                out.0[i][j] = self.0[i][0] * rhs.0[0][j] + self.0[i][1] * rhs.0[1][j];
            }
        }
        out
    }
}

impl<T: Real> Mat4<T> {
    pub fn zeros() -> Self {
        Self([[Complex::zero(); 4]; 4])
    }

    pub fn identity() -> Self {
        Self::from_real_diagonal([T::one(); 4])
    }

    pub fn from_real_diagonal(d: [T; 4]) -> Self {
        let mut m = Self::zeros();
        for (i, v) in d.into_iter().enumerate() {
            m.0[i][i] = Complex::new(v, T::zero());
        }
        m
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec4<T>; 4]) -> Self {
        let mut m = Self::zeros();
        for (j, col) in cols.iter().enumerate() {
            for i in 0..4 {
                m.0[i][j] = col[i];
            }
        }
        m
    }

    pub fn column(&self, j: usize) -> Vec4<T> {
        [self.0[0][j], self.0[1][j], self.0[2][j], self.0[3][j]]
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros();
        for i in 0..4 {
            for j in 0..4 {
                out.0[i][j] = self.0[j][i].conj();
            }
        }
        out
    }

    pub fn scale(&self, s: T) -> Self {
        let mut out = *self;
        for row in out.0.iter_mut() {
            for z in row.iter_mut() {
                *z = *z * s;
            }
        }
        out
    }

    pub fn trace(&self) -> Complex<T> {
        (0..4).map(|i| self.0[i][i]).fold(Complex::zero(), |a, b| a + b)
    }

    pub fn diagonal(&self) -> [T; 4] {
        [self.0[0][0].re, self.0[1][1].re, self.0[2][2].re, self.0[3][3].re]
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        let mut d = T::zero();
        for i in 0..4 {
            for j in 0..4 {
                d = d.max((self.0[i][j] - other.0[i][j]).norm());
            }
        }
        d
    }

    /// Largest entrywise deviation from Hermiticity.
    pub fn hermiticity_defect(&self) -> T {
        self.max_abs_diff(&self.adjoint())
    }

    /// `v† M v`.
    pub fn expectation(&self, v: &Vec4<T>) -> Complex<T> {
        let mut acc = Complex::zero();
        for i in 0..4 {
            let mut row = Complex::zero();
            for j in 0..4 {
                row = row + self.0[i][j] * v[j];
            }
            acc = acc + v[i].conj() * row;
        }
        acc
    }

    /// Trace over the second qubit.
    pub fn partial_trace_b(&self) -> Mat2<T> {
        let mut out = Mat2::zeros();
        for i in 0..2 {
            for k in 0..2 {
                out.0[i][k] = self.0[2 * i][2 * k] + self.0[2 * i + 1][2 * k + 1];
            }
        }
        out
    }

    /// Trace over the first qubit.
    pub fn partial_trace_a(&self) -> Mat2<T> {
        let mut out = Mat2::zeros();
        for j in 0..2 {
            for l in 0..2 {
                out.0[j][l] = self.0[j][l] + self.0[2 + j][2 + l];
            }
        }
        out
    }

    /// `U† M U`.
    pub fn conjugate_by(&self, u: &Self) -> Self {
        u.adjoint() * *self * *u
    }
}

impl<T: Real> Mul for Mat4<T> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        let mut out = Self::zeros();
        for i in 0..4 {
            for j in 0..4 {
                let mut acc = Complex::zero();
                for k in 0..4 {
                    acc = acc + self.0[i][k] * rhs.0[k][j];
                }
                out.0[i][j] = acc;
            }
        }
        out
    }
}

impl<T: Real> Add for Mat4<T> {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        let mut out = self;
        for i in 0..4 {
            for j in 0..4 {
                out.0[i][j] = out.0[i][j] + rhs.0[i][j];
            }
        }
        out
    }
}

impl<T: Real> Sub for Mat4<T> {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self + rhs.scale(-T::one())
    }
}

/// Tensor product `a ⊗ b` of two single-qubit vectors.
pub fn kron_vec<T: Real>(a: &Vec2<T>, b: &Vec2<T>) -> Vec4<T> {
    [a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]]
}

/// Eigenpairs of a Hermitian matrix, eigenvalues ascending, eigenvectors as
/// the matching columns of `vectors`.
#[derive(Clone, Debug)]
pub struct HermitianEigen<T> {
    pub values: [T; 4],
    pub vectors: Mat4<T>,
}

impl<T: Real> HermitianEigen<T> {
    /// Rebuilds `V f(Λ) V†`.
    pub fn map(&self, f: impl Fn(T) -> T) -> Mat4<T> {
        let d = Mat4::from_real_diagonal(self.values.map(f));
        self.vectors * d * self.vectors.adjoint()
    }
}

fn off_diagonal_norm<T: Real>(a: &Mat4<T>) -> T {
    let mut s = T::zero();
    for i in 0..4 {
        for j in 0..4 {
            if i != j {
                s = s + a.0[i][j].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Cyclic complex Jacobi diagonalization of a Hermitian 4x4 matrix.
///
/// Each rotation first removes the phase of `a[p][q]` and then applies the
/// classical real Jacobi rotation, so every step is a unitary similarity.
/// Only the Hermitian part of the input is used.
pub fn hermitian_eigen<T: Real>(m: &Mat4<T>) -> Result<HermitianEigen<T>> {
    let half = T::lit(0.5);
    let mut a = (*m + m.adjoint()).scale(half);
    let mut v = Mat4::identity();
    let threshold = T::floor_tol(JACOBI_THRESHOLD, 16.0);

    let mut converged = off_diagonal_norm(&a) <= threshold;
    let mut sweeps = 0;
    while !converged {
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps });
        }
        sweeps += 1;
        for p in 0..3 {
            for q in (p + 1)..4 {
                let apq = a.0[p][q];
                let r = apq.norm();
                if r == T::zero() {
                    continue;
                }
                let phase = apq / r;
                let app = a.0[p][p].re;
                let aqq = a.0[q][q].re;
                let tau = (aqq - app) / (r + r);
                let t = if tau >= T::zero() {
                    T::one() / (tau + (T::one() + tau * tau).sqrt())
                } else {
                    -T::one() / (-tau + (T::one() + tau * tau).sqrt())
                };
                let c = T::one() / (T::one() + t * t).sqrt();
                let s = t * c;

                // J = diag-phase * real rotation on the (p, q) plane.
                let mut j = Mat4::identity();
                j.0[p][p] = Complex::new(c, T::zero());
                j.0[p][q] = Complex::new(s, T::zero());
                j.0[q][p] = phase.conj() * (-s);
                j.0[q][q] = phase.conj() * c;

                a = a.conjugate_by(&j);
                a.0[p][q] = Complex::zero();
                a.0[q][p] = Complex::zero();
                for k in [p, q] {
                    a.0[k][k] = Complex::new(a.0[k][k].re, T::zero());
                }
                v = v * j;
            }
        }
        converged = off_diagonal_norm(&a) <= threshold;
    }

    let mut order = [0usize, 1, 2, 3];
    let diag = a.diagonal();
    order.sort_by(|&x, &y| diag[x].partial_cmp(&diag[y]).unwrap_or(std::cmp::Ordering::Equal));
    let values = order.map(|k| diag[k]);
    let vectors = Mat4::from_columns(&order.map(|k| v.column(k)));
    Ok(HermitianEigen { values, vectors })
}
