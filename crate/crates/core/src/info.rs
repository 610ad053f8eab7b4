//! Entropies and mutual information, all in bits.

use crate::bd::DensityMatrix4;
use crate::error::{Error, Result};
use crate::linalg::hermitian_eigen;
use crate::scalar::Real;

/// Eigenvalues of `chi` at or below this are outside its support.
pub const SUPPORT_CUTOFF: f64 = 1e-14;

/// Tolerance used when validating probability tables.
pub const DISTRIBUTION_TOL: f64 = 1e-9;

/// `-p log2 p` with `0 log 0 = 0`.
#[inline]
fn neg_p_log2_p<T: Real>(p: T) -> T {
    if p > T::zero() {
        -p * p.log2()
    } else {
        T::zero()
    }
}

/// Shannon entropy in bits. Non-positive entries contribute nothing.
pub fn shannon_entropy<T: Real>(probs: &[T]) -> T {
    probs.iter().map(|&p| neg_p_log2_p(p)).sum()
}

/// Joint distribution of two binary outcomes with its marginals.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct JointDistribution2x2<T> {
    p: [[T; 2]; 2],
    marginal_a: [T; 2],
    marginal_b: [T; 2],
}

impl<T: Real> JointDistribution2x2<T> {
    /// Validates entries in `[0, 1]` and normalization, both within `tol`.
    pub fn new(p: [[T; 2]; 2], tol: T) -> Result<Self> {
        for row in &p {
            for &x in row {
                if !(x >= -tol && x <= T::one() + tol) {
                    return Err(Error::InvalidDistribution(format!(
                        "entry {} outside [0, 1]",
                        x.as_f64()
                    )));
                }
            }
        }
        let total = p[0][0] + p[0][1] + p[1][0] + p[1][1];
        if !((total - T::one()).abs() <= tol) {
            return Err(Error::InvalidDistribution(format!(
                "entries sum to {}",
                total.as_f64()
            )));
        }
        Ok(Self::from_table_unchecked(p))
    }

    pub(crate) fn from_table_unchecked(p: [[T; 2]; 2]) -> Self {
        Self {
            p,
            marginal_a: [p[0][0] + p[0][1], p[1][0] + p[1][1]],
            marginal_b: [p[0][0] + p[1][0], p[0][1] + p[1][1]],
        }
    }

    pub fn table(&self) -> [[T; 2]; 2] {
        self.p
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.p[i][j]
    }

    pub fn marginal_a(&self) -> [T; 2] {
        self.marginal_a
    }

    pub fn marginal_b(&self) -> [T; 2] {
        self.marginal_b
    }

    /// `P(equal outcomes) - P(different outcomes)`.
    pub fn correlation(&self) -> T {
        self.p[0][0] + self.p[1][1] - self.p[0][1] - self.p[1][0]
    }

    pub fn joint_entropy(&self) -> T {
        shannon_entropy(&[self.p[0][0], self.p[0][1], self.p[1][0], self.p[1][1]])
    }

    /// `Σ p_ij log2(p_ij / (p_i p_j))`, zero-probability cells contribute 0.
    pub fn mutual_information(&self) -> T {
        let mut acc = T::zero();
        for i in 0..2 {
            for j in 0..2 {
                let pij = self.p[i][j];
                let denom = self.marginal_a[i] * self.marginal_b[j];
                if pij > T::zero() && denom > T::zero() {
                    acc = acc + pij * (pij / denom).log2();
                }
            }
        }
        acc
    }
}

/// `h(c) = (1+c)/2 log2(1+c) + (1-c)/2 log2(1-c)`.
///
/// Equals the mutual information of two unbiased bits with correlation `c`.
pub fn binary_correlation_entropy<T: Real>(c: T) -> Result<T> {
    if !(c.abs() <= T::one()) {
        return Err(Error::OutOfRange {
            what: "correlation coefficient",
            value: c.as_f64(),
            range: "[-1, 1]",
        });
    }
    let half = T::lit(0.5);
    let term = |x: T| {
        if x > T::zero() {
            x * half * x.log2()
        } else {
            T::zero()
        }
    };
    Ok(term(T::one() + c) + term(T::one() - c))
}

fn checked_eigenvalues<T: Real>(rho: &DensityMatrix4<T>) -> Result<[T; 4]> {
    let ev = rho.eigenvalues()?;
    let tol = T::floor_tol(crate::bd::DEFAULT_TOL, 64.0);
    if ev[0] < -tol {
        return Err(Error::NotPositive {
            min_eigenvalue: ev[0].as_f64(),
        });
    }
    Ok(ev)
}

/// `-Σ λ log2 λ` over the eigenvalues of `rho`.
pub fn von_neumann_entropy<T: Real>(rho: &DensityMatrix4<T>) -> Result<T> {
    Ok(shannon_entropy(&checked_eigenvalues(rho)?))
}

/// `S(ρ‖χ) = -Tr(ρ log2 χ) - S(ρ)`, computed through the eigenbasis of `χ`.
///
/// Returns [`Error::InfiniteDivergence`] when `ρ` has weight outside the
/// support of `χ`.
pub fn relative_entropy<T: Real>(rho: &DensityMatrix4<T>, chi: &DensityMatrix4<T>) -> Result<T> {
    checked_eigenvalues(chi)?;
    let s_rho = von_neumann_entropy(rho)?;
    let eig = hermitian_eigen(chi.matrix())?;
    let cutoff = T::floor_tol(SUPPORT_CUTOFF, 64.0);
    let leak_tol = T::floor_tol(1e-12, 256.0);

    let mut cross = T::zero();
    for k in 0..4 {
        let v = eig.vectors.column(k);
        let weight = rho.matrix().expectation(&v).re;
        let lambda = eig.values[k];
        if lambda <= cutoff {
            if weight > leak_tol {
                return Err(Error::InfiniteDivergence);
            }
            continue;
        }
        cross = cross - weight * lambda.log2();
    }
    Ok(cross - s_rho)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bd::BdTriple;

    fn dist(p: [[f64; 2]; 2]) -> JointDistribution2x2<f64> {
        JointDistribution2x2::new(p, 1e-12).unwrap()
    }

    #[test]
    fn mutual_information_examples() {
        assert_eq!(dist([[0.25, 0.25], [0.25, 0.25]]).mutual_information(), 0.0);
        assert_eq!(dist([[0.5, 0.0], [0.0, 0.5]]).mutual_information(), 1.0);
        let d = dist([[0.4, 0.1], [0.1, 0.4]]);
        // 0.8 log2(1.6) + 0.2 log2(0.4)
        let oracle = 0.8 * 1.6f64.log2() + 0.2 * 0.4f64.log2();
        assert!((d.mutual_information() - oracle).abs() < 1e-15);
        assert!((d.mutual_information() - 0.278072).abs() < 5e-7);
    }

    #[test]
    fn invalid_distributions_rejected() {
        assert!(JointDistribution2x2::new([[0.5, 0.5], [0.5, 0.0]], 1e-9).is_err());
        assert!(JointDistribution2x2::new([[1.2, -0.2], [0.0, 0.0]], 1e-9).is_err());
        assert!(JointDistribution2x2::new([[f64::NAN, 0.5], [0.25, 0.25]], 1e-9).is_err());
    }

    #[test]
    fn marginals_are_row_and_column_sums() {
        let d = dist([[0.1, 0.2], [0.3, 0.4]]);
        assert_eq!(d.marginal_a(), [0.1 + 0.2, 0.3 + 0.4]);
        assert_eq!(d.marginal_b(), [0.1 + 0.3, 0.2 + 0.4]);
    }

    #[test]
    fn product_distribution_has_zero_information() {
        for (a, b) in [(0.3, 0.6), (0.9, 0.5), (0.0, 0.2), (1.0, 1.0)] {
            let d = dist([[a * b, a * (1.0 - b)], [(1.0 - a) * b, (1.0 - a) * (1.0 - b)]]);
            assert!(d.mutual_information().abs() < 1e-15);
        }
    }

    #[test]
    fn binary_correlation_entropy_examples() {
        assert_eq!(binary_correlation_entropy(0.0).unwrap(), 0.0);
        assert_eq!(binary_correlation_entropy(1.0).unwrap(), 1.0);
        assert_eq!(binary_correlation_entropy(-1.0).unwrap(), 1.0);
        let oracle = 0.8 * 1.6f64.log2() + 0.2 * 0.4f64.log2();
        assert!((binary_correlation_entropy(0.6).unwrap() - oracle).abs() < 1e-15);
        assert!(binary_correlation_entropy(1.0 + 1e-12).is_err());
        assert!(binary_correlation_entropy(f64::NAN).is_err());
    }

    #[test]
    fn entropy_examples() {
        let mixed = DensityMatrix4::<f64>::maximally_mixed();
        assert!((von_neumann_entropy(&mixed).unwrap() - 2.0).abs() < 1e-12);
        let singlet = BdTriple::<f64>::new(-1.0, -1.0, -1.0).density();
        assert!(von_neumann_entropy(&singlet).unwrap().abs() < 1e-12);
        let rho = BdTriple::<f64>::new(0.1, 0.2, 0.6).density();
        let oracle: f64 = [0.025f64, 0.425, 0.175, 0.375]
            .iter()
            .map(|l| -l * l.log2())
            .sum();
        let s = von_neumann_entropy(&rho).unwrap();
        assert!((s - oracle).abs() < 1e-12);
        assert!((s - 1.628385).abs() < 5e-7);
    }

    #[test]
    fn entropy_rejects_non_psd() {
        let rho = BdTriple::new(1.0, 1.0, 1.0).density();
        assert!(matches!(
            von_neumann_entropy(&rho),
            Err(Error::NotPositive { .. })
        ));
    }

    #[test]
    fn relative_entropy_examples() {
        let rho = BdTriple::<f64>::new(0.1, 0.2, 0.6).density();
        assert!(relative_entropy(&rho, &rho).unwrap().abs() < 1e-10);
        let mixed = DensityMatrix4::maximally_mixed();
        let singlet = BdTriple::<f64>::new(-1.0, -1.0, -1.0).density();
        assert_eq!(
            relative_entropy(&mixed, &singlet),
            Err(Error::InfiniteDivergence)
        );
        assert!((relative_entropy(&singlet, &mixed).unwrap() - 2.0).abs() < 1e-10);
    }
}
