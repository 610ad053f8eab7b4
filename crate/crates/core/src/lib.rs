//! Classical correlations and local available quantum correlations (LAQC)
//! of two-qubit Bell-diagonal states.
//!
//! Every quantity is available twice: as a closed form in the extremal
//! correlation coefficients, and as a brute-force optimization over local
//! measurement bases that can be used to check it.
//!
//! The numeric core is generic over [`Real`] (`f32` or `f64`); the `*64`
//! aliases below fix the scalar to `f64`.

pub mod basis;
pub mod bd;
pub mod cli;
pub mod error;
pub mod info;
pub mod linalg;
pub mod oracle;
pub mod quantifiers;
pub mod scalar;
pub mod search;

pub use basis::{CaseLabel, PhasePair, ProbeBasis};
pub use bd::{werner, BdTriple, DensityMatrix4, TetrahedronFace};
pub use error::{Error, Result};
pub use info::JointDistribution2x2;
pub use quantifiers::{
    classical_correlations_bd, classical_correlations_numeric, laqc_bd, laqc_numeric, CaseTag,
    QuantifierResult,
};
pub use scalar::Real;
pub use search::GridSpec;

pub type BdTriple64 = BdTriple<f64>;
pub type BdTriple32 = BdTriple<f32>;
pub type DensityMatrix64 = DensityMatrix4<f64>;
pub type DensityMatrix32 = DensityMatrix4<f32>;
pub type ProbeBasis64 = ProbeBasis<f64>;
pub type PhasePair64 = PhasePair<f64>;
pub type Distribution64 = JointDistribution2x2<f64>;
pub type QuantifierResult64 = QuantifierResult<f64>;
