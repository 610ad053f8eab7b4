use thiserror::Error;

use crate::bd::TetrahedronFace;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unphysical state: eigenvalue {face} = {eigenvalue} is negative")]
    Unphysical {
        face: TetrahedronFace,
        eigenvalue: f64,
    },

    #[error("{what} = {value} is outside {range}")]
    OutOfRange {
        what: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("matrix is not Hermitian (max deviation {deviation})")]
    NotHermitian { deviation: f64 },

    #[error("matrix trace is {trace}, expected 1")]
    TraceNotOne { trace: f64 },

    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue})")]
    NotPositive { min_eigenvalue: f64 },

    #[error("invalid probability distribution: {0}")]
    InvalidDistribution(String),

    #[error("relative entropy diverges: support of rho is not contained in support of chi")]
    InfiniteDivergence,

    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),
}
