use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed document; `path` names the offending field, e.g. `atoms[2].mass`.
    #[error("{path}: {msg}")]
    Spec { path: String, msg: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("measure is not even: {0}")]
    NotEven(String),
    #[error("z = {z} lies on an atom of the measure")]
    OnAtom { z: Complex64 },
    #[error("z = {z} lies on the support of the absolutely continuous part")]
    OnSupport { z: Complex64 },
    #[error("|s| = {0} is not below 1")]
    NotContractive(f64),
    #[error("adaptive quadrature exceeded {0} subintervals")]
    Quadrature(usize),
    #[error("S_mu(z) = -1 at z = {z}: pole of the Schur function")]
    SchurPole { z: Complex64 },
    #[error("a(z) vanishes at z = {z}")]
    Resonance { z: Complex64 },
    #[error("Toeplitz matrix J_{order} is not positive definite (pivot {pivot:e}); not the spectral measure of a PW system")]
    NotPositiveDefinite { order: usize, pivot: f64 },
    #[error("circle measure is trivial: Verblunsky coefficient alpha_{index} = {value}")]
    NotNontrivial { index: usize, value: f64 },
    #[error("Hamiltonian step h[{index}] = {value} is not positive")]
    NonPositiveStep { index: usize, value: f64 },
    #[error("no zeros of {0} found in the search window")]
    NoZeros(&'static str),
    #[error("degenerate zero of {which} at x = {x}")]
    DegenerateZero { which: &'static str, x: f64 },
}

impl Error {
    pub(crate) fn spec(path: impl Into<String>, msg: impl Into<String>) -> Self {
        Error::Spec { path: path.into(), msg: msg.into() }
    }

    /// True for failures of the numerics (CLI exit code 2) rather than of the input.
    pub fn is_numerical(&self) -> bool {
        !matches!(
            self,
            Error::Spec { .. }
                | Error::InvalidArgument(_)
                | Error::NotEven(_)
                | Error::OnAtom { .. }
                | Error::OnSupport { .. }
                | Error::NotContractive(_)
        )
    }
}
