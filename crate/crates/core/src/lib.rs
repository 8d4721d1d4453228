//! Forward and inverse non-linear Fourier transform (NLFT) for half-line
//! Dirac systems, computed through the spectral measure of the system.
//!
//! The pipeline is
//!
//! ```text
//! measure --periodize--> trig moments --Toeplitz/OPUC--> h11 steps
//!         --potential_from_h11--> discrete potential --forward--> (a, b)
//! ```
//!
//! and the result is compared with the Schur function `(S_mu - 1)/(S_mu + 1)`
//! built from the Schwarz transform of the measure.
//!
//! Sign convention: `b/a = (S_mu - 1)/(S_mu + 1)` where `mu` is the Neumann
//! spectral measure of `Omega X' = z X - Q X`, `Q = [[0, f], [f, 0]]`. For a
//! single point mass `c` at `tau` this fixes `a = cosh c` and
//! `b = -e^{2 i z tau} sinh c`.

pub mod checks;
pub mod converge;
mod error;
pub mod herglotz;
pub mod inverse;
pub mod measure;
pub mod nlft;
pub mod quad;
pub mod report;

pub use num_complex::Complex64;

pub use error::{Error, Result};
pub use herglotz::{
    conjugate_poisson_integral, poisson_integral, schur_from_measure, schwarz_transform,
    validate_clark_identity, ClarkReport, HerglotzValue,
};
pub use inverse::{
    inverse_nlft, opuc_h11, potential_from_h11, toeplitz_h11, toeplitz_h11_with, verblunsky,
    InverseMethod, StepHamiltonian, ToeplitzSolver, ToeplitzSystem,
};
pub use measure::{Atom, Density, Measure, PwReport, PwVerdict, Table, TrigMoments};
pub use nlft::{
    forward, forward_continuous, forward_discrete, fourier_linear, magnitude_a_from_schur,
    point_mass_factor, schur_ratio, step_propagator, DiscretePotential, Mat2, Potential,
    SchurValue, StepPotential, TransferMatrix,
};

/// Imaginary unit.
pub const I: Complex64 = Complex64::new(0.0, 1.0);
