//! Zero-sound dispersion of a Fermi liquid with the de Broglie diffraction
//! (Madelung) correction.
//!
//! The whole problem reduces to one dimensionless coupling
//! `A = Q0 + (3/4)(k·λ_d)²` and the relation `1 = A·F(S)` for the phase
//! velocity `S = ω/(k·v_F)`, with
//! `F(S) = (S/2)·ln((S+1)/(S−1)) − 1`. This crate provides
//!
//! * the kernel, residual and exact undamped root ([`solve_zero_sound`]),
//! * the weak-coupling and high-frequency closed forms,
//! * grid tabulation of the branch ([`branch_scan`]),
//! * two kinetic oracles in [`kinetic`]: a discrete eigenproblem and a
//!   time-domain evolution with spectral peak extraction.
//!
//! ```
//! use zerosound::{coupling_strength, solve_zero_sound, InteractionModel, SolverConfig};
//!
//! let a = coupling_strength(InteractionModel::new(1.0)?, 0.0)?;
//! let mode = solve_zero_sound(&a, &SolverConfig::default())?;
//! assert!((mode.s - 1.044382).abs() < 1e-6);
//! # Ok::<(), zerosound::Error>(())
//! ```

mod error;
mod kernel;
pub mod kinetic;
mod model;
mod scan;
mod solver;

pub use error::{Error, ErrorKind, Result};
pub use kernel::{dispersion_residual, landau_kernel};
pub use model::{
    coupling_strength, physical_frequency, CouplingStrength, FermiParameters, InteractionModel,
};
pub use scan::{branch_scan, BranchScan, FailedPoint, GridSpec, ScanPoint, Spacing};
pub use solver::{
    asymptotic_zero_sound, high_frequency_branch, solve_zero_sound, DispersionPoint,
    MassConvention, Method, SolverConfig,
};
