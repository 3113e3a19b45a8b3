//! Independent kinetic checks of the analytic roots.
//!
//! The angular self-consistency relation is discretised on a Gauss–Legendre
//! grid in `μ = cosθ`. Its collective eigenvalue is found either directly from
//! the secular equation or by integrating the linearised kinetic equation in
//! time and reading the dominant frequency off the density response. Time is
//! measured in units of `1/(k·v_F)`, so frequencies compare directly with `S`.

mod evolve;
mod grid;
mod secular;
mod spectrum;

pub use evolve::{evolve_initial_value, max_stable_step, AngularState, TimeSeries};
pub use grid::AngularGrid;
pub use secular::{angular_mean, apply_collective_operator, discrete_collective_root, secular_sum};
pub use spectrum::{spectral_peak, SpectralPeak, Window, MIN_SAMPLES};
