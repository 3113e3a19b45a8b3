//! The angular kernel of the zero-sound dispersion relation.
//!
//! ```text
//! F(S) = ½ ∫₀^π sinθ cosθ / (S − cosθ) dθ = (S/2)·ln((S+1)/(S−1)) − 1
//! ```
//!
//! and the residual `R(S, A) = 1 − A·F(S)` whose zero above `S = 1` is the
//! undamped mode. Near the continuum edge `S → 1⁺` the excess `S − 1` is
//! carried in logarithmic form so that roots far below double-precision
//! distinguishability from one stay representable.

use crate::error::{Error, Result};
use crate::model::CouplingStrength;

/// Below this phase velocity the closed logarithmic form is used; above it the
/// power series in `1/S`, which avoids cancellation against the leading `1`.
const SERIES_THRESHOLD: f64 = 2.0;

/// `F(S)` for `S > 1`.
pub fn landau_kernel(s: f64) -> Result<f64> {
    check_phase_velocity(s)?;
    if s >= SERIES_THRESHOLD {
        Ok(kernel_series(s.recip()))
    } else {
        let excess = s - 1.0;
        Ok(kernel_near_edge(excess, excess.ln()))
    }
}

/// `R(S, A) = 1 − A·F(S)`; strictly increasing in `S` for `A > 0`.
pub fn dispersion_residual(s: f64, coupling: &CouplingStrength) -> Result<f64> {
    let kernel = landau_kernel(s)?;
    Ok(1.0 - coupling.value() * kernel)
}

/// `F` as a function of the working variable `u = ln(S − 1)`.
///
/// Valid for any finite `u`, including values where `e^u` underflows.
pub(crate) fn kernel_from_log_excess(u: f64) -> f64 {
    let excess = u.exp();
    let s = 1.0 + excess;
    if s >= SERIES_THRESHOLD {
        kernel_series(s.recip())
    } else {
        kernel_near_edge(excess, u)
    }
}

/// `R(S, A)` evaluated at `S = 1 + e^u`.
pub(crate) fn residual_from_log_excess(u: f64, coupling: f64) -> f64 {
    1.0 - coupling * kernel_from_log_excess(u)
}

fn check_phase_velocity(s: f64) -> Result<()> {
    if s.is_nan() || s == f64::INFINITY {
        return Err(Error::invalid(format!(
            "phase velocity must be finite, got {s}"
        )));
    }
    if s <= 1.0 {
        return Err(Error::Domain { s });
    }
    Ok(())
}

// ((1 + d)/2)·(ln(2 + d) − ln d) − 1 with d = S − 1.
fn kernel_near_edge(excess: f64, ln_excess: f64) -> f64 {
    0.5 * (1.0 + excess) * ((2.0 + excess).ln() - ln_excess) - 1.0
}

// S·atanh(1/S) − 1 = Σ_{n≥1} x^{2n}/(2n+1), x = 1/S ≤ 1/2.
fn kernel_series(x: f64) -> f64 {
    let x2 = x * x;
    let mut power = x2;
    let mut sum = 0.0;
    let mut n = 1.0;
    loop {
        let term = power / (2.0 * n + 1.0);
        sum += term;
        if term <= sum * 1e-17 {
            break;
        }
        power *= x2;
        n += 1.0;
    }
    sum
}
