use num_complex::Complex64;

use super::AngularGrid;
use crate::error::{Error, Result};
use crate::model::CouplingStrength;

/// `½ Σᵢ wᵢ μᵢ / (S − μᵢ)`, the discrete counterpart of the kernel `F(S)`.
pub fn secular_sum(s: f64, grid: &AngularGrid) -> f64 {
    grid.average(|mu| mu / (s - mu))
}

/// The collective eigenvalue of `M = diag(μ) + (A/2)·μ wᵀ` lying above the
/// discrete continuum, i.e. the root `S > max μᵢ` of `1 = A·secular_sum(S)`.
///
/// On a symmetric grid the secular sum decreases monotonically above the
/// largest node, so the root is unique and found by bisection.
pub fn discrete_collective_root(coupling: &CouplingStrength, grid: &AngularGrid) -> Result<f64> {
    let a = coupling.value();
    if a.is_nan() || a <= 0.0 {
        return Err(Error::NoUndampedRoot { coupling: a });
    }
    let secular = |s: f64| a * secular_sum(s, grid) - 1.0;

    let mut lo = grid.max_node().next_up();
    let mut hi = 2f64.max(2.0 * (a / 3.0).sqrt() + 2.0);
    let (g_lo, g_hi) = (secular(lo), secular(hi));
    if !(g_lo > 0.0 && g_hi < 0.0) {
        return Err(Error::Convergence {
            iterations: 0,
            lower: lo,
            upper: hi,
            residual: g_lo.abs().min(g_hi.abs()),
        });
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let g = secular(mid);
        if g == 0.0 {
            return Ok(mid);
        }
        if g > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// `out = M·values` for the collective operator `Mᵢⱼ = μᵢ δᵢⱼ + (A/2) μᵢ wⱼ`.
pub fn apply_collective_operator(
    coupling: f64,
    grid: &AngularGrid,
    values: &[Complex64],
    out: &mut [Complex64],
) {
    let mean = angular_mean(grid, values);
    for ((o, &f), &mu) in out.iter_mut().zip(values).zip(grid.nodes()) {
        *o = mu * (f + coupling * mean);
    }
}

/// `⟨F⟩ = ½ Σᵢ wᵢ Fᵢ`.
pub fn angular_mean(grid: &AngularGrid, values: &[Complex64]) -> Complex64 {
    0.5 * values
        .iter()
        .zip(grid.weights())
        .map(|(&f, &w)| f * w)
        .sum::<Complex64>()
}
