use num_complex::Complex64;

use super::secular::{angular_mean, apply_collective_operator};
use super::AngularGrid;
use crate::error::{Error, Result};
use crate::model::CouplingStrength;

/// Surface amplitude `F(μᵢ)` on the angular grid at a given time (units `1/(k·v_F)`).
#[derive(Debug, Clone, PartialEq)]
pub struct AngularState {
    values: Vec<Complex64>,
    time: f64,
}

impl AngularState {
    pub fn new(grid: &AngularGrid, values: Vec<Complex64>, time: f64) -> Result<Self> {
        if values.len() != grid.size() {
            return Err(Error::invalid(format!(
                "state has {} values for a {}-node grid",
                values.len(),
                grid.size()
            )));
        }
        if !time.is_finite() || values.iter().any(|v| !v.is_finite()) {
            return Err(Error::invalid("state values and time must be finite"));
        }
        Ok(AngularState { values, time })
    }

    /// `F ≡ amplitude` at `t = 0`.
    pub fn isotropic(grid: &AngularGrid, amplitude: Complex64) -> Result<Self> {
        AngularState::new(grid, vec![amplitude; grid.size()], 0.0)
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn time(&self) -> f64 {
        self.time
    }
}

/// Samples of the angular average `⟨F⟩(t)`, proportional to `δn/n₀`.
///
/// Sample `j` is taken at `start + j·dt`.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    pub dt: f64,
    pub start: f64,
    pub samples: Vec<Complex64>,
}

impl TimeSeries {
    pub fn new(dt: f64, start: f64, samples: Vec<Complex64>) -> Result<Self> {
        if !(dt.is_finite() && dt > 0.0) {
            return Err(Error::invalid(format!("dt must be positive, got {dt}")));
        }
        if samples.len() < 2 {
            return Err(Error::invalid("a time series needs at least 2 samples"));
        }
        Ok(TimeSeries { dt, start, samples })
    }

    pub fn time(&self, index: usize) -> f64 {
        self.start + index as f64 * self.dt
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }
}

/// Largest step accepted by [`evolve_initial_value`] for coupling `a`.
pub fn max_stable_step(a: f64) -> f64 {
    0.1 / (1.0 + a)
}

/// Integrates `dF/dt = −i·M·F`, i.e. `dFᵢ/dt = −i μᵢ (Fᵢ + A⟨F⟩)` with
/// `k·v_F = 1`, by classical fourth-order Runge–Kutta.
///
/// `⟨F⟩` is recorded after every step, so the series has `steps` samples
/// starting at `initial.time() + dt`.
pub fn evolve_initial_value(
    coupling: &CouplingStrength,
    grid: &AngularGrid,
    initial: &AngularState,
    dt: f64,
    steps: usize,
) -> Result<TimeSeries> {
    let a = coupling.value();
    if !(a.is_finite() && a >= 0.0) {
        return Err(Error::invalid(format!("coupling must be non-negative, got {a}")));
    }
    if !(dt.is_finite() && dt > 0.0) {
        return Err(Error::invalid(format!("dt must be positive, got {dt}")));
    }
    if dt > max_stable_step(a) {
        return Err(Error::invalid(format!(
            "dt = {dt} exceeds the stability bound 0.1/(1 + A) = {}",
            max_stable_step(a)
        )));
    }
    if steps < 2 {
        return Err(Error::invalid(format!("need at least 2 steps, got {steps}")));
    }
    if initial.values.len() != grid.size() {
        return Err(Error::invalid("initial state does not match the grid"));
    }

    let n = grid.size();
    let mut state = initial.values.clone();
    let mut k1 = vec![Complex64::default(); n];
    let mut k2 = vec![Complex64::default(); n];
    let mut k3 = vec![Complex64::default(); n];
    let mut k4 = vec![Complex64::default(); n];
    let mut stage = vec![Complex64::default(); n];
    let minus_i = Complex64::new(0.0, -1.0);

    let rhs = |values: &[Complex64], out: &mut [Complex64]| {
        apply_collective_operator(a, grid, values, out);
        out.iter_mut().for_each(|o| *o *= minus_i);
    };

    let mut samples = Vec::with_capacity(steps);
    for step in 0..steps {
        rhs(&state, &mut k1);
        for ((s, &f), &k) in stage.iter_mut().zip(&state).zip(&k1) {
            *s = f + 0.5 * dt * k;
        }
        rhs(&stage, &mut k2);
        for ((s, &f), &k) in stage.iter_mut().zip(&state).zip(&k2) {
            *s = f + 0.5 * dt * k;
        }
        rhs(&stage, &mut k3);
        for ((s, &f), &k) in stage.iter_mut().zip(&state).zip(&k3) {
            *s = f + dt * k;
        }
        rhs(&stage, &mut k4);
        for (i, f) in state.iter_mut().enumerate() {
            *f += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }

        let mean = angular_mean(grid, &state);
        if !mean.is_finite() {
            return Err(Error::NumericalBlowup { step: step + 1 });
        }
        samples.push(mean);
    }
    TimeSeries::new(dt, initial.time + dt, samples)
}
