//! Roots of the dispersion relation and its asymptotic branches.

use std::f64::consts::LN_2;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::{dispersion_residual, residual_from_log_excess};
use crate::model::{coupling_strength, physical_frequency, CouplingStrength, FermiParameters, InteractionModel};

/// Smallest excess `S − 1` the exact solver brackets by default.
const LOWEST_EXCESS: f64 = 1e-320;

/// Width in `ln(S − 1)` at which bisection stops.
const BISECTION_WIDTH: f64 = 1e-15;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    /// Largest accepted `|R(S, A)|` for an exact root.
    pub tolerance: f64,
    pub max_iterations: usize,
    /// Below this coupling the weak-coupling closed form is returned directly.
    pub asymptotic_switch: f64,
}

impl SolverConfig {
    pub fn new(tolerance: f64, max_iterations: usize, asymptotic_switch: f64) -> Result<Self> {
        let cfg = SolverConfig {
            tolerance,
            max_iterations,
            asymptotic_switch,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_tolerance(self, tolerance: f64) -> Result<Self> {
        SolverConfig::new(tolerance, self.max_iterations, self.asymptotic_switch)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tolerance.is_finite() && self.tolerance > 0.0) {
            return Err(Error::invalid(format!(
                "tolerance must be finite and positive, got {}",
                self.tolerance
            )));
        }
        if self.max_iterations < 1 {
            return Err(Error::invalid("max_iterations must be at least 1"));
        }
        if !(self.asymptotic_switch.is_finite() && self.asymptotic_switch >= 0.0) {
            return Err(Error::invalid(format!(
                "asymptotic switch must be finite and non-negative, got {}",
                self.asymptotic_switch
            )));
        }
        Ok(())
    }
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            tolerance: 1e-12,
            max_iterations: 200,
            asymptotic_switch: 0.06,
        }
    }
}

/// Which route produced a [`DispersionPoint`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Exact,
    AsymptoticZeroSound,
    AsymptoticHighFrequency,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Exact => "exact",
            Method::AsymptoticZeroSound => "asymptotic-zero-sound",
            Method::AsymptoticHighFrequency => "asymptotic-high-frequency",
        }
    }
}

/// Which mass enters the quantum frequency `ω_q = ħk²/2m` of the
/// high-frequency branch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MassConvention {
    /// Bare particle mass `m`.
    Bare,
    /// Quasiparticle mass `m*`; matches the large-`S` expansion of the exact relation.
    #[default]
    Effective,
}

/// One solved mode.
///
/// `s_minus_1` is the precision carrier: `s` is always `1 + s_minus_1`, and on
/// deserialization `s` is recomputed from it. `log_s_minus_1` survives even
/// when `s_minus_1` underflows.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "SerializedPoint")]
pub struct DispersionPoint {
    pub k_lambda_d: f64,
    #[serde(rename = "Q0")]
    pub q0: f64,
    #[serde(rename = "A")]
    pub coupling: f64,
    #[serde(rename = "S")]
    pub s: f64,
    #[serde(rename = "S_minus_1")]
    pub s_minus_1: f64,
    /// `ln(S − 1)`; absent when `S ≤ 1`.
    #[serde(rename = "log_S_minus_1")]
    pub log_s_minus_1: Option<f64>,
    pub method: Method,
    /// `R(S, A)`; absent when `S ≤ 1`, where the kernel is undefined.
    pub residual: Option<f64>,
    /// Physical frequency, present only when medium parameters were supplied.
    pub omega: Option<f64>,
}

#[derive(Deserialize)]
struct SerializedPoint {
    k_lambda_d: f64,
    #[serde(rename = "Q0")]
    q0: f64,
    #[serde(rename = "A")]
    coupling: f64,
    #[serde(rename = "S", default)]
    s: Option<f64>,
    #[serde(rename = "S_minus_1")]
    s_minus_1: f64,
    #[serde(rename = "log_S_minus_1", default)]
    log_s_minus_1: Option<f64>,
    method: Method,
    #[serde(default)]
    residual: Option<f64>,
    #[serde(default)]
    omega: Option<f64>,
}

impl From<SerializedPoint> for DispersionPoint {
    fn from(raw: SerializedPoint) -> Self {
        DispersionPoint {
            k_lambda_d: raw.k_lambda_d,
            q0: raw.q0,
            coupling: raw.coupling,
            s: raw.s.unwrap_or(1.0 + raw.s_minus_1),
            s_minus_1: raw.s_minus_1,
            log_s_minus_1: raw.log_s_minus_1,
            method: raw.method,
            residual: raw.residual,
            omega: raw.omega,
        }
    }
}

impl DispersionPoint {
    fn from_log_excess(coupling: &CouplingStrength, log_excess: f64, method: Method) -> Self {
        let s_minus_1 = log_excess.exp();
        DispersionPoint {
            k_lambda_d: coupling.k_lambda_d(),
            q0: coupling.q0(),
            coupling: coupling.value(),
            s: 1.0 + s_minus_1,
            s_minus_1,
            log_s_minus_1: Some(log_excess),
            method,
            residual: Some(residual_from_log_excess(log_excess, coupling.value())),
            omega: None,
        }
    }

    /// Fills in `omega = S·k·v_F` for the given medium.
    pub fn with_frequency(mut self, params: &FermiParameters) -> Result<Self> {
        self.omega = Some(physical_frequency(self.s, self.k_lambda_d, params)?);
        Ok(self)
    }

    /// `S > 1`: the mode lies outside the particle-hole continuum.
    pub fn outside_continuum(&self) -> bool {
        self.s_minus_1 > 0.0 || self.log_s_minus_1.is_some()
    }
}

/// The undamped root `S > 1` of `R(S, A) = 0`.
///
/// For `A` below `cfg.asymptotic_switch` the weak-coupling closed form is
/// returned and labelled as such. Otherwise the root is bracketed and bisected
/// in `u = ln(S − 1)`, then polished by one secant step.
pub fn solve_zero_sound(coupling: &CouplingStrength, cfg: &SolverConfig) -> Result<DispersionPoint> {
    cfg.validate()?;
    let a = coupling.value();
    if a.is_nan() || a <= 0.0 {
        return Err(Error::NoUndampedRoot { coupling: a });
    }
    if a < cfg.asymptotic_switch {
        return asymptotic_zero_sound(coupling);
    }

    let residual = |u: f64| residual_from_log_excess(u, a);

    let mut lo = LOWEST_EXCESS.ln().min(asymptotic_log_excess(a) - 8.0);
    let mut hi = (10f64.max(2.0 * (a / 3.0).sqrt() + 2.0) - 1.0).ln();
    let mut r_lo = residual(lo);
    let mut r_hi = residual(hi);
    if !(r_lo < 0.0 && r_hi > 0.0) {
        return Err(Error::Convergence {
            iterations: 0,
            lower: lo,
            upper: hi,
            residual: r_lo.abs().min(r_hi.abs()),
        });
    }

    let mut iterations = 0;
    loop {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= BISECTION_WIDTH || mid <= lo || mid >= hi {
            break;
        }
        if iterations == cfg.max_iterations {
            return Err(Error::Convergence {
                iterations,
                lower: lo,
                upper: hi,
                residual: r_lo.abs().min(r_hi.abs()),
            });
        }
        iterations += 1;
        let r_mid = residual(mid);
        if r_mid == 0.0 {
            return Ok(DispersionPoint::from_log_excess(coupling, mid, Method::Exact));
        }
        if r_mid < 0.0 {
            lo = mid;
            r_lo = r_mid;
        } else {
            hi = mid;
            r_hi = r_mid;
        }
    }

    let (mut best, mut r_best) = if r_lo.abs() <= r_hi.abs() {
        (lo, r_lo)
    } else {
        (hi, r_hi)
    };
    let secant = lo - r_lo * (hi - lo) / (r_hi - r_lo);
    if secant > lo && secant < hi {
        let r_secant = residual(secant);
        if r_secant.abs() < r_best.abs() {
            best = secant;
            r_best = r_secant;
        }
    }

    if r_best.abs() > cfg.tolerance {
        return Err(Error::Convergence {
            iterations,
            lower: lo,
            upper: hi,
            residual: r_best.abs(),
        });
    }
    Ok(DispersionPoint::from_log_excess(coupling, best, Method::Exact))
}

/// Weak-coupling branch `S = 1 + 2·exp(−2(1 + 1/A))`.
///
/// At `Q0 = 0` this is the purely quantum mode of the ideal Fermi gas with
/// `A = (3/4)(k·λ_d)²`.
pub fn asymptotic_zero_sound(coupling: &CouplingStrength) -> Result<DispersionPoint> {
    let a = coupling.value();
    if a.is_nan() || a <= 0.0 {
        return Err(Error::NoUndampedRoot { coupling: a });
    }
    let log_excess = asymptotic_log_excess(a);
    let s_minus_1 = 2.0 * (-2.0 - 2.0 / a).exp();
    Ok(DispersionPoint {
        k_lambda_d: coupling.k_lambda_d(),
        q0: coupling.q0(),
        coupling: a,
        s: 1.0 + s_minus_1,
        s_minus_1,
        log_s_minus_1: Some(log_excess),
        method: Method::AsymptoticZeroSound,
        residual: Some(residual_from_log_excess(log_excess, a)),
        omega: None,
    })
}

fn asymptotic_log_excess(a: f64) -> f64 {
    LN_2 - 2.0 - 2.0 / a
}

/// High-frequency branch `ω² = (Q0/3)k²v_F² + ω_q²`, i.e.
/// `S² = Q0/3 + (k·λ_d)²·c/4` with `c = 1` for the effective mass and
/// `c = (m*/m)²` for the bare mass.
///
/// Only meaningful for `S ≫ 1`; callers decide whether the result is in range.
/// `params` only matters for [`MassConvention::Bare`].
pub fn high_frequency_branch(
    model: InteractionModel,
    k_lambda_d: f64,
    convention: MassConvention,
    params: &FermiParameters,
) -> Result<DispersionPoint> {
    let coupling = coupling_strength(model, k_lambda_d)?;
    let q0 = model.q0();
    if q0 == 0.0 && k_lambda_d == 0.0 {
        return Err(Error::invalid(
            "high-frequency branch needs Q0 > 0 or k_lambda_d > 0",
        ));
    }
    let mass_factor = match convention {
        MassConvention::Effective => 1.0,
        MassConvention::Bare => params.mass_ratio().powi(2),
    };
    let s = (q0 / 3.0 + 0.25 * k_lambda_d * k_lambda_d * mass_factor).sqrt();
    let s_minus_1 = s - 1.0;
    let s = 1.0 + s_minus_1;
    let (log_s_minus_1, residual) = if s > 1.0 {
        (Some(s_minus_1.ln()), Some(dispersion_residual(s, &coupling)?))
    } else {
        (None, None)
    };
    Ok(DispersionPoint {
        k_lambda_d,
        q0,
        coupling: coupling.value(),
        s,
        s_minus_1,
        log_s_minus_1,
        method: Method::AsymptoticHighFrequency,
        residual,
        omega: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::landau_kernel;
    use crate::ErrorKind;
    use proptest::prelude::*;

    fn coupling(a: f64) -> CouplingStrength {
        CouplingStrength::from_value(a).unwrap()
    }

    // Plain bisection on R(S) in S, bracket (1 + 1e-12, 10).
    fn bisection_oracle(a: f64) -> f64 {
        let (mut lo, mut hi) = (1.0 + 1e-12, 10.0f64);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            let f = 0.5 * mid * ((mid + 1.0) / (mid - 1.0)).ln() - 1.0;
            if 1.0 - a * f < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn exact_root_examples() {
        let cfg = SolverConfig::default();
        let p = solve_zero_sound(&coupling(1.0), &cfg).unwrap();
        assert_eq!(p.method, Method::Exact);
        assert!((p.s - bisection_oracle(1.0)).abs() < 1e-12);
        assert!((p.s - 1.044_382_033_760_833_5).abs() < 1e-13);
        assert!((0.5 * p.s * ((p.s + 1.0) / (p.s - 1.0)).ln() - 2.0).abs() < 1e-10);
        assert!(p.residual.unwrap().abs() <= 1e-12);

        let p = solve_zero_sound(&coupling(0.5), &cfg).unwrap();
        assert!((p.s - bisection_oracle(0.5)).abs() < 1e-12);
        assert!((p.s - 1.0052).abs() < 1e-4);
        assert_eq!(p.s, 1.0 + p.s_minus_1);
    }

    #[test]
    fn underflow_regime_uses_log_form() {
        let a = coupling_strength(InteractionModel::ideal_gas(), 0.1).unwrap();
        assert!((a.value() - 0.0075).abs() < 1e-17);
        let p = solve_zero_sound(&a, &SolverConfig::default()).unwrap();
        assert_eq!(p.method, Method::AsymptoticZeroSound);
        assert_eq!(p.s, 1.0);
        let expected = 2.0 * (-2.0 - 2.0 / a.value()).exp();
        assert_eq!(p.s_minus_1, expected);
        assert!((p.s_minus_1 / 4.174_257_065_966_392e-117 - 1.0).abs() < 1e-12);
        assert!((p.log_s_minus_1.unwrap() - (LN_2 - 2.0 - 2.0 / 0.0075)).abs() < 1e-12);
        assert!(p.residual.unwrap().abs() < 1e-14);
    }

    #[test]
    fn exact_solver_reaches_tiny_excess_without_switch() {
        let cfg = SolverConfig::new(1e-12, 200, 0.0).unwrap();
        for a in [0.05, 0.01, 1e-3] {
            let p = solve_zero_sound(&coupling(a), &cfg).unwrap();
            assert_eq!(p.method, Method::Exact);
            let asym = asymptotic_zero_sound(&coupling(a)).unwrap();
            assert!((p.log_s_minus_1.unwrap() - asym.log_s_minus_1.unwrap()).abs() < 1e-9);
        }
    }

    #[test]
    fn rejects_non_positive_coupling() {
        let cfg = SolverConfig::default();
        for a in [0.0, -0.5] {
            assert_eq!(
                solve_zero_sound(&coupling(a), &cfg).unwrap_err().kind(),
                ErrorKind::NoUndampedRoot
            );
            assert_eq!(
                asymptotic_zero_sound(&coupling(a)).unwrap_err().kind(),
                ErrorKind::NoUndampedRoot
            );
        }
    }

    #[test]
    fn iteration_cap_reports_bracket() {
        let cfg = SolverConfig::new(1e-12, 5, 0.06).unwrap();
        match solve_zero_sound(&coupling(1.0), &cfg).unwrap_err() {
            Error::Convergence {
                iterations,
                lower,
                upper,
                ..
            } => {
                assert_eq!(iterations, 5);
                let root = (1.044_382_033_760_833_5f64 - 1.0).ln();
                assert!(lower < root && root < upper);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn unreachable_tolerance_is_a_convergence_error() {
        let cfg = SolverConfig::new(1e-300, 200, 0.06).unwrap();
        let err = solve_zero_sound(&coupling(7.0), &cfg).unwrap_err();
        assert_eq!(err.kind(), ErrorKind::Convergence);
    }

    #[test]
    fn config_validation() {
        assert!(SolverConfig::new(0.0, 10, 0.06).is_err());
        assert!(SolverConfig::new(1e-12, 0, 0.06).is_err());
        assert!(SolverConfig::new(1e-12, 10, -1.0).is_err());
        assert!(SolverConfig::new(1e-12, 10, 0.0).is_ok());
    }

    #[test]
    fn asymptotic_examples() {
        let p = asymptotic_zero_sound(&coupling(1.0)).unwrap();
        assert!((p.s - (1.0 + 2.0 * (-4.0f64).exp())).abs() < 1e-15);
        assert!((p.s - 1.03663).abs() < 1e-5);

        let p = asymptotic_zero_sound(&coupling(0.3)).unwrap();
        assert!((p.s_minus_1 - 3.44e-4).abs() < 1e-6);
        let exact = solve_zero_sound(&coupling(0.3), &SolverConfig::default()).unwrap();
        assert!((exact.s_minus_1 / p.s_minus_1 - 1.0).abs() < 0.05);
    }

    #[test]
    fn high_frequency_examples() {
        let natural = FermiParameters::default();
        let p = high_frequency_branch(
            InteractionModel::ideal_gas(),
            2.0,
            MassConvention::Effective,
            &natural,
        )
        .unwrap();
        assert_eq!(p.s, 1.0);
        assert!(!p.outside_continuum());
        assert_eq!(p.residual, None);

        let model = InteractionModel::new(300.0).unwrap();
        let p = high_frequency_branch(model, 0.0, MassConvention::Effective, &natural).unwrap();
        assert_eq!(p.s, 10.0);
        assert_eq!(p.method, Method::AsymptoticHighFrequency);
        let exact = solve_zero_sound(&coupling(300.0), &SolverConfig::default()).unwrap();
        let rel = (exact.s - p.s) / p.s;
        assert!(rel > 0.0 && rel < 0.006, "{rel}");

        for convention in [MassConvention::Bare, MassConvention::Effective] {
            let err = high_frequency_branch(InteractionModel::ideal_gas(), 0.0, convention, &natural)
                .unwrap_err();
            assert_eq!(err.kind(), ErrorKind::InvalidArgument);
        }
    }

    #[test]
    fn bare_mass_convention_rescales_quantum_term() {
        // m* = 2 m: c = 4
        let params = FermiParameters::new(1.0, 2.0, 1.0, 1.0, 1.0).unwrap();
        let bare = high_frequency_branch(InteractionModel::ideal_gas(), 3.0, MassConvention::Bare, &params)
            .unwrap();
        let eff = high_frequency_branch(InteractionModel::ideal_gas(), 3.0, MassConvention::Effective, &params)
            .unwrap();
        assert_eq!(eff.s, 1.5);
        assert_eq!(bare.s, 3.0);
    }

    #[test]
    fn frequency_restoration() {
        let p = solve_zero_sound(
            &coupling_strength(InteractionModel::new(1.0).unwrap(), 0.5).unwrap(),
            &SolverConfig::default(),
        )
        .unwrap();
        assert_eq!(p.omega, None);
        let p = p.with_frequency(&FermiParameters::default()).unwrap();
        assert_eq!(p.omega, Some(p.s * 0.5));
    }

    #[test]
    fn json_round_trip_is_lossless() {
        let cfg = SolverConfig::default();
        let mut points = vec![
            solve_zero_sound(&coupling(1.0), &cfg).unwrap(),
            solve_zero_sound(&coupling(0.0075), &cfg).unwrap(),
            solve_zero_sound(&coupling(503.0), &cfg).unwrap(),
            solve_zero_sound(&coupling(1e-3), &cfg).unwrap(),
            high_frequency_branch(
                InteractionModel::ideal_gas(),
                1.0,
                MassConvention::Effective,
                &FermiParameters::default(),
            )
            .unwrap(),
        ];
        points[0] = points[0].with_frequency(&FermiParameters::default()).unwrap();
        for p in points {
            let text = serde_json::to_string(&p).unwrap();
            let back: DispersionPoint = serde_json::from_str(&text).unwrap();
            assert_eq!(back, p, "{text}");
        }
    }

    proptest! {
        #[test]
        fn exact_root_is_monotone(a in 0.06f64..500.0, factor in 1.0001f64..3.0) {
            let cfg = SolverConfig::default();
            let p1 = solve_zero_sound(&coupling(a), &cfg).unwrap();
            let p2 = solve_zero_sound(&coupling(a * factor), &cfg).unwrap();
            prop_assert!(p1.log_s_minus_1.unwrap() < p2.log_s_minus_1.unwrap());
            prop_assert!(p1.residual.unwrap().abs() <= cfg.tolerance);
            // the residual at the returned S agrees with the public residual
            if p1.s_minus_1 > 1e-9 {
                let direct = 1.0 - a * landau_kernel(p1.s).unwrap();
                prop_assert!(direct.abs() < 1e-6);
            }
        }

        #[test]
        fn root_brackets_sign_change(a in 0.06f64..1000.0) {
            let p = solve_zero_sound(&coupling(a), &SolverConfig::default()).unwrap();
            let u = p.log_s_minus_1.unwrap();
            prop_assert!(residual_from_log_excess(u - 1e-6, a) < 0.0);
            prop_assert!(residual_from_log_excess(u + 1e-6, a) > 0.0);
        }
    }
}
