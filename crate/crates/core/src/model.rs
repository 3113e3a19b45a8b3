//! Physical parameters of the medium and the dimensionless reduction.
//!
//! All solvers work with the single coupling `A = Q0 + (3/4)(k·λ_d)²`, where
//! `λ_d = ħ/p_F` is the de Broglie length at the Fermi surface. Physical
//! constants only re-enter when a dimensionless phase velocity `S = ω/(k·v_F)`
//! is turned back into a frequency.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Constants of the Fermi liquid. Natural units (everything equal to one) are
/// the [`Default`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FermiParameters {
    m: f64,
    m_star: f64,
    p_f: f64,
    n0: f64,
    hbar: f64,
}

impl FermiParameters {
    pub fn new(m: f64, m_star: f64, p_f: f64, n0: f64, hbar: f64) -> Result<Self> {
        for (name, value) in [
            ("m", m),
            ("m_star", m_star),
            ("p_F", p_f),
            ("n0", n0),
            ("hbar", hbar),
        ] {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::invalid(format!(
                    "{name} must be finite and strictly positive, got {value}"
                )));
            }
        }
        let params = FermiParameters {
            m,
            m_star,
            p_f,
            n0,
            hbar,
        };
        let (v_f, lambda_d) = (params.fermi_velocity(), params.de_broglie_length());
        if !(v_f.is_finite() && v_f > 0.0 && lambda_d.is_finite() && lambda_d > 0.0) {
            return Err(Error::invalid(format!(
                "derived scales out of range: v_F = {v_f}, lambda_d = {lambda_d}"
            )));
        }
        Ok(params)
    }

    /// Reads a preset file; see [`FromStr`] for the format.
    pub fn from_preset_file(path: impl AsRef<Path>) -> Result<Self> {
        std::fs::read_to_string(path)?.parse()
    }

    pub fn bare_mass(&self) -> f64 {
        self.m
    }

    pub fn effective_mass(&self) -> f64 {
        self.m_star
    }

    pub fn fermi_momentum(&self) -> f64 {
        self.p_f
    }

    pub fn density(&self) -> f64 {
        self.n0
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    /// `v_F = p_F / m*`.
    pub fn fermi_velocity(&self) -> f64 {
        self.p_f / self.m_star
    }

    /// `λ_d = ħ / p_F`.
    pub fn de_broglie_length(&self) -> f64 {
        self.hbar / self.p_f
    }

    /// `ε_F = p_F·v_F / 2`.
    pub fn fermi_energy(&self) -> f64 {
        0.5 * self.p_f * self.fermi_velocity()
    }

    /// `m*/m`, the factor between the two conventions for the quantum frequency.
    pub fn mass_ratio(&self) -> f64 {
        self.m_star / self.m
    }
}

impl Default for FermiParameters {
    fn default() -> Self {
        FermiParameters {
            m: 1.0,
            m_star: 1.0,
            p_f: 1.0,
            n0: 1.0,
            hbar: 1.0,
        }
    }
}

/// Parses the flat `key = value` preset format.
///
/// Keys are `m`, `m_star`, `p_F`, `n0` and `hbar`; each must appear exactly
/// once. Blank lines and `#` comments are ignored, unknown keys are rejected.
impl FromStr for FermiParameters {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        const KEYS: [&str; 5] = ["m", "m_star", "p_F", "n0", "hbar"];
        let mut values: [Option<f64>; 5] = [None; 5];

        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::invalid(format!("line {}: expected `key = value`", lineno + 1))
            })?;
            let key = key.trim();
            let slot = KEYS.iter().position(|k| *k == key).ok_or_else(|| {
                Error::invalid(format!("line {}: unknown key `{key}`", lineno + 1))
            })?;
            let value: f64 = value.trim().parse().map_err(|_| {
                Error::invalid(format!(
                    "line {}: `{}` is not a decimal number",
                    lineno + 1,
                    value.trim()
                ))
            })?;
            if values[slot].replace(value).is_some() {
                return Err(Error::invalid(format!(
                    "line {}: duplicate key `{key}`",
                    lineno + 1
                )));
            }
        }

        let mut get = |i: usize| {
            values[i]
                .take()
                .ok_or_else(|| Error::invalid(format!("missing key `{}`", KEYS[i])))
        };
        FermiParameters::new(get(0)?, get(1)?, get(2)?, get(3)?, get(4)?)
    }
}

impl fmt::Display for FermiParameters {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "m = {:?}", self.m)?;
        writeln!(f, "m_star = {:?}", self.m_star)?;
        writeln!(f, "p_F = {:?}", self.p_f)?;
        writeln!(f, "n0 = {:?}", self.n0)?;
        writeln!(f, "hbar = {:?}", self.hbar)
    }
}

/// Angle-independent Landau interaction constant `Q0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InteractionModel {
    q0: f64,
}

impl InteractionModel {
    pub fn new(q0: f64) -> Result<Self> {
        if !(q0.is_finite() && q0 >= 0.0) {
            return Err(Error::invalid(format!(
                "Q0 must be finite and non-negative, got {q0}"
            )));
        }
        Ok(InteractionModel { q0 })
    }

    /// The ideal Fermi gas, `Q0 = 0`.
    pub fn ideal_gas() -> Self {
        InteractionModel { q0: 0.0 }
    }

    pub fn q0(&self) -> f64 {
        self.q0
    }
}

/// The dimensionless coupling `A` together with the inputs it was built from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CouplingStrength {
    a: f64,
    k_lambda_d: f64,
    q0: f64,
}

impl CouplingStrength {
    /// A bare coupling value with no wavenumber attached (`k·λ_d = 0`, `Q0 = A`).
    ///
    /// Useful when sweeping `A` directly; negative or zero values are accepted
    /// here and rejected by the solvers.
    pub fn from_value(a: f64) -> Result<Self> {
        if !a.is_finite() {
            return Err(Error::invalid(format!("coupling must be finite, got {a}")));
        }
        Ok(CouplingStrength {
            a,
            k_lambda_d: 0.0,
            q0: a,
        })
    }

    pub fn value(&self) -> f64 {
        self.a
    }

    pub fn k_lambda_d(&self) -> f64 {
        self.k_lambda_d
    }

    pub fn q0(&self) -> f64 {
        self.q0
    }
}

/// `A = Q0 + (3/4)(k·λ_d)²`.
pub fn coupling_strength(model: InteractionModel, k_lambda_d: f64) -> Result<CouplingStrength> {
    check_wavenumber(k_lambda_d)?;
    Ok(CouplingStrength {
        a: model.q0 + 0.75 * k_lambda_d * k_lambda_d,
        k_lambda_d,
        q0: model.q0,
    })
}

/// Restores units: `ω = S·k·v_F` with `k = (k·λ_d)/λ_d`.
pub fn physical_frequency(s: f64, k_lambda_d: f64, params: &FermiParameters) -> Result<f64> {
    if !(s.is_finite() && s > 0.0) {
        return Err(Error::invalid(format!(
            "phase velocity must be finite and positive, got {s}"
        )));
    }
    check_wavenumber(k_lambda_d)?;
    Ok(s * wave_speed(k_lambda_d, params))
}

/// `k·v_F` for the given dimensionless wavenumber.
pub(crate) fn wave_speed(k_lambda_d: f64, params: &FermiParameters) -> f64 {
    (k_lambda_d / params.de_broglie_length()) * params.fermi_velocity()
}

pub(crate) fn check_wavenumber(k_lambda_d: f64) -> Result<()> {
    if !(k_lambda_d.is_finite() && k_lambda_d >= 0.0) {
        return Err(Error::invalid(format!(
            "k_lambda_d must be finite and non-negative, got {k_lambda_d}"
        )));
    }
    Ok(())
}
