//! Tabulation of the zero-sound root over a wavenumber grid.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, ErrorKind, Result};
use crate::model::{coupling_strength, FermiParameters, InteractionModel};
use crate::solver::{solve_zero_sound, DispersionPoint, SolverConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    #[default]
    Linear,
    Logarithmic,
}

/// Grid of `k·λ_d` values.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub k_min: f64,
    pub k_max: f64,
    pub count: usize,
    pub spacing: Spacing,
}

impl GridSpec {
    /// `count ≥ 2` requires `0 < k_min < k_max`; a single-node grid requires
    /// `k_min == k_max > 0`.
    pub fn new(k_min: f64, k_max: f64, count: usize, spacing: Spacing) -> Result<Self> {
        let grid = GridSpec {
            k_min,
            k_max,
            count,
            spacing,
        };
        grid.validate()?;
        Ok(grid)
    }

    pub fn single(k_lambda_d: f64) -> Result<Self> {
        GridSpec::new(k_lambda_d, k_lambda_d, 1, Spacing::Linear)
    }

    pub fn validate(&self) -> Result<()> {
        let finite = self.k_min.is_finite() && self.k_max.is_finite();
        if !finite || self.k_min <= 0.0 {
            return Err(Error::invalid(format!(
                "grid bounds must be finite with k_min > 0, got [{}, {}]",
                self.k_min, self.k_max
            )));
        }
        match self.count {
            0 => Err(Error::invalid("grid needs at least one point")),
            1 if self.k_min != self.k_max => Err(Error::invalid(
                "a single-point grid needs k_min == k_max",
            )),
            1 => Ok(()),
            _ if self.k_min >= self.k_max => Err(Error::invalid(format!(
                "grid needs k_min < k_max, got [{}, {}]",
                self.k_min, self.k_max
            ))),
            _ => Ok(()),
        }
    }

    /// Grid nodes, strictly increasing. Endpoints are reproduced exactly.
    pub fn nodes(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.k_min];
        }
        let last = (self.count - 1) as f64;
        (0..self.count)
            .map(|i| {
                if i == 0 {
                    return self.k_min;
                }
                if i == self.count - 1 {
                    return self.k_max;
                }
                let t = i as f64 / last;
                match self.spacing {
                    Spacing::Linear => self.k_min + t * (self.k_max - self.k_min),
                    Spacing::Logarithmic => {
                        (self.k_min.ln() + t * (self.k_max.ln() - self.k_min.ln())).exp()
                    }
                }
            })
            .collect()
    }
}

/// A grid node whose solve failed; the scan carries on past it.
#[derive(Debug, Clone, PartialEq)]
pub struct FailedPoint {
    pub k_lambda_d: f64,
    pub q0: f64,
    pub coupling: f64,
    pub kind: ErrorKind,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ScanPoint {
    Solved(DispersionPoint),
    Failed(FailedPoint),
}

impl ScanPoint {
    pub fn k_lambda_d(&self) -> f64 {
        match self {
            ScanPoint::Solved(p) => p.k_lambda_d,
            ScanPoint::Failed(f) => f.k_lambda_d,
        }
    }

    pub fn solved(&self) -> Option<&DispersionPoint> {
        match self {
            ScanPoint::Solved(p) => Some(p),
            ScanPoint::Failed(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BranchScan {
    pub grid: GridSpec,
    pub points: Vec<ScanPoint>,
}

/// Solves the exact relation at every grid node. Nodes are solved in parallel;
/// the output order is the grid order.
pub fn branch_scan(
    model: InteractionModel,
    grid: &GridSpec,
    cfg: &SolverConfig,
    params: Option<&FermiParameters>,
) -> Result<BranchScan> {
    grid.validate()?;
    cfg.validate()?;
    let points = grid
        .nodes()
        .into_par_iter()
        .map(|k| {
            let coupling = coupling_strength(model, k)?;
            let solved = solve_zero_sound(&coupling, cfg).and_then(|p| match params {
                Some(params) => p.with_frequency(params),
                None => Ok(p),
            });
            Ok(match solved {
                Ok(p) => ScanPoint::Solved(p),
                Err(e) => ScanPoint::Failed(FailedPoint {
                    k_lambda_d: k,
                    q0: model.q0(),
                    coupling: coupling.value(),
                    kind: e.kind(),
                    message: e.to_string(),
                }),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BranchScan {
        grid: *grid,
        points,
    })
}
