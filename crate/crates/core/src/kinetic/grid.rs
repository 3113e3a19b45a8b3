use crate::error::{Error, Result};

/// Gauss–Legendre nodes `μ = cosθ` and weights on `[−1, 1]`.
///
/// Weights sum to 2, the measure of the interval; the angular average is
/// `½ Σ wᵢ F(μᵢ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct AngularGrid {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl AngularGrid {
    /// `n`-point rule, exact for polynomials of degree `2n − 1`.
    pub fn gauss_legendre(n: usize) -> Result<Self> {
        if n < 4 {
            return Err(Error::invalid(format!(
                "angular grid needs at least 4 nodes, got {n}"
            )));
        }
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        // Roots come in ± pairs; solve for the positive half and mirror.
        for i in 0..n.div_ceil(2) {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut derivative = 0.0;
            for _ in 0..100 {
                let (p, dp) = legendre_with_derivative(n, x);
                let step = p / dp;
                x -= step;
                derivative = dp;
                if step.abs() <= 1e-16 {
                    break;
                }
            }
            let (_, dp) = legendre_with_derivative(n, x);
            if dp.is_finite() {
                derivative = dp;
            }
            let w = 2.0 / ((1.0 - x * x) * derivative * derivative);
            nodes[n - 1 - i] = x;
            nodes[i] = -x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        Ok(AngularGrid { nodes, weights })
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn size(&self) -> usize {
        self.nodes.len()
    }

    /// Largest node, the upper edge of the discrete continuum.
    pub fn max_node(&self) -> f64 {
        self.nodes[self.nodes.len() - 1]
    }

    /// `½ Σ wᵢ f(μᵢ)`.
    pub fn average(&self, f: impl Fn(f64) -> f64) -> f64 {
        0.5 * self
            .nodes
            .iter()
            .zip(&self.weights)
            .map(|(&mu, &w)| w * f(mu))
            .sum::<f64>()
    }
}

// P_n(x) and P_n'(x) by the three-term recurrence.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}
