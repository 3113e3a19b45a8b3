//! Shared inputs for the criterion benches.

use zerosound::CouplingStrength;

/// `count` couplings spaced logarithmically over `[lo, hi]`.
pub fn log_couplings(lo: f64, hi: f64, count: usize) -> Vec<CouplingStrength> {
    let step = (hi / lo).ln() / (count.max(2) - 1) as f64;
    (0..count)
        .map(|i| CouplingStrength::from_value(lo * (step * i as f64).exp()).expect("finite coupling"))
        .collect()
}
