use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use super::TimeSeries;
use crate::error::{Error, Result};

/// Minimum sample count accepted by [`spectral_peak`].
pub const MIN_SAMPLES: usize = 64;

const ZERO_PADDING: usize = 4;

/// Peaks weaker than this fraction of the signal's RMS are treated as noise.
const NOISE_FLOOR: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Window {
    None,
    #[default]
    Hann,
}

/// Dominant frequency above the continuum band, in units of `k·v_F`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralPeak {
    pub frequency: f64,
    /// Window-normalised magnitude; a pure tone of amplitude `a` gives about `a`.
    pub amplitude: f64,
    /// Raw resolution `2π/(dt·n)` before zero padding.
    pub bin_width: f64,
}

/// Locates the strongest component `e^{−iωt}` with `ω > 1`.
///
/// The mean is removed, the window applied, and the series zero-padded to four
/// times its length before the transform. The maximum is refined by fitting a
/// parabola through the three bins around it.
pub fn spectral_peak(series: &TimeSeries, window: Window) -> Result<SpectralPeak> {
    let n = series.len();
    if n < MIN_SAMPLES {
        return Err(Error::invalid(format!(
            "spectral analysis needs at least {MIN_SAMPLES} samples, got {n}"
        )));
    }
    if series.samples.iter().any(|z| !z.is_finite()) {
        return Err(Error::invalid("time series contains non-finite samples"));
    }

    let rms = (series.samples.iter().map(|z| z.norm_sqr()).sum::<f64>() / n as f64).sqrt();
    let mean = series.samples.iter().sum::<Complex64>() / n as f64;
    let taper: Vec<f64> = match window {
        Window::None => vec![1.0; n],
        Window::Hann => (0..n)
            .map(|j| 0.5 * (1.0 - (2.0 * PI * j as f64 / (n - 1) as f64).cos()))
            .collect(),
    };
    let gain: f64 = taper.iter().sum();

    // Conjugating maps e^{−iωt} onto positive bins of the forward transform.
    let len = ZERO_PADDING * n;
    let mut buffer = vec![Complex64::default(); len];
    for ((b, &z), &t) in buffer.iter_mut().zip(&series.samples).zip(&taper) {
        *b = (z - mean).conj() * t;
    }
    FftPlanner::new().plan_fft_forward(len).process(&mut buffer);
    let magnitude: Vec<f64> = buffer.iter().map(|z| z.norm() / gain).collect();

    let step = 2.0 * PI / (series.dt * len as f64);
    let first = (1.0 / step).floor() as usize + 1;
    let last = len / 2;
    if first >= last {
        return Err(Error::NoCollectivePeak);
    }
    let (peak, &height) = magnitude[first..last]
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, m)| (i + first, m))
        .expect("non-empty search range");
    if height.is_nan() || height <= NOISE_FLOOR * rms {
        return Err(Error::NoCollectivePeak);
    }

    let (left, right) = (magnitude[peak - 1], magnitude[peak + 1]);
    let curvature = left - 2.0 * height + right;
    let offset = if curvature < 0.0 {
        (0.5 * (left - right) / curvature).clamp(-0.5, 0.5)
    } else {
        0.0
    };
    Ok(SpectralPeak {
        frequency: (peak as f64 + offset) * step,
        amplitude: height - 0.25 * (left - right) * offset,
        bin_width: 2.0 * PI / (series.dt * n as f64),
    })
}
