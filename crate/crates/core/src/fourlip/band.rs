use std::f64::consts::PI;

use num_complex::Complex64;

use super::signal::fft_nd;
use super::{spectral_contribution, FourierError, SpectralSignal};

/// Band radius above which the Gaussian small-band argument stops applying.
pub const BAND_RADIUS_WARNING: f64 = 0.564_189_583_547_756_3;

#[derive(Debug, Clone)]
pub struct BandRemoval {
    pub perturbed: SpectralSignal,
    /// Continuum L2 norm of the removed component.
    pub eps: f64,
    pub removed_bins: usize,
    /// Largest imaginary part left by the inverse transform.
    pub imag_residue: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BandBound {
    pub m_delta: f64,
    pub measure: f64,
    pub bound: f64,
    pub bins: usize,
}

/// Lebesgue measure of a ball of radius `r` in dimension 1 or 2.
pub fn ball_measure(dim: usize, r: f64) -> f64 {
    match dim {
        1 => 2.0 * r,
        2 => PI * r * r,
        _ => panic!("ball_measure supports dimension 1 or 2"),
    }
}

fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt()
}

fn check_center(s: &SpectralSignal, center: &[f64], radius: f64) -> Result<(), FourierError> {
    if center.len() != s.dim() {
        return Err(FourierError::DimensionMismatch {
            expected: s.dim(),
            found: center.len(),
        });
    }
    if !(radius > 0.0) {
        return Err(FourierError::InvalidArgument(format!("radius {radius} must be positive")));
    }
    Ok(())
}

/// Centered bins with `‖ζ − center‖ ≤ radius`.
pub fn ball_bins(s: &SpectralSignal, center: &[f64], radius: f64) -> Vec<usize> {
    (0..s.len()).filter(|&i| dist(&s.freq_of(i), center) <= radius).collect()
}

/// Zeroes the ball around `center` and its mirror around `−center`.
pub fn band_remove(s: &SpectralSignal, center: &[f64], radius: f64) -> Result<BandRemoval, FourierError> {
    check_center(s, center, radius)?;
    let mirror: Vec<f64> = center.iter().map(|c| -c).collect();
    let mut raw: Vec<Complex64> = s.samples().iter().map(|&v| Complex64::new(v, 0.0)).collect();
    fft_nd(&mut raw, s.grid(), false);
    let mut removed = 0;
    for i in 0..s.len() {
        let z = s.freq_of(i);
        if dist(&z, center) <= radius || dist(&z, &mirror) <= radius {
            raw[s.raw_index(&s.unflatten(i))] = Complex64::new(0.0, 0.0);
            removed += 1;
        }
    }
    fft_nd(&mut raw, s.grid(), true);
    let n = s.len() as f64;
    let imag_residue = raw.iter().map(|z| (z.im / n).abs()).fold(0.0, f64::max);
    let samples: Vec<f64> = raw.iter().map(|z| z.re / n).collect();
    let sq: f64 = s.samples().iter().zip(&samples).map(|(a, b)| (a - b).powi(2)).sum();
    Ok(BandRemoval {
        perturbed: s.with_samples(samples),
        eps: (sq * s.cell_volume()).sqrt(),
        removed_bins: removed,
        imag_residue,
    })
}

/// `M_δ ε √μ(B_δ)` with `M_δ` the largest `K_ζ` over bins in the ball.
pub fn band_bound(s: &SpectralSignal, center: &[f64], radius: f64, eps: f64) -> Result<BandBound, FourierError> {
    check_center(s, center, radius)?;
    if !(eps >= 0.0) {
        return Err(FourierError::InvalidArgument(format!("eps {eps} must be nonnegative")));
    }
    let bins = ball_bins(s, center, radius);
    if bins.is_empty() {
        return Err(FourierError::EmptyBand);
    }
    let k = spectral_contribution(s);
    let m_delta = bins.iter().map(|&i| k[i]).fold(0.0, f64::max);
    let measure = ball_measure(s.dim(), radius);
    Ok(BandBound {
        m_delta,
        measure,
        bound: mi_gap_bound(m_delta, eps, measure)?,
        bins: bins.len(),
    })
}

/// Linearized output change `ε Σ_{B_δ} K_ζ Δζ` of removing the ball.
pub fn band_linearized_change(s: &SpectralSignal, center: &[f64], radius: f64, eps: f64) -> Result<f64, FourierError> {
    check_center(s, center, radius)?;
    let k = spectral_contribution(s);
    let total: f64 = ball_bins(s, center, radius).iter().map(|&i| k[i]).sum();
    Ok(eps * total * s.freq_cell_volume())
}

/// `M_δ ε √μ`.
pub fn mi_gap_bound(m_delta: f64, eps: f64, ball_measure: f64) -> Result<f64, FourierError> {
    if !(m_delta >= 0.0 && eps >= 0.0 && ball_measure >= 0.0) {
        return Err(FourierError::InvalidArgument("inputs must be nonnegative".into()));
    }
    Ok(m_delta * eps * ball_measure.sqrt())
}
