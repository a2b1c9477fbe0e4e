use num_complex::Complex64;

use crate::fourlip::SpectralSignal;

use super::GameError;

/// Band index per centered bin: `min(⌊M·max_a |k_a|/(n_a/2)⌋, M−1)`,
/// where `k_a` is the signed bin number along axis `a`. Shells depend on
/// `|k|` only, so a bin and its mirror always share a band.
pub fn band_partition(s: &SpectralSignal, m: usize) -> Result<Vec<usize>, GameError> {
    if m == 0 {
        return Err(GameError::InvalidArgument("band count must be at least 1".into()));
    }
    let grid = s.grid().to_vec();
    Ok((0..s.len())
        .map(|i| {
            let r = s
                .freq_of(i)
                .iter()
                .zip(&grid)
                .zip(s.spacing())
                .map(|((z, &n), d)| {
                    let k = (z * n as f64 * d).round().abs();
                    let half = (n / 2).max(1) as f64;
                    k / half
                })
                .fold(0.0, f64::max);
            ((r * m as f64).floor() as usize).min(m - 1)
        })
        .collect())
}

/// Zeroes every bin whose band is not in `keep`.
pub fn coalition_filter(s: &SpectralSignal, bands: &[usize], keep: u32) -> Result<SpectralSignal, GameError> {
    if bands.len() != s.len() {
        return Err(GameError::InvalidArgument(format!(
            "{} band labels for {} bins",
            bands.len(),
            s.len()
        )));
    }
    // Band labels live on centered bins; translate through the
    // continuum spectrum and scale back to samples.
    let spec = s.spectrum();
    let kept: Vec<Complex64> = spec
        .iter()
        .zip(bands)
        .map(|(z, &b)| {
            if b < 32 && keep & (1 << b) != 0 {
                *z
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
        .collect();
    let (samples, imag) = crate::fourlip::inverse_spectrum(s, &kept);
    if imag > 1e-10 * s.samples().iter().fold(1.0f64, |a, v| a.max(v.abs())) {
        return Err(GameError::InvalidArgument(format!(
            "filtered signal has imaginary residue {imag:e}"
        )));
    }
    SpectralSignal::new(s.grid().to_vec(), s.spacing().to_vec(), samples)
        .map_err(|e| GameError::InvalidArgument(e.to_string()))
}
