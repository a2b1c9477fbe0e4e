use super::{FourierError, SpectralSignal};

fn ring_of(r: f64, r_max: f64, n_rings: usize) -> usize {
    if r_max == 0.0 {
        return 0;
    }
    ((r / r_max * n_rings as f64).floor() as usize).min(n_rings - 1)
}

/// Mean `|f̂|²` over bins in each of `n_rings` uniform radial rings on
/// `[0, ζ_max]`; empty rings are NaN.
pub fn radial_esd(s: &SpectralSignal, n_rings: usize) -> Result<Vec<f64>, FourierError> {
    if n_rings == 0 {
        return Err(FourierError::InvalidArgument("n_rings must be at least 1".into()));
    }
    let radii: Vec<f64> = (0..s.len())
        .map(|i| s.freq_of(i).iter().map(|z| z * z).sum::<f64>().sqrt())
        .collect();
    let r_max = radii.iter().copied().fold(0.0, f64::max);
    let mut sum = vec![0.0; n_rings];
    let mut count = vec![0usize; n_rings];
    for (r, z) in radii.iter().zip(s.spectrum()) {
        let k = ring_of(*r, r_max, n_rings);
        sum[k] += z.norm_sqr();
        count[k] += 1;
    }
    Ok(sum
        .iter()
        .zip(&count)
        .map(|(s, &c)| if c == 0 { f64::NAN } else { s / c as f64 })
        .collect())
}

/// Ring-wise `ESD(clean)/ESD(noise)`; `+∞` where the noise ring is empty of energy.
pub fn snr(clean: &SpectralSignal, noise: &SpectralSignal, n_rings: usize) -> Result<Vec<f64>, FourierError> {
    if !clean.same_grid(noise) {
        return Err(FourierError::GridMismatch);
    }
    let c = radial_esd(clean, n_rings)?;
    let n = radial_esd(noise, n_rings)?;
    Ok(c.iter()
        .zip(&n)
        .map(|(a, b)| if *b == 0.0 { f64::INFINITY } else { a / b })
        .collect())
}
