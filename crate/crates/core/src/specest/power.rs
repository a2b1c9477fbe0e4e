use crate::matcore::{dot, norm2, seeded_rng, unit_sphere_vector, DenseMatrix};

use super::SpecEstError;

/// Outcome of [`power_iteration`].
#[derive(Debug, Clone)]
pub struct PowerIteration {
    pub sigma_est: f64,
    pub u: Vec<f64>,
    pub v: Vec<f64>,
    /// Empirical per-iteration contraction, a proxy for σ_2/σ_1.
    pub ratio_est: f64,
    /// `u_t^T A v_t` after each iteration t = 1..=iters.
    pub history: Vec<f64>,
}

/// Alternating power iteration `u ← Av/‖Av‖`, `v ← A^T u/‖A^T u‖` from a
/// seeded uniform start on the sphere. A zero matrix yields a zero
/// estimate with zero vectors.
pub fn power_iteration(a: &DenseMatrix, iters: usize, seed: u64) -> Result<PowerIteration, SpecEstError> {
    if iters == 0 {
        return Err(SpecEstError::InvalidArgument("iters must be at least 1".into()));
    }
    let (m, n) = a.shape();
    if a.frobenius_norm() == 0.0 {
        return Ok(PowerIteration {
            sigma_est: 0.0,
            u: vec![0.0; m],
            v: vec![0.0; n],
            ratio_est: 0.0,
            history: vec![0.0; iters],
        });
    }
    let mut rng = seeded_rng(seed);
    // a start exactly in the null space is measure-zero; redraw if hit
    let mut v = unit_sphere_vector(n, &mut rng);
    let mut av = a.matvec(&v);
    while norm2(&av) == 0.0 {
        v = unit_sphere_vector(n, &mut rng);
        av = a.matvec(&v);
    }
    let mut u = vec![0.0; m];
    let mut history = Vec::with_capacity(iters);
    for _ in 0..iters {
        let av = a.matvec(&v);
        let nu = norm2(&av);
        u = av.iter().map(|x| x / nu).collect();
        let atu = a.tr_matvec(&u);
        let nv = norm2(&atu);
        v = atu.iter().map(|x| x / nv).collect();
        history.push(dot(&u, &a.matvec(&v)));
    }
    let sigma_est = *history.last().expect("iters >= 1");
    Ok(PowerIteration {
        sigma_est,
        u,
        v,
        ratio_est: contraction_estimate(&history),
        history,
    })
}

/// The estimate error shrinks like (σ_2/σ_1)^4 per alternating step, so
/// the geometric mean of successive delta ratios is taken to the 1/4.
fn contraction_estimate(history: &[f64]) -> f64 {
    let scale = history.last().copied().unwrap_or(0.0).abs();
    let deltas: Vec<f64> = history
        .windows(2)
        .map(|w| (w[1] - w[0]).abs())
        .take_while(|&d| d > 1e-13 * scale)
        .collect();
    let ratios: Vec<f64> = deltas
        .windows(2)
        .filter(|w| w[0] > 0.0)
        .map(|w| (w[1] / w[0]).ln())
        .collect();
    if ratios.is_empty() {
        return 0.0;
    }
    let mean = ratios.iter().sum::<f64>() / ratios.len() as f64;
    (mean / 4.0).exp().min(1.0)
}
