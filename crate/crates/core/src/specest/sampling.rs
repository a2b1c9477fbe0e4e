use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1, Gamma, StandardNormal};
use rayon::prelude::*;

use crate::matcore::{norm_p, seeded_rng};

use super::SpecEstError;

/// Gradient callback; an `Err` aborts sampling with `CallbackFailure`.
pub type GradFn<'a> = dyn Fn(&[f64]) -> Result<Vec<f64>, String> + Sync + 'a;

/// Maximum of `‖∇f(x)‖_q` over `n_samples` points drawn uniformly from the
/// ℓp ball of `radius` around `center`. This is a lower estimate of the
/// local Lipschitz constant.
pub fn local_lipschitz_sample(
    grad_fn: &GradFn<'_>,
    center: &[f64],
    radius: f64,
    p: f64,
    q: f64,
    n_samples: usize,
    seed: u64,
) -> Result<f64, SpecEstError> {
    if !(radius > 0.0) {
        return Err(SpecEstError::InvalidArgument(format!("radius must be positive, got {radius}")));
    }
    if n_samples == 0 {
        return Err(SpecEstError::InvalidArgument("n_samples must be at least 1".into()));
    }
    for (name, e) in [("p", p), ("q", q)] {
        if !(e >= 1.0) {
            return Err(SpecEstError::InvalidArgument(format!("{name} must be >= 1, got {e}")));
        }
    }
    let d = center.len();
    (0..n_samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = seeded_rng(seed);
            rng.set_stream(i as u64);
            let offset = sample_lp_ball(d, p, &mut rng);
            let x: Vec<f64> = center.iter().zip(&offset).map(|(c, o)| c + radius * o).collect();
            let g = grad_fn(&x).map_err(SpecEstError::CallbackFailure)?;
            Ok(norm_p(&g, q))
        })
        .try_reduce(|| 0.0, |a, b| Ok(a.max(b)))
}

/// Uniform point in the unit ℓp ball of R^d.
pub fn sample_lp_ball(d: usize, p: f64, rng: &mut ChaCha8Rng) -> Vec<f64> {
    if p.is_infinite() {
        return (0..d).map(|_| rng.random_range(-1.0..=1.0)).collect();
    }
    if p == 2.0 {
        let g: Vec<f64> = (0..d).map(|_| rng.sample(StandardNormal)).collect();
        let nrm = norm_p(&g, 2.0).max(f64::MIN_POSITIVE);
        let r = rng.random::<f64>().powf(1.0 / d as f64);
        return g.into_iter().map(|x| r * x / nrm).collect();
    }
    // generalized-Gaussian coordinates plus an exponential slack variable
    let gamma = Gamma::new(1.0 / p, 1.0).expect("shape positive");
    let g: Vec<f64> = (0..d)
        .map(|_| {
            let mag = gamma.sample(rng).powf(1.0 / p);
            if rng.random::<bool>() { mag } else { -mag }
        })
        .collect();
    let e: f64 = Exp1.sample(rng);
    let denom = (g.iter().map(|x| x.abs().powf(p)).sum::<f64>() + e).powf(1.0 / p);
    g.into_iter().map(|x| x / denom).collect()
}
