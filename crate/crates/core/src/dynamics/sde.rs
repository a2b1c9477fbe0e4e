use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::matcore::{format_f64, seeded_rng, singular_values, unvec, vec, DenseMatrix};

use super::{driving_forces, DynamicsError, LayerDynamicsState};

/// Gradient callback `θ ↦ vec(∇L(θ))`.
pub type DriftFn<'a> = dyn Fn(&DenseMatrix) -> Result<Vec<f64>, String> + Sync + 'a;

fn step_path(
    state: &LayerDynamicsState,
    dt: f64,
    steps: usize,
    rng: &mut ChaCha8Rng,
    drift_fn: Option<&DriftFn<'_>>,
    mut visit: impl FnMut(usize, &[f64]),
) -> Result<Vec<f64>, DynamicsError> {
    let (m, n) = state.theta().shape();
    let mut theta = vec(state.theta());
    let scale = (state.eta() * dt).sqrt();
    let root = state.cov_sqrt();
    let mut xi = vec![0.0; theta.len()];
    visit(0, &theta);
    for t in 1..=steps {
        let g = match drift_fn {
            Some(f) => {
                let current = unvec(&theta, m, n)?;
                let g = f(&current).map_err(DynamicsError::Callback)?;
                if g.len() != theta.len() {
                    return Err(DynamicsError::Callback(format!(
                        "gradient length {} != {}",
                        g.len(),
                        theta.len()
                    )));
                }
                g
            }
            None => state.grad().to_vec(),
        };
        xi.iter_mut().for_each(|x| *x = rng.sample(StandardNormal));
        let noise = root.matvec(&xi);
        for ((th, gi), ni) in theta.iter_mut().zip(&g).zip(&noise) {
            *th += -gi * dt + scale * ni;
        }
        visit(t, &theta);
    }
    Ok(theta)
}

/// Simulates `vec θ ← vec θ − ∇L dt + √η Σ^{1/2} √dt ξ`. Stores the start
/// and every `decimate`-th step (and the last one).
pub fn euler_maruyama(
    state: &LayerDynamicsState,
    dt: f64,
    steps: usize,
    seed: u64,
    drift_fn: Option<&DriftFn<'_>>,
    decimate: usize,
) -> Result<Vec<DenseMatrix>, DynamicsError> {
    if !(dt > 0.0) || decimate == 0 {
        return Err(DynamicsError::InvalidArgument(format!(
            "dt {dt} must be positive and decimate {decimate} at least 1"
        )));
    }
    let (m, n) = state.theta().shape();
    let mut out = Vec::with_capacity(steps / decimate + 2);
    let mut rng = seeded_rng(seed);
    step_path(state, dt, steps, &mut rng, drift_fn, |t, th| {
        if t % decimate == 0 || t == steps {
            out.push(unvec(th, m, n).expect("shape preserved"));
        }
    })?;
    Ok(out)
}

/// `log σ₁(θ_T) − log σ₁(θ_0)` for `n_paths` independent paths with
/// constant gradient. Path `p` draws from stream `p` of `seed`.
pub fn ensemble_log_sigma_increments(
    state: &LayerDynamicsState,
    dt: f64,
    steps: usize,
    n_paths: usize,
    seed: u64,
) -> Result<Vec<f64>, DynamicsError> {
    if !(dt > 0.0) {
        return Err(DynamicsError::InvalidArgument(format!("dt {dt} must be positive")));
    }
    let (m, n) = state.theta().shape();
    let log0 = state.sigma1().ln();
    (0..n_paths)
        .into_par_iter()
        .map(|p| {
            let mut rng = seeded_rng(seed);
            rng.set_stream(p as u64);
            let end = step_path(state, dt, steps, &mut rng, None, |_, _| {})?;
            Ok(singular_values(&unvec(&end, m, n)?)?[0].ln() - log0)
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnsembleStats {
    pub mean: f64,
    /// Unbiased sample variance.
    pub variance: f64,
    pub std_error: f64,
    pub n: usize,
}

pub fn ensemble_stats(samples: &[f64]) -> EnsembleStats {
    let n = samples.len();
    let mean = samples.iter().sum::<f64>() / n as f64;
    let variance = if n > 1 {
        samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64
    } else {
        0.0
    };
    EnsembleStats {
        mean,
        variance,
        std_error: (variance / n as f64).sqrt(),
        n,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryRow {
    pub step: usize,
    pub sigma1: f64,
    pub z: f64,
    pub mu: f64,
    pub kappa: f64,
    pub lambda_norm: f64,
}

/// Forces evaluated along a stored trajectory; `stride` is the step
/// spacing used when it was decimated.
pub fn trajectory_rows(
    state: &LayerDynamicsState,
    trajectory: &[DenseMatrix],
    stride: usize,
    steps: usize,
) -> Result<Vec<TrajectoryRow>, DynamicsError> {
    trajectory
        .iter()
        .enumerate()
        .map(|(i, theta)| {
            let s = state.with_theta(theta.clone())?;
            let f = driving_forces(&s)?;
            Ok(TrajectoryRow {
                step: (i * stride).min(steps),
                sigma1: s.sigma1(),
                z: s.sigma1().ln(),
                mu: f.mu,
                kappa: f.kappa,
                lambda_norm: f.lambda_norm(),
            })
        })
        .collect()
}

pub fn trajectory_to_csv(rows: &[TrajectoryRow]) -> String {
    let mut out = String::from("step,sigma1,Z,mu,kappa,lambda_norm\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.step,
            format_f64(r.sigma1),
            format_f64(r.z),
            format_f64(r.mu),
            format_f64(r.kappa),
            format_f64(r.lambda_norm)
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::gaussian_matrix;

    fn theta() -> DenseMatrix {
        gaussian_matrix(3, 4, 21)
    }

    #[test]
    fn deterministic_limits() {
        let still = LayerDynamicsState::new(theta(), vec![0.0; 12], DenseMatrix::zeros(12, 12), 0.1).unwrap();
        let tr = euler_maruyama(&still, 0.1, 20, 0, None, 1).unwrap();
        assert_eq!(tr.len(), 21);
        assert!(tr.iter().all(|m| m.as_slice() == theta().as_slice()));

        let g: Vec<f64> = (0..12).map(|i| 0.01 * i as f64).collect();
        let drift = LayerDynamicsState::new(theta(), g.clone(), DenseMatrix::zeros(12, 12), 0.1).unwrap();
        let tr = euler_maruyama(&drift, 0.05, 40, 0, None, 10).unwrap();
        assert_eq!(tr.len(), 5);
        let want = theta().sub(&unvec(&g, 3, 4).unwrap().scale(40.0 * 0.05));
        assert!(tr[4].sub(&want).max_abs() < 1e-13);
    }

    #[test]
    fn callback_drift_and_reproducibility() {
        let s = LayerDynamicsState::new(theta(), vec![0.0; 12], DenseMatrix::identity(12), 1e-2).unwrap();
        // gradient of ½‖θ‖²: pure decay
        let decay = |th: &DenseMatrix| Ok(vec(th));
        let a = euler_maruyama(&s, 0.01, 50, 4, Some(&decay), 50).unwrap();
        let b = euler_maruyama(&s, 0.01, 50, 4, Some(&decay), 50).unwrap();
        assert_eq!(a[1].as_slice(), b[1].as_slice());
        assert!(a[1].frobenius_norm() < theta().frobenius_norm());
        let bad = |_: &DenseMatrix| Err("boom".to_string());
        assert!(matches!(
            euler_maruyama(&s, 0.01, 5, 4, Some(&bad), 1),
            Err(DynamicsError::Callback(_))
        ));
    }

    #[test]
    fn csv_has_header_and_rows() {
        let s = LayerDynamicsState::new(theta(), vec![0.0; 12], DenseMatrix::identity(12), 1e-3).unwrap();
        let tr = euler_maruyama(&s, 0.01, 10, 1, None, 5).unwrap();
        let rows = trajectory_rows(&s, &tr, 5, 10).unwrap();
        let csv = trajectory_to_csv(&rows);
        assert_eq!(csv.lines().count(), 4);
        assert!(csv.starts_with("step,sigma1,Z,mu,kappa,lambda_norm"));
        assert_eq!(rows[2].step, 10);
    }

    #[test]
    fn stats_of_known_sample() {
        let st = ensemble_stats(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(st.mean, 2.5);
        assert!((st.variance - 5.0 / 3.0).abs() < 1e-15);
    }
}
