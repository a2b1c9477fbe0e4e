use std::f64::consts::PI;

use libm::erf;
use rand::Rng;
use rayon::prelude::*;

use crate::matcore::{seeded_rng, symmetric_eigen, DenseMatrix};

use super::{ActivationError, ActivationSpec};

/// Root of `x·tanh(x/2) = 2`, where swish' peaks.
pub fn swish_critical_point() -> f64 {
    let mut x: f64 = 2.4;
    for _ in 0..50 {
        let t = (0.5 * x).tanh();
        let g = x * t - 2.0;
        let dg = t + 0.5 * x * (1.0 - t * t);
        let step = g / dg;
        x -= step;
        if step.abs() < 1e-16 {
            break;
        }
    }
    x
}

/// Exact global Lipschitz constant of a named activation.
pub fn closed_form_lipschitz(a: &ActivationSpec) -> f64 {
    use ActivationSpec::*;
    match *a {
        Relu | Tanh | Softplus => 1.0,
        LeakyRelu(alpha) | Elu(alpha) => alpha.abs().max(1.0),
        Sigmoid => 0.25,
        Swish => 0.5 + swish_critical_point() / 4.0,
        Gelu => 0.5 * (1.0 + erf(1.0)) + (-1.0f64).exp() / PI.sqrt(),
        Softmax(_) => 0.5,
    }
}

/// Result of a numerical supremum search of `|f'|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumericLipschitz {
    pub value: f64,
    pub argmax: f64,
    /// False when the maximum sits on the domain boundary, i.e. the
    /// supremum is approached but not attained inside the domain.
    pub attained: bool,
}

/// Supremum of `|f'|` over a uniform grid on `domain` (plus any kinks),
/// refined by a safeguarded Newton solve of `f'' = 0` around the best
/// grid point.
pub fn numeric_scalar_lipschitz(
    a: &ActivationSpec,
    domain: (f64, f64),
    grid: usize,
) -> Result<NumericLipschitz, ActivationError> {
    if !a.is_elementwise() {
        return Err(ActivationError::NotElementwise(a.to_string()));
    }
    let (lo, hi) = domain;
    if !(lo < hi) || grid < 64 {
        return Err(ActivationError::InvalidArgument(format!(
            "need lo < hi and grid >= 64, got [{lo}, {hi}] with {grid} points"
        )));
    }
    let d = |x: f64| a.derivative(x).expect("elementwise").abs();
    let step = (hi - lo) / (grid - 1) as f64;
    let xs: Vec<f64> = (0..grid).map(|i| lo + step * i as f64).collect();
    let (mut best_i, mut best) = (0, d(xs[0]));
    for (i, &x) in xs.iter().enumerate() {
        if d(x) > best {
            best = d(x);
            best_i = i;
        }
    }
    let mut argmax = xs[best_i];
    // still rising toward an endpoint means the supremum lies beyond it
    let mut on_boundary = (best_i == 0 && best > d(xs[1]))
        || (best_i == grid - 1 && best > d(xs[grid - 2]));

    for &k in a.kinks() {
        if k > lo && k < hi && d(k) > best {
            best = d(k);
            argmax = k;
            on_boundary = false;
        }
    }

    if !on_boundary && !a.kinks().contains(&argmax) {
        let l = argmax - step;
        let r = argmax + step;
        if let Some(x) = refine_critical_point(a, l.max(lo), r.min(hi)) {
            if d(x) > best {
                best = d(x);
                argmax = x;
            }
        }
    }
    Ok(NumericLipschitz {
        value: best,
        argmax,
        attained: !on_boundary,
    })
}

/// Newton on `g(x) = f''(x)·sign(f'(x))` inside `[l, r]`, falling back
/// to bisection when a step leaves the bracket.
fn refine_critical_point(a: &ActivationSpec, mut l: f64, mut r: f64) -> Option<f64> {
    let g = |x: f64| a.second_derivative(x).unwrap() * a.derivative(x).unwrap().signum();
    let (mut gl, gr) = (g(l), g(r));
    if gl == 0.0 && gr == 0.0 {
        return None;
    }
    if gl.signum() == gr.signum() {
        return None;
    }
    let mut x = 0.5 * (l + r);
    for _ in 0..100 {
        let gx = g(x);
        if gx == 0.0 {
            return Some(x);
        }
        if gx.signum() == gl.signum() {
            l = x;
            gl = gx;
        } else {
            r = x;
        }
        let h = 1e-7 * (1.0 + x.abs());
        let slope = (g(x + h) - g(x - h)) / (2.0 * h);
        let newton = x - gx / slope;
        x = if slope != 0.0 && newton > l && newton < r {
            newton
        } else {
            0.5 * (l + r)
        };
        if r - l < 1e-15 * (1.0 + x.abs()) {
            break;
        }
    }
    Some(x)
}

/// `diag(p) - p p^T` for a probability vector.
pub fn softmax_jacobian(p: &[f64]) -> Result<DenseMatrix, ActivationError> {
    let sum: f64 = p.iter().sum();
    if p.is_empty() || p.iter().any(|&x| !(x >= 0.0)) || (sum - 1.0).abs() > 1e-10 {
        return Err(ActivationError::NotSimplex { sum });
    }
    let n = p.len();
    Ok(DenseMatrix::from_fn(n, n, |i, j| {
        let d = if i == j { p[i] } else { 0.0 };
        d - p[i] * p[j]
    }))
}

pub fn softmax(z: &[f64]) -> Vec<f64> {
    let m = z.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let e: Vec<f64> = z.iter().map(|x| (x - m).exp()).collect();
    let s: f64 = e.iter().sum();
    e.into_iter().map(|x| x / s).collect()
}

fn softmax_jacobian_norm(z: &[f64]) -> f64 {
    let j = softmax_jacobian(&softmax(z)).expect("softmax output is a simplex point");
    symmetric_eigen(&j).map(|e| e.values[0]).unwrap_or(0.0)
}

/// Multi-start Nelder–Mead maximization of `‖J_softmax(z)‖_2` over logits.
/// Restart 0 starts from all-equal logits; the rest from seeded normal
/// logits with scale 3.
pub fn numeric_softmax_lipschitz(dim: usize, restarts: usize, seed: u64) -> Result<f64, ActivationError> {
    if dim < 2 {
        return Err(ActivationError::InvalidArgument(format!("softmax dim must be >= 2, got {dim}")));
    }
    let best = (0..restarts.max(1))
        .into_par_iter()
        .map(|r| {
            let start: Vec<f64> = if r == 0 {
                vec![0.0; dim]
            } else {
                let mut rng = seeded_rng(seed);
                rng.set_stream(r as u64);
                (0..dim).map(|_| 3.0 * rng.sample::<f64, _>(rand_distr::StandardNormal)).collect()
            };
            let (_, val) = nelder_mead(|z| -softmax_jacobian_norm(z), &start, 1.0, 400 * dim);
            -val
        })
        .reduce(|| 0.0, f64::max);
    Ok(best)
}

/// Minimizes `f` by the Nelder–Mead simplex method.
fn nelder_mead(
    f: impl Fn(&[f64]) -> f64,
    start: &[f64],
    step: f64,
    max_evals: usize,
) -> (Vec<f64>, f64) {
    let n = start.len();
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
    simplex.push((start.to_vec(), f(start)));
    for i in 0..n {
        let mut x = start.to_vec();
        x[i] += step;
        let fx = f(&x);
        simplex.push((x, fx));
    }
    let mut evals = n + 1;
    let lerp = |a: &[f64], b: &[f64], t: f64| -> Vec<f64> {
        a.iter().zip(b).map(|(x, y)| x + t * (y - x)).collect()
    };
    while evals < max_evals {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let spread = simplex[n].1 - simplex[0].1;
        if spread.abs() < 1e-15 {
            break;
        }
        let mut centroid = vec![0.0; n];
        for (x, _) in &simplex[..n] {
            for (c, v) in centroid.iter_mut().zip(x) {
                *c += v / n as f64;
            }
        }
        let worst = simplex[n].0.clone();
        let refl = lerp(&centroid, &worst, -1.0);
        let fr = f(&refl);
        evals += 1;
        if fr < simplex[0].1 {
            let exp = lerp(&centroid, &worst, -2.0);
            let fe = f(&exp);
            evals += 1;
            simplex[n] = if fe < fr { (exp, fe) } else { (refl, fr) };
        } else if fr < simplex[n - 1].1 {
            simplex[n] = (refl, fr);
        } else {
            let (target, ft) = if fr < simplex[n].1 { (&refl, fr) } else { (&worst, simplex[n].1) };
            let con = lerp(&centroid, target, 0.5);
            let fc = f(&con);
            evals += 1;
            if fc < ft {
                simplex[n] = (con, fc);
            } else {
                let best = simplex[0].0.clone();
                for item in simplex.iter_mut().skip(1) {
                    let x = lerp(&best, &item.0, 0.5);
                    let fx = f(&x);
                    *item = (x, fx);
                }
                evals += n;
            }
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    simplex.swap_remove(0)
}
