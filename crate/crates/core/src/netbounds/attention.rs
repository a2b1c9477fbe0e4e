use crate::activations::{softmax, softmax_jacobian};
use crate::matcore::{symmetric_eigen, DenseMatrix};

use super::NetError;

/// Inputs for the self-attention Lipschitz bounds.
#[derive(Debug, Clone)]
pub enum AttentionParams {
    /// Local bound on the ball of radius `delta` around an input of norm `x_norm`.
    HuLocal {
        n: usize,
        x_norm: f64,
        delta: f64,
        w_q: DenseMatrix,
        w_k: DenseMatrix,
        w_v: DenseMatrix,
    },
    /// Global ℓ2 bound; `heads` holds `(W_Q, W_V)` per head.
    KimL2 {
        n: usize,
        d: usize,
        h: usize,
        heads: Vec<(DenseMatrix, DenseMatrix)>,
        w_o: DenseMatrix,
    },
    /// Global ℓ∞ bound; same parameters as [`AttentionParams::KimL2`].
    KimLinf {
        n: usize,
        d: usize,
        h: usize,
        heads: Vec<(DenseMatrix, DenseMatrix)>,
        w_o: DenseMatrix,
    },
    /// Single-head bound through the softmax Jacobian at input `x` (n × d).
    Yudin {
        x: DenseMatrix,
        w_q: DenseMatrix,
        w_k: DenseMatrix,
        w_v: DenseMatrix,
    },
}

impl AttentionParams {
    pub fn kind_name(&self) -> &'static str {
        match self {
            AttentionParams::HuLocal { .. } => "hu_local",
            AttentionParams::KimL2 { .. } => "kim_l2",
            AttentionParams::KimLinf { .. } => "kim_linf",
            AttentionParams::Yudin { .. } => "yudin",
        }
    }
}

fn spectral_norm(m: &DenseMatrix) -> Result<f64, NetError> {
    Ok(crate::matcore::singular_values(m)?[0])
}

/// Inverse of `φ(x) = x e^{x+1}` on `x ≥ 0`.
pub fn phi_inverse(y: f64) -> Result<f64, NetError> {
    if !(y >= 0.0) || !y.is_finite() {
        return Err(NetError::NonBracketable(y));
    }
    if y == 0.0 {
        return Ok(0.0);
    }
    let phi = |x: f64| x * (x + 1.0).exp();
    let (mut lo, mut hi) = (0.0, (1.0 + y).ln().max(1.0));
    let mut x = 0.5 * (lo + hi);
    for _ in 0..200 {
        let fx = phi(x) - y;
        if fx.abs() <= 1e-12 * y {
            break;
        }
        if fx > 0.0 {
            hi = x;
        } else {
            lo = x;
        }
        let dfx = (x + 2.0) * (x + 1.0).exp();
        let next = x - fx / dfx;
        x = if next > lo && next < hi { next } else { 0.5 * (lo + hi) };
        if hi - lo <= 1e-15 * hi {
            break;
        }
    }
    Ok(x)
}

fn check_heads(heads: &[(DenseMatrix, DenseMatrix)], d: usize, h: usize) -> Result<(), NetError> {
    if heads.is_empty() || d == 0 || h == 0 {
        return Err(NetError::InvalidParams("need at least one head and positive d, h".into()));
    }
    Ok(())
}

/// Evaluates the selected closed-form attention bound.
pub fn attention_bound(params: &AttentionParams) -> Result<f64, NetError> {
    match params {
        AttentionParams::HuLocal {
            n,
            x_norm,
            delta,
            w_q,
            w_k,
            w_v,
        } => {
            if *x_norm < 0.0 || *delta < 0.0 {
                return Err(NetError::InvalidParams("x_norm and delta must be nonnegative".into()));
            }
            let nf = *n as f64;
            let v = spectral_norm(w_v)?;
            let q = spectral_norm(w_q)?;
            let k = spectral_norm(&w_k.transpose())?;
            Ok(nf * (nf + 1.0) * (x_norm + delta).powi(2) * (v * q * k + v))
        }
        AttentionParams::KimL2 { n, d, h, heads, w_o } => {
            check_heads(heads, *d, *h)?;
            let nf = *n as f64;
            let dh = *d as f64 / *h as f64;
            let mut acc = 0.0;
            for (wq, wv) in heads {
                acc += spectral_norm(wq)?.powi(2) * spectral_norm(wv)?.powi(2);
            }
            let lead = nf.sqrt() / dh.sqrt() * (4.0 * phi_inverse(nf - 1.0)? + 1.0);
            Ok(lead * acc.sqrt() * spectral_norm(w_o)?)
        }
        AttentionParams::KimLinf { n, d, h, heads, w_o } => {
            check_heads(heads, *d, *h)?;
            let nf = *n as f64;
            let dh = *d as f64 / *h as f64;
            let q = heads
                .iter()
                .map(|(wq, _)| wq.inf_norm() * wq.transpose().inf_norm())
                .fold(0.0, f64::max);
            let v = heads.iter().map(|(_, wv)| wv.transpose().inf_norm()).fold(0.0, f64::max);
            Ok((4.0 * phi_inverse(nf - 1.0)? + 1.0 / dh) * w_o.transpose().inf_norm() * q * v)
        }
        AttentionParams::Yudin { x, w_q, w_k, w_v } => {
            let dim = x.cols();
            if w_q.rows() != dim || w_k.rows() != dim || w_q.cols() != w_k.cols() {
                return Err(NetError::InvalidParams(format!(
                    "x is {}x{dim}, W_Q is {:?}, W_K is {:?}",
                    x.rows(),
                    w_q.shape(),
                    w_k.shape()
                )));
            }
            let a = w_q.matmul(&w_k.transpose()).scale(1.0 / (dim as f64).sqrt());
            let scores = x.matmul(&a).matmul(&x.transpose());
            let n = scores.rows();
            let rows: Vec<Vec<f64>> = (0..n).map(|i| softmax(&scores.row(i))).collect();
            let p = DenseMatrix::from_rows(&rows)?;
            let mut m_max: f64 = 0.0;
            for r in &rows {
                let j = softmax_jacobian(r).map_err(|e| NetError::InvalidParams(e.to_string()))?;
                m_max = m_max.max(symmetric_eigen(&j)?.values[0]);
            }
            let xn = x.frobenius_norm();
            Ok(spectral_norm(w_v)? * (spectral_norm(&p)? + 2.0 * xn * xn * spectral_norm(&a)? * m_max))
        }
    }
}
