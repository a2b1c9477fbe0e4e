use std::f64::consts::FRAC_1_SQRT_2;

use super::{check_simple, SvdCalcError, DEFAULT_GAP_TOL};
use crate::matcore::{DenseMatrix, SvdTriple};

/// Symmetric embedding `[[0, A], [A^T, 0]]` with its eigenbasis built from
/// the SVD of `A`.
#[derive(Debug, Clone)]
pub struct JordanWielandt {
    pub embedding: DenseMatrix,
    /// `(u_k; v_k)/√2` for k ≤ r, eigenvalue `+σ_k`.
    pub pos_eigvecs: Vec<Vec<f64>>,
    /// `(u_k; -v_k)/√2` for k ≤ r, eigenvalue `-σ_k`.
    pub neg_eigvecs: Vec<Vec<f64>>,
    /// `(u_j; 0)` for j > r.
    pub left_null: Vec<Vec<f64>>,
    /// `(0; v_j)` for j > r.
    pub right_null: Vec<Vec<f64>>,
    /// The r retained singular values.
    pub sigmas: Vec<f64>,
    pub(crate) svd: SvdTriple,
}

impl JordanWielandt {
    pub fn dim(&self) -> usize {
        self.embedding.rows()
    }

    /// All eigenpairs as (eigenvalue, vector), positive branch first.
    pub fn eigenpairs(&self) -> Vec<(f64, &[f64])> {
        let mut out = Vec::with_capacity(self.dim());
        for (s, w) in self.sigmas.iter().zip(&self.pos_eigvecs) {
            out.push((*s, w.as_slice()));
        }
        for (s, w) in self.sigmas.iter().zip(&self.neg_eigvecs) {
            out.push((-*s, w.as_slice()));
        }
        for w in self.left_null.iter().chain(&self.right_null) {
            out.push((0.0, w.as_slice()));
        }
        out
    }
}

pub fn jordan_wielandt(svd: &SvdTriple) -> JordanWielandt {
    let (m, n) = (svd.rows(), svd.cols());
    let r = svd.rank;
    let a = svd.reconstruct();
    let embedding = DenseMatrix::from_fn(m + n, m + n, |i, j| {
        if i < m && j >= m {
            a[(i, j - m)]
        } else if i >= m && j < m {
            a[(j, i - m)]
        } else {
            0.0
        }
    });
    let stack = |u: &[f64], v: &[f64], sign: f64| -> Vec<f64> {
        u.iter()
            .map(|x| x * FRAC_1_SQRT_2)
            .chain(v.iter().map(|x| sign * x * FRAC_1_SQRT_2))
            .collect()
    };
    let pos_eigvecs = (0..r).map(|k| stack(svd.u(k), svd.v(k), 1.0)).collect();
    let neg_eigvecs = (0..r).map(|k| stack(svd.u(k), svd.v(k), -1.0)).collect();
    let left_null = (r..m)
        .map(|j| svd.u(j).iter().copied().chain(std::iter::repeat_n(0.0, n)).collect())
        .collect();
    let right_null = (r..n)
        .map(|j| std::iter::repeat_n(0.0, m).chain(svd.v(j).iter().copied()).collect())
        .collect();
    JordanWielandt {
        embedding,
        pos_eigvecs,
        neg_eigvecs,
        left_null,
        right_null,
        sigmas: svd.singulars[..r].to_vec(),
        svd: svd.clone(),
    }
}

/// Reduced resolvent of the embedding at `+σ_k`, materialized densely.
#[derive(Debug, Clone)]
pub struct ReducedResolvent {
    /// 1-based singular index.
    pub k: usize,
    pub sigma: f64,
    pub matrix: DenseMatrix,
}

/// `S_k = Σ_{λ ≠ σ_k} w w^T / (λ - σ_k)` over the whole eigenbasis,
/// including the `-σ_k` branch of the target itself.
pub fn reduced_resolvent(jw: &JordanWielandt, k: usize) -> Result<ReducedResolvent, SvdCalcError> {
    check_simple(&jw.svd, k, DEFAULT_GAP_TOL)?;
    let sk = jw.sigmas[k - 1];
    let d = jw.dim();
    let mut s = DenseMatrix::zeros(d, d);
    for (idx, (lam, w)) in jw.eigenpairs().into_iter().enumerate() {
        if idx == k - 1 {
            continue;
        }
        let c = 1.0 / (lam - sk);
        for j in 0..d {
            let cw = c * w[j];
            if cw == 0.0 {
                continue;
            }
            for i in 0..d {
                s[(i, j)] += w[i] * cw;
            }
        }
    }
    Ok(ReducedResolvent {
        k,
        sigma: sk,
        matrix: s,
    })
}
