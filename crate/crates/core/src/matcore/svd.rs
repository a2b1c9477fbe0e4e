use super::dense::{dot, norm2};
use super::{DenseMatrix, MatError};

/// Default rank tolerance, relative to the largest singular value.
pub const DEFAULT_RANK_TOL: f64 = 1e-10;

const MAX_SWEEPS: usize = 80;

/// Full singular value decomposition `A = U Σ V^T`.
///
/// `left` is m×m and `right` is n×n, both orthogonal; `singulars` has
/// length min(m, n) and is sorted nonincreasing. Each left singular
/// vector has its first nonzero entry made nonnegative and the paired
/// right vector follows the same flip, so the factorization is
/// deterministic for inputs with simple singular values.
#[derive(Debug, Clone)]
pub struct SvdTriple {
    pub left: DenseMatrix,
    pub singulars: Vec<f64>,
    pub right: DenseMatrix,
    /// Number of singular values above `rank_tol * σ_1`.
    pub rank: usize,
    /// Smallest `|σ_i - σ_j|` over distinct retained indices; infinite
    /// when fewer than two singular values are retained.
    pub min_gap: f64,
}

impl SvdTriple {
    pub fn rows(&self) -> usize {
        self.left.rows()
    }

    pub fn cols(&self) -> usize {
        self.right.rows()
    }

    /// Largest singular value (0 for the zero matrix).
    pub fn sigma_max(&self) -> f64 {
        self.singulars.first().copied().unwrap_or(0.0)
    }

    /// Singular value with a zero-based index; indices at or past
    /// min(m, n) are structural zeros.
    pub fn sigma(&self, i: usize) -> f64 {
        self.singulars.get(i).copied().unwrap_or(0.0)
    }

    /// Left singular vector `u_i` (zero-based).
    pub fn u(&self, i: usize) -> &[f64] {
        self.left.col(i)
    }

    /// Right singular vector `v_i` (zero-based).
    pub fn v(&self, i: usize) -> &[f64] {
        self.right.col(i)
    }

    /// `U Σ V^T`
    pub fn reconstruct(&self) -> DenseMatrix {
        let (m, n) = (self.rows(), self.cols());
        let mut out = DenseMatrix::zeros(m, n);
        for (i, &s) in self.singulars.iter().enumerate() {
            if s == 0.0 {
                continue;
            }
            let u = self.u(i);
            let v = self.v(i);
            for j in 0..n {
                let sv = s * v[j];
                for r in 0..m {
                    out[(r, j)] += u[r] * sv;
                }
            }
        }
        out
    }

    /// `max(‖U^T U - I‖_F, ‖V^T V - I‖_F)`
    pub fn orthogonality_defect(&self) -> f64 {
        let du = gram_defect(&self.left);
        let dv = gram_defect(&self.right);
        du.max(dv)
    }
}

fn gram_defect(q: &DenseMatrix) -> f64 {
    q.transpose()
        .matmul(q)
        .sub(&DenseMatrix::identity(q.cols()))
        .frobenius_norm()
}

/// Computes the full SVD by one-sided Jacobi rotations.
pub fn full_svd(a: &DenseMatrix, rank_tol: f64) -> Result<SvdTriple, MatError> {
    if !(rank_tol >= 0.0) {
        return Err(MatError::InvalidTolerance(rank_tol));
    }
    let (m, n) = a.shape();
    let (left, singulars, right) = if m >= n {
        let (u, s, v) = jacobi_tall(a)?;
        (u, s, v)
    } else {
        let (u, s, v) = jacobi_tall(&a.transpose())?;
        (v, s, u)
    };
    let mut svd = SvdTriple {
        left,
        singulars,
        right,
        rank: 0,
        min_gap: f64::INFINITY,
    };
    fix_signs(&mut svd);
    let s1 = svd.sigma_max();
    svd.rank = if s1 > 0.0 {
        svd.singulars.iter().filter(|&&s| s > rank_tol * s1).count()
    } else {
        0
    };
    let r = svd.rank;
    for i in 0..r {
        for j in i + 1..r {
            svd.min_gap = svd.min_gap.min((svd.singulars[i] - svd.singulars[j]).abs());
        }
    }
    Ok(svd)
}

/// Singular values only, nonincreasing.
pub fn singular_values(a: &DenseMatrix) -> Result<Vec<f64>, MatError> {
    Ok(full_svd(a, DEFAULT_RANK_TOL)?.singulars)
}

/// Jacobi SVD for m >= n. Returns (U m×m, σ of length n, V n×n).
fn jacobi_tall(a: &DenseMatrix) -> Result<(DenseMatrix, Vec<f64>, DenseMatrix), MatError> {
    let (m, n) = a.shape();
    let mut w = a.clone();
    let mut v = DenseMatrix::identity(n);
    let tol = f64::EPSILON * (m as f64);
    let mut converged = n == 1;
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let alpha = dot(w.col(p), w.col(p));
                let beta = dot(w.col(q), w.col(q));
                let gamma = dot(w.col(p), w.col(q));
                if gamma == 0.0 || gamma.abs() <= tol * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let t = if zeta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                rotate_cols(&mut w, p, q, c, s);
                rotate_cols(&mut v, p, q, c, s);
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(MatError::NonConvergence {
            routine: "full_svd",
            sweeps: MAX_SWEEPS,
        });
    }

    let mut order: Vec<(usize, f64)> = (0..n).map(|j| (j, norm2(w.col(j)))).collect();
    order.sort_by(|x, y| y.1.total_cmp(&x.1));
    let sigmas: Vec<f64> = order.iter().map(|&(_, s)| s).collect();
    let v_sorted = DenseMatrix::from_fn(n, n, |i, c| v[(i, order[c].0)]);

    let s1 = sigmas.first().copied().unwrap_or(0.0);
    let floor = s1 * f64::EPSILON * (m.max(n) as f64);
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(m);
    for &(j, s) in &order {
        if s <= floor || s == 0.0 {
            break;
        }
        let col: Vec<f64> = w.col(j).iter().map(|x| x / s).collect();
        basis.push(col);
    }
    let thin = basis.len();
    reorthonormalize(&mut basis);
    // columns thin..n of the tall factor carry zero singular values;
    // they and the remaining m - n columns come from basis completion.
    complete_basis(&mut basis, m);
    debug_assert!(thin <= n);
    let u = DenseMatrix::from_fn(m, m, |i, c| basis[c][i]);
    Ok((u, sigmas, v_sorted))
}

fn rotate_cols(m: &mut DenseMatrix, p: usize, q: usize, c: f64, s: f64) {
    for i in 0..m.rows() {
        let xp = m[(i, p)];
        let xq = m[(i, q)];
        m[(i, p)] = c * xp - s * xq;
        m[(i, q)] = s * xp + c * xq;
    }
}

fn reorthonormalize(basis: &mut [Vec<f64>]) {
    for k in 0..basis.len() {
        for _ in 0..2 {
            for j in 0..k {
                let proj = dot(&basis[k], &basis[j]);
                let (head, tail) = basis.split_at_mut(k);
                for (x, y) in tail[0].iter_mut().zip(&head[j]) {
                    *x -= proj * y;
                }
            }
        }
        let nrm = norm2(&basis[k]);
        basis[k].iter_mut().for_each(|x| *x /= nrm);
    }
}

/// Extends an orthonormal set to a full basis of R^dim, choosing at each
/// step the standard basis vector with the largest residual.
fn complete_basis(basis: &mut Vec<Vec<f64>>, dim: usize) {
    while basis.len() < dim {
        let mut best: Option<(f64, Vec<f64>)> = None;
        for e in 0..dim {
            let mut x = vec![0.0; dim];
            x[e] = 1.0;
            for _ in 0..2 {
                for b in basis.iter() {
                    let proj = dot(&x, b);
                    for (xi, bi) in x.iter_mut().zip(b) {
                        *xi -= proj * bi;
                    }
                }
            }
            let nrm = norm2(&x);
            if best.as_ref().is_none_or(|(bn, _)| nrm > *bn) {
                best = Some((nrm, x));
            }
        }
        let (nrm, mut x) = best.expect("dim > 0");
        x.iter_mut().for_each(|xi| *xi /= nrm);
        basis.push(x);
    }
}

fn first_significant_negative(x: &[f64]) -> bool {
    x.iter()
        .find(|v| v.abs() > 1e-12)
        .is_some_and(|&v| v < 0.0)
}

fn fix_signs(svd: &mut SvdTriple) {
    let (m, n) = (svd.rows(), svd.cols());
    let paired = m.min(n);
    for i in 0..m {
        if first_significant_negative(svd.left.col(i)) {
            svd.left.col_mut(i).iter_mut().for_each(|x| *x = -*x);
            if i < paired {
                svd.right.col_mut(i).iter_mut().for_each(|x| *x = -*x);
            }
        }
    }
    for j in paired..n {
        if first_significant_negative(svd.right.col(j)) {
            svd.right.col_mut(j).iter_mut().for_each(|x| *x = -*x);
        }
    }
}
