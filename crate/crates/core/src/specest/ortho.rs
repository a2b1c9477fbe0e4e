use crate::matcore::{inverse, singular_values, DenseMatrix};

use super::SpecEstError;

/// Defect below which Björck iteration stops early.
const BJORCK_FLOOR: f64 = 1e-14;

#[derive(Debug, Clone)]
pub struct BjorckResult {
    pub matrix: DenseMatrix,
    /// `‖W_k^T W_k - I‖_F` for the (possibly rescaled) start and each step.
    pub defects: Vec<f64>,
    /// Factor applied to the input before iterating (1 when none was needed).
    pub prescale: f64,
}

fn gram_defect(w: &DenseMatrix) -> f64 {
    w.transpose()
        .matmul(w)
        .sub(&DenseMatrix::identity(w.cols()))
        .frobenius_norm()
}

/// Björck iteration `W ← W (I + ½Q + ⅜Q² + …)`, `Q = I - W^T W`, keeping
/// `p_order` terms after the identity. Inputs with `σ_max ≥ √2` are first
/// scaled to unit spectral norm so the series converges.
pub fn bjorck_orthogonalize(w: &DenseMatrix, p_order: usize, iters: usize) -> Result<BjorckResult, SpecEstError> {
    if p_order == 0 {
        return Err(SpecEstError::InvalidArgument("p_order must be at least 1".into()));
    }
    let smax = singular_values(w)?[0];
    let prescale = if smax >= std::f64::consts::SQRT_2 { 1.0 / smax } else { 1.0 };
    let mut cur = w.scale(prescale);
    let n = w.cols();
    let id = DenseMatrix::identity(n);

    let mut coeffs = vec![1.0];
    for j in 1..=p_order {
        let prev = coeffs[j - 1];
        coeffs.push(prev * (2 * j - 1) as f64 / (2 * j) as f64);
    }

    let mut defects = vec![gram_defect(&cur)];
    let mut stalls = 0;
    for _ in 0..iters {
        if *defects.last().unwrap() <= BJORCK_FLOOR {
            break;
        }
        let q = id.sub(&cur.transpose().matmul(&cur));
        // Horner evaluation of Σ c_j Q^j
        let mut poly = id.scale(coeffs[p_order]);
        for j in (0..p_order).rev() {
            poly = q.matmul(&poly).add(&id.scale(coeffs[j]));
        }
        cur = cur.matmul(&poly);
        let d = gram_defect(&cur);
        let last = *defects.last().unwrap();
        defects.push(d);
        if !d.is_finite() || d >= last {
            stalls += 1;
            if stalls >= 3 || !d.is_finite() {
                return Err(SpecEstError::NonConvergence { iters: defects.len() - 1 });
            }
        } else {
            stalls = 0;
        }
    }
    Ok(BjorckResult {
        matrix: cur,
        defects,
        prescale,
    })
}

fn require_square(m: &DenseMatrix) -> Result<(), SpecEstError> {
    if m.is_square() {
        Ok(())
    } else {
        Err(SpecEstError::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        })
    }
}

/// Cayley map `(I + ½B)(I - ½B)^{-1}` of a skew-symmetric matrix.
pub fn cayley_orthogonal(b: &DenseMatrix) -> Result<DenseMatrix, SpecEstError> {
    require_square(b)?;
    let skew = b.add(&b.transpose()).frobenius_norm();
    if skew > 1e-10 * b.frobenius_norm().max(1.0) {
        return Err(SpecEstError::NotSkew { defect: skew });
    }
    let id = DenseMatrix::identity(b.rows());
    let half = b.scale(0.5);
    Ok(id.add(&half).matmul(&inverse(&id.sub(&half))?))
}

/// `exp(W - W^T)` by truncated Taylor series with scaling and squaring.
pub fn expmap_orthogonal(w: &DenseMatrix) -> Result<DenseMatrix, SpecEstError> {
    require_square(w)?;
    let b = w.sub(&w.transpose());
    let nrm = b.frobenius_norm();
    let squarings = if nrm > 1.0 { nrm.log2().ceil() as i32 } else { 0 };
    let scaled = b.scale(0.5f64.powi(squarings));
    let n = w.rows();
    let mut sum = DenseMatrix::identity(n);
    let mut term = DenseMatrix::identity(n);
    for j in 1..64 {
        term = term.matmul(&scaled).scale(1.0 / j as f64);
        sum = sum.add(&term);
        if term.frobenius_norm() < 1e-16 {
            break;
        }
    }
    for _ in 0..squarings {
        sum = sum.matmul(&sum);
    }
    Ok(sum)
}

/// Which Gram matrix is closest to the identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IsometrySide {
    /// `W^T W = I` (orthonormal columns)
    Columns,
    /// `W W^T = I` (orthonormal rows)
    Rows,
}

/// `min(‖W^T W - I‖_F, ‖W W^T - I‖_F)` and the side attaining it.
pub fn semi_orthogonality_defect(w: &DenseMatrix) -> (f64, IsometrySide) {
    let cols = gram_defect(w);
    let rows = gram_defect(&w.transpose());
    if cols <= rows {
        (cols, IsometrySide::Columns)
    } else {
        (rows, IsometrySide::Rows)
    }
}

/// True when `W` is semi-orthogonal within `tol`, which certifies Lip[W] = 1.
pub fn certifies_unit_lipschitz(w: &DenseMatrix, tol: f64) -> bool {
    semi_orthogonality_defect(w).0 <= tol
}
