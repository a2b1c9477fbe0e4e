use super::{DenseMatrix, MatError};

/// Column-major vectorization: entry `(i, j)` lands at `i + j * rows`.
pub fn vec(m: &DenseMatrix) -> Vec<f64> {
    m.as_slice().to_vec()
}

/// Inverse of [`vec`] for a known shape.
pub fn unvec(v: &[f64], rows: usize, cols: usize) -> Result<DenseMatrix, MatError> {
    DenseMatrix::from_col_major(rows, cols, v.to_vec())
}

/// Kronecker product; block `(i, j)` of the result is `a[i, j] * b`.
pub fn kron(a: &DenseMatrix, b: &DenseMatrix) -> DenseMatrix {
    let (ar, ac) = a.shape();
    let (br, bc) = b.shape();
    let mut out = DenseMatrix::zeros(ar * br, ac * bc);
    for ja in 0..ac {
        for ia in 0..ar {
            let s = a[(ia, ja)];
            if s == 0.0 {
                continue;
            }
            for jb in 0..bc {
                for ib in 0..br {
                    out[(ia * br + ib, ja * bc + jb)] = s * b[(ib, jb)];
                }
            }
        }
    }
    out
}

/// Kronecker product of two column vectors, `a ⊗ b`.
pub fn kron_vec(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for &x in a {
        out.extend(b.iter().map(|&y| x * y));
    }
    out
}
