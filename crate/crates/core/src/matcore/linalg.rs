use super::{DenseMatrix, MatError};

/// LU factorization with partial pivoting of a square matrix.
pub struct Lu {
    lu: DenseMatrix,
    perm: Vec<usize>,
    sign: f64,
}

impl Lu {
    pub fn new(a: &DenseMatrix) -> Result<Self, MatError> {
        if !a.is_square() {
            return Err(MatError::NotSquare {
                rows: a.rows(),
                cols: a.cols(),
            });
        }
        let n = a.rows();
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut sign = 1.0;
        let scale = a.max_abs().max(f64::MIN_POSITIVE);
        for k in 0..n {
            let (p, pivot) = (k..n)
                .map(|i| (i, lu[(i, k)].abs()))
                .fold((k, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            if pivot <= scale * 1e-300 {
                return Err(MatError::Singular);
            }
            if p != k {
                for j in 0..n {
                    let t = lu[(k, j)];
                    lu[(k, j)] = lu[(p, j)];
                    lu[(p, j)] = t;
                }
                perm.swap(k, p);
                sign = -sign;
            }
            let d = lu[(k, k)];
            for i in k + 1..n {
                lu[(i, k)] /= d;
            }
            for j in k + 1..n {
                let ukj = lu[(k, j)];
                if ukj == 0.0 {
                    continue;
                }
                for i in k + 1..n {
                    let l = lu[(i, k)];
                    lu[(i, j)] -= l * ukj;
                }
            }
        }
        Ok(Self { lu, perm, sign })
    }

    pub fn solve_vec(&self, b: &[f64]) -> Vec<f64> {
        let n = self.lu.rows();
        let mut x: Vec<f64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            let s: f64 = (0..i).map(|j| self.lu[(i, j)] * x[j]).sum();
            x[i] -= s;
        }
        for i in (0..n).rev() {
            let s: f64 = (i + 1..n).map(|j| self.lu[(i, j)] * x[j]).sum();
            x[i] = (x[i] - s) / self.lu[(i, i)];
        }
        x
    }

    pub fn solve(&self, b: &DenseMatrix) -> DenseMatrix {
        let mut out = DenseMatrix::zeros(b.rows(), b.cols());
        for j in 0..b.cols() {
            let x = self.solve_vec(b.col(j));
            out.col_mut(j).copy_from_slice(&x);
        }
        out
    }

    pub fn determinant(&self) -> f64 {
        (0..self.lu.rows()).fold(self.sign, |d, i| d * self.lu[(i, i)])
    }
}

pub fn inverse(a: &DenseMatrix) -> Result<DenseMatrix, MatError> {
    let lu = Lu::new(a)?;
    Ok(lu.solve(&DenseMatrix::identity(a.rows())))
}

pub fn determinant(a: &DenseMatrix) -> Result<f64, MatError> {
    match Lu::new(a) {
        Ok(lu) => Ok(lu.determinant()),
        Err(MatError::Singular) => Ok(0.0),
        Err(e) => Err(e),
    }
}

/// Eigen-decomposition of a symmetric matrix.
#[derive(Debug, Clone)]
pub struct SymmetricEigen {
    /// Eigenvalues in nonincreasing order.
    pub values: Vec<f64>,
    /// Orthonormal eigenvectors as columns, matching `values`.
    pub vectors: DenseMatrix,
}

/// Cyclic Jacobi eigensolver for symmetric matrices. The strictly lower
/// triangle is ignored; input is symmetrized from the upper triangle.
pub fn symmetric_eigen(a: &DenseMatrix) -> Result<SymmetricEigen, MatError> {
    if !a.is_square() {
        return Err(MatError::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    let mut m = DenseMatrix::from_fn(n, n, |i, j| if i <= j { a[(i, j)] } else { a[(j, i)] });
    let mut v = DenseMatrix::identity(n);
    const MAX_SWEEPS: usize = 100;
    let mut converged = n == 1;
    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|j| (0..j).map(move |i| (i, j)))
            .map(|(i, j)| m[(i, j)].powi(2))
            .sum();
        let total = m.frobenius_norm().powi(2);
        if off <= 1e-30 * total || off == 0.0 {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let app = m[(p, p)];
                let aqq = m[(q, q)];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let mkp = m[(k, p)];
                    let mkq = m[(k, q)];
                    m[(k, p)] = c * mkp - s * mkq;
                    m[(k, q)] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let mpk = m[(p, k)];
                    let mqk = m[(q, k)];
                    m[(p, k)] = c * mpk - s * mqk;
                    m[(q, k)] = s * mpk + c * mqk;
                }
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }
    if !converged {
        return Err(MatError::NonConvergence {
            routine: "symmetric_eigen",
            sweeps: MAX_SWEEPS,
        });
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(j, j)].total_cmp(&m[(i, i)]));
    let values = order.iter().map(|&i| m[(i, i)]).collect();
    let vectors = DenseMatrix::from_fn(n, n, |r, c| v[(r, order[c])]);
    Ok(SymmetricEigen { values, vectors })
}

/// Symmetric PSD square root via eigen-decomposition. Eigenvalues in
/// `[-clip, 0)` are treated as zero; anything more negative is rejected.
pub fn psd_sqrt(a: &DenseMatrix, clip: f64) -> Result<DenseMatrix, MatError> {
    let eig = symmetric_eigen(a)?;
    let n = a.rows();
    if let Some(&lo) = eig.values.last() {
        if lo < -clip {
            return Err(MatError::NotPsd { min_eigenvalue: lo });
        }
    }
    let mut out = DenseMatrix::zeros(n, n);
    for (k, &lam) in eig.values.iter().enumerate() {
        let s = lam.max(0.0).sqrt();
        if s == 0.0 {
            continue;
        }
        let q = eig.vectors.col(k);
        for j in 0..n {
            for i in 0..n {
                out[(i, j)] += s * q[i] * q[j];
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lu_solves_and_inverts() {
        let a = DenseMatrix::from_rows(&[
            vec![4.0, 1.0, 2.0],
            vec![1.0, 0.0, 3.0],
            vec![2.0, 5.0, 1.0],
        ])
        .unwrap();
        let inv = inverse(&a).unwrap();
        let id = a.matmul(&inv);
        assert!(id.sub(&DenseMatrix::identity(3)).frobenius_norm() < 1e-13);
        let det = determinant(&a).unwrap();
        // 4(0-15) - 1(1-6) + 2(5-0)
        assert!((det - (-45.0)).abs() < 1e-12);
    }

    #[test]
    fn singular_matrix_has_zero_determinant() {
        let a = DenseMatrix::from_rows(&[vec![1.0, 2.0], vec![2.0, 4.0]]).unwrap();
        assert!(matches!(Lu::new(&a), Err(MatError::Singular)));
        assert_eq!(determinant(&a).unwrap(), 0.0);
    }

    #[test]
    fn eigen_of_diagonal_sorted() {
        let a = DenseMatrix::from_diag(&[1.0, 5.0, -2.0]);
        let e = symmetric_eigen(&a).unwrap();
        assert_eq!(e.values, vec![5.0, 1.0, -2.0]);
    }

    #[test]
    fn eigen_reconstructs() {
        let a = DenseMatrix::from_rows(&[
            vec![2.0, -1.0, 0.5],
            vec![-1.0, 3.0, 0.25],
            vec![0.5, 0.25, 1.0],
        ])
        .unwrap();
        let e = symmetric_eigen(&a).unwrap();
        let q = &e.vectors;
        let recon = q.matmul(&DenseMatrix::from_diag(&e.values)).matmul(&q.transpose());
        assert!(recon.sub(&a).frobenius_norm() < 1e-13);
        let qtq = q.transpose().matmul(q);
        assert!(qtq.sub(&DenseMatrix::identity(3)).frobenius_norm() < 1e-13);
    }

    #[test]
    fn psd_sqrt_squares_back() {
        let b = DenseMatrix::from_rows(&[vec![1.0, 2.0], vec![0.0, 1.0], vec![3.0, -1.0]]).unwrap();
        let a = b.matmul(&b.transpose());
        let r = psd_sqrt(&a, 1e-10).unwrap();
        assert!(r.matmul(&r).sub(&a).frobenius_norm() < 1e-12);
        assert!(r.symmetry_defect() < 1e-13);
    }

    #[test]
    fn psd_sqrt_rejects_indefinite() {
        let a = DenseMatrix::from_diag(&[1.0, -0.5]);
        assert!(matches!(psd_sqrt(&a, 1e-10), Err(MatError::NotPsd { .. })));
    }
}
