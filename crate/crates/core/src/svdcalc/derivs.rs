use super::{check_simple, SvdCalcError, DEFAULT_GAP_TOL};
use crate::matcore::{full_svd, kron_vec, DenseMatrix, SvdTriple, DEFAULT_RANK_TOL};

/// Gradient of σ_k with respect to the matrix entries: `u_k v_k^T`.
pub fn sv_jacobian(svd: &SvdTriple, k: usize) -> Result<DenseMatrix, SvdCalcError> {
    check_simple(svd, k, DEFAULT_GAP_TOL)?;
    Ok(DenseMatrix::outer(svd.u(k - 1), svd.v(k - 1)))
}

/// Hessian of σ_k in the column-major vec layout (mn × mn).
///
/// With `c_i = σ_k / (σ_k² - σ_i²)` and `σ_i = 0` past the rank:
///
/// ```text
/// H = Σ_{i≠k, i≤m} c_i (v_k⊗u_i)(v_k⊗u_i)^T
///   + Σ_{j≠k, j≤n} c_j (v_j⊗u_k)(v_j⊗u_k)^T
///   + Σ_{l≠k, l≤r} σ_l/(σ_k² - σ_l²) [(v_k⊗u_l)(v_l⊗u_k)^T + (v_l⊗u_k)(v_k⊗u_l)^T]
/// ```
pub fn sv_hessian(svd: &SvdTriple, k: usize) -> Result<DenseMatrix, SvdCalcError> {
    check_simple(svd, k, DEFAULT_GAP_TOL)?;
    let (m, n) = (svd.rows(), svd.cols());
    let kk = k - 1;
    let sk = svd.sigma(kk);
    let uk = svd.u(kk);
    let vk = svd.v(kk);
    let dim = m * n;
    let mut h = DenseMatrix::zeros(dim, dim);

    let add_sym = |h: &mut DenseMatrix, c: f64, a: &[f64], b: &[f64]| {
        for j in 0..dim {
            for i in 0..=j {
                h[(i, j)] += c * (a[i] * b[j] + b[i] * a[j]);
            }
        }
    };

    for i in 0..m {
        if i == kk {
            continue;
        }
        let si = if i < svd.rank { svd.sigma(i) } else { 0.0 };
        let c = sk / (sk * sk - si * si);
        let a = kron_vec(vk, svd.u(i));
        add_sym(&mut h, 0.5 * c, &a, &a);
    }
    for j in 0..n {
        if j == kk {
            continue;
        }
        let sj = if j < svd.rank { svd.sigma(j) } else { 0.0 };
        let c = sk / (sk * sk - sj * sj);
        let b = kron_vec(svd.v(j), uk);
        add_sym(&mut h, 0.5 * c, &b, &b);
    }
    for l in 0..svd.rank {
        if l == kk {
            continue;
        }
        let sl = svd.sigma(l);
        let d = sl / (sk * sk - sl * sl);
        let a = kron_vec(vk, svd.u(l));
        let b = kron_vec(svd.v(l), uk);
        add_sym(&mut h, d, &a, &b);
    }
    for j in 0..dim {
        for i in 0..j {
            h[(j, i)] = h[(i, j)];
        }
    }
    Ok(h)
}

fn sigma_k(a: &DenseMatrix, k: usize) -> Result<f64, SvdCalcError> {
    Ok(full_svd(a, DEFAULT_RANK_TOL)?.sigma(k - 1))
}

/// Central-difference estimate of dσ_k/dA, entry by entry. The values are
/// untrustworthy when σ_k is repeated; callers check simplicity themselves.
pub fn fd_gradient_oracle(a: &DenseMatrix, k: usize, step: f64) -> Result<DenseMatrix, SvdCalcError> {
    if !(step > 0.0) {
        return Err(SvdCalcError::InvalidStep(step));
    }
    let (m, n) = a.shape();
    if k == 0 || k > m.min(n) {
        return Err(SvdCalcError::IndexOutOfRange { k, max: m.min(n) });
    }
    let mut g = DenseMatrix::zeros(m, n);
    let mut probe = a.clone();
    for j in 0..n {
        for i in 0..m {
            let x = a[(i, j)];
            probe[(i, j)] = x + step;
            let plus = sigma_k(&probe, k)?;
            probe[(i, j)] = x - step;
            let minus = sigma_k(&probe, k)?;
            probe[(i, j)] = x;
            g[(i, j)] = (plus - minus) / (2.0 * step);
        }
    }
    Ok(g)
}

/// Central differences of [`sv_jacobian`], one vec column per perturbed entry.
pub fn fd_hessian_oracle(a: &DenseMatrix, k: usize, step: f64) -> Result<DenseMatrix, SvdCalcError> {
    if !(step > 0.0) {
        return Err(SvdCalcError::InvalidStep(step));
    }
    let (m, n) = a.shape();
    let dim = m * n;
    let mut h = DenseMatrix::zeros(dim, dim);
    let mut probe = a.clone();
    for c in 0..dim {
        let (i, j) = (c % m, c / m);
        let x = a[(i, j)];
        probe[(i, j)] = x + step;
        let jp = sv_jacobian(&full_svd(&probe, DEFAULT_RANK_TOL)?, k)?;
        probe[(i, j)] = x - step;
        let jm = sv_jacobian(&full_svd(&probe, DEFAULT_RANK_TOL)?, k)?;
        probe[(i, j)] = x;
        for (r, (p, q)) in jp.as_slice().iter().zip(jm.as_slice()).enumerate() {
            h[(r, c)] = (p - q) / (2.0 * step);
        }
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::{gaussian_matrix, vec};

    fn svd(a: &DenseMatrix) -> SvdTriple {
        full_svd(a, DEFAULT_RANK_TOL).unwrap()
    }

    #[test]
    fn jacobian_of_diagonal() {
        let s = svd(&DenseMatrix::from_diag(&[3.0, 1.0]));
        let j = sv_jacobian(&s, 1).unwrap();
        assert_eq!(j, DenseMatrix::from_rows(&[vec![1.0, 0.0], vec![0.0, 0.0]]).unwrap());
    }

    #[test]
    fn jacobian_pairs_to_sigma() {
        let a = gaussian_matrix(5, 7, 11);
        let s = svd(&a);
        for k in 1..=s.rank {
            let j = sv_jacobian(&s, k).unwrap();
            assert!((j.frobenius_dot(&a) - s.sigma(k - 1)).abs() < 1e-12);
            assert!((j.frobenius_norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn hessian_of_diagonal_matches_closed_values() {
        let s = svd(&DenseMatrix::from_diag(&[3.0, 1.0]));
        let h = sv_hessian(&s, 1).unwrap();
        let mut expect = DenseMatrix::zeros(4, 4);
        expect[(1, 1)] = 3.0 / 8.0;
        expect[(2, 2)] = 3.0 / 8.0;
        expect[(1, 2)] = 1.0 / 8.0;
        expect[(2, 1)] = 1.0 / 8.0;
        assert!(h.sub(&expect).max_abs() < 1e-15);
        let fd = fd_hessian_oracle(&DenseMatrix::from_diag(&[3.0, 1.0]), 1, 1e-5).unwrap();
        assert!(fd.sub(&expect).max_abs() < 1e-8);
    }

    #[test]
    fn repeated_singular_is_rejected() {
        let s = svd(&DenseMatrix::identity(3));
        assert!(matches!(
            sv_jacobian(&s, 1),
            Err(SvdCalcError::DegenerateSpectrum { .. })
        ));
        let fd = fd_gradient_oracle(&DenseMatrix::identity(3), 1, 1e-6).unwrap();
        assert!(fd.as_slice().iter().all(|x| x.is_finite()));
    }

    #[test]
    fn zero_singular_hessian_rejected() {
        let a = DenseMatrix::from_diag(&[2.0, 0.0]);
        let s = svd(&a);
        assert!(matches!(sv_hessian(&s, 2), Err(SvdCalcError::ZeroSingular { k: 2 })));
        assert!(matches!(
            sv_jacobian(&s, 3),
            Err(SvdCalcError::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn fd_gradient_matches_on_random_wide() {
        let a = gaussian_matrix(5, 7, 3);
        let s = svd(&a);
        for k in 1..=s.rank {
            let j = sv_jacobian(&s, k).unwrap();
            let fd = fd_gradient_oracle(&a, k, 1e-6).unwrap();
            assert!(j.sub(&fd).frobenius_norm() < 1e-8, "k={k}");
        }
    }

    #[test]
    fn second_order_remainder() {
        let a = gaussian_matrix(6, 10, 21);
        let d = gaussian_matrix(6, 10, 22);
        let s = svd(&a);
        let eps = 1e-3;
        for k in 1..=s.rank {
            let h = sv_hessian(&s, k).unwrap();
            let dv = vec(&d);
            let quad = 0.5 * crate::matcore::dot(&dv, &h.matvec(&dv)) * eps * eps;
            // the even part cancels the first- and third-order terms
            let plus = sigma_k(&a.axpy(eps, &d), k).unwrap();
            let minus = sigma_k(&a.axpy(-eps, &d), k).unwrap();
            let rem = 0.5 * (plus + minus) - s.sigma(k - 1);
            assert!((rem - quad).abs() <= 1e-3 * quad.abs(), "k={k} rem={rem} quad={quad}");
        }
    }
}
