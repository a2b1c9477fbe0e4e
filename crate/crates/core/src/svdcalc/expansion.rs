use super::{jordan_wielandt, reduced_resolvent, SvdCalcError, DEFAULT_MAX_ORDER};
use crate::matcore::{dot, full_svd, DenseMatrix, DEFAULT_RANK_TOL};

/// `A(x) = base + Σ_{j≥1} x^j terms[j-1]`.
#[derive(Debug, Clone)]
pub struct PerturbationSeries {
    base: DenseMatrix,
    terms: Vec<DenseMatrix>,
}

impl PerturbationSeries {
    pub fn new(base: DenseMatrix, terms: Vec<DenseMatrix>) -> Result<Self, SvdCalcError> {
        for (index, t) in terms.iter().enumerate() {
            if t.shape() != base.shape() {
                return Err(SvdCalcError::ShapeMismatch {
                    index: index + 1,
                    expected: base.shape(),
                    found: t.shape(),
                });
            }
        }
        Ok(Self { base, terms })
    }

    pub fn base(&self) -> &DenseMatrix {
        &self.base
    }

    pub fn terms(&self) -> &[DenseMatrix] {
        &self.terms
    }

    /// `A(x)` evaluated at a scalar.
    pub fn evaluate(&self, x: f64) -> DenseMatrix {
        let mut out = self.base.clone();
        let mut p = 1.0;
        for t in &self.terms {
            p *= x;
            out = out.axpy(p, t);
        }
        out
    }

    /// Embedded term `T^{(j)} y` without forming the block matrix.
    fn apply_term(&self, j: usize, y: &[f64]) -> Option<Vec<f64>> {
        let a = self.terms.get(j - 1)?;
        let m = a.rows();
        let mut out = a.matvec(&y[m..]);
        out.extend(a.tr_matvec(&y[..m]));
        Some(out)
    }
}

/// Coefficient σ_k^{(n)} of `x^n` in the analytic branch σ_k(A(x)).
pub fn sv_expansion_coeff(series: &PerturbationSeries, k: usize, n: usize) -> Result<f64, SvdCalcError> {
    Ok(*sv_expansion_coeffs(series, k, n, DEFAULT_MAX_ORDER)?.last().expect("n >= 1"))
}

/// Coefficients σ_k^{(1)}, …, σ_k^{(n)}.
///
/// Uses the Rayleigh–Schrödinger recursion on the embedding with
/// intermediate normalization `⟨w_0, w_j⟩ = 0`:
///
/// ```text
/// λ_n = Σ_{j=1}^{n} ⟨w_0, T_j w_{n-j}⟩
/// w_n = S_k Σ_{j=1}^{n} (λ_j - T_j) w_{n-j}
/// ```
pub fn sv_expansion_coeffs(
    series: &PerturbationSeries,
    k: usize,
    n: usize,
    max_order: usize,
) -> Result<Vec<f64>, SvdCalcError> {
    if n == 0 {
        return Err(SvdCalcError::ZeroOrder);
    }
    if n > max_order {
        return Err(SvdCalcError::OrderOverflow { order: n, max: max_order });
    }
    let svd = full_svd(&series.base, DEFAULT_RANK_TOL)?;
    let jw = jordan_wielandt(&svd);
    let s = reduced_resolvent(&jw, k)?.matrix;
    let w0 = jw.pos_eigvecs[k - 1].clone();
    let d = w0.len();

    let mut ws: Vec<Vec<f64>> = vec![w0];
    let mut lams: Vec<f64> = vec![jw.sigmas[k - 1]];
    for order in 1..=n {
        let mut lam = 0.0;
        let mut applied: Vec<Option<Vec<f64>>> = Vec::with_capacity(order);
        for j in 1..=order {
            let tw = series.apply_term(j, &ws[order - j]);
            if let Some(tw) = &tw {
                lam += dot(&ws[0], tw);
            }
            applied.push(tw);
        }
        lams.push(lam);
        let mut rhs = vec![0.0; d];
        for j in 1..=order {
            let prev = &ws[order - j];
            for (r, p) in rhs.iter_mut().zip(prev) {
                *r += lams[j] * p;
            }
            if let Some(tw) = &applied[j - 1] {
                for (r, t) in rhs.iter_mut().zip(tw) {
                    *r -= t;
                }
            }
        }
        ws.push(s.matvec(&rhs));
    }
    Ok(lams[1..].to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::{gaussian_matrix, vec};
    use crate::svdcalc::{sv_hessian, sv_jacobian};

    #[test]
    fn first_order_is_jacobian_pairing() {
        let a = gaussian_matrix(4, 5, 31);
        let d = gaussian_matrix(4, 5, 32);
        let svd = full_svd(&a, DEFAULT_RANK_TOL).unwrap();
        let series = PerturbationSeries::new(a, vec![d.clone()]).unwrap();
        for k in 1..=4 {
            let c1 = sv_expansion_coeff(&series, k, 1).unwrap();
            let j = sv_jacobian(&svd, k).unwrap();
            assert!((c1 - j.frobenius_dot(&d)).abs() < 1e-12);
        }
    }

    #[test]
    fn second_order_is_half_hessian_form() {
        let a = gaussian_matrix(4, 4, 41);
        let d = gaussian_matrix(4, 4, 42);
        let svd = full_svd(&a, DEFAULT_RANK_TOL).unwrap();
        let series = PerturbationSeries::new(a, vec![d.clone()]).unwrap();
        let dv = vec(&d);
        for k in 1..=4 {
            let c2 = sv_expansion_coeff(&series, k, 2).unwrap();
            let h = sv_hessian(&svd, k).unwrap();
            let q = 0.5 * dot(&dv, &h.matvec(&dv));
            assert!((c2 - q).abs() < 1e-9 * q.abs().max(1.0), "k={k}");
        }
    }

    #[test]
    fn second_order_term_enters_linearly() {
        let a = DenseMatrix::from_diag(&[3.0, 1.0]);
        let a2 = DenseMatrix::from_diag(&[1.0, 0.0]);
        let zero = DenseMatrix::zeros(2, 2);
        let series = PerturbationSeries::new(a, vec![zero, a2]).unwrap();
        let c = sv_expansion_coeffs(&series, 1, 3, 6).unwrap();
        for (got, want) in c.iter().zip([0.0, 1.0, 0.0]) {
            assert!((got - want).abs() < 1e-14);
        }
    }

    #[test]
    fn order_limits() {
        let a = DenseMatrix::from_diag(&[3.0, 1.0]);
        let series = PerturbationSeries::new(a, vec![]).unwrap();
        assert!(matches!(
            sv_expansion_coeff(&series, 1, 7),
            Err(SvdCalcError::OrderOverflow { order: 7, max: 6 })
        ));
        assert!(matches!(sv_expansion_coeff(&series, 1, 0), Err(SvdCalcError::ZeroOrder)));
        assert_eq!(sv_expansion_coeff(&series, 1, 4).unwrap(), 0.0);
    }

    #[test]
    fn shape_mismatch_rejected() {
        let r = PerturbationSeries::new(DenseMatrix::zeros(2, 2), vec![DenseMatrix::zeros(2, 3)]);
        assert!(matches!(r, Err(SvdCalcError::ShapeMismatch { index: 1, .. })));
    }
}
