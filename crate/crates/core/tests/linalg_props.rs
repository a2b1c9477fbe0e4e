use lipkit::matcore::{full_svd, kron, unvec, vec, DenseMatrix, DEFAULT_RANK_TOL};
use lipkit::specest::{bjorck_orthogonalize, cayley_orthogonal, expmap_orthogonal};
use lipkit::svdcalc::{sv_hessian, sv_jacobian};
use proptest::prelude::*;

fn matrix(max_rows: usize, max_cols: usize, bound: f64) -> impl Strategy<Value = DenseMatrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(move |(r, c)| {
        prop::collection::vec(-bound..bound, r * c).prop_map(move |d| DenseMatrix::from_col_major(r, c, d).unwrap())
    })
}

fn shaped(r: usize, c: usize) -> impl Strategy<Value = DenseMatrix> {
    prop::collection::vec(-3.0..3.0f64, r * c).prop_map(move |d| DenseMatrix::from_col_major(r, c, d).unwrap())
}

fn rel_close(a: &DenseMatrix, b: &DenseMatrix, tol: f64) -> bool {
    a.shape() == b.shape() && a.sub(b).frobenius_norm() <= tol * a.frobenius_norm().max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn vec_unvec_round_trip(a in matrix(7, 7, 10.0)) {
        let v = vec(&a);
        prop_assert_eq!(v.len(), a.rows() * a.cols());
        let back = unvec(&v, a.rows(), a.cols()).unwrap();
        prop_assert_eq!(back.as_slice(), a.as_slice());
    }

    #[test]
    fn kron_is_associative(a in matrix(3, 3, 3.0), b in matrix(3, 3, 3.0), c in matrix(3, 3, 3.0)) {
        let left = kron(&kron(&a, &b), &c);
        let right = kron(&a, &kron(&b, &c));
        prop_assert!(rel_close(&left, &right, 1e-12));
    }

    #[test]
    fn kron_mixed_product(
        (a, b, c, d) in (1..4usize, 1..4usize, 1..4usize, 1..4usize, 1..4usize, 1..4usize).prop_flat_map(
            |(m, n, p, q, r, s)| (shaped(m, n), shaped(p, q), shaped(n, r), shaped(q, s))
        )
    ) {
        let lhs = kron(&a, &b).matmul(&kron(&c, &d));
        let rhs = kron(&a.matmul(&c), &b.matmul(&d));
        prop_assert!(rel_close(&lhs, &rhs, 1e-12));
    }

    #[test]
    fn svd_factors_are_orthogonal(a in matrix(24, 24, 10.0)) {
        let svd = full_svd(&a, DEFAULT_RANK_TOL).unwrap();
        for q in [&svd.left, &svd.right] {
            let defect = q.transpose().matmul(q).sub(&DenseMatrix::identity(q.cols())).frobenius_norm();
            prop_assert!(defect <= 1e-10, "defect {}", defect);
        }
        prop_assert!(svd.singulars.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn jacobian_is_unit_rank_one(a in shaped(4, 6)) {
        let svd = full_svd(&a, DEFAULT_RANK_TOL).unwrap();
        prop_assume!(svd.min_gap > 1e-3 * svd.singulars[0]);
        for k in 1..=svd.rank {
            let j = sv_jacobian(&svd, k).unwrap();
            prop_assert!((j.frobenius_norm() - 1.0).abs() < 1e-12);
            let s = full_svd(&j, DEFAULT_RANK_TOL).unwrap();
            prop_assert!(s.singulars[1] < 1e-12);
        }
    }

    #[test]
    fn top_hessian_is_psd(a in shaped(3, 5)) {
        let svd = full_svd(&a, DEFAULT_RANK_TOL).unwrap();
        prop_assume!(svd.min_gap > 1e-3 * svd.singulars[0]);
        let h = sv_hessian(&svd, 1).unwrap();
        prop_assert_eq!(h.symmetry_defect(), 0.0);
        let eig = lipkit::matcore::symmetric_eigen(&h).unwrap();
        prop_assert!(eig.values.iter().all(|&l| l >= -1e-10));
    }

    #[test]
    fn bjorck_defect_nonincreasing(a in shaped(8, 4)) {
        let svd = full_svd(&a, DEFAULT_RANK_TOL).unwrap();
        prop_assume!(svd.rank == 4 && svd.singulars[3] > 1e-2 * svd.singulars[0]);
        let r = bjorck_orthogonalize(&a, 1, 50).unwrap();
        prop_assert!(r.defects.windows(2).all(|w| w[1] <= w[0] + 1e-15));
        prop_assert!(*r.defects.last().unwrap() <= 1e-8);
    }

    #[test]
    fn cayley_and_expmap_are_orthogonal(b in shaped(5, 5)) {
        let skew = b.sub(&b.transpose());
        let skew = skew.scale(5.0 / full_svd(&skew, DEFAULT_RANK_TOL).unwrap().singulars[0].max(1.0));
        for q in [cayley_orthogonal(&skew).unwrap(), expmap_orthogonal(&b).unwrap()] {
            let defect = q.transpose().matmul(&q).sub(&DenseMatrix::identity(5)).frobenius_norm();
            prop_assert!(defect <= 1e-10, "defect {}", defect);
        }
    }
}
