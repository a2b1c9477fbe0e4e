mod common;

use lipkit::netbounds::{articulation_bound, certified_radius, dag_bound, path_enumeration_bound, SpectralMethod};
use proptest::prelude::*;

use common::{dag_with_lips, edges_of, random_dag};

const M: SpectralMethod = SpectralMethod::FullSvd;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn dp_equals_path_enumeration(n in 2..=10usize, seed in any::<u64>()) {
        let (g, _) = random_dag(n, seed);
        let dp = dag_bound(&g, M).unwrap().bound;
        let paths = path_enumeration_bound(&g, M).unwrap().unwrap();
        prop_assert_eq!(dp, paths);
    }

    #[test]
    fn dag_bound_is_monotone(n in 3..=10usize, seed in any::<u64>(), which in any::<prop::sample::Index>(), bump in 0.0..2.0f64) {
        let (g, mut lips) = random_dag(n, seed);
        let before = dag_bound(&g, M).unwrap().bound;
        let v = 1 + which.index(n - 1);
        lips[v] += bump;
        let after = dag_bound(&dag_with_lips(n, &edges_of(&g), &lips), M).unwrap().bound;
        prop_assert!(after >= before);
    }

    #[test]
    fn articulation_never_exceeds_dag(n in 2..=10usize, seed in any::<u64>()) {
        let (g, _) = random_dag(n, seed);
        let dp = dag_bound(&g, M).unwrap().bound;
        let art = articulation_bound(&g, M).unwrap().bound;
        prop_assert!(art <= dp * (1.0 + 1e-12), "{} > {}", art, dp);
    }

    #[test]
    fn certified_radius_scaling(margin in 0.01..10.0f64, k in 0.01..10.0f64, c in 0.1..10.0f64, p in prop_oneof![Just(1.0), Just(2.0), Just(f64::INFINITY)]) {
        let r = certified_radius(margin, k, p).unwrap();
        let rm = certified_radius(c * margin, k, p).unwrap();
        let rk = certified_radius(margin, c * k, p).unwrap();
        prop_assert!((rm - c * r).abs() <= 1e-12 * rm);
        prop_assert!((rk - r / c).abs() <= 1e-12 * r);
    }
}
