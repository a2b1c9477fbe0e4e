use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::DenseMatrix;

/// Deterministic generator used throughout the crate.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Matrix with i.i.d. standard normal entries, filled column-major.
pub fn gaussian_matrix(rows: usize, cols: usize, seed: u64) -> DenseMatrix {
    let mut rng = seeded_rng(seed);
    DenseMatrix::from_fn(rows, cols, |_, _| rng.sample(StandardNormal))
}

/// Matrix with i.i.d. uniform [0, 1) entries, filled column-major.
pub fn uniform_matrix(rows: usize, cols: usize, seed: u64) -> DenseMatrix {
    let mut rng = seeded_rng(seed);
    DenseMatrix::from_fn(rows, cols, |_, _| rng.random::<f64>())
}

/// Uniform point on the unit sphere in R^n.
pub fn unit_sphere_vector<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<f64> {
    loop {
        let x: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
        let nrm = super::norm2(&x);
        if nrm > 1e-300 {
            return x.into_iter().map(|v| v / nrm).collect();
        }
    }
}
