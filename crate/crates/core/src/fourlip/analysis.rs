use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use super::{FourierError, SpectralSignal};

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// `K_ζ = 2π‖ζ‖|f̂(ζ)|` on centered bins.
pub fn spectral_contribution(s: &SpectralSignal) -> Vec<f64> {
    s.spectrum()
        .iter()
        .enumerate()
        .map(|(i, z)| 2.0 * PI * norm(&s.freq_of(i)) * z.norm())
        .collect()
}

/// Riemann sum `Σ K_ζ Δζ`.
pub fn spectral_lipschitz_bound(s: &SpectralSignal) -> f64 {
    spectral_contribution(s).iter().sum::<f64>() * s.freq_cell_volume()
}

/// Largest central-difference gradient norm over interior grid points.
pub fn grid_sup_gradient(s: &SpectralSignal) -> f64 {
    let f = s.samples();
    match s.grid() {
        [n] => {
            let h = 2.0 * s.spacing()[0];
            (1..n.saturating_sub(1)).map(|i| ((f[i + 1] - f[i - 1]) / h).abs()).fold(0.0, f64::max)
        }
        [n0, n1] => {
            let (h0, h1) = (2.0 * s.spacing()[0], 2.0 * s.spacing()[1]);
            let mut best: f64 = 0.0;
            for i in 1..n0.saturating_sub(1) {
                for j in 1..n1.saturating_sub(1) {
                    let gx = (f[(i + 1) * n1 + j] - f[(i - 1) * n1 + j]) / h0;
                    let gy = (f[i * n1 + j + 1] - f[i * n1 + j - 1]) / h1;
                    best = best.max(gx.hypot(gy));
                }
            }
            best
        }
        _ => unreachable!(),
    }
}

/// `f̂(t ζ₀)` for each `t` by direct summation over the grid.
pub fn directional_transform(
    s: &SpectralSignal,
    direction: &[f64],
    t_grid: &[f64],
) -> Result<Vec<Complex64>, FourierError> {
    if direction.len() != s.dim() {
        return Err(FourierError::DimensionMismatch {
            expected: s.dim(),
            found: direction.len(),
        });
    }
    let len = norm(direction);
    if (len - 1.0).abs() > 1e-10 {
        return Err(FourierError::NotUnit(len));
    }
    let coords: Vec<Vec<f64>> = (0..s.dim()).map(|a| s.coords(a)).collect();
    // projection ⟨ζ₀, x⟩ per sample
    let proj: Vec<f64> = (0..s.len())
        .map(|i| {
            s.unflatten(i)
                .iter()
                .enumerate()
                .map(|(a, &k)| direction[a] * coords[a][k])
                .sum()
        })
        .collect();
    let dv = s.cell_volume();
    let f = s.samples();
    Ok(t_grid
        .par_iter()
        .map(|&t| {
            let acc = f
                .iter()
                .zip(&proj)
                .fold(Complex64::new(0.0, 0.0), |acc, (&v, &p)| acc + Complex64::from_polar(v, -2.0 * PI * t * p));
            acc * dv
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_and_zero_signals() {
        let s = SpectralSignal::from_fn_1d(64, 0.1, |_| 3.0).unwrap();
        assert!(spectral_contribution(&s).iter().all(|k| k.abs() < 1e-12));
        let z = SpectralSignal::from_fn_2d([8, 8], [1.0, 1.0], |_, _| 0.0).unwrap();
        assert_eq!(spectral_lipschitz_bound(&z), 0.0);
    }

    #[test]
    fn single_sine_bound_is_tight() {
        // integer number of periods: energy sits in exactly two bins
        let s = SpectralSignal::from_fn_1d(1000, 0.01, |x| (2.0 * PI * x).sin()).unwrap();
        let k = spectral_contribution(&s);
        let dz = s.freq_cell_volume();
        let freqs = s.freq_axis(0);
        for (kz, z) in k.iter().zip(&freqs) {
            if (z.abs() - 1.0).abs() < 1e-9 {
                assert!((kz * dz - PI).abs() < 1e-9);
            }
        }
        assert!((spectral_lipschitz_bound(&s) - 2.0 * PI).abs() < 1e-8);
        assert!(grid_sup_gradient(&s) <= 2.0 * PI);
    }

    #[test]
    fn directional_examples() {
        let s = SpectralSignal::from_fn_2d([40, 40], [0.25, 0.25], |x, y| (-(x * x + y * y)).exp()).unwrap();
        let ts = [0.0, 0.2, 0.5, 1.0];
        let e1 = directional_transform(&s, &[1.0, 0.0], &ts).unwrap();
        let diag = directional_transform(&s, &[0.6, 0.8], &ts).unwrap();
        let dc: f64 = s.samples().iter().sum::<f64>() * s.cell_volume();
        assert!((e1[0].re - dc).abs() < 1e-12);
        for (a, b) in e1.iter().zip(&diag) {
            assert!((a - b).norm() < 1e-8);
        }
        assert!(matches!(
            directional_transform(&s, &[1.0, 1.0], &ts),
            Err(FourierError::NotUnit(_))
        ));
    }

    #[test]
    fn directional_separable_marginal() {
        let g = |x: f64| (-(x - 0.3).powi(2)).exp();
        let h = |y: f64| 1.0 / (1.0 + y * y);
        let s = SpectralSignal::from_fn_2d([32, 24], [0.3, 0.4], |x, y| g(x) * h(y)).unwrap();
        let xs = s.coords(0);
        let ys = s.coords(1);
        let mass_h: f64 = ys.iter().map(|&y| h(y)).sum::<f64>() * 0.4;
        let ts = [0.1, 0.7];
        let got = directional_transform(&s, &[1.0, 0.0], &ts).unwrap();
        for (t, z) in ts.iter().zip(got) {
            let want: Complex64 = xs
                .iter()
                .map(|&x| Complex64::from_polar(g(x), -2.0 * PI * t * x))
                .sum::<Complex64>()
                * 0.3
                * mass_h;
            assert!((z - want).norm() < 1e-10);
        }
    }
}
