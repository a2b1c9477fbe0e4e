//! Acceptance suite: one pass/fail line per criterion, nonzero exit if any fails.

mod common;

use std::f64::consts::{E, PI};
use std::time::{Duration, Instant};

use lipkit::activations::{
    closed_form_lipschitz, numeric_scalar_lipschitz, numeric_softmax_lipschitz, ActivationSpec, DEFAULT_DOMAIN,
};
use lipkit::dynamics::{driving_forces, ensemble_log_sigma_increments, ensemble_stats, LayerDynamicsState};
use lipkit::fourlip::{
    band_bound, band_linearized_change, band_remove, grid_sup_gradient, spectral_lipschitz_bound, SpectralSignal, Taper,
};
use lipkit::matcore::{
    full_svd, gaussian_matrix, seeded_rng, singular_values, symmetric_eigen, uniform_matrix, vec, DenseMatrix, Lu,
    DEFAULT_RANK_TOL,
};
use lipkit::netbounds::{
    dag_bound, path_enumeration_bound, product_bound, NetworkGraph, Node, NodeKind, SpectralMethod,
};
use lipkit::specest::{
    bjorck_orthogonalize, cayley_orthogonal, certifies_unit_lipschitz, expmap_orthogonal, power_iteration,
};
use lipkit::specgame::{
    importance_score, shapley_exact, shapley_mc, shapley_permutation_bruteforce, CoalitionGame,
};
use lipkit::svdcalc::{
    fd_gradient_oracle, fd_hessian_oracle, sv_expansion_coeffs, sv_hessian, sv_jacobian, PerturbationSeries,
};
use rand::Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn within_time(t: Instant, limit: Duration) -> (bool, String) {
    let el = t.elapsed();
    (el < limit, format!("{:.2}s/{}s", el.as_secs_f64(), limit.as_secs()))
}

fn jacobian_fixtures() -> Vec<(String, DenseMatrix)> {
    let mut out = Vec::new();
    for seed in 1..=5 {
        out.push((format!("normal seed {seed}"), gaussian_matrix(6, 10, seed)));
        out.push((format!("uniform seed {seed}"), uniform_matrix(6, 10, seed)));
    }
    out
}

fn singular_value_jacobian() -> Outcome {
    let t = Instant::now();
    let mut worst: f64 = 0.0;
    for (_, a) in jacobian_fixtures() {
        let svd = full_svd(&a, DEFAULT_RANK_TOL).unwrap();
        for k in 1..=svd.rank {
            let j = sv_jacobian(&svd, k).unwrap();
            let fd = fd_gradient_oracle(&a, k, 1e-6).unwrap();
            worst = worst.max(j.sub(&fd).frobenius_norm());
        }
    }
    let (fast, time) = within_time(t, Duration::from_secs(5));
    outcome(worst <= 1e-8 && fast, format!("max l2 deviation {worst:.3e} (<= 1e-8), {time}"))
}

fn singular_value_hessian() -> Outcome {
    let t = Instant::now();
    let (mut worst, mut asym, mut floor): (f64, f64, f64) = (0.0, 0.0, f64::INFINITY);
    for (_, a) in jacobian_fixtures() {
        let svd = full_svd(&a, DEFAULT_RANK_TOL).unwrap();
        for k in 1..=svd.rank {
            let h = sv_hessian(&svd, k).unwrap();
            let fd = fd_hessian_oracle(&a, k, 1e-5).unwrap();
            worst = worst.max(h.sub(&fd).max_abs());
            asym = asym.max(h.symmetry_defect());
            if k == 1 {
                let eig = symmetric_eigen(&h).unwrap();
                floor = floor.min(*eig.values.last().unwrap());
            }
        }
    }
    let (fast, time) = within_time(t, Duration::from_secs(30));
    outcome(
        worst <= 1e-6 && asym == 0.0 && floor >= -1e-10 && fast,
        format!("max entry deviation {worst:.3e} (<= 1e-6), asymmetry {asym:e}, k=1 eigen floor {floor:.3e}, {time}"),
    )
}

/// Odd and even parts of `σ(x)` fitted separately on `x = ±t·h`, `t = 1..=4`,
/// with three monomials each. Returns fitted `c_1..c_6`.
fn polynomial_fit(sigma: impl Fn(f64) -> f64, h: f64) -> [f64; 6] {
    let s0 = sigma(0.0);
    let ts = [1.0, 2.0, 3.0, 4.0];
    let samples: Vec<(f64, f64)> = ts.iter().map(|&t| (sigma(t * h), sigma(-t * h))).collect();
    let fit = |powers: [i32; 3], rhs: Vec<f64>| -> [f64; 3] {
        let design = DenseMatrix::from_fn(4, 3, |i, j| ts[i].powi(powers[j]));
        let normal = design.transpose().matmul(&design);
        let c = Lu::new(&normal).unwrap().solve_vec(&design.tr_matvec(&rhs));
        [c[0] / h.powi(powers[0]), c[1] / h.powi(powers[1]), c[2] / h.powi(powers[2])]
    };
    let odd = fit([1, 3, 5], samples.iter().map(|(p, m)| 0.5 * (p - m)).collect());
    let even = fit([2, 4, 6], samples.iter().map(|(p, m)| 0.5 * (p + m) - s0).collect());
    [odd[0], even[0], odd[1], even[1], odd[2], even[2]]
}

fn expansion_coefficients() -> Outcome {
    let (mut worst_fit, mut worst1, mut worst2): (f64, f64, f64) = (0.0, 0.0, 0.0);
    let mut worst_order = [0.0f64; 4];
    for seed in 1..=5u64 {
        let a = gaussian_matrix(4, 4, seed);
        let d = gaussian_matrix(4, 4, seed + 100);
        let svd = full_svd(&a, DEFAULT_RANK_TOL).unwrap();
        let series = PerturbationSeries::new(a.clone(), vec![d.clone()]).unwrap();
        for k in 1..=4 {
            let coeffs = sv_expansion_coeffs(&series, k, 4, 6).unwrap();
            let fitted = polynomial_fit(|x| singular_values(&a.axpy(x, &d)).unwrap()[k - 1], 1e-3);
            for n in 0..4 {
                let rel = (fitted[n] - coeffs[n]).abs() / coeffs[n].abs();
                worst_order[n] = worst_order[n].max(rel);
                worst_fit = worst_fit.max(rel);
            }
            let j = sv_jacobian(&svd, k).unwrap();
            worst1 = worst1.max((coeffs[0] - j.frobenius_dot(&d)).abs());
            let h = sv_hessian(&svd, k).unwrap();
            let vd = vec(&d);
            let quad = 0.5 * lipkit::matcore::dot(&vd, &h.matvec(&vd));
            worst2 = worst2.max((coeffs[1] - quad).abs());
        }
    }
    outcome(
        worst_fit <= 1e-3 && worst1 <= 1e-12 && worst2 <= 1e-9,
        format!(
            "fit rel err by order {:.1e}/{:.1e}/{:.1e}/{:.1e} (<= 1e-3), n=1 vs Jacobian {worst1:.1e}, n=2 vs Hessian {worst2:.1e}",
            worst_order[0], worst_order[1], worst_order[2], worst_order[3]
        ),
    )
}

fn activation_constants() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    let scalar = [
        ("sigmoid", 0.25, 1e-9),
        ("tanh", 1.0, 1e-9),
        ("swish", 1.09983932, 1e-6),
        ("gelu", 1.128904145, 1e-6),
    ];
    for (name, want, tol) in scalar {
        let spec: ActivationSpec = name.parse().unwrap();
        let cf = closed_form_lipschitz(&spec);
        let num = numeric_scalar_lipschitz(&spec, DEFAULT_DOMAIN, 20_001).unwrap();
        let ok = (cf - want).abs() <= tol && (num.value - want).abs() <= tol && num.attained;
        pass &= ok;
        parts.push(format!("{name} {cf:.10}/{:.10}", num.value));
    }
    let sp = numeric_scalar_lipschitz(&ActivationSpec::Softplus, DEFAULT_DOMAIN, 20_001).unwrap();
    let sp_ok = !sp.attained && (sp.value - 1.0).abs() < 1e-8 && closed_form_lipschitz(&ActivationSpec::Softplus) == 1.0;
    pass &= sp_ok;
    parts.push(format!("softplus {:.10} attained={}", sp.value, sp.attained));
    for dim in [2, 3, 10] {
        let v = numeric_softmax_lipschitz(dim, 16, 0).unwrap();
        pass &= (v - 0.5).abs() <= 1e-3;
        parts.push(format!("softmax({dim}) {v:.6}"));
    }
    outcome(pass, parts.join(", "))
}

fn gaussian(a: f64) -> SpectralSignal {
    SpectralSignal::from_fn_2d([256, 256], [0.0625, 0.0625], |x, y| (-a * (x * x + y * y)).exp()).unwrap()
}

fn gaussian_fixture() -> Outcome {
    let t = Instant::now();
    let s = gaussian(1.0);
    let bound = spectral_lipschitz_bound(&s);
    let sup = grid_sup_gradient(&s);
    let bound_err = bound / PI.sqrt() - 1.0;
    let sup_err = sup / (2.0 / E).sqrt() - 1.0;
    let mut pass = bound_err.abs() <= 0.02 && sup_err.abs() <= 0.01 && sup < bound;
    let want = (2.0 / (PI * E)).sqrt();
    let mut ratios = Vec::new();
    for a in [0.5, 1.0, 2.0, 4.0] {
        let s = gaussian(a);
        let r = grid_sup_gradient(&s) / spectral_lipschitz_bound(&s);
        pass &= (r / want - 1.0).abs() <= 0.03;
        ratios.push(format!("{r:.4}"));
    }
    let (fast, time) = within_time(t, Duration::from_secs(10));
    outcome(
        pass && fast,
        format!(
            "bound {bound:.5} ({:+.2}% vs sqrt(pi)), sup {sup:.5} ({:+.2}% vs sqrt(2/e)), ratios [{}] vs {want:.4}, {time}",
            100.0 * bound_err,
            100.0 * sup_err,
            ratios.join(", ")
        ),
    )
}

fn multi_sine_fixture() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for seed in 0..3u64 {
        let mut rng = seeded_rng(seed);
        let terms: Vec<(f64, f64)> =
            (0..10).map(|_| (rng.random_range(0.1..1.0), rng.random_range(0.1..5.0))).collect();
        let n = 50_000;
        let s = SpectralSignal::from_fn_1d(n, 10.0 / n as f64, |x| {
            terms.iter().map(|(a, w)| a * (2.0 * PI * w * x).sin()).sum()
        })
        .unwrap();
        let analytic: f64 = terms.iter().map(|(a, w)| 2.0 * PI * a * w).sum();
        let discrete = spectral_lipschitz_bound(&s.with_taper(Taper::Parzen));
        let sup = grid_sup_gradient(&s);
        let rel = (discrete - analytic).abs() / analytic;
        pass &= sup <= discrete && rel <= 0.01;
        parts.push(format!("seed {seed}: sup {sup:.4} <= {discrete:.4}, analytic rel err {rel:.1e}"));
    }
    outcome(pass, parts.join("; "))
}

fn band_perturbation() -> Outcome {
    let s = gaussian(1.0);
    let mut pass = true;
    let mut parts = Vec::new();
    for delta in [0.05, 0.1, 0.2] {
        let removal = band_remove(&s, &[1.0, 0.0], delta).unwrap();
        let b = band_bound(&s, &[1.0, 0.0], delta, removal.eps).unwrap();
        let observed = band_linearized_change(&s, &[1.0, 0.0], delta, removal.eps).unwrap();
        let sampled = s
            .samples()
            .iter()
            .zip(removal.perturbed.samples())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        let ratio = observed / b.bound;
        let predicted = PI.sqrt() * delta;
        pass &= observed <= b.bound && (ratio / predicted - 1.0).abs() <= 0.25;
        parts.push(format!(
            "delta {delta}: change {observed:.3e} <= bound {:.3e}, ratio {ratio:.4} vs {predicted:.4}, sampled sup {sampled:.3e}",
            b.bound
        ));
    }
    outcome(pass, parts.join("; "))
}

fn least_squares_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = points.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = points.iter().map(|(x, _)| (x - mx).powi(2)).sum();
    sxy / sxx
}

fn power_iteration_rate() -> Outcome {
    let mut rng = seeded_rng(8);
    let (mut worst_slope, mut worst_final): (f64, f64) = (0.0, 0.0);
    let mut ratios = Vec::new();
    for i in 0..50u64 {
        let g = gaussian_matrix(32, 32, 1000 + i);
        let svd = full_svd(&g, DEFAULT_RANK_TOL).unwrap();
        let rho: f64 = rng.random_range(0.3..0.8);
        let mut sig = svd.singulars.clone();
        sig[0] = sig[1] / rho;
        let a = svd.left.matmul(&DenseMatrix::from_diag(&sig)).matmul(&svd.right.transpose());
        let pi = power_iteration(&a, 200, i).unwrap();
        let points: Vec<(f64, f64)> = pi
            .history
            .iter()
            .enumerate()
            .map(|(t, est)| ((t + 1) as f64, (sig[0] - est).abs()))
            .filter(|(_, err)| *err > 1e-11 * sig[0])
            .map(|(t, err)| (t, err.ln()))
            .collect();
        if points.len() >= 3 {
            let slope = least_squares_slope(&points);
            let ratio = slope / rho.ln();
            worst_slope = worst_slope.max((ratio - 1.0).abs());
            ratios.push(ratio);
        }
        worst_final = worst_final.max((pi.sigma_est - sig[0]).abs());
    }
    let mean_ratio = ratios.iter().sum::<f64>() / ratios.len() as f64;
    outcome(
        worst_slope <= 0.2 && worst_final <= 1e-8,
        format!(
            "slope/log(s2/s1) mean {mean_ratio:.3}, worst rel dev {worst_slope:.3} (<= 0.2), final error {worst_final:.1e} (<= 1e-8)"
        ),
    )
}

fn chain_fixture(seed: u64, layers: usize) -> (NetworkGraph, f64) {
    let mut nodes = vec![Node::new("x", NodeKind::Input)];
    let mut edges = Vec::new();
    let mut matrices = std::collections::HashMap::new();
    let mut prev = "x".to_string();
    let mut product = 1.0;
    for l in 0..layers {
        let w = gaussian_matrix(5, 5, seed * 100 + l as u64);
        product *= singular_values(&w).unwrap()[0];
        let (lin, act) = (format!("l{l}"), format!("a{l}"));
        matrices.insert(format!("w{l}"), w);
        nodes.push(Node::new(lin.clone(), NodeKind::Linear { weight_ref: format!("w{l}") }));
        nodes.push(Node::new(act.clone(), NodeKind::Activation(ActivationSpec::Relu)));
        edges.push((prev, lin.clone()));
        edges.push((lin, act.clone()));
        prev = act;
    }
    let g = NetworkGraph::new(nodes, &edges, matrices, "x", &prev).unwrap();
    (g, product)
}

fn dag_bounds() -> Outcome {
    let m = SpectralMethod::FullSvd;
    let mut mismatches = 0;
    let mut sizes = 0;
    for i in 0..100u64 {
        let n = 2 + (i as usize % 9);
        let (g, _) = common::random_dag(n, 5000 + i);
        let dp = dag_bound(&g, m).unwrap().bound;
        let brute = path_enumeration_bound(&g, m).unwrap().unwrap();
        if dp != brute {
            mismatches += 1;
        }
        sizes += n;
    }
    let edges = [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4), (4, 5), (0, 5)];
    let figure = common::dag_with_lips(6, &edges, &[1.0; 6]);
    let fig = dag_bound(&figure, m).unwrap().bound;
    let mut chain_err: f64 = 0.0;
    for seed in 1..=5 {
        let (g, want) = chain_fixture(seed, 3);
        let order: Vec<String> = g.topological_order().iter().map(|&v| g.node(v).id.clone()).collect();
        let refs: Vec<&str> = order.iter().map(String::as_str).collect();
        for got in [product_bound(&refs, &g, m).unwrap(), dag_bound(&g, m).unwrap().bound] {
            chain_err = chain_err.max((got - want).abs() / want);
        }
    }
    outcome(
        mismatches == 0 && fig == 4.0 && chain_err <= 1e-12,
        format!(
            "{mismatches}/100 DP vs enumeration mismatches ({sizes} nodes total), figure fixture {fig}, chain rel err {chain_err:.1e}"
        ),
    )
}

fn dynamics_fixture() -> LayerDynamicsState {
    let u = full_svd(&gaussian_matrix(3, 3, 1), DEFAULT_RANK_TOL).unwrap().left;
    let v = full_svd(&gaussian_matrix(4, 4, 2), DEFAULT_RANK_TOL).unwrap().right;
    let mut s = DenseMatrix::zeros(3, 4);
    for (i, x) in [3.0, 1.5, 0.5].into_iter().enumerate() {
        s[(i, i)] = x;
    }
    let theta = u.matmul(&s).matmul(&v.transpose());
    LayerDynamicsState::new(theta, vec![0.0; 12], DenseMatrix::identity(12), 1e-3).unwrap()
}

fn dynamics_decomposition() -> Outcome {
    let t = Instant::now();
    let state = dynamics_fixture();
    let f = driving_forces(&state).unwrap();
    let (dt, steps) = (0.01, 100);
    let horizon = dt * steps as f64;
    let inc = ensemble_log_sigma_increments(&state, dt, steps, 10_000, 7).unwrap();
    let e = ensemble_stats(&inc);
    let z = (e.mean - f.kappa * horizon) / e.std_error;
    let lam2 = f.lambda_norm().powi(2);
    let var_err = e.variance / horizon / lam2 - 1.0;

    let mut rng = seeded_rng(11);
    let mut min_kappa = f64::INFINITY;
    for draw in 0..1000u64 {
        let rank = rng.random_range(1..=12);
        let b = gaussian_matrix(12, rank, 20_000 + draw);
        let cov = b.matmul(&b.transpose()).scale(1.0 / rank as f64);
        let st = LayerDynamicsState::new(state.theta().clone(), vec![0.0; 12], cov, 1e-3).unwrap();
        min_kappa = min_kappa.min(driving_forces(&st).unwrap().kappa);
    }
    let (fast, time) = within_time(t, Duration::from_secs(60));
    outcome(
        z.abs() <= 3.0 && var_err.abs() <= 0.1 && min_kappa >= 0.0 && fast,
        format!(
            "mean {:.3e} vs kappa*T {:.3e} (z = {z:.2}), variance rate {:+.2}% vs |lambda|^2, min kappa over 1000 draws {min_kappa:.2e}, {time}",
            e.mean,
            f.kappa * horizon,
            100.0 * var_err
        ),
    )
}

fn integer_game(m: usize, seed: u64) -> CoalitionGame {
    let mut rng = seeded_rng(seed);
    let values = (0..1usize << m).map(|_| rng.random_range(-20..=20) as f64).collect();
    CoalitionGame::new(m, values).unwrap()
}

fn shapley_checks() -> Outcome {
    let mut failures = Vec::new();
    for i in 0..100u64 {
        let m = 2 + (i as usize % 7);
        let g = integer_game(m, 7000 + i);
        let psi = shapley_exact(&g).unwrap();
        let total = g.value(g.full_mask()) - g.value(0);
        if (psi.iter().sum::<f64>() - total).abs() > 1e-9 {
            failures.push(format!("efficiency game {i}"));
        }
        let sym = CoalitionGame::from_fn(m, |s| {
            let swapped = (s & !3) | ((s & 1) << 1) | ((s >> 1) & 1);
            g.value(s) + g.value(swapped)
        })
        .unwrap();
        let ps = shapley_exact(&sym).unwrap();
        if (ps[0] - ps[1]).abs() > 1e-9 {
            failures.push(format!("symmetry game {i}"));
        }
        let h = integer_game(m, 9000 + i);
        let sum = CoalitionGame::from_fn(m, |s| g.value(s) + h.value(s)).unwrap();
        let (ph, psum) = (shapley_exact(&h).unwrap(), shapley_exact(&sum).unwrap());
        if (0..m).any(|p| (psum[p] - psi[p] - ph[p]).abs() > 1e-9) {
            failures.push(format!("linearity game {i}"));
        }
        let d = m - 1;
        let dummy = CoalitionGame::from_fn(m, |s| g.value(s & !(1 << d))).unwrap();
        if shapley_exact(&dummy).unwrap()[d].abs() > 1e-12 {
            failures.push(format!("dummy game {i}"));
        }
        if m <= 5 && shapley_permutation_bruteforce(&g).unwrap() != psi {
            failures.push(format!("brute force game {i}"));
        }
    }
    let mut mc_worst: f64 = 0.0;
    for i in 0..5u64 {
        let g = integer_game(6, 11_000 + i);
        let exact = shapley_exact(&g).unwrap();
        let f = |mask: u32| Ok(g.value(mask));
        let est = shapley_mc(&f, 6, 20_000, i).unwrap();
        let err = est.psi.iter().zip(&exact).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        if err > est.err_bound {
            failures.push(format!("mc game {i}: error {err:.3e} > bound {:.3e}", est.err_bound));
        }
        mc_worst = mc_worst.max(err / est.err_bound);
    }
    let mut score_worst: f64 = 0.0;
    let mut rng = seeded_rng(12);
    for m in 2..=8 {
        let psi = vec![1.0 / m as f64; m];
        let beta: Vec<f64> = (0..m).map(|_| rng.random_range(0.0..1.0)).collect();
        for b in [None, Some(beta.as_slice())] {
            score_worst = score_worst.max(importance_score(&psi, b).unwrap());
        }
        let spread: Vec<f64> = (0..m).map(|i| (i + 1) as f64).collect();
        score_worst = score_worst.max(importance_score(&spread, None).unwrap());
    }
    if score_worst > 1e-12 {
        failures.push(format!("uniform score {score_worst:e}"));
    }
    outcome(
        failures.is_empty(),
        if failures.is_empty() {
            format!("axioms and brute force on 100 games, MC error/bound <= {mc_worst:.3}, uniform score {score_worst:e}")
        } else {
            failures.join(", ")
        },
    )
}

fn orthogonalization() -> Outcome {
    let (mut final_defect, mut monotone, mut cayley, mut expmap): (f64, bool, f64, f64) = (0.0, true, 0.0, 0.0);
    let mut certified = true;
    for seed in 0..20u64 {
        let w = gaussian_matrix(8, 4, 300 + seed);
        let r = bjorck_orthogonalize(&w, 1, 50).unwrap();
        monotone &= r.defects.windows(2).all(|d| d[1] <= d[0]);
        final_defect = final_defect.max(*r.defects.last().unwrap());
        certified &= certifies_unit_lipschitz(&r.matrix, 1e-8) && (singular_values(&r.matrix).unwrap()[0] - 1.0).abs() < 1e-8;

        let b = gaussian_matrix(6, 6, 400 + seed);
        let skew = b.sub(&b.transpose());
        let skew = skew.scale(5.0 / singular_values(&skew).unwrap()[0]);
        let id = DenseMatrix::identity(6);
        let defect = |q: &DenseMatrix| q.transpose().matmul(q).sub(&id).frobenius_norm();
        let c = cayley_orthogonal(&skew).unwrap();
        let e = expmap_orthogonal(&b.scale(2.0)).unwrap();
        cayley = cayley.max(defect(&c));
        expmap = expmap.max(defect(&e));
        let semi = DenseMatrix::from_fn(6, 3, |i, j| c[(i, j)]);
        certified &= certifies_unit_lipschitz(&semi, 1e-10) && certifies_unit_lipschitz(&semi.transpose(), 1e-10);
    }
    outcome(
        monotone && final_defect <= 1e-8 && cayley <= 1e-10 && expmap <= 1e-10 && certified,
        format!(
            "bjorck final defect {final_defect:.1e} (monotone: {monotone}), cayley {cayley:.1e}, expmap {expmap:.1e}, semi-orthogonal certified: {certified}"
        ),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("singular-value Jacobian vs finite differences", singular_value_jacobian),
        ("singular-value Hessian vs finite differences", singular_value_hessian),
        ("n-th order expansion coefficients", expansion_coefficients),
        ("activation Lipschitz constants", activation_constants),
        ("Gaussian spectral bound", gaussian_fixture),
        ("multi-sine spectral bound", multi_sine_fixture),
        ("band perturbation bound", band_perturbation),
        ("power iteration convergence rate", power_iteration_rate),
        ("DAG path-sum bounds", dag_bounds),
        ("dynamics drift and diffusion", dynamics_decomposition),
        ("Shapley axioms and estimators", shapley_checks),
        ("orthogonalization", orthogonalization),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        if !o.pass {
            failed += 1;
        }
        println!("criterion {:>2} [{}] {name}: {}", i + 1, if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
