use std::fmt::Write as _;
use std::path::Path;

use lipkit::activations::{
    closed_form_lipschitz, numeric_scalar_lipschitz, numeric_softmax_lipschitz, ActivationSpec, DEFAULT_DOMAIN,
};
use lipkit::dynamics::{
    driving_forces, euler_maruyama, trajectory_rows, trajectory_to_csv, LayerDynamicsState,
};
use lipkit::fourlip::{
    band_bound, band_linearized_change, band_remove, grid_sup_gradient, radial_esd, read_signal_csv, snr,
    spectral_lipschitz_bound, Taper, BAND_RADIUS_WARNING,
};
use lipkit::matcore::{format_f64, full_svd, matrix_to_csv, read_matrix_csv, vec, DenseMatrix, DEFAULT_RANK_TOL};
use lipkit::netbounds::{
    articulation_bound, dag_bound, node_lipschitz, product_bound, NetworkGraph, Provenance, SpectralMethod,
};
use lipkit::specgame::{importance_score, read_game_csv, shapley_exact, shapley_mc, shapley_to_csv};
use lipkit::svdcalc::{fd_gradient_oracle, fd_hessian_oracle, sv_hessian, sv_jacobian, DEFAULT_GRAD_STEP, DEFAULT_HESS_STEP};

use crate::error::CliError;
use crate::network::parse_network;
use crate::{
    ActivationArgs, BoundArgs, BoundMethod, DynamicsArgs, FourierArgs, ShapleyArgs, Spectral, SvdDerivArgs, TaperArg,
};

fn write_out(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::parse(format!("{}: {e}", path.display())))
}

fn provenance_label(p: &Provenance) -> String {
    match p {
        Provenance::ClosedForm => "closed_form".into(),
        Provenance::PowerIteration { iters, seed } => format!("power_iteration(iters={iters};seed={seed})"),
        Provenance::UserSupplied => "user_supplied".into(),
    }
}

fn load_network(path: &Path) -> Result<NetworkGraph, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::parse(format!("{}: {e}", path.display())))?;
    parse_network(&text).map_err(|e| e.context(path.display()))
}

pub fn bound(a: &BoundArgs) -> Result<(), CliError> {
    let g = load_network(&a.net)?;
    let method = match a.spectral {
        Spectral::Auto => SpectralMethod::Auto,
        Spectral::Full => SpectralMethod::FullSvd,
        Spectral::Power => SpectralMethod::Power {
            iters: a.iters,
            seed: a.seed,
        },
    };
    let order: Vec<usize> = g.topological_order().to_vec();
    let mut lips = Vec::with_capacity(g.len());
    for &v in &order {
        lips.push(node_lipschitz(&g, &g.node(v).id, method)?);
    }
    let mut s_values = None;
    let value = match a.method {
        BoundMethod::Product => {
            let chain: Vec<String> = match &a.chain {
                Some(c) => c.clone(),
                None => order.iter().map(|&v| g.node(v).id.clone()).collect(),
            };
            let refs: Vec<&str> = chain.iter().map(String::as_str).collect();
            product_bound(&refs, &g, method)?
        }
        BoundMethod::Dag => {
            let d = dag_bound(&g, method)?;
            let b = d.bound;
            s_values = Some(d.per_node);
            b
        }
        BoundMethod::Articulation => {
            let r = articulation_bound(&g, method)?;
            println!("cut_vertices = [{}]", r.cut_vertices.join(", "));
            let subs: Vec<String> = r.subdag_bounds.iter().map(|v| v.to_string()).collect();
            println!("subdag_bounds = [{}]", subs.join(", "));
            r.bound
        }
    };
    println!("bound = {value}");
    let mut csv = String::from("id,lip,provenance,S\n");
    for (i, l) in lips.iter().enumerate() {
        let s = s_values.as_ref().map(|sv| sv[i].1);
        print!("  {}: lip = {} ({})", l.id, l.lip, provenance_label(&l.provenance));
        match s {
            Some(s) => println!(", S = {s}"),
            None => println!(),
        }
        let _ = writeln!(
            csv,
            "{},{},{},{}",
            l.id,
            format_f64(l.lip),
            provenance_label(&l.provenance),
            s.map(format_f64).unwrap_or_default()
        );
    }
    if let Some(out) = &a.out {
        write_out(out, &csv)?;
    }
    Ok(())
}

pub fn svd_deriv(a: &SvdDerivArgs) -> Result<(), CliError> {
    let m = read_matrix_csv(&a.matrix).map_err(|e| CliError::from(e).context(a.matrix.display()))?;
    let svd = full_svd(&m, DEFAULT_RANK_TOL)?;
    let (deriv, fd) = if a.order == 1 {
        let j = sv_jacobian(&svd, a.k)?;
        let fd = if a.check_fd {
            Some(fd_gradient_oracle(&m, a.k, a.step.unwrap_or(DEFAULT_GRAD_STEP))?)
        } else {
            None
        };
        (j, fd)
    } else {
        let h = sv_hessian(&svd, a.k)?;
        let fd = if a.check_fd {
            Some(fd_hessian_oracle(&m, a.k, a.step.unwrap_or(DEFAULT_HESS_STEP))?)
        } else {
            None
        };
        (h, fd)
    };
    println!("sigma_{} = {}", a.k, svd.sigma(a.k - 1));
    println!("order {} derivative: {}x{}", a.order, deriv.rows(), deriv.cols());
    if let Some(fd) = fd {
        println!("max_abs_fd_deviation = {}", deriv.sub(&fd).max_abs());
    }
    match &a.out {
        Some(out) => write_out(out, &matrix_to_csv(&deriv))?,
        None => print!("{}", matrix_to_csv(&deriv)),
    }
    Ok(())
}

pub fn activation(a: &ActivationArgs) -> Result<(), CliError> {
    let spec: ActivationSpec = a.name.parse().map_err(|e| CliError::parse(format!("--name: {e}")))?;
    println!("{spec}: lipschitz = {}", closed_form_lipschitz(&spec));
    if a.numeric {
        match spec {
            ActivationSpec::Softmax(dim) => {
                let v = numeric_softmax_lipschitz(dim, a.restarts, a.seed).map_err(|e| CliError::numeric(e.to_string()))?;
                println!("numeric = {v}");
            }
            _ => {
                let domain = match a.domain.as_deref() {
                    Some([lo, hi]) => (*lo, *hi),
                    _ => DEFAULT_DOMAIN,
                };
                let r = numeric_scalar_lipschitz(&spec, domain, a.grid).map_err(|e| CliError::parse(e.to_string()))?;
                println!("numeric = {} at x = {}", r.value, r.argmax);
                if !r.attained {
                    println!("note: supremum approached at the domain boundary, not attained");
                }
            }
        }
    }
    Ok(())
}

pub fn fourier(a: &FourierArgs) -> Result<(), CliError> {
    let raw = read_signal_csv(&a.signal).map_err(|e| CliError::from(e).context(a.signal.display()))?;
    let s = raw.with_taper(match a.taper {
        TaperArg::None => Taper::None,
        TaperArg::Parzen => Taper::Parzen,
    });
    if a.bound {
        println!("spectral_bound = {}", spectral_lipschitz_bound(&s));
        println!("grid_sup_gradient = {}", grid_sup_gradient(&raw));
    }
    match (&a.band_center, a.band_radius) {
        (Some(center), Some(radius)) => {
            if radius >= BAND_RADIUS_WARNING {
                eprintln!("warning: band radius {radius} is outside the small-band regime");
            }
            let r = band_remove(&s, center, radius)?;
            let b = band_bound(&s, center, radius, r.eps)?;
            println!("removed_bins = {}", r.removed_bins);
            println!("eps = {}", r.eps);
            println!("m_delta = {}", b.m_delta);
            println!("band_bound = {}", b.bound);
            println!("linearized_change = {}", band_linearized_change(&s, center, radius, r.eps)?);
        }
        (None, None) => {}
        _ => return Err(CliError::parse("--band-center and --band-radius must be given together")),
    }
    if let Some(rings) = a.rings {
        let values = match &a.noise {
            Some(p) => {
                let noise = read_signal_csv(p).map_err(|e| CliError::from(e).context(p.display()))?;
                snr(&s, &noise, rings)?
            }
            None => radial_esd(&s, rings)?,
        };
        let mut csv = String::from("ring_index,value\n");
        for (i, v) in values.iter().enumerate() {
            let _ = writeln!(csv, "{i},{}", format_f64(*v));
        }
        match &a.out {
            Some(out) => write_out(out, &csv)?,
            None => print!("{csv}"),
        }
    } else if a.noise.is_some() {
        return Err(CliError::parse("--noise requires --rings"));
    }
    Ok(())
}

pub fn dynamics(a: &DynamicsArgs) -> Result<(), CliError> {
    let theta = read_matrix_csv(&a.theta).map_err(|e| CliError::from(e).context(a.theta.display()))?;
    let mn = theta.rows() * theta.cols();
    let grad = match &a.grad {
        Some(p) => {
            let g = read_matrix_csv(p).map_err(|e| CliError::from(e).context(p.display()))?;
            if g.shape() != theta.shape() {
                return Err(CliError::parse(format!(
                    "--grad has shape {:?}, theta has {:?}",
                    g.shape(),
                    theta.shape()
                )));
            }
            vec(&g)
        }
        None => vec![0.0; mn],
    };
    let cov = match &a.cov {
        Some(p) => read_matrix_csv(p).map_err(|e| CliError::from(e).context(p.display()))?,
        None => DenseMatrix::identity(mn),
    };
    let state = LayerDynamicsState::new(theta, grad, cov, a.eta)?;
    let f = driving_forces(&state)?;
    println!("sigma1 = {}", state.sigma1());
    println!("mu = {}", f.mu);
    println!("kappa = {}", f.kappa);
    println!("lambda_norm = {}", f.lambda_norm());
    if a.steps > 0 || a.traj_out.is_some() {
        let traj = euler_maruyama(&state, a.dt, a.steps, a.seed, None, a.decimate)?;
        let rows = trajectory_rows(&state, &traj, a.decimate, a.steps)?;
        if let Some(last) = rows.last() {
            println!("final sigma1 = {} after {} steps", last.sigma1, last.step);
        }
        if let Some(out) = &a.traj_out {
            write_out(out, &trajectory_to_csv(&rows))?;
        }
    }
    Ok(())
}

pub fn shapley(a: &ShapleyArgs) -> Result<(), CliError> {
    let g = read_game_csv(&a.game).map_err(|e| CliError::from(e).context(a.game.display()))?;
    if let Some(m) = a.players {
        if m != g.players() {
            return Err(CliError::parse(format!(
                "--players {m} but the table describes {} players",
                g.players()
            )));
        }
    }
    let psi = match a.mc_perms {
        Some(k) => {
            let f = |mask: u32| Ok(g.value(mask));
            let est = shapley_mc(&f, g.players(), k, a.seed)?;
            println!("err_bound = {}", est.err_bound);
            est.psi
        }
        None => shapley_exact(&g)?,
    };
    for (i, p) in psi.iter().enumerate() {
        println!("psi[{i}] = {p}");
    }
    let score = match importance_score(&psi, a.beta.as_deref()) {
        Ok(s) => {
            println!("score = {s}");
            Some(s)
        }
        Err(e) => {
            eprintln!("warning: importance score unavailable: {e}");
            None
        }
    };
    if let Some(out) = &a.out {
        write_out(out, &shapley_to_csv(&psi, score))?;
    }
    Ok(())
}
