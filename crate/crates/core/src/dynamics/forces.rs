use crate::matcore::{dot, full_svd, norm2, psd_sqrt, vec, DenseMatrix, SvdTriple, DEFAULT_RANK_TOL};
use crate::svdcalc::{sv_hessian, sv_jacobian};

use super::DynamicsError;

/// Tolerance for symmetry and negative eigenvalues of the noise covariance.
pub const COV_TOL: f64 = 1e-10;

/// One layer: parameters, loss gradient, gradient-noise covariance and step size.
#[derive(Debug, Clone)]
pub struct LayerDynamicsState {
    theta: DenseMatrix,
    grad: Vec<f64>,
    noise_cov: DenseMatrix,
    cov_sqrt: DenseMatrix,
    eta: f64,
    svd: SvdTriple,
}

impl LayerDynamicsState {
    pub fn new(theta: DenseMatrix, grad: Vec<f64>, noise_cov: DenseMatrix, eta: f64) -> Result<Self, DynamicsError> {
        let mn = theta.rows() * theta.cols();
        if grad.len() != mn {
            return Err(DynamicsError::InvalidArgument(format!(
                "gradient has length {}, expected {mn}",
                grad.len()
            )));
        }
        if noise_cov.shape() != (mn, mn) {
            return Err(DynamicsError::InvalidArgument(format!(
                "noise covariance is {:?}, expected ({mn}, {mn})",
                noise_cov.shape()
            )));
        }
        if !(eta > 0.0 && eta.is_finite()) {
            return Err(DynamicsError::InvalidArgument(format!("learning rate {eta} must be positive")));
        }
        let defect = noise_cov.symmetry_defect();
        if defect > COV_TOL * noise_cov.max_abs().max(1.0) {
            return Err(DynamicsError::NotSymmetric(defect));
        }
        let cov_sqrt = psd_sqrt(&noise_cov, COV_TOL)?;
        let svd = full_svd(&theta, DEFAULT_RANK_TOL)?;
        // validates σ_1 > 0 and simple
        sv_jacobian(&svd, 1)?;
        Ok(Self {
            theta,
            grad,
            noise_cov,
            cov_sqrt,
            eta,
            svd,
        })
    }

    /// Same gradient, covariance and step size at new parameters.
    pub fn with_theta(&self, theta: DenseMatrix) -> Result<Self, DynamicsError> {
        let svd = full_svd(&theta, DEFAULT_RANK_TOL)?;
        sv_jacobian(&svd, 1)?;
        Ok(Self {
            theta,
            svd,
            ..self.clone()
        })
    }

    pub fn theta(&self) -> &DenseMatrix {
        &self.theta
    }

    pub fn grad(&self) -> &[f64] {
        &self.grad
    }

    pub fn noise_cov(&self) -> &DenseMatrix {
        &self.noise_cov
    }

    /// `Σ^{1/2}` from the clipped eigen-decomposition.
    pub fn cov_sqrt(&self) -> &DenseMatrix {
        &self.cov_sqrt
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn svd(&self) -> &SvdTriple {
        &self.svd
    }

    pub fn sigma1(&self) -> f64 {
        self.svd.sigma(0)
    }
}

/// `vec(u₁v₁ᵀ)`, the gradient of the spectral norm.
pub fn opnorm_jacobian(state: &LayerDynamicsState) -> Result<Vec<f64>, DynamicsError> {
    Ok(vec(&sv_jacobian(&state.svd, 1)?))
}

#[derive(Debug, Clone, PartialEq)]
pub struct DrivingForces {
    pub mu: f64,
    pub kappa: f64,
    pub lambda: Vec<f64>,
}

impl DrivingForces {
    pub fn lambda_norm(&self) -> f64 {
        norm2(&self.lambda)
    }
}

/// `μ = ⟨J, −g⟩/σ₁`, `κ = (η/2σ₁)⟨H, Σ⟩`, `λ = (√η/σ₁) Σ^{1/2} J`.
pub fn driving_forces(state: &LayerDynamicsState) -> Result<DrivingForces, DynamicsError> {
    let s1 = state.sigma1();
    let j = opnorm_jacobian(state)?;
    let h = sv_hessian(&state.svd, 1)?;
    let mu = -dot(&j, &state.grad) / s1;
    let kappa = state.eta / (2.0 * s1) * h.frobenius_dot(&state.noise_cov);
    let lambda = state
        .cov_sqrt
        .tr_matvec(&j)
        .into_iter()
        .map(|x| x * state.eta.sqrt() / s1)
        .collect();
    Ok(DrivingForces { mu, kappa, lambda })
}

/// Second-order change of `log σ₁` along `d_theta`:
/// `(⟨J, dθ⟩ + ½ dθᵀ H dθ)/σ₁`.
pub fn log_lip_increment(state: &LayerDynamicsState, d_theta: &DenseMatrix) -> Result<f64, DynamicsError> {
    if d_theta.shape() != state.theta.shape() {
        return Err(DynamicsError::InvalidArgument(format!(
            "step has shape {:?}, expected {:?}",
            d_theta.shape(),
            state.theta.shape()
        )));
    }
    let d = vec(d_theta);
    let j = opnorm_jacobian(state)?;
    let h = sv_hessian(&state.svd, 1)?;
    Ok((dot(&j, &d) + 0.5 * dot(&d, &h.matvec(&d))) / state.sigma1())
}

/// Layer stack with `Z = Σ log σ₁` and `K = e^Z`.
#[derive(Debug, Clone)]
pub struct NetworkDynamics {
    pub layers: Vec<LayerDynamicsState>,
    pub z: f64,
    pub k: f64,
}

impl NetworkDynamics {
    pub fn new(layers: Vec<LayerDynamicsState>) -> Result<Self, DynamicsError> {
        if layers.is_empty() {
            return Err(DynamicsError::InvalidArgument("network needs at least one layer".into()));
        }
        let z: f64 = layers.iter().map(|l| l.sigma1().ln()).sum();
        Ok(Self { layers, z, k: z.exp() })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AggregateForces {
    pub mu_z: f64,
    pub kappa_z: f64,
    pub lambda_z: f64,
}

pub fn aggregate(net: &NetworkDynamics) -> Result<AggregateForces, DynamicsError> {
    let mut out = AggregateForces {
        mu_z: 0.0,
        kappa_z: 0.0,
        lambda_z: 0.0,
    };
    let mut lam_sq = 0.0;
    for layer in &net.layers {
        let f = driving_forces(layer)?;
        out.mu_z += f.mu;
        out.kappa_z += f.kappa;
        lam_sq += f.lambda.iter().map(|x| x * x).sum::<f64>();
    }
    out.lambda_z = lam_sq.sqrt();
    Ok(out)
}
