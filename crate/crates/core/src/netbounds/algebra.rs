use super::NetError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LipOp {
    Add,
    Concat,
}

pub fn residual_bound(inner_lip: f64) -> f64 {
    1.0 + inner_lip
}

/// Bound for a sum or concatenation of maps with the given constants.
/// `p = f64::INFINITY` selects the max for concatenation.
pub fn lip_algebra(op: LipOp, lips: &[f64], p: f64) -> Result<f64, NetError> {
    if lips.iter().any(|l| !(*l >= 0.0)) {
        return Err(NetError::InvalidParams("Lipschitz constants must be nonnegative".into()));
    }
    if !(p >= 1.0) {
        return Err(NetError::InvalidParams(format!("norm exponent {p} < 1")));
    }
    Ok(match op {
        LipOp::Add => lips.iter().sum(),
        LipOp::Concat if p.is_infinite() => lips.iter().copied().fold(0.0, f64::max),
        LipOp::Concat => lips.iter().map(|l| l.powf(p)).sum::<f64>().powf(1.0 / p),
    })
}

/// Refined factor for a layer pair given top singular vectors `u1`, `v1`
/// and ratios `r_l`, `r_next` of the second to first singular value.
pub fn seqlip_pair_factor(u1: &[f64], v1: &[f64], r_l: f64, r_next: f64) -> Result<f64, NetError> {
    if u1.len() != v1.len() {
        return Err(NetError::LengthMismatch(u1.len(), v1.len()));
    }
    if !(0.0..=1.0).contains(&r_l) || !(0.0..=1.0).contains(&r_next) {
        return Err(NetError::InvalidParams("ratios must lie in [0, 1]".into()));
    }
    let (mut pos, mut neg) = (0.0, 0.0);
    for (a, b) in u1.iter().zip(v1) {
        let t = a * b;
        if t > 0.0 {
            pos += t;
        } else {
            neg -= t;
        }
    }
    let m = f64::max(pos, neg);
    let sq = (1.0 - r_l - r_next) * m * m + r_l + r_next + r_l * r_next;
    Ok(sq.max(0.0).sqrt())
}

/// ℓp robustness radius `margin / (2^{1/p} K)`.
pub fn certified_radius(margin: f64, k: f64, p: f64) -> Result<f64, NetError> {
    if !(margin >= 0.0) || !(k >= 0.0) || !(p >= 1.0) {
        return Err(NetError::InvalidParams(format!("margin {margin}, K {k}, p {p}")));
    }
    if k == 0.0 {
        return Err(NetError::ZeroLipschitz);
    }
    let scale = if p.is_infinite() { 1.0 } else { 2f64.powf(1.0 / p) };
    Ok(margin / (scale * k))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn algebra_examples() {
        assert_eq!(lip_algebra(LipOp::Add, &[1.0, 1.0], 2.0).unwrap(), 2.0);
        assert_eq!(lip_algebra(LipOp::Concat, &[3.0, 4.0], 2.0).unwrap(), 5.0);
        assert_eq!(lip_algebra(LipOp::Concat, &[3.0, 4.0], f64::INFINITY).unwrap(), 4.0);
        assert_eq!(residual_bound(0.0), 1.0);
        assert_eq!(residual_bound(0.5), 1.5);
    }

    #[test]
    fn seqlip_examples() {
        let f = seqlip_pair_factor(&[0.5, 0.3], &[1.0, -1.0], 0.0, 0.0).unwrap();
        assert_eq!(f, 0.5);
        let f = seqlip_pair_factor(&[0.25, 0.75], &[1.0, 1.0], 0.0, 0.0).unwrap();
        assert_eq!(f, 1.0);
        // r = 1 on both sides leaves 3 − m²
        let f = seqlip_pair_factor(&[0.5, 0.3], &[1.0, -1.0], 1.0, 1.0).unwrap();
        assert!((f - (3.0f64 - 0.25).sqrt()).abs() < 1e-15);
        assert!(matches!(seqlip_pair_factor(&[1.0], &[1.0, 2.0], 0.0, 0.0), Err(NetError::LengthMismatch(1, 2))));
    }

    #[test]
    fn radius_examples() {
        assert!((certified_radius(2f64.sqrt(), 1.0, 2.0).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(certified_radius(1.0, 2.0, f64::INFINITY).unwrap(), 0.5);
        assert_eq!(certified_radius(0.0, 3.0, 1.0).unwrap(), 0.0);
        assert!(matches!(certified_radius(1.0, 0.0, 2.0), Err(NetError::ZeroLipschitz)));
    }
}
