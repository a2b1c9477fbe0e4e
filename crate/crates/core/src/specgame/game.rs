use std::path::Path;

use rand::seq::SliceRandom;
use rayon::prelude::*;

use crate::matcore::{format_f64, seeded_rng};

use super::GameError;

/// Largest player count accepted by [`shapley_exact`].
pub const MAX_EXACT_PLAYERS: usize = 16;

/// Characteristic function over `m` players, indexed by coalition bitmask.
#[derive(Debug, Clone, PartialEq)]
pub struct CoalitionGame {
    m: usize,
    values: Vec<f64>,
}

impl CoalitionGame {
    pub fn new(m: usize, values: Vec<f64>) -> Result<Self, GameError> {
        if m == 0 || m > 30 {
            return Err(GameError::InvalidArgument(format!("player count {m} outside 1..=30")));
        }
        if values.len() != 1 << m {
            return Err(GameError::IncompleteTable {
                expected: 1 << m,
                found: values.len(),
            });
        }
        Ok(Self { m, values })
    }

    pub fn from_fn(m: usize, v: impl Fn(u32) -> f64) -> Result<Self, GameError> {
        Self::new(m, (0..1u32 << m).map(v).collect())
    }

    pub fn players(&self) -> usize {
        self.m
    }

    pub fn value(&self, mask: u32) -> f64 {
        self.values[mask as usize]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn full_mask(&self) -> u32 {
        ((1u64 << self.m) - 1) as u32
    }
}

fn factorials(m: usize) -> Vec<f64> {
    let mut f = vec![1.0; m + 1];
    for i in 1..=m {
        f[i] = f[i - 1] * i as f64;
    }
    f
}

/// Exact Shapley values by summing weighted marginals over all coalitions.
/// Integer-valued games give results exact up to one final division by `M!`.
pub fn shapley_exact(g: &CoalitionGame) -> Result<Vec<f64>, GameError> {
    let m = g.m;
    if m > MAX_EXACT_PLAYERS {
        return Err(GameError::PlayerCountTooLarge {
            m,
            max: MAX_EXACT_PLAYERS,
        });
    }
    let fact = factorials(m);
    let base = g.value(0);
    let shifted = |mask: u32| g.value(mask) - base;
    let psi = (0..m)
        .map(|i| {
            let bit = 1u32 << i;
            let mut acc = 0.0;
            for s in 0..(1u32 << m) {
                if s & bit == 0 {
                    let size = s.count_ones() as usize;
                    acc += fact[size] * fact[m - 1 - size] * (shifted(s | bit) - shifted(s));
                }
            }
            acc / fact[m]
        })
        .collect();
    Ok(psi)
}

/// Average of marginal contributions over all `M!` orderings.
pub fn shapley_permutation_bruteforce(g: &CoalitionGame) -> Result<Vec<f64>, GameError> {
    let m = g.m;
    if m > 9 {
        return Err(GameError::PlayerCountTooLarge { m, max: 9 });
    }
    let mut perm: Vec<usize> = (0..m).collect();
    let mut acc = vec![0.0; m];
    let mut count = 0.0;
    permute(&mut perm, 0, &mut |order| {
        let mut mask = 0u32;
        for &p in order {
            let next = mask | (1 << p);
            acc[p] += g.value(next) - g.value(mask);
            mask = next;
        }
        count += 1.0;
    });
    Ok(acc.into_iter().map(|a| a / count).collect())
}

fn permute(v: &mut [usize], k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == v.len() {
        visit(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permute(v, k + 1, visit);
        v.swap(k, i);
    }
}

/// Coalition value callback.
pub type CoalitionFn<'a> = dyn Fn(u32) -> Result<f64, String> + Sync + 'a;

#[derive(Debug, Clone, PartialEq)]
pub struct ShapleyEstimate {
    pub psi: Vec<f64>,
    /// `2^{M−1} (max_i Var(Δv_i)/K)^{1/2}`.
    pub err_bound: f64,
    /// Per-player standard error of the mean marginal.
    pub std_errors: Vec<f64>,
}

/// Permutation-sampling Shapley estimate; permutation `p` is drawn from
/// stream `p` of `seed`.
pub fn shapley_mc(g_fn: &CoalitionFn<'_>, m: usize, n_perms: usize, seed: u64) -> Result<ShapleyEstimate, GameError> {
    if n_perms == 0 || m == 0 || m > 30 {
        return Err(GameError::InvalidArgument(format!("m = {m}, n_perms = {n_perms}")));
    }
    let empty = g_fn(0).map_err(GameError::CallbackFailure)?;
    let marginals: Vec<Vec<f64>> = (0..n_perms)
        .into_par_iter()
        .map(|p| {
            let mut rng = seeded_rng(seed);
            rng.set_stream(p as u64);
            let mut order: Vec<usize> = (0..m).collect();
            order.shuffle(&mut rng);
            let mut out = vec![0.0; m];
            let (mut mask, mut prev) = (0u32, empty);
            for &i in &order {
                mask |= 1 << i;
                let v = g_fn(mask).map_err(GameError::CallbackFailure)?;
                out[i] = v - prev;
                prev = v;
            }
            Ok(out)
        })
        .collect::<Result<_, GameError>>()?;
    let k = n_perms as f64;
    let mut psi = vec![0.0; m];
    for row in &marginals {
        psi.iter_mut().zip(row).for_each(|(a, b)| *a += b);
    }
    psi.iter_mut().for_each(|a| *a /= k);
    let var: Vec<f64> = (0..m)
        .map(|i| {
            if n_perms < 2 {
                return 0.0;
            }
            marginals.iter().map(|r| (r[i] - psi[i]).powi(2)).sum::<f64>() / (k - 1.0)
        })
        .collect();
    let max_var = var.iter().copied().fold(0.0, f64::max);
    Ok(ShapleyEstimate {
        err_bound: 2f64.powi(m as i32 - 1) * (max_var / k).sqrt(),
        std_errors: var.iter().map(|v| (v / k).sqrt()).collect(),
        psi,
    })
}

/// `|(β̄ᵀΨ̄ − η)/(1 − η)|` with `Ψ̄ = ψ/‖ψ‖₁`, `β̄ = β/‖β‖₂` and
/// `η = ‖β‖₁/(M‖β‖₂)`. `beta = None` means uniform weights.
pub fn importance_score(psi: &[f64], beta: Option<&[f64]>) -> Result<f64, GameError> {
    let m = psi.len();
    let uniform = vec![1.0; m];
    let beta = beta.unwrap_or(&uniform);
    if beta.len() != m {
        return Err(GameError::InvalidArgument(format!("{} weights for {m} players", beta.len())));
    }
    if let Some(i) = beta.iter().position(|b| !(*b >= 0.0)) {
        return Err(GameError::InvalidArgument(format!("weight {i} is negative")));
    }
    let b1: f64 = beta.iter().sum();
    let b2 = beta.iter().map(|b| b * b).sum::<f64>().sqrt();
    if b2 == 0.0 {
        return Err(GameError::DegenerateWeights);
    }
    if let Some((index, &value)) = psi.iter().enumerate().find(|(_, p)| **p < 0.0) {
        return Err(GameError::NegativeShapley { index, value });
    }
    let p1: f64 = psi.iter().sum();
    if p1 == 0.0 {
        return Err(GameError::InvalidArgument("Shapley values are all zero".into()));
    }
    let eta = b1 / (m as f64 * b2);
    if m == 1 {
        return Ok(0.0);
    }
    let proj: f64 = beta.iter().zip(psi).map(|(b, p)| (b / b2) * (p / p1)).sum();
    let s = ((proj - eta) / (1.0 - eta)).abs();
    let s = if (s - 1.0).abs() <= 1e-12 { 1.0 } else if s <= 1e-12 { 0.0 } else { s };
    Ok(s.clamp(0.0, 1.0))
}

/// Game table CSV: `mask,value` rows; `#` lines and a non-numeric header are skipped.
pub fn parse_game_csv(text: &str) -> Result<CoalitionGame, GameError> {
    let mut entries = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split(',').map(str::trim);
        let (Some(a), Some(b), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(GameError::Parse {
                line: lineno + 1,
                message: "expected `mask,value`".into(),
            });
        };
        match (a.parse::<u32>(), b.parse::<f64>()) {
            (Ok(mask), Ok(v)) => entries.push((mask, v)),
            _ if entries.is_empty() && a.parse::<f64>().is_err() => continue,
            _ => {
                return Err(GameError::Parse {
                    line: lineno + 1,
                    message: format!("bad row {line:?}"),
                })
            }
        }
    }
    let n = entries.len();
    if n == 0 || !n.is_power_of_two() {
        return Err(GameError::IncompleteTable {
            expected: n.next_power_of_two().max(2),
            found: n,
        });
    }
    let m = n.trailing_zeros() as usize;
    let mut values = vec![f64::NAN; n];
    for (mask, v) in entries {
        let slot = values.get_mut(mask as usize).ok_or_else(|| GameError::Parse {
            line: 0,
            message: format!("mask {mask} out of range for {m} players"),
        })?;
        if !slot.is_nan() {
            return Err(GameError::Parse {
                line: 0,
                message: format!("mask {mask} listed twice"),
            });
        }
        *slot = v;
    }
    CoalitionGame::new(m, values)
}

pub fn read_game_csv(path: impl AsRef<Path>) -> Result<CoalitionGame, GameError> {
    let text = std::fs::read_to_string(path.as_ref()).map_err(|e| GameError::Io(e.to_string()))?;
    parse_game_csv(&text)
}

pub fn shapley_to_csv(psi: &[f64], score: Option<f64>) -> String {
    let mut out = String::from("player,psi\n");
    for (i, p) in psi.iter().enumerate() {
        out.push_str(&format!("{i},{}\n", format_f64(*p)));
    }
    if let Some(s) = score {
        out.push_str(&format!("# score={}\n", format_f64(s)));
    }
    out
}
