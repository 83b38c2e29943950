//! Closed-form gradient of the sum rate in the directions.

use serde::Serialize;

use super::{check_powers, cos_sq, SsaPoint};
use crate::channel::ChannelRealization;
use crate::error::{Error, Result};
use crate::rate::REAL_NOISE_VARIANCE;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SsaGradient {
    pub users: usize,
    /// Partial derivatives in the transmit directions.
    pub d_alpha: Vec<f64>,
    /// Partial derivatives in the receive directions.
    pub d_gamma: Vec<f64>,
}

impl SsaGradient {
    pub fn max_abs(&self) -> f64 {
        self.d_alpha.iter().chain(&self.d_gamma).fold(0.0, |m, x| m.max(x.abs()))
    }
}

/// Gradient of `sum_k R_k` at `point` with the powers held fixed.
///
/// With `phi_kj = alpha_j + theta_kj - theta_jj - gamma_k`,
/// `d beta_kj / d phi_kj = -sin(2 phi_kj)`. Writing `A_k` for the total
/// received power plus noise and `B_k = A_k - P_k beta_kk`,
/// `dR_k/d beta_kk = P_k / A_k` and `dR_k/d beta_kj = P_j (1/A_k - 1/B_k)`.
pub fn ssa_gradient(ch: &ChannelRealization, point: &SsaPoint) -> Result<SsaGradient> {
    let k = ch.k();
    if point.k() != k {
        return Err(Error::DimensionMismatch {
            expected: k,
            found: point.k(),
        });
    }
    check_powers(&point.powers)?;
    let p = &point.powers;
    let phase = |r: usize, c: usize| point.tx_dirs[c] + ch.relative_phase(r, c) - point.rx_dirs[r];

    let mut d_alpha = vec![0.0; k];
    let mut d_gamma = vec![0.0; k];
    for r in 0..k {
        let total: f64 = (0..k).map(|c| p[c] * cos_sq(phase(r, c))).sum::<f64>() + REAL_NOISE_VARIANCE;
        let without_own = total - p[r] * cos_sq(phase(r, r));
        for c in 0..k {
            let sensitivity = if c == r {
                p[r] / total
            } else {
                p[c] * (1.0 / total - 1.0 / without_own)
            };
            if sensitivity == 0.0 {
                continue;
            }
            let slope = -(2.0 * phase(r, c)).sin();
            d_alpha[c] += sensitivity * slope;
            d_gamma[r] -= sensitivity * slope;
        }
    }
    Ok(SsaGradient {
        users: k,
        d_alpha,
        d_gamma,
    })
}
