//! Reference schemes on the complex channel with unit noise variance.

use std::f64::consts::LN_2;

use crate::channel::ChannelRealization;
use crate::error::{Error, Result};
use crate::rate::RateReport;

/// Orthogonal access at unit peak power: `ln 2` total for every `K`.
pub fn tdma_peak(k: usize) -> Result<RateReport> {
    if k == 0 {
        return Err(Error::ZeroUsers);
    }
    let share = LN_2 / k as f64;
    Ok(RateReport::with_sum("tdma_peak", vec![share; k], LN_2))
}

/// Orthogonal access with bursts at power `K` (unit average power):
/// `ln(1 + K)` total.
pub fn tdma_bursty(k: usize) -> Result<RateReport> {
    if k == 0 {
        return Err(Error::ZeroUsers);
    }
    let kf = k as f64;
    let sum = kf.ln_1p();
    Ok(RateReport::with_sum("tdma_bursty", vec![sum / kf; k], sum))
}

/// All users on at unit power, interference treated as noise. Unit-modulus
/// gains make the result independent of the phases:
/// `K ln(1 + 1/K)` total.
pub fn tin_all_on(ch: &ChannelRealization) -> RateReport {
    tin_all_on_users(ch.k()).expect("realizations have at least one user")
}

/// [`tin_all_on`] for `k` users without a realization.
pub fn tin_all_on_users(k: usize) -> Result<RateReport> {
    if k == 0 {
        return Err(Error::ZeroUsers);
    }
    let kf = k as f64;
    let per_user = (1.0 / kf).ln_1p();
    Ok(RateReport::with_sum("tin", vec![per_user; k], kf * per_user))
}
