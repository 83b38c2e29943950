//! Per-link rate metrics and the rate report shared by every scheme.
//!
//! All rates are in nats per channel use.

use std::f64::consts::LN_2;

use serde::Serialize;

use crate::error::{Error, Result};

/// Noise variance of the projected (real) receiver noise.
pub const REAL_NOISE_VARIANCE: f64 = 0.5;

/// Per-user and total rates of one scheme on one realization.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RateReport {
    pub scheme: String,
    pub per_user: Vec<f64>,
    pub sum_rate: f64,
}

impl RateReport {
    /// Report whose total is the sum of `per_user`.
    pub fn new(scheme: impl Into<String>, per_user: Vec<f64>) -> Self {
        let sum_rate = per_user.iter().sum();
        Self {
            scheme: scheme.into(),
            per_user,
            sum_rate,
        }
    }

    /// Report with an exactly known total. The caller guarantees it agrees
    /// with the per-user entries up to rounding.
    pub(crate) fn with_sum(scheme: impl Into<String>, per_user: Vec<f64>, sum_rate: f64) -> Self {
        debug_assert!((per_user.iter().sum::<f64>() - sum_rate).abs() <= 1e-9 * sum_rate.max(1.0));
        Self {
            scheme: scheme.into(),
            per_user,
            sum_rate,
        }
    }

    pub fn k(&self) -> usize {
        self.per_user.len()
    }

    /// Sum rate converted to bits per channel use.
    pub fn sum_rate_bits(&self) -> f64 {
        self.sum_rate / LN_2
    }
}

fn check_nonneg(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() && value >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidRateArgument { name, value })
    }
}

/// Gaussian-codebook rate treating interference as noise on the real channel:
/// `ln(1 + S / (I + 1/2))`.
pub fn sinr_rate(signal_power: f64, interference_power: f64) -> Result<f64> {
    check_nonneg("signal_power", signal_power)?;
    check_nonneg("interference_power", interference_power)?;
    Ok((signal_power / (interference_power + REAL_NOISE_VARIANCE)).ln_1p())
}

/// Which per-link rate expression a scheme is scored with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RateMetric {
    /// Gaussian codebook, [`sinr_rate`].
    Sinr,
    /// Binary antipodal input, [`bpsk_rate`] with interference folded into the noise.
    Bpsk,
}

impl RateMetric {
    pub fn name(self) -> &'static str {
        match self {
            RateMetric::Sinr => "sinr",
            RateMetric::Bpsk => "bpsk",
        }
    }

    /// Rate of a real link with unit-gain signal power `signal_power` and
    /// Gaussian-treated interference `interference_power`.
    pub fn rate(self, signal_power: f64, interference_power: f64) -> Result<f64> {
        match self {
            RateMetric::Sinr => sinr_rate(signal_power, interference_power),
            RateMetric::Bpsk => {
                check_nonneg("interference_power", interference_power)?;
                bpsk_rate(signal_power, interference_power + REAL_NOISE_VARIANCE)
            }
        }
    }
}

impl std::str::FromStr for RateMetric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "sinr" => Ok(RateMetric::Sinr),
            "bpsk" => Ok(RateMetric::Bpsk),
            other => Err(Error::InvalidParameter {
                name: "metric",
                reason: format!("unknown metric `{other}` (expected sinr or bpsk)"),
            }),
        }
    }
}

const BPSK_Z_LIMIT: f64 = 10.0;
const BPSK_INTERVALS: usize = 4000;

/// Mutual information of equiprobable `±sqrt(signal_power)` through real
/// Gaussian noise of variance `noise_variance`, in nats.
///
/// Evaluates `ln 2 - E[softplus(-2ρ - 2 sqrt(ρ) Z)]`, `Z ~ N(0, 1)`, with
/// composite Simpson quadrature on `|z| <= 10`.
pub fn bpsk_rate(signal_power: f64, noise_variance: f64) -> Result<f64> {
    check_nonneg("signal_power", signal_power)?;
    if !(noise_variance.is_finite() && noise_variance > 0.0) {
        return Err(Error::InvalidRateArgument {
            name: "noise_variance",
            value: noise_variance,
        });
    }
    let rho = signal_power / noise_variance;
    if rho == 0.0 {
        return Ok(0.0);
    }
    let b = 2.0 * rho.sqrt();
    let integrand = |z: f64| gaussian_pdf(z) * softplus(-2.0 * rho - b * z);

    let h = 2.0 * BPSK_Z_LIMIT / BPSK_INTERVALS as f64;
    let mut acc = integrand(-BPSK_Z_LIMIT) + integrand(BPSK_Z_LIMIT);
    for i in 1..BPSK_INTERVALS {
        let z = -BPSK_Z_LIMIT + i as f64 * h;
        acc += if i % 2 == 1 { 4.0 } else { 2.0 } * integrand(z);
    }
    let loss = acc * h / 3.0;
    Ok((LN_2 - loss).clamp(0.0, LN_2))
}

#[inline]
fn gaussian_pdf(z: f64) -> f64 {
    (-0.5 * z * z).exp() / (2.0 * std::f64::consts::PI).sqrt()
}

/// `ln(1 + e^x)` without overflow.
#[inline]
pub(crate) fn softplus(x: f64) -> f64 {
    if x > 0.0 {
        x + (-x).exp().ln_1p()
    } else {
        x.exp().ln_1p()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_distr::{Distribution, StandardNormal};

    #[test]
    fn sinr_examples() {
        assert_abs_diff_eq!(sinr_rate(1.0, 0.0).unwrap(), 3f64.ln(), epsilon = 1e-15);
        assert_eq!(sinr_rate(0.0, 7.0).unwrap(), 0.0);
        assert_abs_diff_eq!(sinr_rate(1.0, 0.5).unwrap(), LN_2, epsilon = 1e-15);
    }

    #[test]
    fn sinr_rejects_bad_inputs() {
        assert!(sinr_rate(-1.0, 0.0).is_err());
        assert!(sinr_rate(1.0, -0.1).is_err());
        assert!(sinr_rate(f64::NAN, 0.0).is_err());
        assert!(sinr_rate(1.0, f64::INFINITY).is_err());
    }

    #[test]
    fn bpsk_limits() {
        assert_eq!(bpsk_rate(0.0, 1.0).unwrap(), 0.0);
        assert!((bpsk_rate(1e4, 1.0).unwrap() - LN_2).abs() < 1e-3);
        assert!(bpsk_rate(1.0, 0.0).is_err());
        assert!(bpsk_rate(1.0, -2.0).is_err());
    }

    #[test]
    fn bpsk_matches_monte_carlo() {
        // Independent estimator: average of ln 2 - ln(1 + exp(-2 y x / v)) over
        // simulated channel outputs y = x + n, x = +1, v = 1/2.
        let v: f64 = 0.5;
        let n = 10_000_000usize;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(77);
        let sigma = v.sqrt();
        let mut sum = 0.0;
        let mut sum_sq = 0.0;
        for _ in 0..n {
            let z: f64 = StandardNormal.sample(&mut rng);
            let y = 1.0 + sigma * z;
            let llr = 2.0 * y / v;
            let sample = LN_2 - (-llr).exp().ln_1p();
            sum += sample;
            sum_sq += sample * sample;
        }
        let mean = sum / n as f64;
        let var = sum_sq / n as f64 - mean * mean;
        let se = (var / n as f64).sqrt();
        let quad = bpsk_rate(1.0, v).unwrap();
        assert!((quad - mean).abs() < 3.0 * se, "quad {quad}, mc {mean} ± {se}");
    }

    #[test]
    fn report_sums_entries() {
        let r = RateReport::new("x", vec![0.25, 0.5, 0.125]);
        assert_eq!(r.sum_rate, 0.875);
        assert_abs_diff_eq!(r.sum_rate_bits(), 0.875 / LN_2);
    }

    proptest! {
        #[test]
        fn sinr_monotone(s in 0.0f64..10.0, ds in 1e-6f64..1.0, i in 0.0f64..10.0, di in 1e-6f64..1.0) {
            prop_assert!(sinr_rate(s + ds, i).unwrap() > sinr_rate(s, i).unwrap());
            if s > 0.0 {
                prop_assert!(sinr_rate(s, i + di).unwrap() < sinr_rate(s, i).unwrap());
            }
        }

        #[test]
        fn bpsk_below_gaussian_capacity(s in 1e-3f64..100.0, v in 1e-2f64..10.0) {
            let r = bpsk_rate(s, v).unwrap();
            prop_assert!(r >= 0.0);
            prop_assert!(r <= LN_2);
            prop_assert!(r <= 0.5 * (s / v).ln_1p() + 1e-12);
        }
    }
}
