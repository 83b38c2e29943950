//! Single-symbol phase alignment.
//!
//! Each transmitter `j` sends a real Gaussian stream along direction
//! `alpha_j` (relative to its direct-link phase) at power `P_j`; receiver `k`
//! projects onto direction `gamma_k`. The coupling from `j` into `k` after
//! projection is `beta_kj = cos^2(alpha_j + theta_kj - theta_jj - gamma_k)`
//! and receiver `k` decodes at `ln(1 + P_k beta_kk / (sum_{j != k} P_j beta_kj + 1/2))`.

mod gradient;
mod search;

pub use gradient::{ssa_gradient, SsaGradient};
pub use search::{
    best_subset_exhaustive, direction_grid, optimize_ssa, subset_sum_rate, AscentOptions, SearchMode,
    SsaOptimum, ASCENT_MAX_USERS, EXHAUSTIVE_MAX_USERS, GRID_MAX_USERS,
};

use std::f64::consts::PI;

use serde::Serialize;

use crate::channel::{wrap_angle, ChannelRealization};
use crate::error::{Error, Result};
use crate::rate::{RateReport, REAL_NOISE_VARIANCE};

/// Powers and transmit/receive directions for every user.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SsaPoint {
    pub powers: Vec<f64>,
    pub tx_dirs: Vec<f64>,
    pub rx_dirs: Vec<f64>,
}

impl SsaPoint {
    pub fn new(powers: Vec<f64>, tx_dirs: Vec<f64>, rx_dirs: Vec<f64>) -> Result<Self> {
        let k = powers.len();
        for v in [&tx_dirs, &rx_dirs] {
            if v.len() != k {
                return Err(Error::DimensionMismatch {
                    expected: k,
                    found: v.len(),
                });
            }
        }
        check_powers(&powers)?;
        if let Some(&bad) = tx_dirs.iter().chain(&rx_dirs).find(|x| !(-PI..PI).contains(*x)) {
            return Err(Error::InvalidParameter {
                name: "direction",
                reason: format!("{bad} outside [-pi, pi)"),
            });
        }
        Ok(Self {
            powers,
            tx_dirs,
            rx_dirs,
        })
    }

    /// Full power, all directions zero.
    pub fn aligned(k: usize) -> Self {
        Self {
            powers: vec![1.0; k],
            tx_dirs: vec![0.0; k],
            rx_dirs: vec![0.0; k],
        }
    }

    /// Indicator powers of `subset`; directions wrapped into `[-π, π)`.
    pub fn for_subset(k: usize, subset: &[usize], tx_dirs: &[f64], rx_dirs: &[f64]) -> Self {
        let mut powers = vec![0.0; k];
        for &u in subset {
            powers[u] = 1.0;
        }
        Self {
            powers,
            tx_dirs: tx_dirs.iter().map(|&x| wrap_angle(x)).collect(),
            rx_dirs: rx_dirs.iter().map(|&x| wrap_angle(x)).collect(),
        }
    }

    pub fn k(&self) -> usize {
        self.powers.len()
    }
}

pub(crate) fn check_powers(powers: &[f64]) -> Result<()> {
    match powers.iter().position(|p| !(0.0..=1.0).contains(p)) {
        Some(index) => Err(Error::PowerOutOfRange {
            index,
            value: powers[index],
        }),
        None => Ok(()),
    }
}

/// Effective power couplings `beta_kj` in `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct BetaMatrix {
    k: usize,
    beta: Vec<f64>,
}

impl BetaMatrix {
    /// Coupling matrix from explicit row-major entries.
    pub fn from_matrix(k: usize, beta: Vec<f64>) -> Result<Self> {
        if beta.len() != k * k {
            return Err(Error::DimensionMismatch {
                expected: k * k,
                found: beta.len(),
            });
        }
        if let Some(&bad) = beta.iter().find(|x| !(0.0..=1.0).contains(*x)) {
            return Err(Error::InvalidParameter {
                name: "beta",
                reason: format!("{bad} outside [0, 1]"),
            });
        }
        Ok(Self { k, beta })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    #[inline]
    pub fn get(&self, k: usize, j: usize) -> f64 {
        self.beta[k * self.k + j]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.beta
    }

    fn check_len(&self, powers: &[f64]) -> Result<()> {
        if powers.len() != self.k {
            return Err(Error::DimensionMismatch {
                expected: self.k,
                found: powers.len(),
            });
        }
        check_powers(powers)
    }

    /// `sum_{j != k} P_j beta_kj`.
    #[inline]
    fn interference(&self, powers: &[f64], k: usize) -> f64 {
        let row = &self.beta[k * self.k..(k + 1) * self.k];
        row.iter()
            .zip(powers)
            .enumerate()
            .filter(|&(j, _)| j != k)
            .map(|(_, (b, p))| b * p)
            .sum()
    }

    /// Per-receiver SINR `P_k beta_kk / (interference + 1/2)`.
    fn sinr(&self, powers: &[f64], k: usize) -> f64 {
        powers[k] * self.get(k, k) / (self.interference(powers, k) + REAL_NOISE_VARIANCE)
    }
}

#[inline]
pub(crate) fn cos_sq(x: f64) -> f64 {
    let c = x.cos();
    c * c
}

/// `beta_kj = cos^2(alpha_j + theta_kj - theta_jj - gamma_k)`.
pub fn beta_matrix(ch: &ChannelRealization, point: &SsaPoint) -> Result<BetaMatrix> {
    let k = ch.k();
    if point.k() != k {
        return Err(Error::DimensionMismatch {
            expected: k,
            found: point.k(),
        });
    }
    let mut beta = vec![0.0; k * k];
    for r in 0..k {
        for c in 0..k {
            beta[r * k + c] = cos_sq(point.tx_dirs[c] + ch.relative_phase(r, c) - point.rx_dirs[r]);
        }
    }
    Ok(BetaMatrix { k, beta })
}

/// Sum rate of the strategy class at fixed couplings.
pub fn ssa_sum_rate(beta: &BetaMatrix, powers: &[f64]) -> Result<RateReport> {
    beta.check_len(powers)?;
    let per_user = (0..beta.k).map(|k| beta.sinr(powers, k).ln_1p()).collect();
    Ok(RateReport::new("ssa", per_user))
}

/// Linearized sum rate `sum_k P_k beta_kk / (sum_{j != k} P_j beta_kj + 1/2)`.
pub fn phi(beta: &BetaMatrix, powers: &[f64]) -> Result<f64> {
    beta.check_len(powers)?;
    Ok(phi_unchecked(beta, powers))
}

fn phi_unchecked(beta: &BetaMatrix, powers: &[f64]) -> f64 {
    (0..beta.k).map(|k| beta.sinr(powers, k)).sum()
}

/// Sweep strategy of [`extreme_point_reduce_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReduceMode {
    /// One pass over `k = 0..K`.
    #[default]
    SinglePass,
    /// Repeat passes until no coordinate changes.
    FixedPoint,
}

/// Moves every power to whichever endpoint of `[0, 1]` gives the larger
/// `phi`, one coordinate at a time (ties go to 1). `phi` is convex in each
/// coordinate separately, so each move cannot decrease it.
pub fn extreme_point_reduce(beta: &BetaMatrix, start: &[f64]) -> Result<Vec<f64>> {
    extreme_point_reduce_with(beta, start, ReduceMode::SinglePass)
}

pub fn extreme_point_reduce_with(beta: &BetaMatrix, start: &[f64], mode: ReduceMode) -> Result<Vec<f64>> {
    beta.check_len(start)?;
    let mut p = start.to_vec();
    loop {
        let mut changed = false;
        for k in 0..beta.k {
            let old = p[k];
            p[k] = 0.0;
            let off = phi_unchecked(beta, &p);
            p[k] = 1.0;
            let on = phi_unchecked(beta, &p);
            if off > on {
                p[k] = 0.0;
            }
            changed |= p[k] != old;
        }
        if mode == ReduceMode::SinglePass || !changed {
            return Ok(p);
        }
    }
}

/// A subset scheduled at full power together with its directions.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SubsetSolution {
    /// Scheduled users, ascending, zero-based.
    pub subset: Vec<usize>,
    pub point: SsaPoint,
    pub value: f64,
}

/// Lexicographic order on ascending index lists.
pub(crate) fn subset_precedes(a: &[usize], b: &[usize]) -> bool {
    a < b
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{normalize, sample_channel};
    use crate::seed::rng_from_seed;
    use approx::assert_abs_diff_eq;
    use rand::Rng;

    fn ones(k: usize) -> BetaMatrix {
        BetaMatrix::from_matrix(k, vec![1.0; k * k]).unwrap()
    }

    fn random_point(k: usize, rng: &mut impl Rng) -> SsaPoint {
        let dir = |rng: &mut dyn rand::RngCore| rng.gen_range(-PI..PI);
        SsaPoint::new(
            (0..k).map(|_| rng.gen::<f64>()).collect(),
            (0..k).map(|_| dir(rng)).collect(),
            (0..k).map(|_| dir(rng)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn aligned_directions_give_unit_direct_coupling() {
        let ch = normalize(&sample_channel(5, 1).unwrap());
        let b = beta_matrix(&ch, &SsaPoint::aligned(5)).unwrap();
        for k in 0..5 {
            assert_abs_diff_eq!(b.get(k, k), 1.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn quarter_turn_nulls_coupling() {
        let ch = ChannelRealization::from_phases(2, vec![0.0, 0.3, 0.0, 0.0]).unwrap();
        let point = SsaPoint::new(vec![1.0; 2], vec![0.0, PI / 2.0 - 0.3], vec![0.0, 0.0]).unwrap();
        let b = beta_matrix(&ch, &point).unwrap();
        assert_abs_diff_eq!(b.get(0, 1), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn beta_matches_definition() {
        let ch = sample_channel(3, 11).unwrap();
        let mut rng = rng_from_seed(4);
        let point = random_point(3, &mut rng);
        let b = beta_matrix(&ch, &point).unwrap();
        for k in 0..3 {
            for j in 0..3 {
                let phase = point.tx_dirs[j] + ch.theta(k, j) - ch.theta(j, j) - point.rx_dirs[k];
                let c = phase.cos();
                assert_abs_diff_eq!(b.get(k, j), c * c, epsilon = 1e-15);
            }
        }
    }

    #[test]
    fn beta_rejects_dimension_mismatch() {
        let ch = sample_channel(3, 0).unwrap();
        assert!(beta_matrix(&ch, &SsaPoint::aligned(2)).is_err());
    }

    #[test]
    fn sum_rate_examples() {
        let r = ssa_sum_rate(&ones(1), &[1.0]).unwrap();
        assert_abs_diff_eq!(r.sum_rate, 3f64.ln(), epsilon = 1e-15);
        assert_eq!(ssa_sum_rate(&ones(4), &[0.0; 4]).unwrap().sum_rate, 0.0);
        let two = ssa_sum_rate(&ones(2), &[1.0, 1.0]).unwrap();
        let hand = 2.0 * (1.0f64 + 1.0 / 1.5).ln();
        assert_abs_diff_eq!(two.sum_rate, hand, epsilon = 1e-15);
        assert_abs_diff_eq!(two.sum_rate, 1.021_651_247_531_981_4, epsilon = 1e-12);
        assert!(ssa_sum_rate(&ones(2), &[1.0, 1.5]).is_err());
        assert!(ssa_sum_rate(&ones(2), &[1.0]).is_err());
    }

    #[test]
    fn phi_examples() {
        assert_abs_diff_eq!(phi(&ones(1), &[1.0]).unwrap(), 2.0, epsilon = 1e-15);
        assert_eq!(phi(&ones(3), &[0.0; 3]).unwrap(), 0.0);
        assert!(phi(&ones(1), &[-0.5]).is_err());
    }

    #[test]
    fn linearization_sandwich() {
        let mut rng = rng_from_seed(8);
        for _ in 0..500 {
            let k = rng.gen_range(1..=10);
            let ch = sample_channel(k, rng.gen()).unwrap();
            let point = random_point(k, &mut rng);
            let b = beta_matrix(&ch, &point).unwrap();
            let rate = ssa_sum_rate(&b, &point.powers).unwrap();
            let lin = phi(&b, &point.powers).unwrap();
            assert!(rate.sum_rate <= lin + 1e-12);
            assert!(lin <= 2.0 * rate.sum_rate + 1e-12);
            for &r in &rate.per_user {
                assert!((0.0..=3f64.ln() + 1e-15).contains(&r));
            }
        }
    }

    #[test]
    fn reduction_single_user() {
        let b = BetaMatrix::from_matrix(1, vec![0.3]).unwrap();
        assert_eq!(extreme_point_reduce(&b, &[0.2]).unwrap(), vec![1.0]);
    }

    #[test]
    fn reduction_two_aligned_users() {
        // Enumerate all four binary vectors: phi = 0, 2, 2, 4/3.
        let b = ones(2);
        let mut best = f64::MIN;
        for bits in 0..4u32 {
            let p = [(bits & 1) as f64, (bits >> 1 & 1) as f64];
            best = best.max(phi(&b, &p).unwrap());
        }
        assert_abs_diff_eq!(best, 2.0, epsilon = 1e-15);
        let r = extreme_point_reduce(&b, &[0.5, 0.5]).unwrap();
        assert!([[1.0, 0.0], [0.0, 1.0], [1.0, 1.0]].iter().any(|c| c[..] == r[..]));
        assert_abs_diff_eq!(phi(&b, &r).unwrap(), best, epsilon = 1e-15);
    }

    #[test]
    fn reduction_never_decreases_phi() {
        let mut rng = rng_from_seed(21);
        for _ in 0..1000 {
            let k = rng.gen_range(1..=12);
            let ch = sample_channel(k, rng.gen()).unwrap();
            let point = random_point(k, &mut rng);
            let b = beta_matrix(&ch, &point).unwrap();
            let start = phi(&b, &point.powers).unwrap();
            for mode in [ReduceMode::SinglePass, ReduceMode::FixedPoint] {
                let r = extreme_point_reduce_with(&b, &point.powers, mode).unwrap();
                assert!(r.iter().all(|&x| x == 0.0 || x == 1.0));
                assert!(phi(&b, &r).unwrap() >= start - 1e-12);
            }
        }
    }

    #[test]
    fn fixed_point_reduction_is_idempotent() {
        let mut rng = rng_from_seed(22);
        for _ in 0..500 {
            let k = rng.gen_range(1..=12);
            let ch = sample_channel(k, rng.gen()).unwrap();
            let point = random_point(k, &mut rng);
            let b = beta_matrix(&ch, &point).unwrap();
            let once = extreme_point_reduce_with(&b, &point.powers, ReduceMode::FixedPoint).unwrap();
            let twice = extreme_point_reduce_with(&b, &once, ReduceMode::FixedPoint).unwrap();
            assert_eq!(once, twice);
        }
    }
}
