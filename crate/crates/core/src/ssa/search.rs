//! Maximizing the sum rate over subsets and directions.

use std::f64::consts::PI;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{beta_matrix, cos_sq, extreme_point_reduce, subset_precedes, BetaMatrix, SsaPoint, SubsetSolution};
use crate::channel::{wrap_angle, ChannelRealization};
use crate::error::{Error, Result};
use crate::rate::REAL_NOISE_VARIANCE;
use crate::seed::{derive_seed, rng_from_seed};

/// Largest `K` for exhaustive subset enumeration (`2^K` subsets).
pub const EXHAUSTIVE_MAX_USERS: usize = 20;
/// Largest `K` for the gridded direction search.
pub const GRID_MAX_USERS: usize = 3;
/// Largest `K` for coordinate ascent.
pub const ASCENT_MAX_USERS: usize = 64;

const GOLDEN_TOLERANCE: f64 = 1e-9;

/// Sum rate with the users of `subset` at full power and everyone else silent.
pub fn subset_sum_rate(beta: &BetaMatrix, subset: &[usize]) -> f64 {
    subset
        .iter()
        .map(|&k| {
            let interference: f64 = subset.iter().filter(|&&j| j != k).map(|&j| beta.get(k, j)).sum();
            (beta.get(k, k) / (interference + REAL_NOISE_VARIANCE)).ln_1p()
        })
        .sum()
}

fn mask_members(mask: u64) -> Vec<usize> {
    (0..64).filter(|b| mask >> b & 1 == 1).collect()
}

/// `(value, subset)` ordering: larger value wins, then the lexicographically
/// smaller subset.
fn beats(value: f64, subset: &[usize], best_value: f64, best_subset: &[usize]) -> bool {
    value > best_value || (value == best_value && subset_precedes(subset, best_subset))
}

/// Best subset for fixed directions, over all `2^K` subsets.
pub fn best_subset_exhaustive(ch: &ChannelRealization, tx_dirs: &[f64], rx_dirs: &[f64]) -> Result<SubsetSolution> {
    let k = ch.k();
    if k > EXHAUSTIVE_MAX_USERS {
        return Err(Error::UserCapExceeded {
            what: "exhaustive subset search",
            k,
            cap: EXHAUSTIVE_MAX_USERS,
        });
    }
    for v in [tx_dirs, rx_dirs] {
        if v.len() != k {
            return Err(Error::DimensionMismatch {
                expected: k,
                found: v.len(),
            });
        }
    }
    let point = SsaPoint::for_subset(k, &(0..k).collect::<Vec<_>>(), tx_dirs, rx_dirs);
    let beta = beta_matrix(ch, &point)?;

    const CHUNK: u64 = 1 << 12;
    let total = 1u64 << k;
    let (value, subset) = (0..total.div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| {
            let mut best = (f64::NEG_INFINITY, Vec::new());
            for mask in c * CHUNK..((c + 1) * CHUNK).min(total) {
                let members = mask_members(mask);
                let v = subset_sum_rate(&beta, &members);
                if beats(v, &members, best.0, &best.1) {
                    best = (v, members);
                }
            }
            best
        })
        .reduce(
            || (f64::NEG_INFINITY, Vec::new()),
            |a, b| if beats(b.0, &b.1, a.0, &a.1) { b } else { a },
        );

    Ok(SubsetSolution {
        point: SsaPoint::for_subset(k, &subset, tx_dirs, rx_dirs),
        subset,
        value,
    })
}

/// Per-coordinate direction alphabet `{n / s^2 : |n| < π s^2 + 1/2}`.
pub fn direction_grid(subset_size: usize) -> Vec<f64> {
    let s2 = (subset_size.max(1) * subset_size.max(1)) as f64;
    let n_max = grid_half_width(subset_size.max(1));
    (-n_max..=n_max).map(|n| n as f64 / s2).collect()
}

fn grid_half_width(s: usize) -> i64 {
    let s2 = (s * s) as f64;
    // Largest integer strictly below π s^2 + 1/2, which is never an integer.
    (PI * s2 + 0.5).floor() as i64
}

/// Which optimizer [`optimize_ssa`] runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchMode {
    /// Exact maximum over subsets and the gridded directions; `K <= 3`.
    GridExhaustive,
    /// Multi-start cyclic coordinate ascent; `K <= 64`.
    CoordinateAscent,
}

impl std::str::FromStr for SearchMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "grid" | "grid_exhaustive" | "grid-exhaustive" => Ok(SearchMode::GridExhaustive),
            "ascent" | "coordinate_ascent" | "coordinate-ascent" => Ok(SearchMode::CoordinateAscent),
            other => Err(Error::InvalidParameter {
                name: "mode",
                reason: format!("unknown mode `{other}` (expected grid or ascent)"),
            }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AscentOptions {
    pub restarts: usize,
    pub seed: u64,
    /// A cycle improving the objective by less than this ends a run.
    pub tolerance: f64,
    pub max_cycles: usize,
    /// Coarse samples per coordinate before golden-section refinement.
    pub scan_points: usize,
}

impl AscentOptions {
    pub fn new(restarts: usize, seed: u64) -> Self {
        Self {
            restarts,
            seed,
            tolerance: 1e-9,
            max_cycles: 1000,
            scan_points: 24,
        }
    }
}

/// Result of [`optimize_ssa`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SsaOptimum {
    pub mode: SearchMode,
    pub solution: SubsetSolution,
    /// Ascent cycles of the winning run; direction tuples scored by the grid.
    pub iterations: usize,
    /// Restart index of the winning ascent run.
    pub restart: Option<usize>,
    /// Objective after every cycle of the winning ascent run.
    pub trace: Vec<f64>,
}

/// Maximizes the sum rate over binary powers and directions.
pub fn optimize_ssa(ch: &ChannelRealization, mode: SearchMode, options: &AscentOptions) -> Result<SsaOptimum> {
    let k = ch.k();
    match mode {
        SearchMode::GridExhaustive => {
            if k > GRID_MAX_USERS {
                return Err(Error::UserCapExceeded {
                    what: "grid search",
                    k,
                    cap: GRID_MAX_USERS,
                });
            }
            Ok(grid_search(ch))
        }
        SearchMode::CoordinateAscent => {
            if k > ASCENT_MAX_USERS {
                return Err(Error::UserCapExceeded {
                    what: "coordinate ascent",
                    k,
                    cap: ASCENT_MAX_USERS,
                });
            }
            if options.restarts == 0 {
                return Err(Error::InvalidParameter {
                    name: "restarts",
                    reason: "at least one restart is required".into(),
                });
            }
            coordinate_ascent(ch, options)
        }
    }
}

fn finish(ch: &ChannelRealization, subset: Vec<usize>, tx: &[f64], rx: &[f64]) -> SubsetSolution {
    let k = ch.k();
    let mut tx_s = vec![0.0; k];
    let mut rx_s = vec![0.0; k];
    for &u in &subset {
        tx_s[u] = tx[u];
        rx_s[u] = rx[u];
    }
    let point = SsaPoint::for_subset(k, &subset, &tx_s, &rx_s);
    let beta = beta_matrix(ch, &point).expect("dimensions agree");
    let value = subset_sum_rate(&beta, &subset);
    SubsetSolution { subset, point, value }
}

fn grid_search(ch: &ChannelRealization) -> SsaOptimum {
    let k = ch.k();
    let mut best_value = 0.0;
    let mut best_subset: Vec<usize> = Vec::new();
    let mut best_tx = vec![0.0; k];
    let mut best_rx = vec![0.0; k];
    let mut evaluated = 0usize;

    for mask in 1u64..1 << k {
        let users = mask_members(mask);
        let s = users.len();
        let s2 = (s * s) as f64;
        let half = grid_half_width(s);
        let g = (2 * half + 1) as usize;
        // table[a][b][m] = cos^2((m - 2 half) / s^2 + theta_ab - theta_bb),
        // indexed by the grid-index difference of alpha_b and gamma_a.
        let span = 4 * half as usize + 1;
        let mut table = vec![0.0; s * s * span];
        for (ai, &a) in users.iter().enumerate() {
            for (bi, &b) in users.iter().enumerate() {
                let rel = if a == b { 0.0 } else { ch.relative_phase(a, b) };
                for m in 0..span {
                    table[(ai * s + bi) * span + m] = cos_sq((m as i64 - 2 * half) as f64 / s2 + rel);
                }
            }
        }

        let mut alpha_idx = vec![0usize; s];
        let mut gamma_idx = vec![0usize; s];
        let mut mask_best = f64::NEG_INFINITY;
        let mut mask_alpha = alpha_idx.clone();
        let mut mask_gamma = gamma_idx.clone();
        loop {
            let mut total = 0.0;
            for ri in 0..s {
                let mut best_r = f64::NEG_INFINITY;
                for gi in 0..g {
                    let coupling = |ti: usize| table[(ri * s + ti) * span + alpha_idx[ti] + 2 * half as usize - gi];
                    let interference: f64 = (0..s).filter(|&ti| ti != ri).map(coupling).sum();
                    let r = (coupling(ri) / (interference + REAL_NOISE_VARIANCE)).ln_1p();
                    if r > best_r {
                        best_r = r;
                        gamma_idx[ri] = gi;
                    }
                }
                total += best_r;
            }
            evaluated += 1;
            if total > mask_best {
                mask_best = total;
                mask_alpha.copy_from_slice(&alpha_idx);
                mask_gamma.copy_from_slice(&gamma_idx);
            }
            // Odometer over alpha indices.
            let mut pos = 0;
            while pos < s {
                alpha_idx[pos] += 1;
                if alpha_idx[pos] < g {
                    break;
                }
                alpha_idx[pos] = 0;
                pos += 1;
            }
            if pos == s {
                break;
            }
        }

        if beats(mask_best, &users, best_value, &best_subset) {
            best_value = mask_best;
            best_tx = vec![0.0; k];
            best_rx = vec![0.0; k];
            for (i, &u) in users.iter().enumerate() {
                best_tx[u] = (mask_alpha[i] as i64 - half) as f64 / s2;
                best_rx[u] = (mask_gamma[i] as i64 - half) as f64 / s2;
            }
            best_subset = users;
        }
    }

    SsaOptimum {
        mode: SearchMode::GridExhaustive,
        solution: finish(ch, best_subset, &best_tx, &best_rx),
        iterations: evaluated,
        restart: None,
        trace: Vec::new(),
    }
}

/// Maximizes a `π`-periodic function of one angle near `x0`: coarse scan of
/// one period, then golden-section refinement around the best sample.
fn maximize_periodic(f: impl Fn(f64) -> f64, x0: f64, scan_points: usize) -> (f64, f64) {
    let step = PI / scan_points as f64;
    let mut best = (x0, f(x0));
    for i in 0..scan_points {
        let x = x0 - PI / 2.0 + i as f64 * step;
        let fx = f(x);
        if fx > best.1 {
            best = (x, fx);
        }
    }
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let (mut lo, mut hi) = (best.0 - step, best.0 + step);
    let mut c = hi - INV_PHI * (hi - lo);
    let mut d = lo + INV_PHI * (hi - lo);
    let (mut fc, mut fd) = (f(c), f(d));
    while hi - lo > GOLDEN_TOLERANCE {
        if fc > fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - INV_PHI * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + INV_PHI * (hi - lo);
            fd = f(d);
        }
    }
    let mid = 0.5 * (lo + hi);
    let fm = f(mid);
    if fm > best.1 {
        (mid, fm)
    } else {
        best
    }
}

struct AscentRun {
    value: f64,
    subset: Vec<usize>,
    tx: Vec<f64>,
    rx: Vec<f64>,
    cycles: usize,
    trace: Vec<f64>,
}

/// Mutable state of one ascent run. `beta` is kept in sync with the
/// directions for every user, active or not.
struct Ascent<'a> {
    ch: &'a ChannelRealization,
    k: usize,
    tx: Vec<f64>,
    rx: Vec<f64>,
    active: Vec<bool>,
    beta: Vec<f64>,
}

impl<'a> Ascent<'a> {
    fn new(ch: &'a ChannelRealization, tx: Vec<f64>, rx: Vec<f64>, active: Vec<bool>) -> Self {
        let k = ch.k();
        let mut state = Self {
            ch,
            k,
            tx,
            rx,
            active,
            beta: vec![0.0; k * k],
        };
        for r in 0..k {
            state.refresh_row(r);
        }
        state
    }

    #[inline]
    fn coupling(&self, r: usize, c: usize, tx_c: f64, rx_r: f64) -> f64 {
        cos_sq(tx_c + self.ch.relative_phase(r, c) - rx_r)
    }

    fn refresh_row(&mut self, r: usize) {
        for c in 0..self.k {
            self.beta[r * self.k + c] = self.coupling(r, c, self.tx[c], self.rx[r]);
        }
    }

    fn refresh_col(&mut self, c: usize) {
        for r in 0..self.k {
            self.beta[r * self.k + c] = self.coupling(r, c, self.tx[c], self.rx[r]);
        }
    }

    fn interference(&self, r: usize) -> f64 {
        (0..self.k)
            .filter(|&j| j != r && self.active[j])
            .map(|j| self.beta[r * self.k + j])
            .sum()
    }

    fn value(&self) -> f64 {
        (0..self.k)
            .filter(|&r| self.active[r])
            .map(|r| (self.beta[r * self.k + r] / (self.interference(r) + REAL_NOISE_VARIANCE)).ln_1p())
            .sum()
    }

    fn subset(&self) -> Vec<usize> {
        (0..self.k).filter(|&u| self.active[u]).collect()
    }

    /// Line search over `tx[j]`; keeps the move only if the objective rises.
    fn step_tx(&mut self, j: usize, current: f64, scan: usize) -> f64 {
        let interf: Vec<f64> = (0..self.k).map(|r| self.interference(r)).collect();
        let objective = |x: f64| -> f64 {
            (0..self.k)
                .filter(|&r| self.active[r])
                .map(|r| {
                    if r == j {
                        (cos_sq(x - self.rx[j]) / (interf[j] + REAL_NOISE_VARIANCE)).ln_1p()
                    } else {
                        let i = interf[r] - self.beta[r * self.k + j] + self.coupling(r, j, x, self.rx[r]);
                        (self.beta[r * self.k + r] / (i + REAL_NOISE_VARIANCE)).ln_1p()
                    }
                })
                .sum()
        };
        let (x, _) = maximize_periodic(objective, self.tx[j], scan);
        let old = self.tx[j];
        self.tx[j] = wrap_angle(x);
        self.refresh_col(j);
        let new = self.value();
        if new > current {
            new
        } else {
            self.tx[j] = old;
            self.refresh_col(j);
            current
        }
    }

    /// Line search over `rx[r]`; only receiver `r`'s rate depends on it.
    fn step_rx(&mut self, r: usize, current: f64, scan: usize) -> f64 {
        let objective = |y: f64| -> f64 {
            let signal = self.coupling(r, r, self.tx[r], y);
            let i: f64 = (0..self.k)
                .filter(|&j| j != r && self.active[j])
                .map(|j| self.coupling(r, j, self.tx[j], y))
                .sum();
            (signal / (i + REAL_NOISE_VARIANCE)).ln_1p()
        };
        let (y, _) = maximize_periodic(objective, self.rx[r], scan);
        let old = self.rx[r];
        self.rx[r] = wrap_angle(y);
        self.refresh_row(r);
        let new = self.value();
        if new > current {
            new
        } else {
            self.rx[r] = old;
            self.refresh_row(r);
            current
        }
    }

    /// Replaces the active set by the linearized reduction when that helps.
    fn step_reduce(&mut self, current: f64) -> f64 {
        let beta = BetaMatrix {
            k: self.k,
            beta: self.beta.clone(),
        };
        let powers: Vec<f64> = self.active.iter().map(|&a| if a { 1.0 } else { 0.0 }).collect();
        let reduced = extreme_point_reduce(&beta, &powers).expect("binary powers are valid");
        let old = std::mem::replace(&mut self.active, reduced.iter().map(|&p| p == 1.0).collect());
        let new = self.value();
        if new > current {
            new
        } else {
            self.active = old;
            current
        }
    }

    /// Tries switching each user on or off in turn.
    fn step_flips(&mut self, mut current: f64) -> f64 {
        for u in 0..self.k {
            if !self.active[u] {
                // An idle user's receive direction is free; align it first.
                self.rx[u] = self.tx[u];
                self.refresh_row(u);
            }
            self.active[u] = !self.active[u];
            let new = self.value();
            if new > current {
                current = new;
            } else {
                self.active[u] = !self.active[u];
            }
        }
        current
    }

    fn run(mut self, options: &AscentOptions) -> AscentRun {
        let mut value = self.value();
        let mut trace = vec![value];
        let mut cycles = 0;
        while cycles < options.max_cycles {
            let before = value;
            for u in 0..self.k {
                if self.active[u] {
                    value = self.step_tx(u, value, options.scan_points);
                }
            }
            for u in 0..self.k {
                if self.active[u] {
                    value = self.step_rx(u, value, options.scan_points);
                }
            }
            value = self.step_reduce(value);
            value = self.step_flips(value);
            cycles += 1;
            trace.push(value);
            if value - before < options.tolerance {
                break;
            }
        }
        AscentRun {
            value,
            subset: self.subset(),
            tx: self.tx,
            rx: self.rx,
            cycles,
            trace,
        }
    }
}

fn coordinate_ascent(ch: &ChannelRealization, options: &AscentOptions) -> Result<SsaOptimum> {
    let k = ch.k();
    let runs: Vec<(usize, AscentRun)> = (0..options.restarts)
        .into_par_iter()
        .map(|restart| {
            let (tx, rx, active) = if restart == 0 {
                let zeros = vec![0.0; k];
                let active = if k <= EXHAUSTIVE_MAX_USERS {
                    let best = best_subset_exhaustive(ch, &zeros, &zeros).expect("within cap");
                    let mut a = vec![false; k];
                    best.subset.iter().for_each(|&u| a[u] = true);
                    a
                } else {
                    vec![true; k]
                };
                (zeros.clone(), zeros, active)
            } else {
                let mut rng = rng_from_seed(derive_seed(options.seed, &[restart as u64]));
                let tx = (0..k).map(|_| rng.gen_range(-PI..PI)).collect();
                let rx = (0..k).map(|_| rng.gen_range(-PI..PI)).collect();
                let active = (0..k).map(|_| rng.gen_bool(0.5)).collect();
                (tx, rx, active)
            };
            (restart, Ascent::new(ch, tx, rx, active).run(options))
        })
        .collect();

    let (restart, best) = runs
        .into_iter()
        .reduce(|a, b| {
            // Earlier restarts win exact ties.
            if beats(b.1.value, &b.1.subset, a.1.value, &a.1.subset) {
                b
            } else {
                a
            }
        })
        .expect("at least one restart");

    Ok(SsaOptimum {
        mode: SearchMode::CoordinateAscent,
        solution: finish(ch, best.subset, &best.tx, &best.rx),
        iterations: best.cycles,
        restart: Some(restart),
        trace: best.trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::sample_channel;
    use crate::ssa::{ssa_sum_rate, SsaPoint};
    use approx::assert_abs_diff_eq;

    fn ln3() -> f64 {
        3f64.ln()
    }

    #[test]
    fn grid_sizes() {
        assert_eq!(direction_grid(1), vec![-3.0, -2.0, -1.0, 0.0, 1.0, 2.0, 3.0]);
        let g2 = direction_grid(2);
        assert_eq!(g2.len(), 27);
        assert_eq!(g2[0], -13.0 / 4.0);
        assert_eq!(g2[1] - g2[0], 0.25);
        for s in 1..=8 {
            let g = direction_grid(s);
            let s2 = (s * s) as f64;
            assert!(g.len() as f64 <= 2.0 * PI * s2 + 2.0);
            for &x in &g {
                assert!(x > -PI - 0.5 / s2 && x < PI + 0.5 / s2);
            }
            // Every angle in [-π, π) is within half a spacing of a grid point.
            for i in 0..1000 {
                let x = -PI + i as f64 * (2.0 * PI / 1000.0);
                let d = g.iter().map(|&y| (x - y).abs()).fold(f64::MAX, f64::min);
                assert!(d <= 0.5 / s2 + 1e-12);
            }
        }
    }

    fn channel_with_phases(k: usize, theta: Vec<f64>) -> ChannelRealization {
        ChannelRealization::from_phases(k, theta).unwrap()
    }

    #[test]
    fn exhaustive_single_user() {
        let ch = sample_channel(1, 3).unwrap();
        let sol = best_subset_exhaustive(&ch, &[0.0], &[0.0]).unwrap();
        assert_eq!(sol.subset, vec![0]);
        assert_abs_diff_eq!(sol.value, ln3(), epsilon = 1e-15);
    }

    #[test]
    fn exhaustive_orthogonal_pair() {
        // Relative phases of π/2 null both cross couplings at zero directions.
        let ch = channel_with_phases(2, vec![0.0, PI / 2.0, PI / 2.0, 0.0]);
        let sol = best_subset_exhaustive(&ch, &[0.0; 2], &[0.0; 2]).unwrap();
        assert_eq!(sol.subset, vec![0, 1]);
        assert_abs_diff_eq!(sol.value, 2.0 * ln3(), epsilon = 1e-12);
    }

    #[test]
    fn exhaustive_aligned_pair_prefers_single_user() {
        let ch = channel_with_phases(2, vec![0.0; 4]);
        let sol = best_subset_exhaustive(&ch, &[0.0; 2], &[0.0; 2]).unwrap();
        // ln 3 = 1.0986 beats 2 ln(5/3) = 1.0217; {0} precedes {1}.
        assert_eq!(sol.subset, vec![0]);
        assert_abs_diff_eq!(sol.value, ln3(), epsilon = 1e-15);
        assert_eq!(sol.point.powers, vec![1.0, 0.0]);
    }

    #[test]
    fn exhaustive_matches_direct_enumeration() {
        let ch = sample_channel(9, 77).unwrap();
        let tx: Vec<f64> = (0..9).map(|i| 0.3 * i as f64 - 1.0).collect();
        let rx: Vec<f64> = (0..9).map(|i| 0.2 - 0.25 * i as f64).collect();
        let sol = best_subset_exhaustive(&ch, &tx, &rx).unwrap();
        let mut best = 0.0f64;
        for mask in 0u32..1 << 9 {
            let p: Vec<f64> = (0..9).map(|b| (mask >> b & 1) as f64).collect();
            let point = SsaPoint::new(p.clone(), tx.clone(), rx.clone()).unwrap();
            let beta = beta_matrix(&ch, &point).unwrap();
            best = best.max(ssa_sum_rate(&beta, &p).unwrap().sum_rate);
        }
        assert_abs_diff_eq!(sol.value, best, epsilon = 1e-12);
    }

    #[test]
    fn exhaustive_cap() {
        let ch = sample_channel(21, 0).unwrap();
        assert!(matches!(
            best_subset_exhaustive(&ch, &[0.0; 21], &[0.0; 21]),
            Err(Error::UserCapExceeded { .. })
        ));
    }

    #[test]
    fn single_user_both_modes() {
        let ch = sample_channel(1, 12).unwrap();
        let opts = AscentOptions::new(4, 1);
        for mode in [SearchMode::GridExhaustive, SearchMode::CoordinateAscent] {
            let opt = optimize_ssa(&ch, mode, &opts).unwrap();
            assert_abs_diff_eq!(opt.solution.value, ln3(), epsilon = 1e-12);
            assert_eq!(opt.solution.subset, vec![0]);
        }
    }

    #[test]
    fn mode_caps() {
        let opts = AscentOptions::new(2, 0);
        let ch4 = sample_channel(4, 0).unwrap();
        assert!(optimize_ssa(&ch4, SearchMode::GridExhaustive, &opts).is_err());
        let ch65 = sample_channel(65, 0).unwrap();
        assert!(optimize_ssa(&ch65, SearchMode::CoordinateAscent, &opts).is_err());
        assert!(optimize_ssa(&ch4, SearchMode::CoordinateAscent, &AscentOptions::new(0, 0)).is_err());
    }

    #[test]
    fn ascent_dominates_grid_and_its_start() {
        for seed in 0..10 {
            let ch = sample_channel(2, seed).unwrap();
            let grid = optimize_ssa(&ch, SearchMode::GridExhaustive, &AscentOptions::new(1, 0)).unwrap();
            let ascent = optimize_ssa(&ch, SearchMode::CoordinateAscent, &AscentOptions::new(16, seed)).unwrap();
            assert!(ascent.solution.value >= grid.solution.value - 1e-6, "seed {seed}");
            let zero = best_subset_exhaustive(&ch, &[0.0; 2], &[0.0; 2]).unwrap();
            assert!(ascent.solution.value >= zero.value);
        }
    }

    #[test]
    fn ascent_trace_is_monotone() {
        for (k, seed) in [(6, 1), (12, 2), (30, 3)] {
            let ch = sample_channel(k, seed).unwrap();
            let opt = optimize_ssa(&ch, SearchMode::CoordinateAscent, &AscentOptions::new(4, seed)).unwrap();
            assert!(opt.trace.windows(2).all(|w| w[1] >= w[0]));
            assert_abs_diff_eq!(*opt.trace.last().unwrap(), opt.solution.value, epsilon = 1e-9);
            assert!(opt.solution.value <= opt.solution.subset.len() as f64 * ln3() + 1e-12);
        }
    }

    #[test]
    fn ascent_is_deterministic() {
        let ch = sample_channel(10, 5).unwrap();
        let a = optimize_ssa(&ch, SearchMode::CoordinateAscent, &AscentOptions::new(6, 9)).unwrap();
        let b = optimize_ssa(&ch, SearchMode::CoordinateAscent, &AscentOptions::new(6, 9)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn solutions_are_consistent() {
        let ch = sample_channel(3, 4).unwrap();
        for mode in [SearchMode::GridExhaustive, SearchMode::CoordinateAscent] {
            let opt = optimize_ssa(&ch, mode, &AscentOptions::new(4, 2)).unwrap();
            let sol = &opt.solution;
            let point = SsaPoint::new(sol.point.powers.clone(), sol.point.tx_dirs.clone(), sol.point.rx_dirs.clone());
            assert!(point.is_ok());
            for u in 0..3 {
                assert_eq!(sol.point.powers[u] == 1.0, sol.subset.contains(&u));
            }
            let beta = beta_matrix(&ch, &sol.point).unwrap();
            let direct = ssa_sum_rate(&beta, &sol.point.powers).unwrap().sum_rate;
            assert_abs_diff_eq!(direct, sol.value, epsilon = 1e-12);
        }
    }

    #[test]
    fn grid_within_modulus_of_random_probe() {
        for seed in 0..10 {
            let ch = sample_channel(2, 100 + seed).unwrap();
            let grid = optimize_ssa(&ch, SearchMode::GridExhaustive, &AscentOptions::new(1, 0)).unwrap();
            let mut rng = rng_from_seed(seed);
            let mut probe = 0.0f64;
            for _ in 0..1_000_000 {
                let p: Vec<f64> = (0..2).map(|_| if rng.gen_bool(0.5) { 1.0 } else { 0.0 }).collect();
                let tx: Vec<f64> = (0..2).map(|_| rng.gen_range(-PI..PI)).collect();
                let rx: Vec<f64> = (0..2).map(|_| rng.gen_range(-PI..PI)).collect();
                let point = SsaPoint { powers: p, tx_dirs: tx, rx_dirs: rx };
                let beta = beta_matrix(&ch, &point).unwrap();
                probe = probe.max(ssa_sum_rate(&beta, &point.powers).unwrap().sum_rate);
            }
            assert!(grid.solution.value >= probe - 4.0);
        }
    }
}
