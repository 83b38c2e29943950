//! Monte Carlo verifiers. Every trial draws from its own derived seed, so
//! results do not depend on the thread count.

use std::f64::consts::PI;

use rand::Rng;
use rayon::prelude::*;

use super::{
    alpha_bound, edge_probability, lemma1_color_bound, lemma3_tail_bound, lemma4_modulus, mean_and_se,
    BoundCheckResult,
};
use crate::alignment::{build_graph, greedy_color, max_independent_set_size, random_graph, EXACT_MIS_MAX};
use crate::channel::{sample_channel, ChannelRealization, StreamedGains};
use crate::error::{Error, Result};
use crate::seed::{derive_seed, rng_from_seed};
use crate::ssa::{beta_matrix, best_subset_exhaustive, ssa_gradient, ssa_sum_rate, SsaPoint, EXHAUSTIVE_MAX_USERS};

/// Thresholds `r` (nats) at which the tail bound is checked by default.
pub const LEMMA3_R_GRID: [f64; 4] = [8.0, 16.0, 32.0, 64.0];

/// Fraction of trials allowed to miss a "with high probability" bound.
const WHP_MISS_FRACTION: f64 = 0.05;

fn require_trials(trials: usize) -> Result<()> {
    if trials == 0 {
        Err(Error::InvalidParameter {
            name: "trials",
            reason: "at least one trial is required".into(),
        })
    } else {
        Ok(())
    }
}

fn require_users(k: usize) -> Result<()> {
    if k == 0 {
        Err(Error::ZeroUsers)
    } else {
        Ok(())
    }
}

fn random_directions(rng: &mut impl Rng, k: usize) -> Vec<f64> {
    (0..k).map(|_| rng.gen_range(-PI..PI)).collect()
}

/// Mean edge density of the interference graph over `trials` channels
/// against the closed-form edge probability (two-sided).
pub fn verify_edge_probability(k: usize, threshold_constant: f64, trials: usize, seed: u64) -> Result<BoundCheckResult> {
    require_trials(trials)?;
    require_users(k)?;
    let analytic = edge_probability(k as f64, threshold_constant)?;
    let densities = (0..trials)
        .map(|t| {
            let gains = StreamedGains::new(k, derive_seed(seed, &[t as u64]))?;
            Ok(build_graph(&gains, threshold_constant)?.edge_density())
        })
        .collect::<Result<Vec<_>>>()?;
    let (mean, se) = mean_and_se(&densities);
    Ok(BoundCheckResult::new("edge_probability", k, 0, None, trials, mean, analytic, se, true)
        .with_note(format!("c={threshold_constant}")))
}

/// Greedy color count at the given threshold against the color bound.
///
/// `empirical` is the fraction of trials above the bound and `analytic` the
/// allowed miss fraction, so the row passes when at least 95% of trials
/// respect the bound.
pub fn verify_lemma1(k: usize, threshold_constant: f64, trials: usize, seed: u64) -> Result<BoundCheckResult> {
    require_trials(trials)?;
    require_users(k)?;
    let bound = lemma1_color_bound(k as f64)?;
    if !bound.applicable {
        return Ok(
            BoundCheckResult::new("lemma1_colors", k, 0, None, 0, 0.0, bound.value, 0.0, false).inapplicable(format!(
                "bound inapplicable at K={k}: ln K <= 3 ln ln K or bound exceeds K"
            )),
        );
    }
    let colors = (0..trials)
        .map(|t| {
            let gains = StreamedGains::new(k, derive_seed(seed, &[t as u64]))?;
            let graph = build_graph(&gains, threshold_constant)?;
            Ok(greedy_color(&graph, None)?.num_colors)
        })
        .collect::<Result<Vec<_>>>()?;
    let misses = colors.iter().filter(|&&c| c as f64 > bound.value).count();
    let max = colors.iter().copied().max().unwrap_or(0);
    Ok(BoundCheckResult::new(
        "lemma1_colors",
        k,
        0,
        None,
        trials,
        misses as f64 / trials as f64,
        WHP_MISS_FRACTION,
        0.0,
        false,
    )
    .with_note(format!("c={threshold_constant}; max colors {max}; bound {:.6}", bound.value)))
}

/// Independence number of `G(K, p)` against `2 ln K / ln(1/(1-p))`.
///
/// Exact for `K <= 64`; above that only a lower bound on the independence
/// number is available, so a pass is weaker and is noted as such.
pub fn verify_alpha(k: usize, p: f64, trials: usize, seed: u64) -> Result<BoundCheckResult> {
    require_trials(trials)?;
    require_users(k)?;
    let bound = alpha_bound(k as f64, p)?;
    let sizes = (0..trials)
        .into_par_iter()
        .map(|t| {
            let graph = random_graph(k, p, derive_seed(seed, &[t as u64]))?;
            Ok(max_independent_set_size(&graph, EXACT_MIS_MAX))
        })
        .collect::<Result<Vec<_>>>()?;
    let misses = sizes.iter().filter(|s| s.size as f64 > bound).count();
    let exact = sizes.iter().all(|s| s.exact);
    let max = sizes.iter().map(|s| s.size).max().unwrap_or(0);
    let mut note = format!("p={p}; max independent set {max}; bound {bound:.6}");
    if !exact {
        note.push_str("; heuristic lower bounds only");
    }
    Ok(BoundCheckResult::new(
        "alpha_bound",
        k,
        0,
        None,
        trials,
        misses as f64 / trials as f64,
        WHP_MISS_FRACTION,
        0.0,
        false,
    )
    .with_note(note))
}

/// Sum rate at random continuous powers against twice the best binary
/// power vector at the same directions. Any violation fails the row.
pub fn verify_lemma2(instances: usize, max_k: usize, seed: u64) -> Result<BoundCheckResult> {
    require_trials(instances)?;
    if max_k == 0 || max_k > EXHAUSTIVE_MAX_USERS {
        return Err(Error::UserCapExceeded {
            what: "binary power enumeration",
            k: max_k,
            cap: EXHAUSTIVE_MAX_USERS,
        });
    }
    let outcomes = (0..instances)
        .into_par_iter()
        .map(|i| {
            let mut rng = rng_from_seed(derive_seed(seed, &[i as u64]));
            let k = rng.gen_range(1..=max_k);
            let ch = sample_channel(k, rng.gen())?;
            let tx = random_directions(&mut rng, k);
            let rx = random_directions(&mut rng, k);
            let powers: Vec<f64> = (0..k).map(|_| rng.gen_range(0.0..=1.0)).collect();
            let point = SsaPoint::new(powers, tx.clone(), rx.clone())?;
            let continuous = ssa_sum_rate(&beta_matrix(&ch, &point)?, &point.powers)?.sum_rate;
            let binary = best_subset_exhaustive(&ch, &tx, &rx)?.value;
            Ok((continuous, binary))
        })
        .collect::<Result<Vec<_>>>()?;
    let violations = outcomes.iter().filter(|(c, b)| *c > 2.0 * b).count();
    let worst = outcomes
        .iter()
        .filter(|(_, b)| *b > 0.0)
        .map(|(c, b)| c / b)
        .fold(0.0, f64::max);
    Ok(BoundCheckResult::new(
        "lemma2_binary_powers",
        max_k,
        0,
        None,
        instances,
        violations as f64,
        0.0,
        0.0,
        false,
    )
    .with_note(format!("violations counted; worst continuous/binary ratio {worst:.6} (limit 2)")))
}

/// Tail frequency of the all-on sum rate of `s` users over random channels
/// at one fixed random direction choice, for every `r` in `r_grid`.
pub fn verify_lemma3(s: usize, r_grid: &[f64], trials: usize, seed: u64) -> Result<Vec<BoundCheckResult>> {
    require_trials(trials)?;
    require_users(s)?;
    let mut rng = rng_from_seed(derive_seed(seed, &[u64::MAX]));
    let tx = random_directions(&mut rng, s);
    let rx = random_directions(&mut rng, s);
    let point = SsaPoint::new(vec![1.0; s], tx, rx)?;
    let rates = (0..trials)
        .into_par_iter()
        .map(|t| {
            let ch = sample_channel(s, derive_seed(seed, &[t as u64]))?;
            Ok(ssa_sum_rate(&beta_matrix(&ch, &point)?, &point.powers)?.sum_rate)
        })
        .collect::<Result<Vec<_>>>()?;
    let max_rate = rates.iter().copied().fold(0.0, f64::max);
    Ok(r_grid
        .iter()
        .map(|&r| {
            let freq = rates.iter().filter(|&&x| x > r).count() as f64 / trials as f64;
            let se = (freq * (1.0 - freq) / trials as f64).sqrt();
            let bound = lemma3_tail_bound(r, s);
            let mut note = format!("max sum rate {max_rate:.6}");
            if bound >= 1.0 {
                note.push_str("; vacuous (bound >= 1)");
            }
            BoundCheckResult::new("lemma3_tail", s, s, Some(r), trials, freq, bound, se, false).with_note(note)
        })
        .collect())
}

fn all_on_rate(ch: &ChannelRealization, point: &SsaPoint) -> f64 {
    ssa_sum_rate(&beta_matrix(ch, point).expect("dimensions agree"), &point.powers)
        .expect("valid powers")
        .sum_rate
}

/// Continuity of the all-on sum rate of `s` users under direction
/// perturbations of at most `1/(2 s^2)` per coordinate.
///
/// Returns four rows: the cap of 4 on `|ΔR|`; the local bound
/// `|ΔR| <= 4 s Σ|Δ| + 1e-6` (violation count); the closed-form gradient
/// against central differences (max error, limit 1e-4); and the gradient
/// component bound `4 s`. The gradient rows use the first
/// `min(pairs, gradient_points)` base points.
pub fn verify_lemma4(s: usize, pairs: usize, gradient_points: usize, seed: u64) -> Result<Vec<BoundCheckResult>> {
    require_trials(pairs)?;
    require_users(s)?;
    let modulus = lemma4_modulus(s);
    let radius = modulus.coordinate_radius;
    let grad_n = pairs.min(gradient_points);

    struct Pair {
        delta_rate: f64,
        local_violation: bool,
        fd_error: Option<f64>,
        grad_max: Option<f64>,
    }

    let outcomes = (0..pairs)
        .into_par_iter()
        .map(|i| {
            let mut rng = rng_from_seed(derive_seed(seed, &[i as u64]));
            let ch = sample_channel(s, rng.gen())?;
            let tx = random_directions(&mut rng, s);
            let rx = random_directions(&mut rng, s);
            let base = SsaPoint::new(vec![1.0; s], tx, rx)?;
            let mut moved = base.clone();
            let mut l1 = 0.0;
            for x in moved.tx_dirs.iter_mut().chain(moved.rx_dirs.iter_mut()) {
                let d = rng.gen_range(-radius..=radius);
                *x += d;
                l1 += d.abs();
            }
            let delta_rate = (all_on_rate(&ch, &moved) - all_on_rate(&ch, &base)).abs();
            let local_violation = delta_rate > 4.0 * s as f64 * l1 + 1e-6;

            let (fd_error, grad_max) = if i < grad_n {
                let grad = ssa_gradient(&ch, &base)?;
                let h = 1e-6;
                let mut err = 0.0f64;
                for m in 0..s {
                    for (which, analytic) in [(0, grad.d_alpha[m]), (1, grad.d_gamma[m])] {
                        let (mut plus, mut minus) = (base.clone(), base.clone());
                        let (p, q) = if which == 0 {
                            (&mut plus.tx_dirs[m], &mut minus.tx_dirs[m])
                        } else {
                            (&mut plus.rx_dirs[m], &mut minus.rx_dirs[m])
                        };
                        *p += h;
                        *q -= h;
                        let fd = (all_on_rate(&ch, &plus) - all_on_rate(&ch, &minus)) / (2.0 * h);
                        err = err.max((fd - analytic).abs());
                    }
                }
                (Some(err), Some(grad.max_abs()))
            } else {
                (None, None)
            };
            Ok(Pair {
                delta_rate,
                local_violation,
                fd_error,
                grad_max,
            })
        })
        .collect::<Result<Vec<Pair>>>()?;

    let max_delta = outcomes.iter().map(|o| o.delta_rate).fold(0.0, f64::max);
    let local_violations = outcomes.iter().filter(|o| o.local_violation).count();
    let fd_max = outcomes.iter().filter_map(|o| o.fd_error).fold(0.0, f64::max);
    let grad_max = outcomes.iter().filter_map(|o| o.grad_max).fold(0.0, f64::max);

    Ok(vec![
        BoundCheckResult::new(
            "lemma4_rate_change",
            s,
            s,
            None,
            pairs,
            max_delta,
            modulus.rate_change_cap,
            0.0,
            false,
        )
        .with_note(format!("radius {radius}")),
        BoundCheckResult::new("lemma4_local", s, s, None, pairs, local_violations as f64, 0.0, 0.0, false)
            .with_note("violations of |dR| <= 4 s sum|d| + 1e-6"),
        BoundCheckResult::new("lemma4_gradient_fd", s, s, None, grad_n, fd_max, 1e-4, 0.0, false)
            .with_note("max |closed form - central difference|, h = 1e-6"),
        BoundCheckResult::new("lemma4_gradient_bound", s, s, None, grad_n, grad_max, 4.0 * s as f64, 0.0, false)
            .with_note("max |gradient component|"),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_probability_small() {
        let r = verify_edge_probability(512, 0.5, 20, 1).unwrap();
        assert!(r.passed, "{r:?}");
        assert!(r.two_sided);
    }

    #[test]
    fn edge_probability_empty_regime() {
        let r = verify_edge_probability(100, PI, 3, 1).unwrap();
        assert_eq!(r.empirical, 0.0);
        assert_eq!(r.analytic, 0.0);
        assert!(r.passed);
    }

    #[test]
    fn lemma1_inapplicable_at_hundred() {
        let r = verify_lemma1(100, PI, 5, 0).unwrap();
        assert!(!r.applicable);
        assert!(r.passed);
        assert_eq!(r.trials, 0);
    }

    #[test]
    fn lemma1_empty_graph_regime() {
        // At K = 2^14 the threshold pi / sqrt(ln K) exceeds 1, so one color suffices.
        assert!(!verify_lemma1(4096, PI, 1, 4).unwrap().applicable);
        let r = verify_lemma1(1 << 14, PI, 2, 4).unwrap();
        assert!(r.applicable && r.passed, "{r:?}");
        assert!(r.note.contains("max colors 1;"));
    }

    #[test]
    fn alpha_exact_small() {
        let r = verify_alpha(30, 0.5, 20, 5).unwrap();
        assert!(r.passed, "{r:?}");
        assert!(!r.note.contains("heuristic"));
    }

    #[test]
    fn lemma2_small() {
        let r = verify_lemma2(50, 6, 2).unwrap();
        assert_eq!(r.empirical, 0.0);
        assert!(r.passed);
        assert!(verify_lemma2(5, 21, 0).is_err());
    }

    #[test]
    fn lemma3_rows_cover_grid() {
        let rows = verify_lemma3(4, &LEMMA3_R_GRID, 2000, 3).unwrap();
        assert_eq!(rows.len(), 4);
        assert!(rows.iter().all(|r| r.passed));
        assert!(rows[0].note.contains("vacuous"));
        assert!(rows[2].note.contains("vacuous"));
        assert!(!rows[3].note.contains("vacuous"));
        // Four users never exceed 4 ln 3 < 8.
        assert!(rows.iter().all(|r| r.empirical == 0.0));
    }

    #[test]
    fn lemma4_small() {
        let rows = verify_lemma4(3, 500, 100, 6).unwrap();
        assert_eq!(rows.len(), 4);
        for r in &rows {
            assert!(r.passed, "{r:?}");
        }
    }

    #[test]
    fn verifiers_are_deterministic() {
        assert_eq!(verify_lemma4(2, 50, 10, 1).unwrap(), verify_lemma4(2, 50, 10, 1).unwrap());
        assert_eq!(verify_lemma2(20, 5, 9).unwrap(), verify_lemma2(20, 5, 9).unwrap());
    }

    #[test]
    fn zero_trials_rejected() {
        assert!(verify_edge_probability(10, 1.0, 0, 0).is_err());
        assert!(verify_lemma3(3, &[1.0], 0, 0).is_err());
    }
}
