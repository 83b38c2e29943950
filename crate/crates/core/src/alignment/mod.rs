//! Phase alignment through scheduling.
//!
//! Users whose effective cross gains are all weak are grouped into
//! independent sets of the interference graph; the sets take turns
//! transmitting in a fixed round-robin cycle.

mod coloring;
mod graph;
mod mis;

pub use coloring::{greedy_color, random_order, Coloring};
pub use graph::{build_graph, interference_threshold, iter_ones, random_graph, BitMatrix, InterferenceGraph};
pub use mis::{max_independent_set_size, IndependentSetSize, EXACT_MIS_MAX};

use crate::channel::GainSource;
use crate::error::{Error, Result};
use crate::rate::{RateMetric, RateReport};

/// Default threshold constant `c` in `t = c / sqrt(ln K)`.
pub const DEFAULT_THRESHOLD_CONSTANT: f64 = std::f64::consts::PI;

/// Round-robin cycle over color classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Schedule {
    pub slots: Vec<Vec<usize>>,
    pub period: usize,
}

impl Schedule {
    /// Number of users covered by the schedule.
    pub fn k(&self) -> usize {
        self.slots.iter().map(Vec::len).sum()
    }

    fn check_partition(&self, k: usize) -> Result<()> {
        let mut seen = vec![false; k];
        let mut count = 0;
        for &u in self.slots.iter().flatten() {
            if u >= k || std::mem::replace(&mut seen[u], true) {
                return Err(Error::DimensionMismatch {
                    expected: k,
                    found: u + 1,
                });
            }
            count += 1;
        }
        if count != k || self.period != self.slots.len() {
            return Err(Error::DimensionMismatch {
                expected: k,
                found: count,
            });
        }
        Ok(())
    }
}

/// One slot per color class, in color order.
pub fn make_schedule(coloring: &Coloring) -> Schedule {
    let slots = coloring.classes();
    Schedule {
        period: slots.len(),
        slots,
    }
}

/// Interference power `sum_{j in slot, j != k} g_kj^2` seen by every user in
/// its own slot.
pub fn slot_interference<G: GainSource + ?Sized>(gains: &G, schedule: &Schedule) -> Result<Vec<f64>> {
    let k = gains.k();
    schedule.check_partition(k)?;
    let mut power = vec![0.0; k];
    for slot in &schedule.slots {
        for &u in slot {
            power[u] = slot
                .iter()
                .filter(|&&j| j != u)
                .map(|&j| {
                    let g = gains.gain(u, j);
                    g * g
                })
                .sum();
        }
    }
    Ok(power)
}

/// Rates of the round-robin phase-alignment scheme: each user transmits at
/// unit power in its slot, once every `period` slots.
pub fn phase_alignment_rates<G: GainSource + ?Sized>(
    gains: &G,
    schedule: &Schedule,
    metric: RateMetric,
) -> Result<RateReport> {
    let interference = slot_interference(gains, schedule)?;
    let share = 1.0 / schedule.period as f64;
    let per_user = interference
        .into_iter()
        .map(|i| metric.rate(1.0, i).map(|r| share * r))
        .collect::<Result<Vec<_>>>()?;
    Ok(RateReport::new("phase_align", per_user))
}

/// Everything produced by one run of the scheme.
#[derive(Debug, Clone)]
pub struct PhaseAlignment {
    pub graph: InterferenceGraph,
    pub coloring: Coloring,
    pub schedule: Schedule,
    pub report: RateReport,
}

/// Graph, coloring, schedule and rates in one call.
pub fn run_phase_alignment<G: GainSource + ?Sized>(
    gains: &G,
    threshold_constant: f64,
    order: Option<&[usize]>,
    metric: RateMetric,
) -> Result<PhaseAlignment> {
    let graph = build_graph(gains, threshold_constant)?;
    let coloring = greedy_color(&graph, order)?;
    let schedule = make_schedule(&coloring);
    let report = phase_alignment_rates(gains, &schedule, metric)?;
    Ok(PhaseAlignment {
        graph,
        coloring,
        schedule,
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::baselines::tdma_peak;
    use crate::channel::{EffectiveGains, StreamedGains};
    use approx::assert_abs_diff_eq;

    fn ln3() -> f64 {
        3f64.ln()
    }

    #[test]
    fn schedule_groups_classes() {
        let coloring = Coloring {
            colors: vec![0, 1, 0],
            num_colors: 2,
            order: vec![0, 1, 2],
        };
        let s = make_schedule(&coloring);
        assert_eq!(s.slots, vec![vec![0, 2], vec![1]]);
        assert_eq!(s.period, 2);
    }

    #[test]
    fn single_color_single_slot() {
        let g = InterferenceGraph::from_edges(6, &[]).unwrap();
        let s = make_schedule(&greedy_color(&g, None).unwrap());
        assert_eq!(s.slots, vec![(0..6).collect::<Vec<_>>()]);
    }

    #[test]
    fn complete_graph_is_tdma() {
        let edges: Vec<_> = (0..4).flat_map(|a| (a + 1..4).map(move |b| (a, b))).collect();
        let g = InterferenceGraph::from_edges(4, &edges).unwrap();
        let s = make_schedule(&greedy_color(&g, None).unwrap());
        assert_eq!(s.slots, vec![vec![0], vec![1], vec![2], vec![3]]);
        assert_eq!(s.period, 4);
    }

    #[test]
    fn single_user_gets_ln3() {
        let gains = EffectiveGains::from_matrix(1, vec![1.0]).unwrap();
        let s = Schedule { slots: vec![vec![0]], period: 1 };
        let r = phase_alignment_rates(&gains, &s, RateMetric::Sinr).unwrap();
        assert_abs_diff_eq!(r.sum_rate, ln3(), epsilon = 1e-15);
    }

    #[test]
    fn orthogonal_pair_shares_slot() {
        let gains = EffectiveGains::from_matrix(2, vec![1.0, 0.0, 0.0, 1.0]).unwrap();
        let s = Schedule { slots: vec![vec![0, 1]], period: 1 };
        let r = phase_alignment_rates(&gains, &s, RateMetric::Sinr).unwrap();
        assert_abs_diff_eq!(r.sum_rate, 2.0 * ln3(), epsilon = 1e-15);
    }

    #[test]
    fn aligned_pair_alternates() {
        let gains = EffectiveGains::from_matrix(2, vec![1.0; 4]).unwrap();
        let s = Schedule { slots: vec![vec![0], vec![1]], period: 2 };
        let r = phase_alignment_rates(&gains, &s, RateMetric::Sinr).unwrap();
        assert_abs_diff_eq!(r.per_user[0], 0.5 * ln3(), epsilon = 1e-15);
        assert_abs_diff_eq!(r.sum_rate, ln3(), epsilon = 1e-15);
    }

    #[test]
    fn mismatched_schedule_rejected() {
        let gains = EffectiveGains::from_matrix(2, vec![1.0; 4]).unwrap();
        let missing = Schedule { slots: vec![vec![0]], period: 1 };
        let repeated = Schedule { slots: vec![vec![0, 1], vec![1]], period: 2 };
        let out_of_range = Schedule { slots: vec![vec![0, 2]], period: 1 };
        for s in [missing, repeated, out_of_range] {
            assert!(phase_alignment_rates(&gains, &s, RateMetric::Sinr).is_err());
        }
    }

    #[test]
    fn bpsk_metric_folds_interference_into_noise() {
        let gains = EffectiveGains::from_matrix(2, vec![1.0, 0.5, 0.5, 1.0]).unwrap();
        let s = Schedule { slots: vec![vec![0, 1]], period: 1 };
        let r = phase_alignment_rates(&gains, &s, RateMetric::Bpsk).unwrap();
        let expect = crate::rate::bpsk_rate(1.0, 0.25 + 0.5).unwrap();
        assert_abs_diff_eq!(r.per_user[0], expect, epsilon = 1e-15);
    }

    #[test]
    fn slot_interference_respects_threshold() {
        for seed in 0..20 {
            let k = 64 + 32 * seed as usize;
            let gains = StreamedGains::new(k, seed).unwrap();
            let run = run_phase_alignment(&gains, 0.45, None, RateMetric::Sinr).unwrap();
            let t = run.graph.threshold();
            let interference = slot_interference(&gains, &run.schedule).unwrap();
            for slot in &run.schedule.slots {
                for &u in slot {
                    assert!(interference[u] <= t * t * (slot.len() - 1) as f64 + 1e-12);
                    for &v in slot {
                        assert!(u == v || !run.graph.has_edge(u, v));
                    }
                }
            }
            assert!(run.report.per_user.iter().all(|&r| r > 0.0));
            assert_eq!(run.schedule.k(), k);
        }
    }

    #[test]
    fn complete_graph_reproduces_tdma_time_sharing() {
        // Every pair aligned: all users collide, so each gets its own slot.
        let k = 5;
        let gains = EffectiveGains::from_matrix(k, vec![1.0; k * k]).unwrap();
        let run = run_phase_alignment(&gains, 0.1, None, RateMetric::Sinr).unwrap();
        assert_eq!(run.schedule.period, k);
        let tdma = tdma_peak(k).unwrap();
        // Same 1/K time sharing; the projected real channel has SNR 2
        // (ln 3 per slot) where the complex baseline has SNR 1 (ln 2).
        for (a, b) in run.report.per_user.iter().zip(&tdma.per_user) {
            assert_abs_diff_eq!(*a, b * ln3() / std::f64::consts::LN_2, epsilon = 1e-15);
        }
    }
}
