//! Simulation of scheduling-based phase alignment on the `K`-user
//! phase-fading interference channel.
//!
//! Every link has unit magnitude and a uniformly random phase. The
//! [`alignment`] module builds the interference graph, colors it greedily and
//! serves the color classes round robin; [`baselines`] holds the reference
//! schemes; [`ssa`] searches over single-symbol phase-alignment strategies
//! (powers plus transmit and receive directions); [`bounds`] evaluates the
//! analytic bounds and checks them by Monte Carlo; [`experiments`] runs
//! seeded sweeps and writes CSV.
//!
//! All rates are in nats per channel use.

pub mod alignment;
pub mod baselines;
pub mod bounds;
pub mod channel;
pub mod error;
pub mod experiments;
pub mod rate;
pub mod seed;
pub mod ssa;

pub use alignment::{
    build_graph, greedy_color, make_schedule, max_independent_set_size, phase_alignment_rates, run_phase_alignment,
    Coloring, IndependentSetSize, InterferenceGraph, PhaseAlignment, Schedule,
};
pub use channel::{effective_gains, normalize, sample_channel, ChannelRealization, EffectiveGains, GainSource, StreamedGains};
pub use error::{Error, Result};
pub use rate::{bpsk_rate, sinr_rate, RateMetric, RateReport};
pub use ssa::{BetaMatrix, SsaPoint, SubsetSolution};
