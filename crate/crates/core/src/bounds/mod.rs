//! Closed-form bounds on the interference graph and on single-symbol phase
//! alignment, plus Monte Carlo checks of each.
//!
//! Evaluators take the user count as `f64` so that non-integer `K` (for
//! example `K = e^20`) can be evaluated directly.

mod verify;

pub use verify::{
    verify_alpha, verify_edge_probability, verify_lemma1, verify_lemma2, verify_lemma3, verify_lemma4,
    LEMMA3_R_GRID,
};

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};

/// Constant in the converse envelope `C ln K + 4`.
pub const CONVERSE_CONSTANT: f64 = 192.0;

fn check_k(k: f64) -> Result<f64> {
    if k.is_finite() && k >= 1.0 {
        Ok(k.ln())
    } else {
        Err(Error::InvalidParameter {
            name: "k",
            reason: format!("user count must be finite and >= 1, got {k}"),
        })
    }
}

/// Exact edge probability of the interference graph.
///
/// `|cos U|` with `U` uniform has `P(|cos U| <= t) = (2/π) arcsin(t)`, and
/// the two cross gains of a pair are independent, so
/// `1 - p = ((2/π) arcsin(min(1, t)))^2` with `t = c / sqrt(ln K)`.
/// For `K <= 2` the threshold is infinite and `p = 0`, matching the graph
/// builder.
pub fn edge_probability(k: f64, threshold_constant: f64) -> Result<f64> {
    if !(threshold_constant.is_finite() && threshold_constant > 0.0) {
        return Err(Error::InvalidThresholdConstant(threshold_constant));
    }
    let ln_k = check_k(k)?;
    if k <= 2.0 {
        return Ok(0.0);
    }
    let t = threshold_constant / ln_k.sqrt();
    let quiet = 2.0 / PI * t.min(1.0).asin();
    Ok(1.0 - quiet * quiet)
}

/// The bracket `[1 - 16 / ln K, 1 - 1 / ln K]` on the edge probability at `c = π`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EdgeProbabilityBracket {
    pub lower: f64,
    pub upper: f64,
    /// Set when `ln K <= 16`, where the lower end is not positive.
    pub lower_vacuous: bool,
}

impl EdgeProbabilityBracket {
    pub fn contains(&self, p: f64) -> bool {
        p >= self.lower && p <= self.upper
    }
}

pub fn edge_probability_bracket(k: f64) -> Result<EdgeProbabilityBracket> {
    let ln_k = check_k(k)?;
    Ok(EdgeProbabilityBracket {
        lower: 1.0 - 16.0 / ln_k,
        upper: 1.0 - 1.0 / ln_k,
        lower_vacuous: ln_k <= 16.0,
    })
}

/// Value of a bound together with whether it says anything at this `K`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ColorBound {
    pub value: f64,
    pub applicable: bool,
}

/// `K ln ln K / (ln K - 3 ln ln K) + 1`, the greedy color count bound.
///
/// Flagged inapplicable when `ln ln K <= 0`, when the denominator is not
/// positive, or when the value exceeds `K` (trivially true then).
pub fn lemma1_color_bound(k: f64) -> Result<ColorBound> {
    let ln_k = check_k(k)?;
    let lnln = ln_k.ln();
    let denom = ln_k - 3.0 * lnln;
    if !(lnln > 0.0 && denom > 0.0) {
        return Ok(ColorBound {
            value: f64::INFINITY,
            applicable: false,
        });
    }
    let value = k * lnln / denom + 1.0;
    Ok(ColorBound {
        value,
        applicable: value <= k,
    })
}

/// `2 ln K / ln(1 / (1 - p))`, the independence-number bound for `G(K, p)`.
pub fn alpha_bound(k: f64, p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::InvalidProbability(p));
    }
    let ln_k = check_k(k)?;
    Ok(2.0 * ln_k / -(-p).ln_1p())
}

/// `exp(-(r/32 - 1) s)`; at least 1 (vacuous) whenever `r <= 32`.
pub fn lemma3_tail_bound(r: f64, s: usize) -> f64 {
    (-(r / 32.0 - 1.0) * s as f64).exp()
}

/// Perturbation radius and the sum-rate change it can cause.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Lemma4Modulus {
    pub coordinate_radius: f64,
    pub rate_change_cap: f64,
}

pub fn lemma4_modulus(s: usize) -> Lemma4Modulus {
    let s = s.max(1) as f64;
    Lemma4Modulus {
        coordinate_radius: 1.0 / (2.0 * s * s),
        rate_change_cap: 4.0,
    }
}

/// Achievability `ln K / ln ln K` and converse `192 ln K + 4` envelopes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Envelopes {
    pub achievability: f64,
    pub converse: f64,
}

pub fn scaling_envelopes(k: f64) -> Result<Envelopes> {
    let ln_k = check_k(k)?;
    Ok(Envelopes {
        achievability: ln_k / ln_k.ln(),
        converse: CONVERSE_CONSTANT * ln_k + 4.0,
    })
}

/// Outcome of one empirical check of an analytic bound.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundCheckResult {
    pub bound_name: String,
    pub k: usize,
    pub s: usize,
    /// Threshold argument where the bound has one (tail checks).
    pub r: Option<f64>,
    pub trials: usize,
    pub empirical: f64,
    pub analytic: f64,
    pub std_error: f64,
    pub two_sided: bool,
    pub passed: bool,
    /// `false` when the bound says nothing at these parameters.
    pub applicable: bool,
    pub note: String,
}

impl BoundCheckResult {
    /// Builds a result and decides `passed`: `empirical <= analytic + 3 se`
    /// for one-sided checks, `|empirical - analytic| <= 3 se` otherwise.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        bound_name: impl Into<String>,
        k: usize,
        s: usize,
        r: Option<f64>,
        trials: usize,
        empirical: f64,
        analytic: f64,
        std_error: f64,
        two_sided: bool,
    ) -> Self {
        let slack = 3.0 * std_error;
        let passed = if two_sided {
            (empirical - analytic).abs() <= slack
        } else {
            empirical <= analytic + slack
        };
        Self {
            bound_name: bound_name.into(),
            k,
            s,
            r,
            trials,
            empirical,
            analytic,
            std_error,
            two_sided,
            passed,
            applicable: true,
            note: String::new(),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = note.into();
        self
    }

    /// Marks the bound as saying nothing here; such a row always passes.
    pub fn inapplicable(mut self, note: impl Into<String>) -> Self {
        self.applicable = false;
        self.passed = true;
        self.note = note.into();
        self
    }
}

/// Mean and standard error of the mean (sample standard deviation / sqrt n).
pub(crate) fn mean_and_se(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}
