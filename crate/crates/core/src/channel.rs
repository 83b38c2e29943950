//! Phase-fading channel realizations and the effective real channel.
//!
//! Every link gain has unit magnitude; a realization is the `K x K` matrix
//! of phases `theta[k][j]` (receiver `k`, transmitter `j`). Transmitting
//! along `exp(-i theta[j][j])` and projecting onto the real axis turns the
//! link `j -> k` into the real gain `cos(theta[k][j] - theta[j][j])`.

use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};
use crate::seed::PhaseStream;

/// Wraps an angle into the half-open interval `[-π, π)`; `wrap_angle(π) == -π`.
pub fn wrap_angle(x: f64) -> f64 {
    if (-PI..PI).contains(&x) {
        return x;
    }
    let r = (x + PI).rem_euclid(TAU) - PI;
    // rem_euclid may round up to TAU itself.
    if r >= PI {
        r - TAU
    } else if r < -PI {
        -PI
    } else {
        r
    }
}

/// One draw of the `K x K` phase matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelRealization {
    k: usize,
    theta: Vec<f64>,
    seed: Option<u64>,
    normalized: bool,
}

impl ChannelRealization {
    /// Builds a realization from an explicit row-major phase matrix.
    pub fn from_phases(k: usize, theta: Vec<f64>) -> Result<Self> {
        if k == 0 {
            return Err(Error::ZeroUsers);
        }
        if theta.len() != k * k {
            return Err(Error::DimensionMismatch {
                expected: k * k,
                found: theta.len(),
            });
        }
        if let Some(&bad) = theta.iter().find(|x| !(-PI..PI).contains(*x)) {
            return Err(Error::InvalidParameter {
                name: "theta",
                reason: format!("phase {bad} outside [-pi, pi)"),
            });
        }
        let normalized = (0..k).all(|i| theta[i * k + i] == 0.0);
        Ok(Self {
            k,
            theta,
            seed: None,
            normalized,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Seed the realization was sampled from, if any.
    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    /// Phase of the link from transmitter `j` to receiver `k`.
    #[inline]
    pub fn theta(&self, k: usize, j: usize) -> f64 {
        self.theta[k * self.k + j]
    }

    /// Row-major phase matrix.
    pub fn phases(&self) -> &[f64] {
        &self.theta
    }

    /// Relative phase `theta[k][j] - theta[j][j]`, unwrapped.
    #[inline]
    pub fn relative_phase(&self, k: usize, j: usize) -> f64 {
        self.theta(k, j) - self.theta(j, j)
    }
}

/// Samples i.i.d. Uniform[-π, π) phases; deterministic in `(k, seed)`.
pub fn sample_channel(k: usize, seed: u64) -> Result<ChannelRealization> {
    if k == 0 {
        return Err(Error::ZeroUsers);
    }
    let stream = PhaseStream::new(seed);
    let mut theta = vec![0.0; k * k];
    for (row, chunk) in theta.chunks_exact_mut(k).enumerate() {
        stream.fill_row(row, chunk);
    }
    Ok(ChannelRealization {
        k,
        theta,
        seed: Some(seed),
        normalized: false,
    })
}

/// Rotates every column so the direct-link phases vanish:
/// `theta'[k][j] = wrap(theta[k][j] - theta[j][j])`.
pub fn normalize(ch: &ChannelRealization) -> ChannelRealization {
    let k = ch.k;
    let mut theta = vec![0.0; k * k];
    for r in 0..k {
        for c in 0..k {
            theta[r * k + c] = if r == c {
                0.0
            } else {
                wrap_angle(ch.relative_phase(r, c))
            };
        }
    }
    ChannelRealization {
        k,
        theta,
        seed: ch.seed,
        normalized: true,
    }
}

/// Read access to the effective real cross gains `g[k][j]`.
///
/// Implemented both by the materialized [`EffectiveGains`] and by
/// [`StreamedGains`], which regenerates entries on demand so that graphs can
/// be built for user counts whose phase matrix would not fit in memory.
pub trait GainSource: Sync {
    fn k(&self) -> usize;

    fn gain(&self, k: usize, j: usize) -> f64;

    /// Writes `g[k][0..K]` into `out`.
    fn fill_row(&self, k: usize, out: &mut [f64]) {
        for (j, x) in out.iter_mut().enumerate() {
            *x = self.gain(k, j);
        }
    }
}

/// Materialized effective cross-gain matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct EffectiveGains {
    k: usize,
    g: Vec<f64>,
    normalized: bool,
}

impl EffectiveGains {
    /// Builds gains from an explicit row-major matrix with unit diagonal.
    pub fn from_matrix(k: usize, g: Vec<f64>) -> Result<Self> {
        if k == 0 {
            return Err(Error::ZeroUsers);
        }
        if g.len() != k * k {
            return Err(Error::DimensionMismatch {
                expected: k * k,
                found: g.len(),
            });
        }
        if let Some(&bad) = g.iter().find(|x| !(-1.0..=1.0).contains(*x)) {
            return Err(Error::InvalidParameter {
                name: "gains",
                reason: format!("gain {bad} outside [-1, 1]"),
            });
        }
        if (0..k).any(|i| g[i * k + i] != 1.0) {
            return Err(Error::InvalidParameter {
                name: "gains",
                reason: "diagonal must be 1".into(),
            });
        }
        Ok(Self {
            k,
            g,
            normalized: true,
        })
    }

    /// True once the direct-link phases have been factored out.
    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.g
    }
}

impl GainSource for EffectiveGains {
    fn k(&self) -> usize {
        self.k
    }

    #[inline]
    fn gain(&self, k: usize, j: usize) -> f64 {
        self.g[k * self.k + j]
    }

    fn fill_row(&self, k: usize, out: &mut [f64]) {
        out.copy_from_slice(&self.g[k * self.k..(k + 1) * self.k]);
    }
}

/// `g[k][j] = cos(theta[k][j] - theta[j][j])` with an exact unit diagonal.
pub fn effective_gains(ch: &ChannelRealization) -> EffectiveGains {
    let k = ch.k;
    let mut g = vec![0.0; k * k];
    for r in 0..k {
        for c in 0..k {
            g[r * k + c] = if r == c {
                1.0
            } else {
                ch.relative_phase(r, c).cos()
            };
        }
    }
    EffectiveGains {
        k,
        g,
        normalized: true,
    }
}

/// Effective gains of `sample_channel(k, seed)`, computed lazily.
///
/// Produces bit-identical values to `effective_gains(&sample_channel(k, seed)?)`
/// while holding only the `K` direct-link phases in memory.
#[derive(Debug, Clone)]
pub struct StreamedGains {
    k: usize,
    stream: PhaseStream,
    diag: Vec<f64>,
}

impl StreamedGains {
    pub fn new(k: usize, seed: u64) -> Result<Self> {
        if k == 0 {
            return Err(Error::ZeroUsers);
        }
        let stream = PhaseStream::new(seed);
        let diag = (0..k).map(|j| stream.phase(j, j)).collect();
        Ok(Self { k, stream, diag })
    }

    pub fn seed(&self) -> u64 {
        self.stream.seed()
    }
}

impl GainSource for StreamedGains {
    fn k(&self) -> usize {
        self.k
    }

    fn gain(&self, k: usize, j: usize) -> f64 {
        if k == j {
            1.0
        } else {
            (self.stream.phase(k, j) - self.diag[j]).cos()
        }
    }

    fn fill_row(&self, k: usize, out: &mut [f64]) {
        self.stream.fill_row(k, out);
        for (x, &d) in out.iter_mut().zip(&self.diag) {
            *x = (*x - d).cos();
        }
        out[k] = 1.0;
    }
}
