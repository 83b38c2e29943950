//! Thresholded interference graph over users.

use rand::Rng;
use rayon::prelude::*;

use crate::channel::GainSource;
use crate::error::{Error, Result};
use crate::seed::rng_from_seed;

/// Dense symmetric bit matrix, one `u64` word per 64 columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitMatrix {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    pub fn new(n: usize) -> Self {
        let words = n.div_ceil(64);
        Self {
            n,
            words,
            bits: vec![0; n * words],
        }
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        self.bits[r * self.words + c / 64] >> (c % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize) {
        self.bits[r * self.words + c / 64] |= 1 << (c % 64);
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[u64] {
        &self.bits[r * self.words..(r + 1) * self.words]
    }

    pub fn row_ones(&self, r: usize) -> impl Iterator<Item = usize> + '_ {
        iter_ones(self.row(r))
    }
}

/// Indices of set bits in a word slice, ascending.
pub fn iter_ones(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(w, &word)| {
        let mut rest = word;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(w * 64 + b)
            }
        })
    })
}

/// Graph on users with an edge whenever either cross gain is strong.
#[derive(Debug, Clone, PartialEq)]
pub struct InterferenceGraph {
    k: usize,
    adjacency: BitMatrix,
    threshold: f64,
    threshold_constant: f64,
}

/// Edge threshold `c / sqrt(ln K)`; infinite for `K <= 2`.
pub fn interference_threshold(k: usize, threshold_constant: f64) -> f64 {
    if k <= 2 {
        f64::INFINITY
    } else {
        threshold_constant / (k as f64).ln().sqrt()
    }
}

fn check_constant(c: f64) -> Result<()> {
    if c.is_finite() && c > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidThresholdConstant(c))
    }
}

impl InterferenceGraph {
    /// Graph from an explicit edge list; threshold fields are zero.
    pub fn from_edges(k: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if k == 0 {
            return Err(Error::ZeroUsers);
        }
        let mut adjacency = BitMatrix::new(k);
        for &(a, b) in edges {
            if a >= k || b >= k || a == b {
                return Err(Error::InvalidParameter {
                    name: "edges",
                    reason: format!("bad edge ({a}, {b}) for {k} nodes"),
                });
            }
            adjacency.set(a, b);
            adjacency.set(b, a);
        }
        Ok(Self {
            k,
            adjacency,
            threshold: 0.0,
            threshold_constant: 0.0,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn threshold(&self) -> f64 {
        self.threshold
    }

    pub fn threshold_constant(&self) -> f64 {
        self.threshold_constant
    }

    #[inline]
    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adjacency.get(a, b)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adjacency.row_ones(v)
    }

    pub fn neighbor_words(&self, v: usize) -> &[u64] {
        self.adjacency.row(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency
            .row(v)
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.k).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        (0..self.k).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    /// Fraction of the `K(K-1)/2` unordered pairs that are edges.
    pub fn edge_density(&self) -> f64 {
        if self.k < 2 {
            return 0.0;
        }
        let pairs = self.k as f64 * (self.k as f64 - 1.0) / 2.0;
        self.edge_count() as f64 / pairs
    }
}

/// Builds the interference graph: `k ~ j` iff `max(|g_kj|, |g_jk|) > c / sqrt(ln K)`.
///
/// Rows are scanned in parallel; memory is `K^2 / 8` bytes regardless of
/// whether `gains` is materialized.
pub fn build_graph<G: GainSource + ?Sized>(
    gains: &G,
    threshold_constant: f64,
) -> Result<InterferenceGraph> {
    check_constant(threshold_constant)?;
    let k = gains.k();
    if k == 0 {
        return Err(Error::ZeroUsers);
    }
    let t = interference_threshold(k, threshold_constant);
    let mut adjacency = BitMatrix::new(k);

    // |cos| never exceeds 1, so no edge can form.
    if t < 1.0 {
        let words = adjacency.words;
        adjacency
            .bits
            .par_chunks_mut(words)
            .enumerate()
            .for_each_init(
                || vec![0.0; k],
                |row_buf, (r, row_bits)| {
                    gains.fill_row(r, row_buf);
                    for (c, &g) in row_buf.iter().enumerate() {
                        if c != r && g.abs() > t {
                            row_bits[c / 64] |= 1 << (c % 64);
                        }
                    }
                },
            );
        // Symmetrize: a one-sided strong gain suffices.
        let mut row_copy = vec![0u64; words];
        for r in 0..k {
            row_copy.copy_from_slice(adjacency.row(r));
            for c in iter_ones(&row_copy) {
                adjacency.set(c, r);
            }
        }
    }

    Ok(InterferenceGraph {
        k,
        adjacency,
        threshold: t,
        threshold_constant,
    })
}

/// Erdős–Rényi graph `G(k, p)`, deterministic in `seed`.
pub fn random_graph(k: usize, p: f64, seed: u64) -> Result<InterferenceGraph> {
    if k == 0 {
        return Err(Error::ZeroUsers);
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidProbability(p));
    }
    let mut rng = rng_from_seed(seed);
    let mut adjacency = BitMatrix::new(k);
    for a in 0..k {
        for b in a + 1..k {
            if rng.gen::<f64>() < p {
                adjacency.set(a, b);
                adjacency.set(b, a);
            }
        }
    }
    Ok(InterferenceGraph {
        k,
        adjacency,
        threshold: 0.0,
        threshold_constant: 0.0,
    })
}
