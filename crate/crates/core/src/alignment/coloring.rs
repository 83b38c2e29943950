//! First-fit greedy coloring.

use rand::seq::SliceRandom;

use super::graph::InterferenceGraph;
use crate::error::{Error, Result};
use crate::seed::rng_from_seed;

/// Partition of users into independent color classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    pub colors: Vec<usize>,
    pub num_colors: usize,
    pub order: Vec<usize>,
}

impl Coloring {
    /// Members of each color class, ascending by user index.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut classes = vec![Vec::new(); self.num_colors];
        for (v, &c) in self.colors.iter().enumerate() {
            classes[c].push(v);
        }
        classes
    }

    pub fn is_proper(&self, graph: &InterferenceGraph) -> bool {
        (0..graph.k()).all(|v| graph.neighbors(v).all(|u| self.colors[u] != self.colors[v]))
    }
}

/// Uniformly random node order, deterministic in `seed`.
pub fn random_order(k: usize, seed: u64) -> Vec<usize> {
    let mut order: Vec<usize> = (0..k).collect();
    order.shuffle(&mut rng_from_seed(seed));
    order
}

/// Visits nodes in `order` (identity when `None`) and gives each the
/// smallest color not used by an already-colored neighbor.
pub fn greedy_color(graph: &InterferenceGraph, order: Option<&[usize]>) -> Result<Coloring> {
    let k = graph.k();
    let order: Vec<usize> = match order {
        None => (0..k).collect(),
        Some(o) => {
            let mut seen = vec![false; k];
            if o.len() != k || o.iter().any(|&v| v >= k || std::mem::replace(&mut seen[v], true)) {
                return Err(Error::NotAPermutation { k });
            }
            o.to_vec()
        }
    };

    const UNCOLORED: usize = usize::MAX;
    let mut colors = vec![UNCOLORED; k];
    // stamp[c] == step means color c is taken by a neighbor of the current node.
    let mut stamp: Vec<usize> = Vec::new();
    let mut num_colors = 0;
    for (step, &v) in order.iter().enumerate() {
        for u in graph.neighbors(v) {
            let c = colors[u];
            if c != UNCOLORED {
                stamp[c] = step;
            }
        }
        let c = (0..num_colors).find(|&c| stamp[c] != step).unwrap_or(num_colors);
        if c == num_colors {
            num_colors += 1;
            stamp.push(usize::MAX);
        }
        colors[v] = c;
    }

    Ok(Coloring {
        colors,
        num_colors,
        order,
    })
}
