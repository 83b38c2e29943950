//! Maximum independent set size.
//!
//! Exact for up to 64 nodes via branch and bound on the complement graph
//! (maximum clique with greedy-coloring bounds); beyond that a lower bound.

use super::coloring::greedy_color;
use super::graph::InterferenceGraph;

/// Largest node count handled exactly.
pub const EXACT_MIS_MAX: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IndependentSetSize {
    pub size: usize,
    /// False when `size` is only a lower bound.
    pub exact: bool,
}

/// `alpha(G)` exactly when `K <= min(exact_limit, 64)`, otherwise the larger
/// of a min-degree greedy independent set and the largest greedy color class.
pub fn max_independent_set_size(graph: &InterferenceGraph, exact_limit: usize) -> IndependentSetSize {
    let k = graph.k();
    if k <= exact_limit.min(EXACT_MIS_MAX) {
        IndependentSetSize {
            size: exact_mis(graph),
            exact: true,
        }
    } else {
        IndependentSetSize {
            size: greedy_by_degree(graph).max(largest_color_class(graph)),
            exact: false,
        }
    }
}

fn exact_mis(graph: &InterferenceGraph) -> usize {
    let k = graph.k();
    let all: u64 = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
    // Complement adjacency: independent sets of G are cliques here.
    let comp: Vec<u64> = (0..k)
        .map(|v| !graph.neighbor_words(v)[0] & all & !(1u64 << v))
        .collect();
    let mut best = 0;
    expand(&comp, 0, all, &mut best);
    best
}

fn expand(comp: &[u64], size: usize, mut cand: u64, best: &mut usize) {
    let (order, bound) = color_sort(comp, cand);
    for i in (0..order.len()).rev() {
        if size + bound[i] <= *best {
            return;
        }
        let v = order[i];
        let next = cand & comp[v];
        if next == 0 {
            *best = (*best).max(size + 1);
        } else {
            expand(comp, size + 1, next, best);
        }
        cand &= !(1u64 << v);
    }
}

/// Orders candidates by greedy color class in the complement; `bound[i]`
/// caps the clique size reachable from `order[..=i]`.
fn color_sort(comp: &[u64], cand: u64) -> (Vec<usize>, Vec<usize>) {
    let mut order = Vec::with_capacity(cand.count_ones() as usize);
    let mut bound = Vec::with_capacity(order.capacity());
    let mut uncolored = cand;
    let mut color = 0;
    while uncolored != 0 {
        color += 1;
        let mut q = uncolored;
        while q != 0 {
            let v = q.trailing_zeros() as usize;
            q &= !(1u64 << v) & !comp[v];
            uncolored &= !(1u64 << v);
            order.push(v);
            bound.push(color);
        }
    }
    (order, bound)
}

fn greedy_by_degree(graph: &InterferenceGraph) -> usize {
    let k = graph.k();
    let mut nodes: Vec<(usize, usize)> = (0..k).map(|v| (graph.degree(v), v)).collect();
    nodes.sort_unstable();
    let mut blocked = vec![0u64; k.div_ceil(64)];
    let mut size = 0;
    for (_, v) in nodes {
        if blocked[v / 64] >> (v % 64) & 1 == 0 {
            size += 1;
            for (b, w) in blocked.iter_mut().zip(graph.neighbor_words(v)) {
                *b |= w;
            }
            blocked[v / 64] |= 1 << (v % 64);
        }
    }
    size
}

fn largest_color_class(graph: &InterferenceGraph) -> usize {
    let coloring = greedy_color(graph, None).expect("identity order is a permutation");
    let mut counts = vec![0usize; coloring.num_colors];
    for &c in &coloring.colors {
        counts[c] += 1;
    }
    counts.into_iter().max().unwrap_or(0)
}
