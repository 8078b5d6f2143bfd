//! b-matching and edge-coloring building blocks, and the algorithm that
//! turns a greedy (k-1)-matching into k disjoint matchings by coloring it
//! and then extending the classes greedily.

use crate::color_state::ColorState;
use crate::graph::{sort_edges_desc, EdgeIndex, SortedEdgeList, Weight, WeightedGraph};
use crate::iter::greedy_it;
use crate::kec::{try_color_edge, KecFlags};
use crate::solution::DisjointMatching;

/// An edge set in which every vertex appears at most `b` times.
#[derive(Debug, Clone)]
pub struct BMatching {
    pub edges: Vec<EdgeIndex>,
    pub saturation: Vec<u32>,
    pub b: usize,
    pub weight: Weight,
}

/// Greedy ½-approximate maximum-weight b-matching: take each edge in the
/// given order unless an endpoint is already saturated.
pub fn greedy_b_matching(g: &WeightedGraph, order: &SortedEdgeList, b: usize) -> BMatching {
    assert!(b >= 1);
    let mut saturation = vec![0u32; g.n()];
    let mut edges = Vec::new();
    let mut weight = 0;
    for e in order.iter() {
        let edge = g.edge(e);
        if saturation[edge.u as usize] < b as u32 && saturation[edge.v as usize] < b as u32 {
            saturation[edge.u as usize] += 1;
            saturation[edge.v as usize] += 1;
            edges.push(e);
            weight += edge.w;
        }
    }
    BMatching {
        edges,
        saturation,
        b,
        weight,
    }
}

/// A proper edge coloring of a subgraph; `colors` is the number of distinct
/// colors in use.
#[derive(Debug, Clone)]
pub struct EdgeColoring {
    pub color_of: Vec<Option<u32>>,
    pub colors: usize,
}

/// Properly colors the given subgraph edges with at most `max_degree + 1`
/// colors (Misra & Gries). Edges outside the subgraph stay uncolored.
pub fn misra_gries_color(g: &WeightedGraph, subgraph_edges: &[EdgeIndex]) -> EdgeColoring {
    let mut sub_degree = vec![0u32; g.n()];
    for &e in subgraph_edges {
        let edge = g.edge(e);
        sub_degree[edge.u as usize] += 1;
        sub_degree[edge.v as usize] += 1;
    }
    let max_sub_degree = sub_degree.iter().copied().max().unwrap_or(0) as usize;
    let mut state = ColorState::new(g, max_sub_degree + 1);
    for &e in subgraph_edges {
        let ok = try_color_edge(&mut state, e, KecFlags::default());
        debug_assert!(ok, "max_degree + 1 colors always suffice");
    }
    let mut color_of = vec![None; g.m()];
    let mut colors = 0;
    for e in 0..g.m() as EdgeIndex {
        if let Some(c) = state.color_of(e) {
            color_of[e as usize] = Some(c as u32);
            colors = colors.max(c + 1);
        }
    }
    EdgeColoring { color_of, colors }
}

/// Obtains a greedy (k-1)-matching, colors that subgraph with at most k
/// colors to turn it into k disjoint matchings, and then enlarges each class
/// with greedy passes over the remaining edges. For `k = 1` the b-matching
/// step degenerates (a 0-matching is empty), so the plain greedy pass is
/// used directly.
pub fn b_greedy_and_extend(g: &WeightedGraph, k: usize) -> DisjointMatching {
    assert!(k >= 1);
    if k == 1 {
        return greedy_it(g, 1);
    }
    let order = sort_edges_desc(g);
    let bm = greedy_b_matching(g, &order, k - 1);
    // The subgraph has maximum degree <= k-1, so the coloring machinery never
    // needs more than k colors even though the state offers exactly k.
    let mut state = ColorState::new(g, k);
    for &e in &bm.edges {
        let ok = try_color_edge(&mut state, e, KecFlags::default());
        debug_assert!(ok, "subgraph degree is below the color budget");
    }
    // Extension: one greedy pass per class over the edges that are still
    // uncolored, respecting the pre-colored classes.
    for class in 0..k {
        for e in order.iter() {
            if state.color_of(e).is_some() {
                continue;
            }
            let edge = g.edge(e);
            if state.is_free(edge.u, class) && state.is_free(edge.v, class) {
                state.assign(e, class);
            }
        }
    }
    state.into_solution()
}
