//! The three iterative algorithms: run a single-matching subroutine k times,
//! masking the edges already claimed by earlier classes. The subroutines are
//! the greedy matching pass, the Global Paths Algorithm pass (paths and even
//! cycles plus dynamic programming, after Maue & Sanders), and the exact
//! blossom solver.

use crate::blossom::{self, BlossomInit};
use crate::graph::{sort_edges_desc, EdgeIndex, SortedEdgeList, VertexId, Weight, WeightedGraph};
use crate::postprocess::Strategy;
use crate::solution::DisjointMatching;

/// A single matching: edge indices, per-vertex mates, total weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    pub edges: Vec<EdgeIndex>,
    pub mate: Vec<Option<VertexId>>,
    pub weight: Weight,
}

impl Matching {
    fn from_edges(g: &WeightedGraph, edges: Vec<EdgeIndex>) -> Self {
        let mut mate = vec![None; g.n()];
        let mut weight = 0;
        for &e in &edges {
            let edge = g.edge(e);
            debug_assert!(mate[edge.u as usize].is_none() && mate[edge.v as usize].is_none());
            mate[edge.u as usize] = Some(edge.v);
            mate[edge.v as usize] = Some(edge.u);
            weight += edge.w;
        }
        Matching { edges, mate, weight }
    }
}

/// One greedy pass: takes every available edge whose endpoints are still
/// free, in the given order. Selected edges are flagged unavailable.
pub fn greedy_matching_pass(
    g: &WeightedGraph,
    order: &SortedEdgeList,
    available: &mut [bool],
) -> Matching {
    let mut mate: Vec<Option<VertexId>> = vec![None; g.n()];
    let mut edges = Vec::new();
    let mut weight = 0;
    for e in order.iter() {
        if !available[e as usize] {
            continue;
        }
        let edge = g.edge(e);
        if mate[edge.u as usize].is_none() && mate[edge.v as usize].is_none() {
            mate[edge.u as usize] = Some(edge.v);
            mate[edge.v as usize] = Some(edge.u);
            available[e as usize] = false;
            edges.push(e);
            weight += edge.w;
        }
    }
    Matching { edges, mate, weight }
}

/// Shared k-round driver: `pass` produces the edge set of one class from the
/// availability mask (and must flag those edges unavailable). Postprocessing
/// may move class edges around, so availability is re-derived from the
/// solution after each hook.
fn iterate_classes<F>(
    g: &WeightedGraph,
    k: usize,
    strategy: Strategy,
    seed: u64,
    mut pass: F,
) -> DisjointMatching
where
    F: FnMut(&WeightedGraph, &mut [bool]) -> Vec<EdgeIndex>,
{
    assert!(k >= 1);
    let mut sol = DisjointMatching::new(k, g.m());
    let mut available = vec![true; g.m()];
    for class in 0..k {
        for e in pass(g, &mut available) {
            sol.assign(g, e, class);
        }
        strategy.after_class(g, &mut sol, class, seed);
        if !matches!(strategy, Strategy::None | Strategy::GlobalSwaps) {
            for (e, slot) in available.iter_mut().enumerate() {
                *slot = !sol.is_assigned(e as EdgeIndex);
            }
        }
    }
    strategy.after_all(g, &mut sol, seed);
    sol
}

/// k greedy passes over the demand-sorted edge list.
pub fn greedy_it(g: &WeightedGraph, k: usize) -> DisjointMatching {
    greedy_it_with(g, k, Strategy::None, 0)
}

pub fn greedy_it_with(
    g: &WeightedGraph,
    k: usize,
    strategy: Strategy,
    seed: u64,
) -> DisjointMatching {
    let order = sort_edges_desc(g);
    iterate_classes(g, k, strategy, seed, |g, avail| {
        greedy_matching_pass(g, &order, avail).edges
    })
}

/// A vertex-disjoint path or even-length cycle, as a sequence of edge
/// indices in walk order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Structure {
    pub edges: Vec<EdgeIndex>,
    pub is_cycle: bool,
}

#[derive(Debug, Clone, Default)]
pub struct PathsAndCycles {
    pub structures: Vec<Structure>,
}

/// Grows vertex-disjoint paths and even-length cycles from the available
/// edges: an edge is applicable if it connects two different paths or closes
/// an odd-length path into an (even) cycle.
pub fn gpa_build(
    g: &WeightedGraph,
    order: &SortedEdgeList,
    available: &[bool],
) -> PathsAndCycles {
    let n = g.n();
    // union-find over path components, with edge count per component root
    let mut parent: Vec<u32> = (0..n as u32).collect();
    let mut length = vec![0u32; n];
    let mut closed = vec![false; n];
    let mut degree = vec![0u8; n];
    // up to two structure edges per vertex
    let mut slots: Vec<[EdgeIndex; 2]> = vec![[EdgeIndex::MAX; 2]; n];

    fn find(parent: &mut [u32], v: u32) -> u32 {
        let mut root = v;
        while parent[root as usize] != root {
            root = parent[root as usize];
        }
        let mut cur = v;
        while parent[cur as usize] != root {
            let next = parent[cur as usize];
            parent[cur as usize] = root;
            cur = next;
        }
        root
    }

    for e in order.iter() {
        if !available[e as usize] {
            continue;
        }
        let edge = g.edge(e);
        let (u, v) = (edge.u, edge.v);
        if degree[u as usize] >= 2 || degree[v as usize] >= 2 {
            continue;
        }
        let ru = find(&mut parent, u);
        let rv = find(&mut parent, v);
        let applicable = if ru != rv {
            true
        } else {
            // u and v are the two ends of the same path; close only if odd
            !closed[ru as usize] && length[ru as usize] % 2 == 1
        };
        if !applicable {
            continue;
        }
        let add = |slots: &mut Vec<[EdgeIndex; 2]>, x: VertexId| {
            let slot = &mut slots[x as usize];
            if slot[0] == EdgeIndex::MAX {
                slot[0] = e;
            } else {
                slot[1] = e;
            }
        };
        add(&mut slots, u);
        add(&mut slots, v);
        degree[u as usize] += 1;
        degree[v as usize] += 1;
        if ru != rv {
            parent[rv as usize] = ru;
            length[ru as usize] += length[rv as usize] + 1;
        } else {
            closed[ru as usize] = true;
            length[ru as usize] += 1;
        }
    }

    // extract paths (from endpoints of degree 1), then cycles
    let mut structures = Vec::new();
    let mut edge_seen = vec![false; g.m()];
    let walk = |start: VertexId, edge_seen: &mut Vec<bool>| -> Vec<EdgeIndex> {
        let mut edges = Vec::new();
        let mut at = start;
        loop {
            let slot = slots[at as usize];
            let next = [slot[0], slot[1]]
                .into_iter()
                .find(|&e| e != EdgeIndex::MAX && !edge_seen[e as usize]);
            match next {
                Some(e) => {
                    edge_seen[e as usize] = true;
                    edges.push(e);
                    at = g.edge(e).other(at);
                }
                None => break,
            }
        }
        edges
    };
    for v in 0..n as VertexId {
        if degree[v as usize] == 1 {
            let edges = walk(v, &mut edge_seen);
            if !edges.is_empty() {
                structures.push(Structure { edges, is_cycle: false });
            }
        }
    }
    for v in 0..n as VertexId {
        if degree[v as usize] == 2 {
            let edges = walk(v, &mut edge_seen);
            if !edges.is_empty() {
                debug_assert_eq!(edges.len() % 2, 0);
                structures.push(Structure { edges, is_cycle: true });
            }
        }
    }
    PathsAndCycles { structures }
}

/// Maximum-weight matching inside the edge sequence of one path: classic
/// take-or-skip dynamic program, linear in the path length. Ties prefer
/// taking the earlier edge.
fn dp_path(g: &WeightedGraph, edges: &[EdgeIndex], out: &mut Vec<EdgeIndex>) -> Weight {
    let l = edges.len();
    if l == 0 {
        return 0;
    }
    // best[i] = optimum over edges[i..]
    let mut best = vec![0; l + 1];
    for i in (0..l).rev() {
        let take = g.weight(edges[i]) + if i + 2 <= l { best[i + 2] } else { 0 };
        best[i] = take.max(best[i + 1]);
    }
    let mut i = 0;
    while i < l {
        let take = g.weight(edges[i]) + if i + 2 <= l { best[i + 2] } else { 0 };
        if take >= best[i + 1] {
            out.push(edges[i]);
            i += 2;
        } else {
            i += 1;
        }
    }
    best[0]
}

fn dp_select(g: &WeightedGraph, s: &Structure, out: &mut Vec<EdgeIndex>) -> Weight {
    if !s.is_cycle {
        return dp_path(g, &s.edges, out);
    }
    // even cycle: either the fixed first edge is out (the rest is a path) or
    // in (its two neighbors drop out)
    let l = s.edges.len();
    let mut without = Vec::new();
    let w_without = dp_path(g, &s.edges[1..], &mut without);
    let mut with = Vec::new();
    let w_with = g.weight(s.edges[0]) + dp_path(g, &s.edges[2..l - 1], &mut with);
    if w_with > w_without {
        out.push(s.edges[0]);
        out.extend(with);
        w_with
    } else {
        out.extend(without);
        w_without
    }
}

/// Optimal matching within a single path or even cycle from [`gpa_build`].
pub fn dp_optimal_matching(g: &WeightedGraph, s: &Structure) -> Matching {
    let mut edges = Vec::new();
    dp_select(g, s, &mut edges);
    Matching::from_edges(g, edges)
}

fn gpa_pass(g: &WeightedGraph, order: &SortedEdgeList, available: &mut [bool]) -> Vec<EdgeIndex> {
    let built = gpa_build(g, order, available);
    let mut selected = Vec::new();
    for s in &built.structures {
        dp_select(g, s, &mut selected);
    }
    for &e in &selected {
        available[e as usize] = false;
    }
    selected
}

/// k rounds of path growing plus dynamic programming.
pub fn gpa_it(g: &WeightedGraph, k: usize) -> DisjointMatching {
    gpa_it_with(g, k, Strategy::None, 0)
}

pub fn gpa_it_with(g: &WeightedGraph, k: usize, strategy: Strategy, seed: u64) -> DisjointMatching {
    let order = sort_edges_desc(g);
    iterate_classes(g, k, strategy, seed, |g, avail| gpa_pass(g, &order, avail))
}

/// Exact maximum-weight matching over the available edges (blossom solver).
pub fn blossom_max_weight_matching(g: &WeightedGraph, available: &[bool]) -> Matching {
    blossom_max_weight_matching_with(g, available, BlossomInit::default())
}

pub fn blossom_max_weight_matching_with(
    g: &WeightedGraph,
    available: &[bool],
    init: BlossomInit,
) -> Matching {
    let edges: Vec<(u32, u32, Weight)> = (0..g.m())
        .filter(|&e| available[e])
        .map(|e| {
            let edge = g.edge(e as EdgeIndex);
            (edge.u, edge.v, edge.w)
        })
        .collect();
    let mate = blossom::max_weight_matching(g.n(), &edges, init);
    let mut selected = Vec::new();
    for v in 0..g.n() as VertexId {
        if let Some(u) = mate[v as usize] {
            if v < u {
                let e = g.edge_between(v, u).expect("matched edge exists in graph");
                debug_assert!(available[e as usize]);
                selected.push(e);
            }
        }
    }
    selected.sort_unstable();
    Matching::from_edges(g, selected)
}

/// k rounds of the exact blossom solver on the residual graph.
pub fn blossom_it(g: &WeightedGraph, k: usize) -> DisjointMatching {
    blossom_it_with(g, k, BlossomInit::default(), Strategy::None, 0)
}

pub fn blossom_it_with(
    g: &WeightedGraph,
    k: usize,
    init: BlossomInit,
    strategy: Strategy,
    seed: u64,
) -> DisjointMatching {
    iterate_classes(g, k, strategy, seed, |g, avail| {
        let matching = blossom_max_weight_matching_with(g, avail, init);
        for &e in &matching.edges {
            avail[e as usize] = false;
        }
        matching.edges
    })
}
