//! Ground truth for small instances: branch-and-bound over per-edge class
//! assignments, and an LP-format export of the assignment formulation for
//! external solvers.

use crate::graph::{EdgeIndex, Weight, WeightedGraph};
use crate::solution::DisjointMatching;
use std::fmt::Write as _;
use thiserror::Error;

/// Feasibility guard for the exponential search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BruteForceLimits {
    pub max_edges: usize,
    pub max_k: usize,
}

impl Default for BruteForceLimits {
    fn default() -> Self {
        BruteForceLimits { max_edges: 24, max_k: 4 }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("instance too large for brute force: m = {m}, k = {k} (limits m <= {max_edges}, k <= {max_k})")]
    LimitExceeded {
        m: usize,
        k: usize,
        max_edges: usize,
        max_k: usize,
    },
}

#[derive(Debug, Clone)]
pub struct ExactResult {
    pub weight: Weight,
    pub solution: DisjointMatching,
    pub explored: u64,
}

struct Search<'g> {
    g: &'g WeightedGraph,
    k: usize,
    /// edges in weight-descending order
    order: Vec<EdgeIndex>,
    /// suffix[i] = total weight of order[i..]
    suffix: Vec<Weight>,
    /// used[c * n + v]: vertex v occupied in class c
    used: Vec<bool>,
    assignment: Vec<Option<usize>>,
    current: Weight,
    nonempty: usize,
    best: Option<(Weight, Vec<Option<usize>>)>,
    explored: u64,
}

impl<'g> Search<'g> {
    fn dfs(&mut self, i: usize) {
        self.explored += 1;
        if let Some((best, _)) = &self.best {
            if self.current + self.suffix[i] <= *best {
                return; // even taking every remaining edge cannot improve
            }
        }
        if i == self.order.len() {
            self.best = Some((self.current, self.assignment.clone()));
            return;
        }
        let e = self.order[i];
        let edge = *self.g.edge(e);
        let n = self.g.n();
        // classes are interchangeable: only the first empty class may open
        let class_limit = (self.nonempty + 1).min(self.k);
        for c in 0..class_limit {
            if self.used[c * n + edge.u as usize] || self.used[c * n + edge.v as usize] {
                continue;
            }
            self.used[c * n + edge.u as usize] = true;
            self.used[c * n + edge.v as usize] = true;
            self.assignment[e as usize] = Some(c);
            self.current += edge.w;
            let opened = c == self.nonempty;
            if opened {
                self.nonempty += 1;
            }
            self.dfs(i + 1);
            if opened {
                self.nonempty -= 1;
            }
            self.current -= edge.w;
            self.assignment[e as usize] = None;
            self.used[c * n + edge.u as usize] = false;
            self.used[c * n + edge.v as usize] = false;
        }
        self.dfs(i + 1); // leave the edge unassigned
    }
}

/// Exact optimum by branch-and-bound over per-edge class assignments with a
/// remaining-weight bound and class-symmetry breaking.
pub fn brute_force_kdjm(
    g: &WeightedGraph,
    k: usize,
    limits: BruteForceLimits,
) -> Result<ExactResult, ExactError> {
    assert!(k >= 1);
    if g.m() > limits.max_edges || k > limits.max_k {
        return Err(ExactError::LimitExceeded {
            m: g.m(),
            k,
            max_edges: limits.max_edges,
            max_k: limits.max_k,
        });
    }
    let order = crate::graph::sort_edges_desc(g);
    let order: Vec<EdgeIndex> = order.order().to_vec();
    let mut suffix = vec![0; order.len() + 1];
    for i in (0..order.len()).rev() {
        suffix[i] = suffix[i + 1] + g.weight(order[i]);
    }
    let mut search = Search {
        g,
        k,
        order,
        suffix,
        used: vec![false; k * g.n()],
        assignment: vec![None; g.m()],
        current: 0,
        nonempty: 0,
        best: None,
        explored: 0,
    };
    search.dfs(0);
    let (weight, assignment) = search.best.expect("search visits the empty assignment");
    let mut solution = DisjointMatching::new(k, g.m());
    for (e, c) in assignment.iter().enumerate() {
        if let Some(c) = c {
            solution.assign(g, e as EdgeIndex, *c);
        }
    }
    debug_assert_eq!(solution.total_weight(), weight);
    Ok(ExactResult {
        weight,
        solution,
        explored: search.explored,
    })
}

/// Emits the assignment-formulation integer program in LP text format:
/// binaries `x_e{edge}_c{class}`, one matching constraint per (vertex,
/// class), one at-most-one-class constraint per edge. Byte-stable for a
/// given graph and k.
pub fn export_ilp(g: &WeightedGraph, k: usize) -> String {
    assert!(k >= 1);
    let mut out = String::new();
    out.push_str("\\ k-disjoint matching assignment model\n");
    let _ = writeln!(out, "\\ n = {}, m = {}, k = {}", g.n(), g.m(), k);
    out.push_str("Maximize\n obj:");
    let mut first = true;
    for (e, edge) in g.edges().iter().enumerate() {
        for c in 0..k {
            if first {
                let _ = write!(out, " {} x_e{}_c{}", edge.w, e, c);
                first = false;
            } else {
                let _ = write!(out, " + {} x_e{}_c{}", edge.w, e, c);
            }
        }
    }
    out.push_str("\nSubject To\n");
    for v in 0..g.n() as u32 {
        if g.degree(v) == 0 {
            continue;
        }
        for c in 0..k {
            let _ = write!(out, " v{v}_c{c}:");
            for (pos, &(_, e)) in g.neighbors(v).iter().enumerate() {
                if pos > 0 {
                    out.push_str(" +");
                }
                let _ = write!(out, " x_e{e}_c{c}");
            }
            out.push_str(" <= 1\n");
        }
    }
    for e in 0..g.m() {
        let _ = write!(out, " e{e}:");
        for c in 0..k {
            if c > 0 {
                out.push_str(" +");
            }
            let _ = write!(out, " x_e{e}_c{c}");
        }
        out.push_str(" <= 1\n");
    }
    out.push_str("Binary\n");
    for e in 0..g.m() {
        for c in 0..k {
            let _ = writeln!(out, " x_e{e}_c{c}");
        }
    }
    out.push_str("End\n");
    out
}

pub fn export_ilp_to(
    g: &WeightedGraph,
    k: usize,
    path: impl AsRef<std::path::Path>,
) -> std::io::Result<()> {
    std::fs::write(path, export_ilp(g, k))
}
