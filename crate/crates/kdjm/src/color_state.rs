//! Mutable per-vertex/per-color bookkeeping shared by the coloring-style
//! algorithms. A "color" is a class index in `0..k`. The state answers
//! free-color queries in O(1) and supports recoloring, but an edge can never
//! be uncolored, which keeps the colored edge set monotone.

use crate::graph::{EdgeIndex, VertexId, Weight, WeightedGraph};
use crate::solution::DisjointMatching;

const NONE: u32 = u32::MAX;

pub struct ColorState<'g> {
    g: &'g WeightedGraph,
    k: usize,
    /// `incident[v * k + c]` = edge of color `c` at `v`, or `NONE`.
    incident: Vec<u32>,
    colored_degree: Vec<u32>,
    color_of: Vec<u32>,
    /// Total demand per color, maintained incrementally.
    color_weights: Vec<Weight>,
}

impl<'g> ColorState<'g> {
    pub fn new(g: &'g WeightedGraph, k: usize) -> Self {
        assert!(k >= 1, "need at least one color class");
        ColorState {
            g,
            k,
            incident: vec![NONE; g.n() * k],
            colored_degree: vec![0; g.n()],
            color_of: vec![NONE; g.m()],
            color_weights: vec![0; k],
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn graph(&self) -> &'g WeightedGraph {
        self.g
    }

    pub fn color_of(&self, e: EdgeIndex) -> Option<usize> {
        let c = self.color_of[e as usize];
        (c != NONE).then_some(c as usize)
    }

    pub fn colored_degree(&self, v: VertexId) -> usize {
        self.colored_degree[v as usize] as usize
    }

    /// Saturated vertices cannot take any further color.
    pub fn is_saturated(&self, v: VertexId) -> bool {
        self.colored_degree(v) == self.k
    }

    pub fn is_free(&self, v: VertexId, c: usize) -> bool {
        self.incident[v as usize * self.k + c] == NONE
    }

    /// Edge of color `c` incident to `v`, if any.
    pub fn edge_with_color(&self, v: VertexId, c: usize) -> Option<EdgeIndex> {
        let e = self.incident[v as usize * self.k + c];
        (e != NONE).then_some(e)
    }

    pub fn color_weight(&self, c: usize) -> Weight {
        self.color_weights[c]
    }

    /// A free color on `v`: the lightest free color when `lightest` is set
    /// (ties to the lowest index), the lowest-index free color otherwise.
    pub fn free_color(&self, v: VertexId, lightest: bool) -> Option<usize> {
        if self.is_saturated(v) {
            return None;
        }
        let free = (0..self.k).filter(|&c| self.is_free(v, c));
        if lightest {
            free.min_by_key(|&c| (self.color_weights[c], c))
        } else {
            // the iterator is ascending, so the first hit is the lowest index
            free.clone().next()
        }
    }

    /// A color free on both `u` and `v`, with the same `lightest` policy.
    pub fn common_free_color(&self, u: VertexId, v: VertexId, lightest: bool) -> Option<usize> {
        let free = (0..self.k).filter(|&c| self.is_free(u, c) && self.is_free(v, c));
        if lightest {
            free.min_by_key(|&c| (self.color_weights[c], c))
        } else {
            free.clone().next()
        }
    }

    /// Colors an uncolored edge. Panics on a properness violation in debug
    /// builds; callers must have checked freeness on both endpoints.
    pub fn assign(&mut self, e: EdgeIndex, c: usize) {
        debug_assert_eq!(self.color_of[e as usize], NONE);
        let edge = self.g.edge(e);
        debug_assert!(self.is_free(edge.u, c) && self.is_free(edge.v, c));
        self.color_of[e as usize] = c as u32;
        self.incident[edge.u as usize * self.k + c] = e;
        self.incident[edge.v as usize * self.k + c] = e;
        self.colored_degree[edge.u as usize] += 1;
        self.colored_degree[edge.v as usize] += 1;
        self.color_weights[c] += edge.w;
    }

    /// Moves an already-colored edge to a different color. The colored degree
    /// of the endpoints does not change.
    pub fn recolor(&mut self, e: EdgeIndex, c: usize) {
        let old = self.color_of[e as usize];
        debug_assert_ne!(old, NONE, "recolor of uncolored edge");
        if old as usize == c {
            return;
        }
        let edge = self.g.edge(e);
        debug_assert!(self.is_free(edge.u, c) && self.is_free(edge.v, c));
        self.incident[edge.u as usize * self.k + old as usize] = NONE;
        self.incident[edge.v as usize * self.k + old as usize] = NONE;
        self.incident[edge.u as usize * self.k + c] = e;
        self.incident[edge.v as usize * self.k + c] = e;
        self.color_of[e as usize] = c as u32;
        self.color_weights[old as usize] -= edge.w;
        self.color_weights[c] += edge.w;
    }

    /// Applies a set of color moves atomically: all old colors are cleared
    /// before the new ones are written, so transient conflicts inside one
    /// inversion or rotation do not trip the per-move checks. Previously
    /// uncolored edges in `changes` are assigned (their endpoints' colored
    /// degree grows); colored ones are recolored.
    pub fn apply_color_changes(&mut self, changes: &[(EdgeIndex, usize)]) {
        for &(e, _) in changes {
            let old = self.color_of[e as usize];
            if old == NONE {
                continue;
            }
            let edge = self.g.edge(e);
            self.incident[edge.u as usize * self.k + old as usize] = NONE;
            self.incident[edge.v as usize * self.k + old as usize] = NONE;
            self.color_weights[old as usize] -= edge.w;
        }
        for &(e, c) in changes {
            let edge = self.g.edge(e);
            debug_assert!(
                self.is_free(edge.u, c) && self.is_free(edge.v, c),
                "batch change produces an improper coloring at edge {e}"
            );
            if self.color_of[e as usize] == NONE {
                self.colored_degree[edge.u as usize] += 1;
                self.colored_degree[edge.v as usize] += 1;
            }
            self.color_of[e as usize] = c as u32;
            self.incident[edge.u as usize * self.k + c] = e;
            self.incident[edge.v as usize * self.k + c] = e;
            self.color_weights[c] += edge.w;
        }
    }

    /// Number of colored edges.
    pub fn colored_count(&self) -> usize {
        self.color_of.iter().filter(|&&c| c != NONE).count()
    }

    /// Converts the coloring into a solution; class lists come out ascending
    /// by edge index.
    pub fn into_solution(self) -> DisjointMatching {
        let mut s = DisjointMatching::new(self.k, self.g.m());
        for e in 0..self.g.m() {
            let c = self.color_of[e];
            if c != NONE {
                s.assign(self.g, e as EdgeIndex, c as usize);
            }
        }
        s
    }

    /// Recomputes per-color weights from scratch (test support for the
    /// incremental bookkeeping).
    pub fn recomputed_color_weights(&self) -> Vec<Weight> {
        let mut ws = vec![0; self.k];
        for (e, &c) in self.color_of.iter().enumerate() {
            if c != NONE {
                ws[c as usize] += self.g.weight(e as EdgeIndex);
            }
        }
        ws
    }

    /// Full properness scan: no two edges of equal color share an endpoint
    /// and all incident/degree bookkeeping matches. Test support; O(n k + m).
    pub fn check_consistent(&self) -> Result<(), String> {
        let mut degrees = vec![0u32; self.g.n()];
        for (e, &c) in self.color_of.iter().enumerate() {
            if c == NONE {
                continue;
            }
            let edge = self.g.edge(e as EdgeIndex);
            for v in [edge.u, edge.v] {
                degrees[v as usize] += 1;
                let slot = self.incident[v as usize * self.k + c as usize];
                if slot != e as u32 {
                    return Err(format!(
                        "edge {e} colored {c} but incident[{v}][{c}] = {slot}"
                    ));
                }
            }
        }
        for v in 0..self.g.n() {
            if degrees[v] != self.colored_degree[v] {
                return Err(format!("colored_degree[{v}] off"));
            }
            for c in 0..self.k {
                let slot = self.incident[v * self.k + c];
                if slot != NONE && self.color_of[slot as usize] != c as u32 {
                    return Err(format!("incident[{v}][{c}] points at wrong-colored edge"));
                }
            }
        }
        if self.color_weights != self.recomputed_color_weights() {
            return Err("color weights out of sync".into());
        }
        Ok(())
    }
}
