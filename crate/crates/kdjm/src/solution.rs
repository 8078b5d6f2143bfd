//! Solution representation: `k` pairwise edge-disjoint matchings ("classes")
//! over a [`WeightedGraph`], plus validation against the graph.

use crate::graph::{EdgeIndex, VertexId, Weight, WeightedGraph};
use thiserror::Error;

/// A `k`-disjoint matching. `class_of` is the per-edge assignment and the
/// source of truth; `classes` and the weight fields are derived bookkeeping
/// kept in sync by the mutation methods.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DisjointMatching {
    k: usize,
    class_of: Vec<Option<u32>>,
    classes: Vec<Vec<EdgeIndex>>,
    class_weights: Vec<Weight>,
    total_weight: Weight,
}

impl DisjointMatching {
    pub fn new(k: usize, m: usize) -> Self {
        DisjointMatching {
            k,
            class_of: vec![None; m],
            classes: vec![Vec::new(); k],
            class_weights: vec![0; k],
            total_weight: 0,
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn class_of(&self, e: EdgeIndex) -> Option<usize> {
        self.class_of[e as usize].map(|c| c as usize)
    }

    pub fn is_assigned(&self, e: EdgeIndex) -> bool {
        self.class_of[e as usize].is_some()
    }

    /// Edge indices of one class, ascending.
    pub fn class(&self, c: usize) -> &[EdgeIndex] {
        &self.classes[c]
    }

    pub fn class_weight(&self, c: usize) -> Weight {
        self.class_weights[c]
    }

    pub fn class_weights(&self) -> &[Weight] {
        &self.class_weights
    }

    pub fn total_weight(&self) -> Weight {
        self.total_weight
    }

    /// Number of assigned edges over all classes.
    pub fn size(&self) -> usize {
        self.classes.iter().map(Vec::len).sum()
    }

    /// Assigns an unassigned edge to a class. Panics if already assigned;
    /// matching-property violations are the caller's responsibility and are
    /// caught by [`validate_solution`].
    pub fn assign(&mut self, g: &WeightedGraph, e: EdgeIndex, c: usize) {
        assert!(
            self.class_of[e as usize].is_none(),
            "edge {e} already assigned"
        );
        self.class_of[e as usize] = Some(c as u32);
        let pos = self.classes[c].binary_search(&e).unwrap_err();
        self.classes[c].insert(pos, e);
        self.class_weights[c] += g.weight(e);
        self.total_weight += g.weight(e);
    }

    /// Removes an edge from its class (used by the 2-augmentation routines).
    pub fn unassign(&mut self, g: &WeightedGraph, e: EdgeIndex) {
        let c = self.class_of[e as usize].take().expect("edge not assigned") as usize;
        let pos = self.classes[c].binary_search(&e).unwrap();
        self.classes[c].remove(pos);
        self.class_weights[c] -= g.weight(e);
        self.total_weight -= g.weight(e);
    }

    /// Per-class mate map: `mate[v] = Some(u)` iff class `c` matches `v` to `u`.
    pub fn class_mates(&self, g: &WeightedGraph, c: usize) -> Vec<Option<VertexId>> {
        let mut mate = vec![None; g.n()];
        for &e in &self.classes[c] {
            let edge = g.edge(e);
            mate[edge.u as usize] = Some(edge.v);
            mate[edge.v as usize] = Some(edge.u);
        }
        mate
    }
}

/// Total demand carried by the solution.
pub fn solution_weight(s: &DisjointMatching) -> Weight {
    s.total_weight()
}

/// First violation found when checking a solution, if any.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Violation {
    #[error("class {class}: edges {e1} and {e2} share vertex {vertex}")]
    SharedEndpoint {
        class: usize,
        e1: EdgeIndex,
        e2: EdgeIndex,
        vertex: VertexId,
    },
    #[error("edge {edge} appears in class {first} and class {second}")]
    DuplicateAssignment {
        edge: EdgeIndex,
        first: usize,
        second: usize,
    },
    #[error("weight bookkeeping mismatch: recorded {recorded}, recomputed {actual}")]
    WeightMismatch { recorded: Weight, actual: Weight },
    #[error("edge index {edge} out of range (m = {m})")]
    EdgeOutOfRange { edge: EdgeIndex, m: usize },
    #[error("class_of says edge {edge} is in class {class_of:?} but class lists disagree")]
    InconsistentIndex { edge: EdgeIndex, class_of: Option<usize> },
}

/// Checks every invariant of [`DisjointMatching`] against `g`: per-class
/// matching property, pairwise disjointness, and weight bookkeeping.
pub fn validate_solution(g: &WeightedGraph, s: &DisjointMatching) -> Result<(), Violation> {
    let mut seen: Vec<Option<usize>> = vec![None; g.m()];
    let mut total: Weight = 0;
    for c in 0..s.k() {
        let mut used: Vec<Option<EdgeIndex>> = vec![None; g.n()];
        let mut class_total: Weight = 0;
        for &e in s.class(c) {
            if (e as usize) >= g.m() {
                return Err(Violation::EdgeOutOfRange { edge: e, m: g.m() });
            }
            if let Some(first) = seen[e as usize] {
                return Err(Violation::DuplicateAssignment {
                    edge: e,
                    first,
                    second: c,
                });
            }
            seen[e as usize] = Some(c);
            if s.class_of(e) != Some(c) {
                return Err(Violation::InconsistentIndex {
                    edge: e,
                    class_of: s.class_of(e),
                });
            }
            let edge = g.edge(e);
            for v in [edge.u, edge.v] {
                if let Some(e1) = used[v as usize] {
                    return Err(Violation::SharedEndpoint {
                        class: c,
                        e1,
                        e2: e,
                        vertex: v,
                    });
                }
                used[v as usize] = Some(e);
            }
            class_total += edge.w;
        }
        if class_total != s.class_weight(c) {
            return Err(Violation::WeightMismatch {
                recorded: s.class_weight(c),
                actual: class_total,
            });
        }
        total += class_total;
    }
    // an edge assigned in class_of but missing from every class list
    for (e, assigned) in s.class_of.iter().enumerate() {
        if assigned.is_some() && seen[e].is_none() {
            return Err(Violation::InconsistentIndex {
                edge: e as EdgeIndex,
                class_of: s.class_of(e as EdgeIndex),
            });
        }
    }
    if total != s.total_weight() {
        return Err(Violation::WeightMismatch {
            recorded: s.total_weight(),
            actual: total,
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_graph;

    fn triangle() -> crate::graph::WeightedGraph {
        build_graph(3, [(0, 1, 3), (1, 2, 2), (0, 2, 1)]).unwrap()
    }

    #[test]
    fn valid_two_class_solution() {
        let g = triangle();
        let mut s = DisjointMatching::new(2, g.m());
        s.assign(&g, 0, 0); // (0,1) w=3
        s.assign(&g, 2, 1); // (1,2) w=2
        validate_solution(&g, &s).unwrap();
        assert_eq!(solution_weight(&s), 5);
        assert_eq!(s.class_weights(), &[3, 2]);
    }

    #[test]
    fn shared_endpoint_is_reported() {
        let g = triangle();
        let mut s = DisjointMatching::new(1, g.m());
        s.assign(&g, 0, 0); // (0,1)
        s.assign(&g, 2, 0); // (1,2) shares vertex 1
        let err = validate_solution(&g, &s).unwrap_err();
        assert_eq!(
            err,
            Violation::SharedEndpoint {
                class: 0,
                e1: 0,
                e2: 2,
                vertex: 1
            }
        );
    }

    #[test]
    fn empty_classes_are_valid() {
        let g = triangle();
        let s = DisjointMatching::new(4, g.m());
        validate_solution(&g, &s).unwrap();
        assert_eq!(s.total_weight(), 0);
    }

    #[test]
    fn unassign_restores_weight() {
        let g = triangle();
        let mut s = DisjointMatching::new(2, g.m());
        s.assign(&g, 0, 0);
        s.assign(&g, 2, 1);
        s.unassign(&g, 0);
        validate_solution(&g, &s).unwrap();
        assert_eq!(s.total_weight(), 2);
        assert!(!s.is_assigned(0));
    }
}
