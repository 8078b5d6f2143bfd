//! Weight-improvement postprocessing: maximum-gain 2-augmentations applied
//! either in one weight-ordered pass (Swaps) or in randomized vertex sweeps
//! (ROMA), per class. Replacement edges must be unused by *every* class so
//! the k-disjointness of the overall solution is preserved.

use crate::graph::{EdgeIndex, VertexId, Weight, WeightedGraph};
use crate::solution::DisjointMatching;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// When to run Swaps/ROMA relative to the k matching-construction rounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    #[default]
    None,
    /// Swaps on each class right after it is completed.
    LocalSwaps,
    /// Swaps on every class once all classes exist.
    GlobalSwaps,
    /// ROMA with the given sweep limit on each class right after completion.
    Roma { sweeps: u32 },
}

impl Strategy {
    pub fn after_class(
        &self,
        g: &WeightedGraph,
        sol: &mut DisjointMatching,
        class: usize,
        seed: u64,
    ) {
        match *self {
            Strategy::None | Strategy::GlobalSwaps => {}
            Strategy::LocalSwaps => swaps(g, sol, class),
            Strategy::Roma { sweeps } => roma(g, sol, class, sweeps, roma_seed(seed, class)),
        }
    }

    pub fn after_all(&self, g: &WeightedGraph, sol: &mut DisjointMatching, _seed: u64) {
        if *self == Strategy::GlobalSwaps {
            for class in 0..sol.k() {
                swaps(g, sol, class);
            }
        }
    }

    pub fn is_deterministic(&self) -> bool {
        !matches!(self, Strategy::Roma { .. })
    }

    pub fn label(&self) -> String {
        match self {
            Strategy::None => "none".into(),
            Strategy::LocalSwaps => "local".into(),
            Strategy::GlobalSwaps => "global".into(),
            Strategy::Roma { sweeps } => format!("roma:{sweeps}"),
        }
    }
}

fn roma_seed(seed: u64, class: usize) -> u64 {
    seed.wrapping_add((class as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// A positive-gain replacement of one matching edge by two free edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SwapCandidate {
    pub replaced: EdgeIndex,
    pub added_at_u: EdgeIndex,
    pub added_at_v: EdgeIndex,
    pub gain: i64,
}

/// Best free edge at `x` (excluding partner `exclude`), plus the runner-up.
/// "Free" means: the far endpoint is unmatched in this class and the edge is
/// not used by any class. Returns up to two `(weight, far endpoint, edge)`
/// entries, heaviest first, ties to the lower endpoint id.
fn top_two_free(
    g: &WeightedGraph,
    sol: &DisjointMatching,
    mates: &[Option<VertexId>],
    x: VertexId,
    exclude: VertexId,
) -> [Option<(Weight, VertexId, EdgeIndex)>; 2] {
    let mut top: [Option<(Weight, VertexId, EdgeIndex)>; 2] = [None, None];
    for &(r, e) in g.neighbors(x) {
        if r == exclude || mates[r as usize].is_some() || sol.is_assigned(e) {
            continue;
        }
        let cand = (g.weight(e), r, e);
        let better = |a: (Weight, VertexId, EdgeIndex), b: (Weight, VertexId, EdgeIndex)| {
            (b.0, a.1) > (a.0, b.1) // higher weight wins, then lower vertex id
        };
        match top[0] {
            None => top[0] = Some(cand),
            Some(best) if better(best, cand) => {
                top[1] = top[0];
                top[0] = Some(cand);
            }
            Some(_) => match top[1] {
                None => top[1] = Some(cand),
                Some(second) if better(second, cand) => top[1] = Some(cand),
                Some(_) => {}
            },
        }
    }
    top
}

/// Finds and applies the maximum-gain 2-augmentation for the matching edge
/// `e` of `class`, if one with positive gain exists. `mates` is the class's
/// mate map and is kept in sync.
pub fn max_gain_two_augmentation_with_mates(
    g: &WeightedGraph,
    sol: &mut DisjointMatching,
    class: usize,
    e: EdgeIndex,
    mates: &mut [Option<VertexId>],
) -> Option<SwapCandidate> {
    debug_assert_eq!(sol.class_of(e), Some(class));
    let edge = *g.edge(e);
    let (u, v) = (edge.u, edge.v);
    let at_u = top_two_free(g, sol, mates, u, v);
    let at_v = top_two_free(g, sol, mates, v, u);
    let (fu, fv) = (at_u[0]?, at_v[0]?);
    // resolve a shared far endpoint with the runner-ups
    let pair = if fu.1 != fv.1 {
        Some((fu, fv))
    } else {
        match (at_u[1], at_v[1]) {
            (Some(su), Some(sv)) => {
                if su.0 + fv.0 >= fu.0 + sv.0 {
                    Some((su, fv))
                } else {
                    Some((fu, sv))
                }
            }
            (Some(su), None) => Some((su, fv)),
            (None, Some(sv)) => Some((fu, sv)),
            (None, None) => None,
        }
    };
    let (pu, pv) = pair?;
    debug_assert_ne!(pu.1, pv.1);
    let gain = pu.0 as i64 + pv.0 as i64 - edge.w as i64;
    if gain <= 0 {
        return None;
    }
    sol.unassign(g, e);
    sol.assign(g, pu.2, class);
    sol.assign(g, pv.2, class);
    mates[u as usize] = Some(pu.1);
    mates[pu.1 as usize] = Some(u);
    mates[v as usize] = Some(pv.1);
    mates[pv.1 as usize] = Some(v);
    Some(SwapCandidate {
        replaced: e,
        added_at_u: pu.2,
        added_at_v: pv.2,
        gain,
    })
}

/// Standalone variant that builds the class mate map itself.
pub fn max_gain_two_augmentation(
    g: &WeightedGraph,
    sol: &mut DisjointMatching,
    class: usize,
    e: EdgeIndex,
) -> Option<SwapCandidate> {
    let mut mates = sol.class_mates(g, class);
    max_gain_two_augmentation_with_mates(g, sol, class, e, &mut mates)
}

/// One pass over the class's matching edges in weight-decreasing order
/// (ties to the lower edge index), applying the maximum-gain 2-augmentation
/// to each. Every initial matching edge is considered exactly once.
pub fn swaps(g: &WeightedGraph, sol: &mut DisjointMatching, class: usize) {
    let mut list: Vec<EdgeIndex> = sol.class(class).to_vec();
    list.sort_by(|&a, &b| g.weight(b).cmp(&g.weight(a)).then(a.cmp(&b)));
    let mut mates = sol.class_mates(g, class);
    for e in list {
        max_gain_two_augmentation_with_mates(g, sol, class, e, &mut mates);
    }
}

/// Randomized vertex sweeps: up to `sweeps` times, visit all vertices in a
/// seeded random order and 2-augment each matched vertex's edge; stops early
/// after a sweep without changes. Bit-reproducible for a fixed seed.
pub fn roma(g: &WeightedGraph, sol: &mut DisjointMatching, class: usize, sweeps: u32, seed: u64) {
    assert!(sweeps >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut mates = sol.class_mates(g, class);
    let mut order: Vec<VertexId> = (0..g.n() as VertexId).collect();
    for _ in 0..sweeps {
        order.shuffle(&mut rng);
        let mut changed = false;
        for &u in &order {
            let Some(v) = mates[u as usize] else { continue };
            let e = g.edge_between(u, v).expect("matched edge exists");
            if max_gain_two_augmentation_with_mates(g, sol, class, e, &mut mates).is_some() {
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_graph;
    use crate::solution::validate_solution;

    #[test]
    fn basic_swap_with_positive_gain() {
        // matched u(0)-v(1) w=2; free u-r(2) w=3 and v-s(3) w=2: gain 3
        let g = build_graph(4, [(0, 1, 2), (0, 2, 3), (1, 3, 2)]).unwrap();
        let mut s = DisjointMatching::new(1, g.m());
        s.assign(&g, 0, 0);
        let cand = max_gain_two_augmentation(&g, &mut s, 0, 0).unwrap();
        assert_eq!(cand.gain, 3);
        validate_solution(&g, &s).unwrap();
        assert_eq!(s.total_weight(), 5);
    }

    #[test]
    fn no_swap_when_gain_not_positive() {
        // matched w=10; best free neighbors sum to 9
        let g = build_graph(4, [(0, 1, 10), (0, 2, 5), (1, 3, 4)]).unwrap();
        let mut s = DisjointMatching::new(1, g.m());
        s.assign(&g, 0, 0);
        assert!(max_gain_two_augmentation(&g, &mut s, 0, 0).is_none());
        assert_eq!(s.total_weight(), 10);
    }

    #[test]
    fn shared_replacement_vertex_falls_back() {
        // both endpoints' best free neighbor is the same vertex 2, so one
        // side has to settle for its runner-up
        let g = build_graph(
            5,
            [(0, 1, 1), (0, 2, 10), (1, 2, 9), (0, 3, 2), (1, 4, 1)],
        )
        .unwrap();
        let mut s = DisjointMatching::new(1, g.m());
        s.assign(&g, 0, 0); // (0,1) w=1
        let cand = max_gain_two_augmentation(&g, &mut s, 0, 0).unwrap();
        validate_solution(&g, &s).unwrap();
        // u->2 (10) with v->4 (1) and u->3 (2) with v->2 (9) both total 11
        assert_eq!(cand.gain, 10);
        assert_eq!(s.total_weight(), 11);
    }

    #[test]
    fn shared_vertex_with_no_alternative_blocks_swap() {
        let g = build_graph(3, [(0, 1, 1), (0, 2, 5), (1, 2, 5)]).unwrap();
        let mut s = DisjointMatching::new(1, g.m());
        s.assign(&g, 0, 0);
        // both sides want vertex 2 and neither has a runner-up
        assert!(max_gain_two_augmentation(&g, &mut s, 0, 0).is_none());
    }

    #[test]
    fn cross_class_edges_are_not_stolen() {
        // the would-be replacement edge (0,2) already sits in class 1
        let g = build_graph(4, [(0, 1, 2), (0, 2, 30), (1, 3, 30)]).unwrap();
        let mut s = DisjointMatching::new(2, g.m());
        s.assign(&g, 0, 0); // (0,1) in class 0
        s.assign(&g, 1, 1); // (0,2) in class 1
        assert!(max_gain_two_augmentation(&g, &mut s, 0, 0).is_none());
        validate_solution(&g, &s).unwrap();
    }

    #[test]
    fn swaps_is_single_weight_ordered_pass() {
        // two matched edges; fixing the heavier one first consumes a free
        // vertex the lighter one's much better swap would have needed
        let g = build_graph(
            7,
            [
                (0, 1, 4), // class edge A (heavier)
                (2, 3, 3), // class edge B
                (0, 4, 5), // A's u-side candidate
                (1, 5, 3), // A's v-side candidate
                (2, 4, 9), // B's u-side candidate, shares vertex 4
                (3, 6, 1), // B's v-side candidate
            ],
        )
        .unwrap();
        // canonical edge order: (0,1)=0 (0,4)=1 (1,5)=2 (2,3)=3 (2,4)=4 (3,6)=5
        let mut s = DisjointMatching::new(1, g.m());
        s.assign(&g, 0, 0);
        s.assign(&g, 3, 0);
        swaps(&g, &mut s, 0);
        validate_solution(&g, &s).unwrap();
        // A swaps first (gain 4) and takes vertex 4; B's swap (would gain 7)
        // is then blocked, so B stays. Reversed order would reach 14.
        assert_eq!(s.total_weight(), 5 + 3 + 3);
        assert!(!s.is_assigned(0));
        assert!(s.is_assigned(3));
    }

    #[test]
    fn roma_improves_and_stops() {
        let g = build_graph(4, [(0, 1, 2), (0, 2, 3), (1, 3, 2)]).unwrap();
        let mut s = DisjointMatching::new(1, g.m());
        s.assign(&g, 0, 0);
        roma(&g, &mut s, 0, 4, 99);
        validate_solution(&g, &s).unwrap();
        assert_eq!(s.total_weight(), 5);
    }

    #[test]
    fn roma_is_reproducible() {
        let g = build_graph(
            6,
            [
                (0, 1, 2),
                (2, 3, 2),
                (0, 4, 3),
                (1, 5, 3),
                (2, 4, 3),
                (3, 5, 3),
            ],
        )
        .unwrap();
        // canonical order: (0,1)=0 (0,4)=1 (1,5)=2 (2,3)=3 (2,4)=4 (3,5)=5
        let build = || {
            let mut s = DisjointMatching::new(1, g.m());
            s.assign(&g, 0, 0); // (0,1)
            s.assign(&g, 3, 0); // (2,3)
            s
        };
        let mut a = build();
        let mut b = build();
        roma(&g, &mut a, 0, 4, 1234);
        roma(&g, &mut b, 0, 4, 1234);
        assert_eq!(a, b);
        validate_solution(&g, &a).unwrap();
        let mut c = build();
        roma(&g, &mut c, 0, 4, 4321);
        assert!(c.total_weight() >= build().total_weight());
    }

    #[test]
    fn empty_class_is_a_no_op() {
        let g = build_graph(3, [(0, 1, 1)]).unwrap();
        let mut s = DisjointMatching::new(2, g.m());
        roma(&g, &mut s, 1, 4, 7);
        swaps(&g, &mut s, 1);
        assert_eq!(s.total_weight(), 0);
    }
}
