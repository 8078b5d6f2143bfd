//! Weight-aware, k-color-bounded edge coloring in the style of the
//! Misra–Gries constructive proof of Vizing's theorem: color edges in
//! demand-descending order, rescuing conflicts with cd-path inversions and
//! fan rotations, but never using more than `k` colors per vertex. Colored
//! edges may be recolored but are never uncolored.

use crate::color_state::ColorState;
use crate::graph::{sort_edges_desc, EdgeIndex, SortedEdgeList, VertexId, WeightedGraph};
use crate::solution::DisjointMatching;

/// Behavior switches. All sixteen combinations are legal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct KecFlags {
    /// Try a color free on both endpoints before any fan work.
    pub cc: bool,
    /// Prefer free colors whose class carries the least total weight.
    pub lc: bool,
    /// Rotate the whole fan when no cd-inversion was needed.
    pub rl: bool,
    /// While building the fan, avoid saturated neighbors as long as possible.
    pub lf: bool,
}

impl KecFlags {
    pub fn new(cc: bool, lc: bool, rl: bool, lf: bool) -> Self {
        KecFlags { cc, lc, rl, lf }
    }

    /// The sixteen flag combinations, in binary counting order.
    pub fn all() -> Vec<KecFlags> {
        (0..16)
            .map(|bits| KecFlags {
                cc: bits & 1 != 0,
                lc: bits & 2 != 0,
                rl: bits & 4 != 0,
                lf: bits & 8 != 0,
            })
            .collect()
    }

    /// Canonical short form, e.g. `cc+rl` or `none`.
    pub fn label(&self) -> String {
        let mut parts = Vec::new();
        if self.cc {
            parts.push("cc");
        }
        if self.lc {
            parts.push("lc");
        }
        if self.rl {
            parts.push("rl");
        }
        if self.lf {
            parts.push("lf");
        }
        if parts.is_empty() {
            "none".to_string()
        } else {
            parts.join("+")
        }
    }
}

/// A fan around `center`: `seq[0]` is the uncolored edge's far endpoint and
/// every later `seq[i]` is reached by a colored edge whose color is free on
/// `seq[i-1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fan {
    pub center: VertexId,
    pub seq: Vec<VertexId>,
}

/// How much of the fan to rotate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RotateMode {
    /// Rotate up to the first fan vertex on which the target color is free.
    ShortestPrefix,
    /// Rotate everything; requires the target color free on the last vertex.
    Full,
}

/// A color free on both `u` and `v`, honoring the lightest-color policy when
/// `lc` is set (ties go to the lowest color index).
pub fn find_common_free_color(
    state: &ColorState<'_>,
    u: VertexId,
    v: VertexId,
    lc: bool,
) -> Option<usize> {
    state.common_free_color(u, v, lc)
}

/// Builds a maximal fan around `u` starting at the uncolored edge's far end
/// `v`. Extension candidates are scanned in ascending neighbor order; with
/// `lf`, candidates that still have a free color are preferred and a
/// saturated neighbor is appended only as a last resort (it then necessarily
/// terminates the fan).
pub fn build_fan(state: &ColorState<'_>, u: VertexId, v: VertexId, lf: bool) -> Fan {
    let g = state.graph();
    let mut seq = vec![v];
    loop {
        let last = *seq.last().unwrap();
        let mut fallback = None;
        let mut chosen = None;
        for &(w, e) in g.neighbors(u) {
            if seq.contains(&w) {
                continue;
            }
            let Some(c) = state.color_of(e) else { continue };
            if !state.is_free(last, c) {
                continue;
            }
            if lf && state.is_saturated(w) {
                if fallback.is_none() {
                    fallback = Some(w);
                }
                continue;
            }
            chosen = Some(w);
            break;
        }
        match chosen.or(fallback) {
            Some(w) => seq.push(w),
            None => break,
        }
    }
    Fan { center: u, seq }
}

/// Swaps colors `c` and `d` along the maximal alternating path starting at
/// `u`. Requires `c` free and `d` used at `u`; afterwards `d` is free at `u`
/// and the coloring is still proper.
pub fn invert_cd_path(state: &mut ColorState<'_>, u: VertexId, c: usize, d: usize) {
    debug_assert!(state.is_free(u, c) && !state.is_free(u, d));
    let g = state.graph();
    let mut path = Vec::new();
    let mut cur = u;
    let mut want = d;
    while let Some(e) = state.edge_with_color(cur, want) {
        let flipped = if want == d { c } else { d };
        path.push((e, flipped));
        cur = g.edge(e).other(cur);
        want = flipped;
    }
    state.apply_color_changes(&path);
    debug_assert!(state.is_free(u, d));
}

/// Rotates the fan prefix so that the uncolored edge `(center, seq[0])` ends
/// up colored: each prefix edge takes its successor's color and the prefix
/// end takes `d`. Returns `false` when no valid rotation end exists (the
/// caller then treats the attempt as failed; the state is untouched).
pub fn rotate_fan(
    state: &mut ColorState<'_>,
    fan: &Fan,
    target_edge: EdgeIndex,
    d: usize,
    mode: RotateMode,
) -> bool {
    let g = state.graph();
    let end = match mode {
        RotateMode::Full => fan.seq.len() - 1,
        RotateMode::ShortestPrefix => {
            match fan.seq.iter().position(|&w| state.is_free(w, d)) {
                Some(j) => j,
                None => return false,
            }
        }
    };
    debug_assert!(state.is_free(fan.seq[end], d));
    debug_assert!(state.is_free(fan.center, d));
    let mut changes = Vec::with_capacity(end + 1);
    let edge_of = |w: VertexId| g.edge_between(fan.center, w).expect("fan edge exists");
    for i in 0..end {
        let next_color = state.color_of(edge_of(fan.seq[i + 1])).expect("fan edge colored");
        let e = if i == 0 { target_edge } else { edge_of(fan.seq[i]) };
        changes.push((e, next_color));
    }
    let last_edge = if end == 0 { target_edge } else { edge_of(fan.seq[end]) };
    changes.push((last_edge, d));
    state.apply_color_changes(&changes);
    true
}

/// One Misra–Gries-style attempt to color `e` with `center`/`w0` in fixed
/// roles. Fails only if the maximal fan ends at a saturated vertex (or, in a
/// case that fan maximality rules out, no rotation point exists).
fn mg_attempt(
    state: &mut ColorState<'_>,
    e: EdgeIndex,
    center: VertexId,
    w0: VertexId,
    flags: KecFlags,
) -> bool {
    let fan = build_fan(state, center, w0, flags.lf);
    let last = *fan.seq.last().unwrap();
    let Some(d) = state.free_color(last, flags.lc) else {
        return false;
    };
    if state.is_free(center, d) {
        let mode = if flags.rl {
            RotateMode::Full
        } else {
            RotateMode::ShortestPrefix
        };
        let ok = rotate_fan(state, &fan, e, d, mode);
        debug_assert!(ok, "d is free on the last fan vertex");
        ok
    } else {
        let c = state
            .free_color(center, flags.lc)
            .expect("center not saturated");
        invert_cd_path(state, center, c, d);
        let ok = rotate_fan(state, &fan, e, d, RotateMode::ShortestPrefix);
        debug_assert!(ok, "some fan vertex frees d after the inversion");
        ok
    }
}

/// Tries to color edge `e`, in the order: skip rule, common color (with
/// `cc`), fan attempt centered at `u`, fan attempt centered at `v`, skip.
pub(crate) fn try_color_edge(state: &mut ColorState<'_>, e: EdgeIndex, flags: KecFlags) -> bool {
    let edge = *state.graph().edge(e);
    if state.is_saturated(edge.u) || state.is_saturated(edge.v) {
        return false;
    }
    if flags.cc {
        if let Some(c) = find_common_free_color(state, edge.u, edge.v, flags.lc) {
            state.assign(e, c);
            return true;
        }
    }
    mg_attempt(state, e, edge.u, edge.v, flags) || mg_attempt(state, e, edge.v, edge.u, flags)
}

/// k-bounded weight-aware edge coloring over the whole graph.
pub fn k_ec(g: &WeightedGraph, k: usize, flags: KecFlags) -> DisjointMatching {
    let order = sort_edges_desc(g);
    k_ec_with_order(g, k, flags, &order)
}

/// Same as [`k_ec`] but with an explicit processing order.
pub fn k_ec_with_order(
    g: &WeightedGraph,
    k: usize,
    flags: KecFlags,
    order: &SortedEdgeList,
) -> DisjointMatching {
    let mut state = ColorState::new(g, k);
    for e in order.iter() {
        try_color_edge(&mut state, e, flags);
    }
    state.into_solution()
}
