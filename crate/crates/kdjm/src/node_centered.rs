//! Node-centered greedy coloring: vertices are ranked by an aggregate of
//! their incident demands and processed in rating-decreasing order, coloring
//! incident edges heaviest-first whenever the endpoints share a free color.
//! A threshold θ defers light edges (weight < θ·D) to a second, globally
//! greedy phase.

use crate::color_state::ColorState;
use crate::graph::{
    sort_edges_desc, EdgeIndex, SortedEdgeList, VertexId, Weight, WeightedGraph,
};
use crate::iter::greedy_matching_pass;
use crate::solution::DisjointMatching;
use std::cmp::Ordering;

/// Vertex rating functions over the incident demand multiset.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rating {
    Max,
    Avg,
    Median,
    Sum,
    /// Sum of the `min(k, deg)` largest incident demands.
    KSum,
}

impl Rating {
    pub fn all() -> [Rating; 5] {
        [Rating::Max, Rating::Avg, Rating::Median, Rating::Sum, Rating::KSum]
    }

    pub fn label(&self) -> &'static str {
        match self {
            Rating::Max => "max",
            Rating::Avg => "avg",
            Rating::Median => "median",
            Rating::Sum => "sum",
            Rating::KSum => "ksum",
        }
    }

    pub fn parse(s: &str) -> Option<Rating> {
        Some(match s {
            "max" => Rating::Max,
            "avg" => Rating::Avg,
            "median" => Rating::Median,
            "sum" => Rating::Sum,
            "ksum" => Rating::KSum,
            _ => return None,
        })
    }
}

/// Exact rational rating value (only AVG produces a non-unit denominator).
/// Comparison is by value, via cross-multiplication.
#[derive(Debug, Clone, Copy)]
pub struct RatingValue {
    pub num: u128,
    pub den: u64,
}

impl Ord for RatingValue {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num * other.den as u128).cmp(&(other.num * self.den as u128))
    }
}

impl PartialOrd for RatingValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for RatingValue {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for RatingValue {}

/// Rating of one vertex. Degree-0 vertices rate 0; MEDIAN of an even count
/// is the lower median, keeping everything in integers.
pub fn vertex_rating(g: &WeightedGraph, v: VertexId, rating: Rating, k: usize) -> RatingValue {
    let mut weights: Vec<Weight> = g.neighbors(v).iter().map(|&(_, e)| g.weight(e)).collect();
    if weights.is_empty() {
        return RatingValue { num: 0, den: 1 };
    }
    match rating {
        Rating::Max => RatingValue {
            num: *weights.iter().max().unwrap() as u128,
            den: 1,
        },
        Rating::Sum => RatingValue {
            num: weights.iter().map(|&w| w as u128).sum(),
            den: 1,
        },
        Rating::Avg => RatingValue {
            num: weights.iter().map(|&w| w as u128).sum(),
            den: weights.len() as u64,
        },
        Rating::Median => {
            weights.sort_unstable();
            RatingValue {
                num: weights[(weights.len() - 1) / 2] as u128,
                den: 1,
            }
        }
        Rating::KSum => {
            weights.sort_unstable_by(|a, b| b.cmp(a));
            RatingValue {
                num: weights.iter().take(k).map(|&w| w as u128).sum(),
                den: 1,
            }
        }
    }
}

/// Threshold fraction θ of the maximum demand, held as an exact rational.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Theta {
    num: u32,
    den: u32,
}

impl Theta {
    pub fn new(num: u32, den: u32) -> Option<Theta> {
        (den != 0 && num <= den).then_some(Theta { num, den })
    }

    pub fn zero() -> Theta {
        Theta { num: 0, den: 1 }
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    /// Accepts decimals ("0.2") and fractions ("1/5"); must lie in [0, 1].
    pub fn parse(s: &str) -> Option<Theta> {
        if let Some((n, d)) = s.split_once('/') {
            return Theta::new(n.trim().parse().ok()?, d.trim().parse().ok()?).map(Theta::reduced);
        }
        if let Some((int, frac)) = s.split_once('.') {
            let int: u32 = if int.is_empty() { 0 } else { int.parse().ok()? };
            if frac.len() > 9 || frac.chars().any(|c| !c.is_ascii_digit()) {
                return None;
            }
            let den = 10u32.checked_pow(frac.len() as u32)?;
            let num = int.checked_mul(den)?.checked_add(frac.parse().unwrap_or(0))?;
            return Theta::new(num, den).map(Theta::reduced);
        }
        Theta::new(s.parse().ok()?, 1)
    }

    fn reduced(self) -> Theta {
        let mut a = self.num.max(1);
        let mut b = self.den;
        while b != 0 {
            (a, b) = (b, a % b);
        }
        if self.num == 0 {
            Theta { num: 0, den: 1 }
        } else {
            Theta { num: self.num / a, den: self.den / a }
        }
    }

    /// Phase-1 skip rule: strict comparison `w < θ·D` in exact arithmetic.
    pub fn skips(&self, w: Weight, max_demand: Weight) -> bool {
        (w as u128) * (self.den as u128) < (self.num as u128) * (max_demand as u128)
    }
}

impl std::fmt::Display for Theta {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.den == 1 {
            return write!(f, "{}", self.num);
        }
        // prefer a short decimal form when the denominator allows one
        for e in 1..=9u32 {
            let pow = 10u64.pow(e);
            if pow % self.den as u64 == 0 {
                let scaled = self.num as u64 * (pow / self.den as u64);
                let int = scaled / pow;
                let frac = format!("{:0width$}", scaled % pow, width = e as usize);
                let frac = frac.trim_end_matches('0');
                return if frac.is_empty() {
                    write!(f, "{int}")
                } else {
                    write!(f, "{int}.{frac}")
                };
            }
        }
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// The node-centered algorithm. For a single class the result is defined as
/// the plain greedy matching over the demand-sorted edge list (identical for
/// every rating and threshold).
pub fn node_centered(g: &WeightedGraph, k: usize, rating: Rating, theta: Theta) -> DisjointMatching {
    assert!(k >= 1);
    if k == 1 {
        let order = sort_edges_desc(g);
        let mut avail = vec![true; g.m()];
        let matching = greedy_matching_pass(g, &order, &mut avail);
        let mut sol = DisjointMatching::new(1, g.m());
        for e in matching.edges {
            sol.assign(g, e, 0);
        }
        return sol;
    }
    let max_demand = g.max_demand();
    let mut ratings = Vec::with_capacity(g.n());
    for v in 0..g.n() as VertexId {
        ratings.push(vertex_rating(g, v, rating, k));
    }
    let mut vertices: Vec<VertexId> = (0..g.n() as VertexId).collect();
    vertices.sort_by(|&a, &b| {
        ratings[b as usize]
            .cmp(&ratings[a as usize])
            .then(a.cmp(&b))
    });

    let mut state = ColorState::new(g, k);
    let mut incident: Vec<(Weight, VertexId, EdgeIndex)> = Vec::new();
    for &v in &vertices {
        if state.is_saturated(v) {
            continue;
        }
        incident.clear();
        incident.extend(
            g.neighbors(v)
                .iter()
                .map(|&(x, e)| (g.weight(e), x, e)),
        );
        incident.sort_unstable_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        for &(w, x, e) in &incident {
            if state.is_saturated(v) {
                break;
            }
            if state.color_of(e).is_some() || theta.skips(w, max_demand) || state.is_saturated(x) {
                continue;
            }
            if let Some(c) = state.common_free_color(v, x, false) {
                state.assign(e, c);
            }
        }
    }
    // Phase 2: with an active threshold, the deferred edges are matched and
    // colored greedily in global demand order. Freeness only shrinks, so
    // edges already rejected in phase 1 cannot become colorable; with θ = 0
    // nothing was deferred and the phase is skipped outright.
    if !theta.is_zero() {
        let order = sort_edges_desc(g);
        phase2(g, &mut state, &order);
    }
    state.into_solution()
}

fn phase2(g: &WeightedGraph, state: &mut ColorState<'_>, order: &SortedEdgeList) {
    for e in order.iter() {
        if state.color_of(e).is_some() {
            continue;
        }
        let edge = g.edge(e);
        if state.is_saturated(edge.u) || state.is_saturated(edge.v) {
            continue;
        }
        if let Some(c) = state.common_free_color(edge.u, edge.v, false) {
            state.assign(e, c);
        }
    }
}
