//! Synthetic and adversarial instance generators. Every stochastic generator
//! is a pure function of its parameters and seed.

use super::InstanceError;
use crate::graph::{build_graph, VertexId, Weight, WeightedGraph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;

/// Recursive-quadrant probabilities as exact rationals: `parts` over `den`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InitiatorMatrix {
    pub parts: [u32; 4],
    pub den: u32,
}

pub const RMAT_B: InitiatorMatrix = InitiatorMatrix { parts: [55, 15, 15, 15], den: 100 };
pub const RMAT_G: InitiatorMatrix = InitiatorMatrix { parts: [45, 15, 15, 25], den: 100 };
pub const RMAT_ER: InitiatorMatrix = InitiatorMatrix { parts: [25, 25, 25, 25], den: 100 };

impl InitiatorMatrix {
    pub fn new(parts: [u32; 4], den: u32) -> Result<Self, InstanceError> {
        if den == 0 || parts.iter().map(|&p| p as u64).sum::<u64>() != den as u64 {
            return Err(InstanceError::InvalidInitiator);
        }
        Ok(InitiatorMatrix { parts, den })
    }

    fn pick_quadrant(&self, rng: &mut ChaCha8Rng) -> (u64, u64) {
        let r = rng.gen_range(0..self.den);
        let mut acc = 0;
        for (q, &p) in self.parts.iter().enumerate() {
            acc += p;
            if r < acc {
                return ((q as u64 >> 1) & 1, q as u64 & 1);
            }
        }
        unreachable!("parts sum to den")
    }
}

/// Edge demand distribution over `[1, max_demand]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DemandDist {
    Uniform,
    /// Exponentially distributed with mean `max_demand / 8`, clamped.
    Exponential,
}

fn sample_demand(dist: DemandDist, max_demand: u64, rng: &mut ChaCha8Rng) -> Weight {
    match dist {
        DemandDist::Uniform => rng.gen_range(1..=max_demand),
        DemandDist::Exponential => {
            let mean = (max_demand as f64 / 8.0).max(1.0);
            let u: f64 = rng.gen();
            let x = -(1.0 - u).ln() * mean;
            (1 + x as u64).min(max_demand)
        }
    }
}

/// Graph500-style recursive Kronecker sampler: `2^x` vertices and
/// `edge_factor * 2^x` endpoint samples, deduplicated, self-loops dropped,
/// demands attached afterwards.
pub fn gen_rmat(
    x: u32,
    initiator: InitiatorMatrix,
    edge_factor: u32,
    dist: DemandDist,
    max_demand: u64,
    seed: u64,
) -> Result<WeightedGraph, InstanceError> {
    InitiatorMatrix::new(initiator.parts, initiator.den)?;
    if x == 0 || x > 30 {
        return Err(InstanceError::InvalidParameter(format!(
            "rmat scale {x} out of range 1..=30"
        )));
    }
    if !(10..=20).contains(&x) {
        log::warn!("rmat scale {x} is outside the usual 10..=20 range");
    }
    if max_demand == 0 {
        return Err(InstanceError::InvalidParameter("max_demand must be positive".into()));
    }
    let n: u64 = 1 << x;
    let samples = edge_factor as u64 * n;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs: BTreeSet<(VertexId, VertexId)> = BTreeSet::new();
    for _ in 0..samples {
        let (mut u, mut v) = (0u64, 0u64);
        for _ in 0..x {
            let (du, dv) = initiator.pick_quadrant(&mut rng);
            u = (u << 1) | du;
            v = (v << 1) | dv;
        }
        if u == v {
            continue;
        }
        let (u, v) = if u < v { (u, v) } else { (v, u) };
        pairs.insert((u as VertexId, v as VertexId));
    }
    let triples: Vec<_> = pairs
        .into_iter()
        .map(|(u, v)| (u, v, sample_demand(dist, max_demand, &mut rng)))
        .collect();
    Ok(build_graph(n as usize, triples)?)
}

/// Poisson flow arrivals between uniform random vertex pairs over a time
/// horizon; flow sizes follow a bounded Pareto (heavy-tailed) law and are
/// aggregated into pairwise demands.
pub fn gen_pfabric_like(
    n: usize,
    rate: f64,
    horizon: f64,
    seed: u64,
) -> Result<WeightedGraph, InstanceError> {
    if rate <= 0.0 {
        return Err(InstanceError::InvalidParameter("rate must be positive".into()));
    }
    if n < 2 {
        return Err(InstanceError::InvalidParameter("need at least two vertices".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut demand: std::collections::BTreeMap<(VertexId, VertexId), u64> =
        std::collections::BTreeMap::new();
    // bounded Pareto flow sizes, web-search-like tail
    let alpha = 1.1f64;
    let (lo, hi) = (1.0f64, 10_000.0f64);
    let lo_a = lo.powf(-alpha);
    let hi_a = hi.powf(-alpha);
    let mut t = 0.0;
    loop {
        let u: f64 = rng.gen();
        t += -(1.0 - u).ln() / rate;
        if t > horizon {
            break;
        }
        let src = rng.gen_range(0..n as VertexId);
        let mut dst = rng.gen_range(0..n as VertexId - 1);
        if dst >= src {
            dst += 1;
        }
        let uu: f64 = rng.gen();
        let size = (lo_a - uu * (lo_a - hi_a)).powf(-1.0 / alpha);
        let size = (size.round() as u64).max(1);
        let key = if src < dst { (src, dst) } else { (dst, src) };
        *demand.entry(key).or_insert(0) += size;
    }
    let triples: Vec<_> = demand.into_iter().map(|((u, v), w)| (u, v, w)).collect();
    Ok(build_graph(n, triples)?)
}

/// Plain hypercube of the given dimension with uniform edge weight.
pub fn gen_hypercube(dim: u32, weight: Weight) -> Result<WeightedGraph, InstanceError> {
    if dim == 0 || dim > 20 {
        return Err(InstanceError::InvalidParameter(format!(
            "hypercube dimension {dim} out of range 1..=20"
        )));
    }
    let n = 1usize << dim;
    let mut triples = Vec::new();
    for u in 0..n as VertexId {
        for bit in 0..dim {
            let v = u ^ (1 << bit);
            if u < v {
                triples.push((u, v, weight));
            }
        }
    }
    Ok(build_graph(n, triples)?)
}

/// The lower-bound gadget: a k-dimensional hypercube whose edges weigh 1001,
/// with k pendant vertices of weight-1000 edges attached to every hypercube
/// vertex. Greedy-style algorithms fill all classes with hypercube edges and
/// end up at roughly half of the pendant-only optimum.
pub fn gen_hypercube_pendant(k: u32) -> Result<WeightedGraph, InstanceError> {
    if !(1..=10).contains(&k) {
        return Err(InstanceError::InvalidParameter(format!(
            "hypercube_pendant k {k} out of range 1..=10"
        )));
    }
    let cube = 1usize << k;
    let n = cube * (1 + k as usize);
    let mut triples = Vec::new();
    for u in 0..cube as VertexId {
        for bit in 0..k {
            let v = u ^ (1 << bit);
            if u < v {
                triples.push((u, v, 1001));
            }
        }
        for j in 0..k {
            let pendant = cube as VertexId + u * k + j;
            triples.push((u, pendant, 1000));
        }
    }
    Ok(build_graph(n, triples)?)
}

/// The introductory counterexample: a unit-weight triangle with one pendant
/// vertex per corner. Iterated exact matching reaches only 5 of the optimal
/// 6 edges for three classes.
pub fn gen_triangle_pendant() -> WeightedGraph {
    build_graph(
        6,
        [
            (0, 1, 1),
            (0, 2, 1),
            (1, 2, 1),
            (0, 3, 1),
            (1, 4, 1),
            (2, 5, 1),
        ],
    )
    .expect("static gadget is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn initiator_must_sum_to_one() {
        assert!(InitiatorMatrix::new([50, 50, 50, 50], 100).is_err());
        assert!(InitiatorMatrix::new([55, 15, 15, 15], 100).is_ok());
        assert_eq!(RMAT_B.parts.iter().sum::<u32>(), RMAT_B.den);
        assert_eq!(RMAT_G.parts.iter().sum::<u32>(), RMAT_G.den);
        assert_eq!(RMAT_ER.parts.iter().sum::<u32>(), RMAT_ER.den);
    }

    #[test]
    fn rmat_is_deterministic_and_in_range() {
        let a = gen_rmat(8, RMAT_ER, 8, DemandDist::Uniform, 1000, 42).unwrap();
        let b = gen_rmat(8, RMAT_ER, 8, DemandDist::Uniform, 1000, 42).unwrap();
        assert_eq!(a.n(), 256);
        assert_eq!(a.m(), b.m());
        assert_eq!(a.edges(), b.edges());
        assert!(a.edges().iter().all(|e| (1..=1000).contains(&e.w)));
        let c = gen_rmat(8, RMAT_ER, 8, DemandDist::Uniform, 1000, 43).unwrap();
        assert_ne!(a.edges(), c.edges());
    }

    #[test]
    fn rmat_exponential_demands_in_range() {
        let g = gen_rmat(8, RMAT_B, 8, DemandDist::Exponential, 500_000, 7).unwrap();
        assert!(g.edges().iter().all(|e| (1..=500_000).contains(&e.w)));
        assert!(g.m() > 0);
    }

    #[test]
    fn pfabric_shape_and_determinism() {
        let a = gen_pfabric_like(144, 0.5, 500.0, 9).unwrap();
        let b = gen_pfabric_like(144, 0.5, 500.0, 9).unwrap();
        assert_eq!(a.n(), 144);
        assert_eq!(a.edges(), b.edges());
    }

    #[test]
    fn pfabric_zero_horizon_is_empty() {
        let g = gen_pfabric_like(144, 0.5, 0.0, 1).unwrap();
        assert_eq!(g.n(), 144);
        assert_eq!(g.m(), 0);
    }

    #[test]
    fn pfabric_rate_drives_demand() {
        // Monte-Carlo check: mean total demand grows strictly with the rate
        let mean = |rate: f64| -> f64 {
            (0..20)
                .map(|seed| {
                    gen_pfabric_like(144, rate, 200.0, seed).unwrap().total_weight() as f64
                })
                .sum::<f64>()
                / 20.0
        };
        assert!(mean(0.8) > mean(0.1));
    }

    #[test]
    fn hypercube_pendant_shape() {
        let g = gen_hypercube_pendant(3).unwrap();
        assert_eq!(g.n(), 32);
        assert_eq!(g.m(), 36); // 12 hypercube + 24 pendant edges
        assert_eq!(g.max_demand(), 1001);
        let pendant_total: u64 = g.edges().iter().filter(|e| e.w == 1000).map(|e| e.w).sum();
        assert_eq!(pendant_total, 24 * 1000); // the forced optimum

        let g1 = gen_hypercube_pendant(1).unwrap();
        assert_eq!(g1.m(), 3);
        assert_eq!(g1.n(), 4);
        assert!(gen_hypercube_pendant(0).is_err());
        assert!(gen_hypercube_pendant(11).is_err());
    }

    #[test]
    fn triangle_pendant_shape() {
        let g = gen_triangle_pendant();
        assert_eq!((g.n(), g.m(), g.max_degree(), g.max_demand()), (6, 6, 3, 1));
    }
}
