//! Graph representation shared by all algorithms: a simple, undirected,
//! integer-weighted graph with dense vertex ids and canonically ordered edges.

use thiserror::Error;

/// Dense vertex id in `0..n`.
pub type VertexId = u32;
/// Index into [`WeightedGraph::edges`].
pub type EdgeIndex = u32;
/// Demand in abstract units. Strictly positive for every stored edge.
pub type Weight = u64;

/// An undirected edge stored in canonical form (`u < v`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
    pub w: Weight,
}

impl Edge {
    pub fn endpoints(&self) -> (VertexId, VertexId) {
        (self.u, self.v)
    }

    /// The endpoint that is not `x`. Panics if `x` is not an endpoint.
    pub fn other(&self, x: VertexId) -> VertexId {
        if x == self.u {
            self.v
        } else {
            debug_assert_eq!(x, self.v);
            self.u
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop ({u}, {v}, {w}) is not allowed in a simple graph")]
    SelfLoop { u: VertexId, v: VertexId, w: Weight },
    #[error("duplicate edge ({u}, {v}, {w}): the pair was already given")]
    DuplicateEdge { u: VertexId, v: VertexId, w: Weight },
    #[error("edge ({u}, {v}, {w}) has zero weight; demands must be positive")]
    ZeroWeight { u: VertexId, v: VertexId, w: Weight },
    #[error("edge ({u}, {v}, {w}) references a vertex >= n = {n}")]
    EndpointOutOfRange {
        u: VertexId,
        v: VertexId,
        w: Weight,
        n: usize,
    },
}

/// Immutable weighted graph. Edges are deduplicated, canonicalized and sorted
/// ascending by `(u, v)`, so the edge index order is a pure function of the
/// edge set.
#[derive(Debug, Clone)]
pub struct WeightedGraph {
    n: usize,
    edges: Vec<Edge>,
    adj_offsets: Vec<usize>,
    // (neighbor, edge index), sorted by neighbor within each vertex range
    adj: Vec<(VertexId, EdgeIndex)>,
    max_degree: usize,
    max_demand: Weight,
}

impl WeightedGraph {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeIndex) -> &Edge {
        &self.edges[e as usize]
    }

    pub fn weight(&self, e: EdgeIndex) -> Weight {
        self.edges[e as usize].w
    }

    /// Maximum vertex degree.
    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    /// Maximum demand over all edges (0 for an edgeless graph).
    pub fn max_demand(&self) -> Weight {
        self.max_demand
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj_offsets[v as usize + 1] - self.adj_offsets[v as usize]
    }

    /// Neighbors of `v` as `(neighbor, edge index)`, ascending by neighbor id.
    pub fn neighbors(&self, v: VertexId) -> &[(VertexId, EdgeIndex)] {
        &self.adj[self.adj_offsets[v as usize]..self.adj_offsets[v as usize + 1]]
    }

    /// Edge index between `u` and `v`, if the edge exists.
    pub fn edge_between(&self, u: VertexId, v: VertexId) -> Option<EdgeIndex> {
        let row = self.neighbors(u);
        row.binary_search_by_key(&v, |&(nb, _)| nb)
            .ok()
            .map(|pos| row[pos].1)
    }

    pub fn total_weight(&self) -> Weight {
        self.edges.iter().map(|e| e.w).sum()
    }
}

/// Builds a [`WeightedGraph`] from raw `(u, v, w)` triples.
///
/// Triples may appear in any order and orientation, but each unordered pair
/// must appear at most once; see [`GraphError`] for the rejection cases.
pub fn build_graph(
    n: usize,
    triples: impl IntoIterator<Item = (VertexId, VertexId, Weight)>,
) -> Result<WeightedGraph, GraphError> {
    let mut edges = Vec::new();
    for (u, v, w) in triples {
        if u == v {
            return Err(GraphError::SelfLoop { u, v, w });
        }
        if (u as usize) >= n || (v as usize) >= n {
            return Err(GraphError::EndpointOutOfRange { u, v, w, n });
        }
        if w == 0 {
            return Err(GraphError::ZeroWeight { u, v, w });
        }
        let (u, v) = if u < v { (u, v) } else { (v, u) };
        edges.push(Edge { u, v, w });
    }
    edges.sort_unstable_by_key(|e| (e.u, e.v));
    for pair in edges.windows(2) {
        if pair[0].u == pair[1].u && pair[0].v == pair[1].v {
            let e = pair[1];
            return Err(GraphError::DuplicateEdge { u: e.u, v: e.v, w: e.w });
        }
    }

    let mut degrees = vec![0usize; n];
    for e in &edges {
        degrees[e.u as usize] += 1;
        degrees[e.v as usize] += 1;
    }
    let mut adj_offsets = Vec::with_capacity(n + 1);
    adj_offsets.push(0);
    for v in 0..n {
        adj_offsets.push(adj_offsets[v] + degrees[v]);
    }
    let mut adj = vec![(0, 0); edges.len() * 2];
    let mut cursor = adj_offsets.clone();
    for (i, e) in edges.iter().enumerate() {
        adj[cursor[e.u as usize]] = (e.v, i as EdgeIndex);
        cursor[e.u as usize] += 1;
        adj[cursor[e.v as usize]] = (e.u, i as EdgeIndex);
        cursor[e.v as usize] += 1;
    }
    // Edges are sorted by (u, v), so each vertex's row is already sorted by
    // neighbor for entries where the vertex is the smaller endpoint; entries
    // where it is the larger endpoint are interleaved. Sort each row.
    for v in 0..n {
        adj[adj_offsets[v]..adj_offsets[v + 1]].sort_unstable_by_key(|&(nb, _)| nb);
    }

    Ok(WeightedGraph {
        n,
        max_degree: degrees.iter().copied().max().unwrap_or(0),
        max_demand: edges.iter().map(|e| e.w).max().unwrap_or(0),
        edges,
        adj_offsets,
        adj,
    })
}

/// Edge indices in demand-descending order with ties broken by ascending
/// canonical `(u, v)`. All greedy-family algorithms share this order.
#[derive(Debug, Clone)]
pub struct SortedEdgeList {
    order: Vec<EdgeIndex>,
}

impl SortedEdgeList {
    pub fn order(&self) -> &[EdgeIndex] {
        &self.order
    }

    pub fn iter(&self) -> impl Iterator<Item = EdgeIndex> + '_ {
        self.order.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Builds a sorted list from an explicit permutation of edge indices.
    /// Callers are responsible for the order; prefer [`sort_edges_desc`].
    pub fn from_order_unchecked(order: Vec<EdgeIndex>) -> Self {
        SortedEdgeList { order }
    }
}

/// Sorts the graph's edges by descending weight; equal weights fall back to
/// the canonical ascending `(u, v)` order, which equals ascending edge index.
pub fn sort_edges_desc(g: &WeightedGraph) -> SortedEdgeList {
    let mut order: Vec<EdgeIndex> = (0..g.m() as EdgeIndex).collect();
    // Edge indices are canonically ordered, so a stable sort on descending
    // weight yields exactly the documented tie-break.
    order.sort_by_key(|&e| std::cmp::Reverse(g.weight(e)));
    SortedEdgeList { order }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn triangle_321() -> WeightedGraph {
        build_graph(3, [(0, 1, 3), (1, 2, 2), (0, 2, 1)]).unwrap()
    }

    #[test]
    fn builds_triangle() {
        let g = triangle_321();
        assert_eq!(g.n(), 3);
        assert_eq!(g.m(), 3);
        assert_eq!(g.max_degree(), 2);
        assert_eq!(g.max_demand(), 3);
        // canonical order: (0,1), (0,2), (1,2)
        assert_eq!(g.edge(0).endpoints(), (0, 1));
        assert_eq!(g.edge(1).endpoints(), (0, 2));
        assert_eq!(g.edge(2).endpoints(), (1, 2));
        assert_eq!(g.edge_between(2, 1), Some(2));
        assert_eq!(g.edge_between(0, 0), None);
    }

    #[test]
    fn rejects_self_loop() {
        let err = build_graph(2, [(0, 0, 1)]).unwrap_err();
        assert_eq!(err, GraphError::SelfLoop { u: 0, v: 0, w: 1 });
    }

    #[test]
    fn rejects_duplicate_and_zero_and_range() {
        assert!(matches!(
            build_graph(3, [(0, 1, 2), (1, 0, 5)]),
            Err(GraphError::DuplicateEdge { u: 0, v: 1, .. })
        ));
        assert!(matches!(
            build_graph(3, [(0, 1, 0)]),
            Err(GraphError::ZeroWeight { .. })
        ));
        assert!(matches!(
            build_graph(2, [(0, 3, 1)]),
            Err(GraphError::EndpointOutOfRange { n: 2, .. })
        ));
    }

    #[test]
    fn triangle_pendant_shape() {
        let g = crate::instances::gen_triangle_pendant();
        assert_eq!(g.n(), 6);
        assert_eq!(g.m(), 6);
        assert_eq!(g.max_degree(), 3);
        assert_eq!(g.max_demand(), 1);
    }

    #[test]
    fn sort_triangle_by_weight() {
        let g = triangle_321();
        let order = sort_edges_desc(&g);
        let pairs: Vec<_> = order.iter().map(|e| g.edge(e).endpoints()).collect();
        assert_eq!(pairs, vec![(0, 1), (1, 2), (0, 2)]);
    }

    #[test]
    fn sort_unit_hypercube_is_lexicographic() {
        let g = crate::instances::gen_hypercube(3, 1).unwrap();
        let order = sort_edges_desc(&g);
        let expected: Vec<EdgeIndex> = (0..g.m() as EdgeIndex).collect();
        assert_eq!(order.order(), &expected[..]);
    }

    #[test]
    fn sort_empty_graph() {
        let g = build_graph(0, []).unwrap();
        assert!(sort_edges_desc(&g).is_empty());
    }

    #[test]
    fn adjacency_is_symmetric_and_sorted() {
        let g = build_graph(5, [(4, 0, 2), (1, 4, 7), (0, 1, 2), (2, 4, 2)]).unwrap();
        for v in 0..5u32 {
            let mut prev = None;
            for &(nb, e) in g.neighbors(v) {
                assert!(prev.is_none_or(|p| p < nb));
                prev = Some(nb);
                let back = g.neighbors(nb).iter().any(|&(x, e2)| x == v && e2 == e);
                assert!(back, "missing reverse entry for ({v}, {nb})");
            }
        }
        assert_eq!(g.max_degree(), 3);
    }
}
