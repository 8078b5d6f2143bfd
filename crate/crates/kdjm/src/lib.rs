//! Algorithms, exact oracles, instance tooling, and configuration plumbing
//! for the k-disjoint matching problem: pack k pairwise edge-disjoint
//! matchings of maximum total demand into a weighted graph, as needed when
//! scheduling k reconfigurable circuit switches.

pub mod blossom;
pub mod color;
pub mod color_state;
pub mod config;
pub mod exact;
pub mod graph;
pub mod instances;
pub mod iter;
pub mod kec;
pub mod node_centered;
pub mod postprocess;
pub mod solution;

pub use config::{Algorithm, AlgorithmConfig};
pub use graph::{build_graph, sort_edges_desc, Edge, EdgeIndex, VertexId, Weight, WeightedGraph};
pub use solution::{solution_weight, validate_solution, DisjointMatching};
