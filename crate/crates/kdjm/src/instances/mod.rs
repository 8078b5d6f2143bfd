//! Instance acquisition: file readers, trace aggregation, and synthetic
//! generators, all addressable through compact `kind=...` spec strings.

mod gen;
mod io;

pub use gen::{
    gen_hypercube, gen_hypercube_pendant, gen_pfabric_like, gen_rmat, gen_triangle_pendant,
    DemandDist, InitiatorMatrix, RMAT_B, RMAT_ER, RMAT_G,
};
pub use io::{
    aggregate_trace, parse_edge_list, parse_matrix_market, read_edge_list, read_matrix_market,
    read_matrix_market_scaled, read_trace, write_edge_list, write_edge_list_string,
};

use crate::graph::{GraphError, WeightedGraph};
use std::path::PathBuf;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum InstanceError {
    #[error("io failure: {0}")]
    Io(#[from] std::io::Error),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("unsupported format: {0}")]
    UnsupportedFormat(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("invalid instance spec: {0}")]
    InvalidSpec(String),
    #[error("initiator probabilities must sum to 1")]
    InvalidInitiator,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

/// A loadable instance description. Stochastic generators carry a mandatory
/// seed so every instance is a pure function of its spec string.
#[derive(Debug, Clone, PartialEq)]
pub enum InstanceSpec {
    EdgeList { path: PathBuf },
    MatrixMarket { path: PathBuf, scale: f64 },
    Trace { path: PathBuf },
    Rmat {
        x: u32,
        initiator: InitiatorMatrix,
        initiator_name: String,
        edge_factor: u32,
        dist: DemandDist,
        max_demand: u64,
        seed: u64,
    },
    Pfabric { n: usize, rate: f64, horizon: f64, seed: u64 },
    HypercubePendant { k: u32 },
    TrianglePendant,
}

impl InstanceSpec {
    /// Parses a `kind=...,key=value,...` spec string, e.g.
    /// `kind=rmat,x=10,init=rmat_b,dist=uni,seed=42`.
    pub fn parse(s: &str) -> Result<Self, InstanceError> {
        let mut kind = None;
        let mut kv = std::collections::BTreeMap::new();
        for part in s.split(',') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| InstanceError::InvalidSpec(format!("expected key=value in {part:?}")))?;
            if key == "kind" {
                kind = Some(value.to_string());
            } else {
                kv.insert(key.to_string(), value.to_string());
            }
        }
        let kind = kind.ok_or_else(|| InstanceError::InvalidSpec("missing kind=".into()))?;
        let get = |key: &str| {
            kv.get(key)
                .cloned()
                .ok_or_else(|| InstanceError::InvalidSpec(format!("{kind}: missing {key}=")))
        };
        let parse_num = |key: &str, value: &str| {
            value.parse().map_err(|_| {
                InstanceError::InvalidSpec(format!("{kind}: bad numeric value for {key}: {value}"))
            })
        };
        match kind.as_str() {
            "edge_list" => Ok(InstanceSpec::EdgeList { path: get("path")?.into() }),
            "mm" | "matrix_market" => {
                let scale = match kv.get("scale") {
                    Some(v) => v.parse().map_err(|_| {
                        InstanceError::InvalidSpec(format!("mm: bad scale {v}"))
                    })?,
                    None => 1.0,
                };
                Ok(InstanceSpec::MatrixMarket { path: get("path")?.into(), scale })
            }
            "trace" => Ok(InstanceSpec::Trace { path: get("path")?.into() }),
            "rmat" => {
                let init_name = kv.get("init").cloned().unwrap_or_else(|| "rmat_b".into());
                let initiator = match init_name.as_str() {
                    "rmat_b" => RMAT_B,
                    "rmat_g" => RMAT_G,
                    "rmat_er" => RMAT_ER,
                    other => {
                        return Err(InstanceError::InvalidSpec(format!(
                            "rmat: unknown initiator {other} (rmat_b, rmat_g, rmat_er)"
                        )))
                    }
                };
                let dist = match kv.get("dist").map(String::as_str).unwrap_or("uni") {
                    "uni" => DemandDist::Uniform,
                    "exp" => DemandDist::Exponential,
                    other => {
                        return Err(InstanceError::InvalidSpec(format!(
                            "rmat: unknown demand distribution {other} (uni, exp)"
                        )))
                    }
                };
                Ok(InstanceSpec::Rmat {
                    x: parse_num("x", &get("x")?)? as u32,
                    initiator,
                    initiator_name: init_name,
                    edge_factor: match kv.get("ef") {
                        Some(v) => parse_num("ef", v)? as u32,
                        None => 16,
                    },
                    dist,
                    max_demand: match kv.get("max_demand") {
                        Some(v) => parse_num("max_demand", v)?,
                        None => 500_000,
                    },
                    seed: parse_num("seed", &get("seed")?)?,
                })
            }
            "pfabric" => Ok(InstanceSpec::Pfabric {
                n: match kv.get("n") {
                    Some(v) => parse_num("n", v)? as usize,
                    None => 144,
                },
                rate: get("rate")?.parse().map_err(|_| {
                    InstanceError::InvalidSpec("pfabric: bad rate".into())
                })?,
                horizon: match kv.get("horizon") {
                    Some(v) => v.parse().map_err(|_| {
                        InstanceError::InvalidSpec("pfabric: bad horizon".into())
                    })?,
                    None => 1000.0,
                },
                seed: parse_num("seed", &get("seed")?)?,
            }),
            "hypercube_pendant" => Ok(InstanceSpec::HypercubePendant {
                k: parse_num("k", &get("k")?)? as u32,
            }),
            "triangle_pendant" => Ok(InstanceSpec::TrianglePendant),
            other => Err(InstanceError::InvalidSpec(format!("unknown kind {other}"))),
        }
    }

    /// Canonical spec string; parseable by [`InstanceSpec::parse`].
    pub fn id(&self) -> String {
        match self {
            InstanceSpec::EdgeList { path } => format!("kind=edge_list,path={}", path.display()),
            InstanceSpec::MatrixMarket { path, scale } => {
                format!("kind=mm,path={},scale={}", path.display(), scale)
            }
            InstanceSpec::Trace { path } => format!("kind=trace,path={}", path.display()),
            InstanceSpec::Rmat {
                x,
                initiator_name,
                edge_factor,
                dist,
                max_demand,
                seed,
                ..
            } => format!(
                "kind=rmat,x={x},init={initiator_name},ef={edge_factor},dist={},max_demand={max_demand},seed={seed}",
                match dist {
                    DemandDist::Uniform => "uni",
                    DemandDist::Exponential => "exp",
                }
            ),
            InstanceSpec::Pfabric { n, rate, horizon, seed } => {
                format!("kind=pfabric,n={n},rate={rate},horizon={horizon},seed={seed}")
            }
            InstanceSpec::HypercubePendant { k } => format!("kind=hypercube_pendant,k={k}"),
            InstanceSpec::TrianglePendant => "kind=triangle_pendant".into(),
        }
    }

    pub fn load(&self) -> Result<WeightedGraph, InstanceError> {
        match self {
            InstanceSpec::EdgeList { path } => read_edge_list(path),
            InstanceSpec::MatrixMarket { path, scale } => read_matrix_market_scaled(path, *scale),
            InstanceSpec::Trace { path } => read_trace(path),
            InstanceSpec::Rmat {
                x,
                initiator,
                edge_factor,
                dist,
                max_demand,
                seed,
                ..
            } => gen_rmat(*x, *initiator, *edge_factor, *dist, *max_demand, *seed),
            InstanceSpec::Pfabric { n, rate, horizon, seed } => {
                gen_pfabric_like(*n, *rate, *horizon, *seed)
            }
            InstanceSpec::HypercubePendant { k } => gen_hypercube_pendant(*k),
            InstanceSpec::TrianglePendant => Ok(gen_triangle_pendant()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_round_trip() {
        let specs = [
            "kind=rmat,x=10,init=rmat_b,dist=uni,seed=42",
            "kind=pfabric,rate=0.5,seed=7",
            "kind=hypercube_pendant,k=3",
            "kind=triangle_pendant",
        ];
        for s in specs {
            let spec = InstanceSpec::parse(s).unwrap();
            let id = spec.id();
            let reparsed = InstanceSpec::parse(&id).unwrap();
            assert_eq!(spec, reparsed, "{s}");
        }
    }

    #[test]
    fn seed_is_mandatory_for_stochastic_kinds() {
        assert!(InstanceSpec::parse("kind=rmat,x=8").is_err());
        assert!(InstanceSpec::parse("kind=pfabric,rate=0.5").is_err());
    }

    #[test]
    fn unknown_kind_is_rejected() {
        assert!(InstanceSpec::parse("kind=nope").is_err());
        assert!(InstanceSpec::parse("x=8").is_err());
    }

    #[test]
    fn file_kinds_load_through_specs() {
        let dir = tempfile::tempdir().unwrap();
        let mm = dir.path().join("g.mtx");
        std::fs::write(
            &mm,
            "%%MatrixMarket matrix coordinate real symmetric\n3 3 2\n1 2 3.5\n2 3 2.0\n",
        )
        .unwrap();
        let spec = InstanceSpec::parse(&format!("kind=mm,path={},scale=2", mm.display())).unwrap();
        let g = spec.load().unwrap();
        assert_eq!(g.m(), 2);
        assert_eq!(g.edge(0).w, 7); // |3.5| * 2

        let trace = dir.path().join("t.txt");
        std::fs::write(&trace, "10 20 5\n20 10 7\n30 30 9\n").unwrap();
        let spec = InstanceSpec::parse(&format!("kind=trace,path={}", trace.display())).unwrap();
        let g = spec.load().unwrap();
        assert_eq!(g.m(), 1);
        assert_eq!(g.edges()[0].w, 12);
    }
}
