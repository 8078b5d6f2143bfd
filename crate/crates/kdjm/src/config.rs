//! Algorithm configurations: canonical string ids, parsing, and a single
//! dispatch point used by the benchmark runner and the test suites.

use crate::blossom::BlossomInit;
use crate::color::b_greedy_and_extend;
use crate::graph::WeightedGraph;
use crate::iter::{blossom_it_with, gpa_it_with, greedy_it_with};
use crate::kec::{k_ec, KecFlags};
use crate::node_centered::{node_centered, Rating, Theta};
use crate::postprocess::Strategy;
use crate::solution::DisjointMatching;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    GreedyIt,
    GpaIt,
    BlossomIt { init: BlossomInit },
    BGreedyExtend,
    NodeCentered { rating: Rating, theta: Theta },
    KEc { flags: KecFlags },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConfigError {
    #[error("unknown algorithm {0:?}")]
    UnknownAlgorithm(String),
    #[error("bad option {0:?} for {1}")]
    BadOption(String, &'static str),
}

/// One runnable configuration: algorithm plus postprocessing strategy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AlgorithmConfig {
    pub algorithm: Algorithm,
    pub post: Strategy,
}

impl AlgorithmConfig {
    pub fn new(algorithm: Algorithm, post: Strategy) -> Self {
        AlgorithmConfig { algorithm, post }
    }

    /// Parses `name[,key=value,...]`, e.g. `gpa,post=local` or
    /// `nc,rating=ksum,theta=0.2` or `kec,flags=cc+rl`.
    pub fn parse(s: &str) -> Result<Self, ConfigError> {
        let mut parts = s.split(',').map(str::trim);
        let name = parts.next().unwrap_or_default();
        let mut post = Strategy::None;
        let mut rating = Rating::KSum;
        let mut theta = Theta::parse("0.2").unwrap();
        let mut flags = KecFlags::new(true, false, true, false); // cc+rl
        let mut init = BlossomInit::default();
        for part in parts {
            if part.is_empty() {
                continue;
            }
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| ConfigError::BadOption(part.into(), "expected key=value"))?;
            match key {
                "post" => {
                    post = match value {
                        "none" => Strategy::None,
                        "local" => Strategy::LocalSwaps,
                        "global" => Strategy::GlobalSwaps,
                        other => match other.strip_prefix("roma:") {
                            Some(l) => Strategy::Roma {
                                sweeps: l.parse().map_err(|_| {
                                    ConfigError::BadOption(other.into(), "roma sweep count")
                                })?,
                            },
                            None => {
                                return Err(ConfigError::BadOption(other.into(), "post"))
                            }
                        },
                    }
                }
                "rating" => {
                    rating = Rating::parse(value)
                        .ok_or_else(|| ConfigError::BadOption(value.into(), "rating"))?
                }
                "theta" => {
                    theta = Theta::parse(value)
                        .ok_or_else(|| ConfigError::BadOption(value.into(), "theta"))?
                }
                "flags" => {
                    let mut f = KecFlags::default();
                    if value != "none" {
                        for item in value.split('+') {
                            match item {
                                "cc" => f.cc = true,
                                "lc" => f.lc = true,
                                "rl" => f.rl = true,
                                "lf" => f.lf = true,
                                other => {
                                    return Err(ConfigError::BadOption(other.into(), "flags"))
                                }
                            }
                        }
                    }
                    flags = f;
                }
                "init" => {
                    init = match value {
                        "empty" => BlossomInit::Empty,
                        "greedy" => BlossomInit::Greedy,
                        other => return Err(ConfigError::BadOption(other.into(), "init")),
                    }
                }
                other => return Err(ConfigError::BadOption(other.into(), "option")),
            }
        }
        let algorithm = match name {
            "greedy" => Algorithm::GreedyIt,
            "gpa" => Algorithm::GpaIt,
            "blossom" => Algorithm::BlossomIt { init },
            "bgreedy" => Algorithm::BGreedyExtend,
            "nc" => Algorithm::NodeCentered { rating, theta },
            "kec" => Algorithm::KEc { flags },
            other => return Err(ConfigError::UnknownAlgorithm(other.into())),
        };
        Ok(AlgorithmConfig { algorithm, post })
    }

    /// Algorithm family name, without configuration details.
    pub fn family(&self) -> &'static str {
        match self.algorithm {
            Algorithm::GreedyIt => "greedy_it",
            Algorithm::GpaIt => "gpa_it",
            Algorithm::BlossomIt { .. } => "blossom_it",
            Algorithm::BGreedyExtend => "bgreedy_extend",
            Algorithm::NodeCentered { .. } => "node_centered",
            Algorithm::KEc { .. } => "k_ec",
        }
    }

    /// Canonical config string; `parse` of the output reproduces the config.
    pub fn id(&self) -> String {
        let mut s = match self.algorithm {
            Algorithm::GreedyIt => "greedy".to_string(),
            Algorithm::GpaIt => "gpa".to_string(),
            Algorithm::BlossomIt { init } => format!(
                "blossom,init={}",
                match init {
                    BlossomInit::Empty => "empty",
                    BlossomInit::Greedy => "greedy",
                }
            ),
            Algorithm::BGreedyExtend => "bgreedy".to_string(),
            Algorithm::NodeCentered { rating, theta } => {
                format!("nc,rating={},theta={}", rating.label(), theta)
            }
            Algorithm::KEc { flags } => format!("kec,flags={}", flags.label()),
        };
        if self.post != Strategy::None {
            s.push_str(&format!(",post={}", self.post.label()));
        }
        s
    }

    /// Identical weights across repeated runs with the same seed are
    /// guaranteed for every configuration; without ROMA the seed is unused.
    pub fn is_deterministic(&self) -> bool {
        self.post.is_deterministic()
    }

    pub fn run(&self, g: &WeightedGraph, k: usize, seed: u64) -> DisjointMatching {
        match self.algorithm {
            Algorithm::GreedyIt => greedy_it_with(g, k, self.post, seed),
            Algorithm::GpaIt => gpa_it_with(g, k, self.post, seed),
            Algorithm::BlossomIt { init } => blossom_it_with(g, k, init, self.post, seed),
            Algorithm::BGreedyExtend => {
                let mut sol = b_greedy_and_extend(g, k);
                self.apply_post_hoc(g, &mut sol, seed);
                sol
            }
            Algorithm::NodeCentered { rating, theta } => {
                let mut sol = node_centered(g, k, rating, theta);
                self.apply_post_hoc(g, &mut sol, seed);
                sol
            }
            Algorithm::KEc { flags } => {
                let mut sol = k_ec(g, k, flags);
                self.apply_post_hoc(g, &mut sol, seed);
                sol
            }
        }
    }

    /// One-shot algorithms produce all classes at once; class-local
    /// postprocessing hooks run on each class afterwards.
    fn apply_post_hoc(&self, g: &WeightedGraph, sol: &mut DisjointMatching, seed: u64) {
        for class in 0..sol.k() {
            self.post.after_class(g, sol, class, seed);
        }
        self.post.after_all(g, sol, seed);
    }

    /// Every configuration exercised by the paper-style grid: postprocessing
    /// variants for the iterative algorithms, both blossom warm starts, all
    /// rating x theta combinations, and all sixteen flag sets.
    pub fn all_configurations() -> Vec<AlgorithmConfig> {
        let mut out = Vec::new();
        for post in [Strategy::None, Strategy::LocalSwaps, Strategy::GlobalSwaps] {
            out.push(AlgorithmConfig::new(Algorithm::GreedyIt, post));
        }
        for post in [
            Strategy::None,
            Strategy::LocalSwaps,
            Strategy::GlobalSwaps,
            Strategy::Roma { sweeps: 4 },
        ] {
            out.push(AlgorithmConfig::new(Algorithm::GpaIt, post));
        }
        for init in [BlossomInit::Greedy, BlossomInit::Empty] {
            out.push(AlgorithmConfig::new(
                Algorithm::BlossomIt { init },
                Strategy::None,
            ));
        }
        out.push(AlgorithmConfig::new(Algorithm::BGreedyExtend, Strategy::None));
        for rating in Rating::all() {
            for theta in ["0", "0.2", "0.5"] {
                out.push(AlgorithmConfig::new(
                    Algorithm::NodeCentered {
                        rating,
                        theta: Theta::parse(theta).unwrap(),
                    },
                    Strategy::None,
                ));
            }
        }
        for flags in KecFlags::all() {
            out.push(AlgorithmConfig::new(Algorithm::KEc { flags }, Strategy::None));
        }
        out
    }

    /// The six algorithm families in their best configurations.
    pub fn best_six() -> Vec<AlgorithmConfig> {
        vec![
            AlgorithmConfig::parse("greedy").unwrap(),
            AlgorithmConfig::parse("gpa,post=local").unwrap(),
            AlgorithmConfig::parse("blossom").unwrap(),
            AlgorithmConfig::parse("bgreedy").unwrap(),
            AlgorithmConfig::parse("nc,rating=ksum,theta=0.2").unwrap(),
            AlgorithmConfig::parse("kec,flags=cc+rl").unwrap(),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_id_round_trips() {
        for config in AlgorithmConfig::all_configurations() {
            let id = config.id();
            let reparsed = AlgorithmConfig::parse(&id).unwrap();
            assert_eq!(config, reparsed, "{id}");
        }
    }

    #[test]
    fn parse_defaults() {
        let c = AlgorithmConfig::parse("kec").unwrap();
        assert_eq!(
            c.algorithm,
            Algorithm::KEc { flags: KecFlags::new(true, false, true, false) }
        );
        let nc = AlgorithmConfig::parse("nc").unwrap();
        match nc.algorithm {
            Algorithm::NodeCentered { rating, theta } => {
                assert_eq!(rating, Rating::KSum);
                assert_eq!(theta, Theta::parse("0.2").unwrap());
            }
            _ => panic!(),
        }
        assert!(AlgorithmConfig::parse("nope").is_err());
        assert!(AlgorithmConfig::parse("kec,flags=zz").is_err());
        assert!(AlgorithmConfig::parse("gpa,post=roma:x").is_err());
    }

    #[test]
    fn grid_size() {
        assert_eq!(AlgorithmConfig::all_configurations().len(), 3 + 4 + 2 + 1 + 15 + 16);
        assert_eq!(AlgorithmConfig::best_six().len(), 6);
    }

    #[test]
    fn dispatch_runs_every_family() {
        let g = crate::instances::gen_triangle_pendant();
        for config in AlgorithmConfig::best_six() {
            let s = config.run(&g, 3, 42);
            crate::solution::validate_solution(&g, &s).unwrap();
            assert!(s.total_weight() >= 3, "{}", config.id());
        }
    }
}
