//! Experiment plans: the cross product of instances, algorithm configs and
//! k values, plus measurement settings. Plans are built inline from CLI
//! flags or parsed from a line-oriented `key = value` file.

use anyhow::{bail, Context, Result};
use kdjm::config::AlgorithmConfig;
use kdjm::instances::InstanceSpec;
use std::path::PathBuf;
use std::time::Duration;

#[derive(Debug, Clone)]
pub struct ExperimentPlan {
    pub instances: Vec<InstanceSpec>,
    pub algorithms: Vec<AlgorithmConfig>,
    pub ks: Vec<usize>,
    pub repetitions: usize,
    pub timeout: Duration,
    pub out: Option<PathBuf>,
    pub seed: u64,
    /// Compute the exact optimum per (instance, k) when the brute-force
    /// guard allows it; quality is then relative to OPT instead of BEST.
    pub use_oracle: bool,
}

impl Default for ExperimentPlan {
    fn default() -> Self {
        ExperimentPlan {
            instances: Vec::new(),
            algorithms: Vec::new(),
            ks: vec![2, 4, 8, 16, 32, 64, 96],
            repetitions: 3,
            timeout: Duration::from_secs(4 * 3600),
            out: None,
            seed: 0,
            use_oracle: true,
        }
    }
}

impl ExperimentPlan {
    pub fn validate(&self) -> Result<()> {
        if self.instances.is_empty() {
            bail!("plan has no instances");
        }
        if self.algorithms.is_empty() {
            bail!("plan has no algorithms");
        }
        if self.ks.contains(&0) {
            bail!("k values must be at least 1");
        }
        if self.repetitions % 2 == 0 {
            bail!("repetitions must be odd so the median is well-defined");
        }
        if self.out.is_some() && self.repetitions != 3 {
            bail!("the CSV schema records exactly 3 repetitions");
        }
        Ok(())
    }

    /// Parses a plan file: one `key = value` per line, `#` comments.
    /// `instance` and `alg` lines accumulate; everything else overwrites.
    pub fn parse(text: &str) -> Result<ExperimentPlan> {
        let mut plan = ExperimentPlan::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let lineno = idx + 1;
            let (key, value) = line
                .split_once('=')
                .with_context(|| format!("line {lineno}: expected key = value"))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "instance" => plan
                    .instances
                    .push(InstanceSpec::parse(value).with_context(|| format!("line {lineno}"))?),
                "alg" => plan
                    .algorithms
                    .push(AlgorithmConfig::parse(value).with_context(|| format!("line {lineno}"))?),
                "k" => {
                    plan.ks = value
                        .split(',')
                        .map(|s| s.trim().parse::<usize>())
                        .collect::<std::result::Result<_, _>>()
                        .with_context(|| format!("line {lineno}: bad k list"))?;
                }
                "reps" => {
                    plan.repetitions = value
                        .parse()
                        .with_context(|| format!("line {lineno}: bad reps"))?;
                }
                "timeout_ms" => {
                    let ms: u64 = value
                        .parse()
                        .with_context(|| format!("line {lineno}: bad timeout_ms"))?;
                    plan.timeout = Duration::from_millis(ms);
                }
                "seed" => {
                    plan.seed = value
                        .parse()
                        .with_context(|| format!("line {lineno}: bad seed"))?;
                }
                "out" => plan.out = Some(PathBuf::from(value)),
                "oracle" => {
                    plan.use_oracle = value
                        .parse()
                        .with_context(|| format!("line {lineno}: bad oracle flag"))?;
                }
                other => bail!("line {lineno}: unknown plan key {other:?}"),
            }
        }
        Ok(plan)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_a_full_plan() {
        let text = "\
# demo plan
instance = kind=triangle_pendant
instance = kind=hypercube_pendant,k=3
alg = greedy
alg = kec,flags=cc+rl
k = 2,4
reps = 3
timeout_ms = 1000
seed = 9
oracle = false
out = results.csv
";
        let plan = ExperimentPlan::parse(text).unwrap();
        plan.validate().unwrap();
        assert_eq!(plan.instances.len(), 2);
        assert_eq!(plan.algorithms.len(), 2);
        assert_eq!(plan.ks, vec![2, 4]);
        assert_eq!(plan.timeout, Duration::from_millis(1000));
        assert!(!plan.use_oracle);
        assert_eq!(plan.out.as_deref(), Some(std::path::Path::new("results.csv")));
    }

    #[test]
    fn rejects_even_repetitions() {
        let mut plan = ExperimentPlan::default();
        plan.instances.push(InstanceSpec::TrianglePendant);
        plan.algorithms.push(AlgorithmConfig::parse("greedy").unwrap());
        plan.repetitions = 2;
        assert!(plan.validate().is_err());
        plan.repetitions = 3;
        plan.validate().unwrap();
    }

    #[test]
    fn rejects_unknown_keys_and_zero_k() {
        assert!(ExperimentPlan::parse("bogus = 1\n").is_err());
        let mut plan = ExperimentPlan::default();
        plan.instances.push(InstanceSpec::TrianglePendant);
        plan.algorithms.push(AlgorithmConfig::parse("greedy").unwrap());
        plan.ks = vec![0];
        assert!(plan.validate().is_err());
    }
}
