//! Plan execution: timed, repeated, timeout-guarded algorithm runs with
//! OPT- or BEST-relative quality computed once all records exist.
//!
//! Timing covers only the algorithm call (instance loading, oracle runs and
//! CSV writing are excluded), and cells run strictly one at a time so the
//! measured process is never competing with itself.

use crate::plan::ExperimentPlan;
use anyhow::{Context, Result};
use kdjm::config::AlgorithmConfig;
use kdjm::exact::{brute_force_kdjm, BruteForceLimits};
use kdjm::graph::{Weight, WeightedGraph};
use kdjm::solution::validate_solution;
use std::collections::HashMap;
use std::sync::mpsc;
use std::sync::Arc;
use std::time::{Duration, Instant};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RunStatus {
    Ok,
    Timeout,
    Error,
}

impl RunStatus {
    pub fn label(&self) -> &'static str {
        match self {
            RunStatus::Ok => "ok",
            RunStatus::Timeout => "timeout",
            RunStatus::Error => "error",
        }
    }

    pub fn parse(s: &str) -> Option<RunStatus> {
        Some(match s {
            "ok" => RunStatus::Ok,
            "timeout" => RunStatus::Timeout,
            "error" => RunStatus::Error,
            _ => return None,
        })
    }
}

/// One (instance, config, k) measurement. The CSV schema serializes every
/// field except `rep_weights` and `class_weights`, which exist only in
/// memory (the schema is fixed at twelve columns).
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentRecord {
    pub instance: String,
    pub algorithm: String,
    pub config: String,
    pub k: usize,
    pub seed: u64,
    pub status: RunStatus,
    /// Weight of the first repetition (repetitions of deterministic configs
    /// are asserted identical; ROMA repetitions use derived seeds).
    pub weight: Option<Weight>,
    pub rel_quality: Option<f64>,
    /// Wall times of the completed repetitions, nanoseconds.
    pub times_ns: Vec<u64>,
    pub median_ns: Option<u64>,
    /// Per-repetition weights (differs from `[weight; reps]` only for ROMA).
    pub rep_weights: Vec<Weight>,
    /// Per-class weights of the first repetition.
    pub class_weights: Vec<Weight>,
}

impl ExperimentRecord {
    /// The record as serialized: in-memory extras cleared. Round-tripping
    /// through CSV reproduces exactly this projection.
    pub fn csv_projection(&self) -> ExperimentRecord {
        ExperimentRecord {
            rep_weights: Vec::new(),
            class_weights: Vec::new(),
            ..self.clone()
        }
    }
}

fn median(times: &[u64]) -> Option<u64> {
    if times.is_empty() {
        return None;
    }
    let mut sorted = times.to_vec();
    sorted.sort_unstable();
    Some(sorted[sorted.len() / 2])
}

/// Runs `config` on `g` under a wall-clock timeout. The algorithm runs on a
/// helper thread; on timeout the thread is abandoned (it finishes on its own
/// and its result is dropped).
fn run_once(
    g: &Arc<WeightedGraph>,
    config: AlgorithmConfig,
    k: usize,
    seed: u64,
    timeout: Duration,
) -> Result<Option<(Weight, Vec<Weight>, u64)>, String> {
    let (tx, rx) = mpsc::channel();
    let graph = Arc::clone(g);
    std::thread::spawn(move || {
        let start = Instant::now();
        let solution = config.run(&graph, k, seed);
        let elapsed = start.elapsed();
        let check = validate_solution(&graph, &solution).map(|_| solution);
        let _ = tx.send((check, elapsed));
    });
    match rx.recv_timeout(timeout) {
        Ok((Ok(solution), elapsed)) => Ok(Some((
            solution.total_weight(),
            solution.class_weights().to_vec(),
            elapsed.as_nanos() as u64,
        ))),
        Ok((Err(violation), _)) => Err(format!("invalid solution: {violation}")),
        Err(mpsc::RecvTimeoutError::Timeout) => Ok(None),
        Err(mpsc::RecvTimeoutError::Disconnected) => Err("algorithm panicked".into()),
    }
}

/// Executes the full plan serially and computes relative quality per
/// (instance, k) cell: against the exact optimum when the oracle ran,
/// against the best weight any config achieved otherwise.
pub fn run_plan(plan: &ExperimentPlan) -> Result<Vec<ExperimentRecord>> {
    plan.validate()?;
    let mut records = Vec::new();
    // (instance id, k) -> exact optimum
    let mut oracle: HashMap<(String, usize), Weight> = HashMap::new();

    for spec in &plan.instances {
        let instance_id = spec.id();
        let graph = match spec.load() {
            Ok(g) => Arc::new(g),
            Err(err) => {
                log::error!("loading {instance_id} failed: {err}");
                for config in &plan.algorithms {
                    for &k in &plan.ks {
                        records.push(ExperimentRecord {
                            instance: instance_id.clone(),
                            algorithm: config.family().to_string(),
                            config: config.id(),
                            k,
                            seed: plan.seed,
                            status: RunStatus::Error,
                            weight: None,
                            rel_quality: None,
                            times_ns: Vec::new(),
                            median_ns: None,
                            rep_weights: Vec::new(),
                            class_weights: Vec::new(),
                        });
                    }
                }
                continue;
            }
        };
        log::info!(
            "instance {instance_id}: n = {}, m = {}",
            graph.n(),
            graph.m()
        );
        for &k in &plan.ks {
            if plan.use_oracle {
                if let Ok(exact) = brute_force_kdjm(&graph, k, BruteForceLimits::default()) {
                    oracle.insert((instance_id.clone(), k), exact.weight);
                }
            }
            for config in &plan.algorithms {
                records.push(run_cell(plan, &graph, &instance_id, *config, k));
            }
        }
    }

    // relative quality: OPT where known, BEST within the sweep otherwise
    let mut best: HashMap<(String, usize), Weight> = HashMap::new();
    for r in &records {
        if r.status == RunStatus::Ok {
            let entry = best.entry((r.instance.clone(), r.k)).or_insert(0);
            *entry = (*entry).max(r.weight.unwrap_or(0));
        }
    }
    for r in &mut records {
        if r.status != RunStatus::Ok {
            continue;
        }
        let key = (r.instance.clone(), r.k);
        let reference = oracle.get(&key).or_else(|| best.get(&key));
        if let (Some(&reference), Some(weight)) = (reference, r.weight) {
            r.rel_quality = Some(if reference == 0 {
                1.0
            } else {
                weight as f64 / reference as f64
            });
        }
    }

    records.sort_by(|a, b| {
        (&a.instance, &a.algorithm, &a.config, a.k).cmp(&(&b.instance, &b.algorithm, &b.config, b.k))
    });

    if let Some(path) = &plan.out {
        crate::csvio::write_csv(path, &records)
            .with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(records)
}

fn run_cell(
    plan: &ExperimentPlan,
    graph: &Arc<WeightedGraph>,
    instance_id: &str,
    config: AlgorithmConfig,
    k: usize,
) -> ExperimentRecord {
    let mut record = ExperimentRecord {
        instance: instance_id.to_string(),
        algorithm: config.family().to_string(),
        config: config.id(),
        k,
        seed: plan.seed,
        status: RunStatus::Ok,
        weight: None,
        rel_quality: None,
        times_ns: Vec::new(),
        median_ns: None,
        rep_weights: Vec::new(),
        class_weights: Vec::new(),
    };
    for rep in 0..plan.repetitions {
        // ROMA draws fresh randomness per repetition; deterministic configs
        // ignore the seed entirely
        let seed = if config.is_deterministic() {
            plan.seed
        } else {
            plan.seed.wrapping_add(rep as u64)
        };
        match run_once(graph, config, k, seed, plan.timeout) {
            Ok(Some((weight, class_weights, nanos))) => {
                if rep == 0 {
                    record.weight = Some(weight);
                    record.class_weights = class_weights;
                } else if config.is_deterministic() {
                    assert_eq!(
                        record.weight,
                        Some(weight),
                        "{}: deterministic config produced differing weights",
                        config.id()
                    );
                }
                record.rep_weights.push(weight);
                record.times_ns.push(nanos);
            }
            Ok(None) => {
                log::warn!("{instance_id} {} k={k}: timeout", config.id());
                record.status = RunStatus::Timeout;
                record.weight = None;
                record.rep_weights.clear();
                record.class_weights.clear();
                record.times_ns.clear();
                break;
            }
            Err(message) => {
                log::error!("{instance_id} {} k={k}: {message}", config.id());
                record.status = RunStatus::Error;
                record.weight = None;
                record.rep_weights.clear();
                record.class_weights.clear();
                record.times_ns.clear();
                break;
            }
        }
    }
    record.median_ns = median(&record.times_ns);
    record
}

#[cfg(test)]
mod tests {
    use super::*;
    use kdjm::instances::InstanceSpec;

    fn tiny_plan() -> ExperimentPlan {
        ExperimentPlan {
            instances: vec![InstanceSpec::TrianglePendant],
            algorithms: vec![
                AlgorithmConfig::parse("greedy").unwrap(),
                AlgorithmConfig::parse("blossom").unwrap(),
            ],
            ks: vec![3],
            ..Default::default()
        }
    }

    #[test]
    fn triangle_pendant_records() {
        let records = run_plan(&tiny_plan()).unwrap();
        assert_eq!(records.len(), 2);
        let blossom = records.iter().find(|r| r.algorithm == "blossom_it").unwrap();
        assert_eq!(blossom.weight, Some(5));
        // oracle knows OPT = 6 here
        assert!((blossom.rel_quality.unwrap() - 5.0 / 6.0).abs() < 1e-12);
        let greedy = records.iter().find(|r| r.algorithm == "greedy_it").unwrap();
        assert_eq!(greedy.weight, Some(6));
        assert_eq!(greedy.rel_quality, Some(1.0));
        for r in &records {
            assert_eq!(r.times_ns.len(), 3);
            assert!(r.median_ns.is_some());
            assert_eq!(r.rep_weights.len(), 3);
        }
    }

    #[test]
    fn best_relative_without_oracle() {
        let mut plan = tiny_plan();
        plan.use_oracle = false;
        let records = run_plan(&plan).unwrap();
        // greedy finds 6, blossom 5: BEST = 6
        let blossom = records.iter().find(|r| r.algorithm == "blossom_it").unwrap();
        assert!((blossom.rel_quality.unwrap() - 5.0 / 6.0).abs() < 1e-12);
        let greedy = records.iter().find(|r| r.algorithm == "greedy_it").unwrap();
        assert_eq!(greedy.rel_quality, Some(1.0));
    }

    #[test]
    fn forced_timeout_is_recorded() {
        let mut plan = ExperimentPlan {
            instances: vec![InstanceSpec::parse(
                "kind=rmat,x=12,init=rmat_b,dist=uni,seed=5",
            )
            .unwrap()],
            algorithms: vec![AlgorithmConfig::parse("blossom").unwrap()],
            ks: vec![4],
            ..Default::default()
        };
        plan.timeout = Duration::from_nanos(1);
        plan.use_oracle = false;
        let records = run_plan(&plan).unwrap();
        assert_eq!(records[0].status, RunStatus::Timeout);
        assert_eq!(records[0].weight, None);
        assert_eq!(records[0].rel_quality, None);
        assert!(records[0].times_ns.is_empty());
    }

    #[test]
    fn deterministic_configs_repeat_weights() {
        let records = run_plan(&tiny_plan()).unwrap();
        for r in records {
            assert!(r.rep_weights.iter().all(|&w| w == r.rep_weights[0]));
        }
    }

    #[test]
    fn load_failure_becomes_error_record() {
        let plan = ExperimentPlan {
            instances: vec![InstanceSpec::parse("kind=edge_list,path=/no/such/file").unwrap()],
            algorithms: vec![AlgorithmConfig::parse("greedy").unwrap()],
            ks: vec![2],
            ..Default::default()
        };
        let records = run_plan(&plan).unwrap();
        assert_eq!(records.len(), 1);
        assert_eq!(records[0].status, RunStatus::Error);
    }
}
