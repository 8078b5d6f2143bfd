use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use kdjm::config::AlgorithmConfig;
use kdjm::exact::{brute_force_kdjm, export_ilp_to, BruteForceLimits};
use kdjm::instances::{write_edge_list, InstanceSpec};
use kdjm_bench::plan::ExperimentPlan;
use kdjm_bench::report::{compare_report, render_table};
use kdjm_bench::runner::{run_plan, RunStatus};
use std::path::PathBuf;
use std::time::Duration;

#[derive(Parser)]
#[command(name = "kdjm-bench", about = "Benchmark harness for k-disjoint matching algorithms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment plan (from a file or assembled from flags).
    Run(RunArgs),
    /// Generate an instance and write it in edge-list format.
    Gen(GenArgs),
    /// Exact tooling: brute-force solve and/or export the ILP model.
    Exact(ExactArgs),
    /// Summarize a CSV produced by `run`.
    Report(ReportArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Plan file (line-oriented `key = value`); flags below extend it.
    #[arg(long)]
    plan: Option<PathBuf>,
    /// Instance spec, repeatable (e.g. kind=rmat,x=10,init=rmat_b,dist=uni,seed=1).
    #[arg(long = "instance")]
    instances: Vec<String>,
    /// Algorithm config, repeatable (e.g. gpa,post=local).
    #[arg(long = "alg")]
    algorithms: Vec<String>,
    /// Comma-separated k values.
    #[arg(long)]
    k: Option<String>,
    /// Repetitions per cell (odd; the CSV schema wants 3).
    #[arg(long)]
    reps: Option<usize>,
    /// Per-run timeout in milliseconds.
    #[arg(long)]
    timeout_ms: Option<u64>,
    /// Base seed (ROMA repetitions derive from it).
    #[arg(long)]
    seed: Option<u64>,
    /// Output CSV path.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Disable the exact oracle (quality becomes BEST-relative everywhere).
    #[arg(long)]
    no_oracle: bool,
}

#[derive(Args)]
struct GenArgs {
    /// Instance spec string.
    #[arg(long)]
    spec: String,
    /// Output path (edge-list format).
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct ExactArgs {
    /// Instance spec string.
    #[arg(long)]
    instance: String,
    #[arg(long)]
    k: usize,
    /// Run the branch-and-bound solver and print the optimal weight.
    #[arg(long)]
    solve: bool,
    /// Export the assignment-formulation ILP in LP format to this path.
    #[arg(long)]
    ilp: Option<PathBuf>,
    /// Brute-force guard override: maximum edge count.
    #[arg(long, default_value_t = 24)]
    max_edges: usize,
    /// Brute-force guard override: maximum k.
    #[arg(long, default_value_t = 4)]
    max_k: usize,
}

#[derive(Args)]
struct ReportArgs {
    #[arg(long)]
    csv: PathBuf,
    /// Baseline config id for the runtime comparison.
    #[arg(long, default_value = "greedy")]
    baseline: String,
}

fn build_plan(args: &RunArgs) -> Result<ExperimentPlan> {
    let mut plan = match &args.plan {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading plan {}", path.display()))?;
            ExperimentPlan::parse(&text)?
        }
        None => ExperimentPlan::default(),
    };
    for spec in &args.instances {
        plan.instances.push(InstanceSpec::parse(spec)?);
    }
    for alg in &args.algorithms {
        plan.algorithms.push(AlgorithmConfig::parse(alg)?);
    }
    if let Some(ks) = &args.k {
        plan.ks = ks
            .split(',')
            .map(|s| s.trim().parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .context("bad k list")?;
    }
    if let Some(reps) = args.reps {
        plan.repetitions = reps;
    }
    if let Some(ms) = args.timeout_ms {
        plan.timeout = Duration::from_millis(ms);
    }
    if let Some(seed) = args.seed {
        plan.seed = seed;
    }
    if args.out.is_some() {
        plan.out = args.out.clone();
    }
    if args.no_oracle {
        plan.use_oracle = false;
    }
    Ok(plan)
}

fn main() -> Result<()> {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    let cli = Cli::parse();
    match cli.command {
        Command::Run(args) => {
            let plan = build_plan(&args)?;
            let records = run_plan(&plan)?;
            let mut errors = 0usize;
            for r in &records {
                println!(
                    "{} | {} | k={} | {} | weight={} | rel={} | t_median={}",
                    r.instance,
                    r.config,
                    r.k,
                    r.status.label(),
                    r.weight.map(|w| w.to_string()).unwrap_or_else(|| "-".into()),
                    r.rel_quality
                        .map(|q| format!("{q:.6}"))
                        .unwrap_or_else(|| "-".into()),
                    r.median_ns
                        .map(|t| format!("{t}ns"))
                        .unwrap_or_else(|| "-".into()),
                );
                if r.status == RunStatus::Error {
                    errors += 1;
                }
            }
            if let Some(out) = &plan.out {
                eprintln!("wrote {} records to {}", records.len(), out.display());
            }
            if errors > 0 {
                bail!("{errors} record(s) ended in an error");
            }
            Ok(())
        }
        Command::Gen(args) => {
            let spec = InstanceSpec::parse(&args.spec)?;
            let graph = spec.load()?;
            write_edge_list(&graph, &args.out)?;
            eprintln!(
                "wrote {} (n = {}, m = {}) to {}",
                spec.id(),
                graph.n(),
                graph.m(),
                args.out.display()
            );
            Ok(())
        }
        Command::Exact(args) => {
            let spec = InstanceSpec::parse(&args.instance)?;
            let graph = spec.load()?;
            if let Some(path) = &args.ilp {
                export_ilp_to(&graph, args.k, path)?;
                eprintln!("wrote ILP model to {}", path.display());
            }
            if args.solve {
                let limits = BruteForceLimits { max_edges: args.max_edges, max_k: args.max_k };
                let result = brute_force_kdjm(&graph, args.k, limits)?;
                println!("optimal weight: {}", result.weight);
                eprintln!("explored {} search states", result.explored);
            }
            Ok(())
        }
        Command::Report(args) => {
            let records = kdjm_bench::csvio::read_csv(&args.csv)?;
            let rows = compare_report(&records, &args.baseline);
            print!("{}", render_table(&rows, &args.baseline));
            Ok(())
        }
    }
}
