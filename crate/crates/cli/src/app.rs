//! Command-line parsing and command dispatch.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use rsp_core::exact::ExactOutcome;
use rsp_core::{
    approximate, exact_rsp, Certificate, GraphClass, Outcome, Query, RspError, RspSolution,
    ScaledGraph, Strategy, WeightSpec,
};

use crate::check::run_check;
use crate::format::{parse_instance, write_instance, Instance};
use crate::report::{SolveReport, Status};
use crate::sweep::{sweep, write_csv, SweepConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INFEASIBLE: i32 = 2;
pub const EXIT_DISAGREE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "rsp", version, about = "Restricted shortest path solvers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Approximate a restricted shortest path within a factor 1 + eps.
    Solve(SolveArgs),
    /// Solve exactly; requires integer costs.
    Exact(ExactArgs),
    /// Run every strategy against a reference solver.
    Check(CheckArgs),
    /// Sweep generated instances and write CSV.
    Bench(BenchArgs),
    /// Write a generated instance with a query.
    Generate(GenerateArgs),
}

#[derive(Debug, Args)]
pub struct QueryArgs {
    /// Instance file, or `-` for stdin.
    pub instance: PathBuf,
    /// Source vertex (1-based); overrides the file's query line.
    #[arg(long)]
    pub source: Option<usize>,
    /// Target vertex (1-based).
    #[arg(long)]
    pub target: Option<usize>,
    /// Resource bound R.
    #[arg(long)]
    pub rbound: Option<f64>,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub query: QueryArgs,
    #[arg(long, default_value_t = 0.1)]
    pub epsilon: f64,
    /// exact, linear, hybrid or lorenz_raz.
    #[arg(long, default_value = "linear")]
    pub strategy: Strategy,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct ExactArgs {
    #[command(flatten)]
    pub query: QueryArgs,
    /// Largest cost budget to try; defaults to a proven upper bound.
    #[arg(long)]
    pub budget: Option<u64>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[command(flatten)]
    pub query: QueryArgs,
    #[arg(long, default_value_t = 0.1)]
    pub epsilon: f64,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, value_delimiter = ',', default_value = "general")]
    pub class: Vec<GraphClass>,
    #[arg(long, value_delimiter = ',', default_value = "50,100,200,400")]
    pub sizes: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "0.5")]
    pub epsilons: Vec<f64>,
    #[arg(long, value_delimiter = ',', default_value = "1,2,3", env = "RSP_SEED")]
    pub seeds: Vec<u64>,
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "linear,hybrid,lorenz_raz"
    )]
    pub strategies: Vec<Strategy>,
    /// Fraction of zero-cost edges in generated instances.
    #[arg(long, default_value_t = 0.2)]
    pub zero_fraction: f64,
    /// Draw integer costs (required by the exact strategy).
    #[arg(long)]
    pub integer_costs: bool,
    /// Largest n for which a reference optimum is computed.
    #[arg(long, default_value_t = 100)]
    pub oracle_max_n: usize,
    /// Leave wall_time empty so the output is reproducible.
    #[arg(long)]
    pub no_timing: bool,
    /// Output file; stdout if absent.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long, default_value = "general")]
    pub class: GraphClass,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 1, env = "RSP_SEED")]
    pub seed: u64,
    #[arg(long, default_value_t = 0.2)]
    pub zero_fraction: f64,
    #[arg(long)]
    pub integer_costs: bool,
}

/// Errors that map to the usage exit code.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
struct Usage(String);

fn usage<T>(msg: impl Into<String>) -> anyhow::Result<T> {
    Err(Usage(msg.into()).into())
}

fn read_instance(path: &PathBuf) -> anyhow::Result<Instance> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .context("reading stdin")?;
        s
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
    };
    parse_instance(&text).with_context(|| format!("parsing {}", path.display()))
}

fn resolve(args: &QueryArgs) -> anyhow::Result<(Instance, Query)> {
    let inst = read_instance(&args.instance)?;
    let n = inst.graph.vertex_count();
    let file = inst.query.as_ref();
    let vertex = |flag: Option<usize>, from_file: Option<usize>, what: &str| match flag {
        Some(v) if v == 0 || v > n => usage(format!("--{what} {v} out of range 1..={n}")),
        Some(v) => Ok(v - 1),
        None => from_file.map_or_else(
            || {
                usage(format!(
                    "no --{what} given and the instance has no query line"
                ))
            },
            Ok,
        ),
    };
    let s = vertex(args.source, file.map(|q| q.source), "source")?;
    let t = vertex(args.target, file.map(|q| q.target), "target")?;
    let Some(r) = args.rbound.or(file.map(|q| q.bound)) else {
        return usage("no --rbound given and the instance has no query line");
    };
    let q = Query::new(s, t, r).map_err(|e| Usage(e.to_string()))?;
    Ok((inst, q))
}

fn check_epsilon(eps: f64) -> anyhow::Result<()> {
    if !(eps > 0.0 && eps.is_finite()) {
        return usage(format!("--epsilon must be a positive number, got {eps}"));
    }
    Ok(())
}

fn emit(out: &mut dyn Write, report: &SolveReport, json: bool) -> anyhow::Result<i32> {
    if json {
        writeln!(out, "{}", report.to_json())?;
    } else {
        write!(out, "{}", report.to_text())?;
    }
    Ok(match report.status {
        Status::Solved => EXIT_OK,
        Status::Infeasible | Status::BudgetExceeded => EXIT_INFEASIBLE,
    })
}

fn cmd_solve(a: &SolveArgs, out: &mut dyn Write) -> anyhow::Result<i32> {
    check_epsilon(a.epsilon)?;
    let (inst, q) = resolve(&a.query)?;
    let g = &inst.graph;
    let report = match approximate(g, &q, a.epsilon, a.strategy) {
        Ok(Outcome::Solved(sol) | Outcome::ZeroOptimal(sol)) => SolveReport::solved(g, &q, &sol),
        Ok(Outcome::Infeasible) => SolveReport::unsolved(Status::Infeasible),
        Err(e @ RspError::NonIntegerCost { .. }) => return usage(e.to_string()),
        Err(e) => return Err(e.into()),
    };
    emit(out, &report, a.json)
}

fn cmd_exact(a: &ExactArgs, out: &mut dyn Write) -> anyhow::Result<i32> {
    let (inst, q) = resolve(&a.query)?;
    let g = &inst.graph;
    let integral = ScaledGraph::integral(g).map_err(|e| Usage(e.to_string()))?;
    let report = match a.budget {
        None => match approximate(g, &q, 1.0, Strategy::Exact)? {
            Outcome::Solved(sol) | Outcome::ZeroOptimal(sol) => SolveReport::solved(g, &q, &sol),
            Outcome::Infeasible => SolveReport::unsolved(Status::Infeasible),
        },
        Some(budget) => {
            let run = exact_rsp(&integral, &q, budget)?;
            match run.outcome {
                ExactOutcome::Found { cost, path } => {
                    let (c, r) = path.evaluate(g)?;
                    debug_assert_eq!(c, cost as f64);
                    let sol = RspSolution {
                        path,
                        cost: c,
                        resource: r,
                        certificate: Certificate {
                            epsilon: 0.0,
                            lower: c,
                            upper: c,
                            scale: 1.0,
                            strategy: Strategy::Exact,
                            rows: run.stats.rows,
                            relaxations: run.stats.relaxations,
                        },
                    };
                    SolveReport::solved(g, &q, &sol)
                }
                ExactOutcome::BudgetExceeded => SolveReport::unsolved(Status::BudgetExceeded),
            }
        }
    };
    emit(out, &report, a.json)
}

fn cmd_check(a: &CheckArgs, out: &mut dyn Write) -> anyhow::Result<i32> {
    check_epsilon(a.epsilon)?;
    let (inst, q) = resolve(&a.query)?;
    let report = run_check(&inst.graph, &q, a.epsilon)?;
    write!(out, "{}", report.to_text())?;
    Ok(if report.agrees() {
        EXIT_OK
    } else {
        EXIT_DISAGREE
    })
}

fn weights(zero_fraction: f64, integer_costs: bool) -> anyhow::Result<WeightSpec> {
    if !(0.0..=1.0).contains(&zero_fraction) {
        return usage(format!(
            "--zero-fraction must lie in [0, 1], got {zero_fraction}"
        ));
    }
    Ok(WeightSpec {
        zero_cost_fraction: zero_fraction,
        integer_costs,
        ..WeightSpec::default()
    })
}

fn cmd_bench(a: &BenchArgs, out: &mut dyn Write) -> anyhow::Result<i32> {
    for &eps in &a.epsilons {
        check_epsilon(eps)?;
    }
    if a.sizes.iter().any(|&n| n < 2) {
        return usage("--sizes must all be at least 2");
    }
    if a.strategies.contains(&Strategy::Exact) && !a.integer_costs {
        return usage("the exact strategy needs --integer-costs");
    }
    let cfg = SweepConfig {
        classes: a.class.clone(),
        sizes: a.sizes.clone(),
        epsilons: a.epsilons.clone(),
        seeds: a.seeds.clone(),
        strategies: a.strategies.clone(),
        weights: weights(a.zero_fraction, a.integer_costs)?,
        oracle_max_n: a.oracle_max_n,
        timing: !a.no_timing,
    };
    let rows = sweep(&cfg)?;
    match &a.csv {
        Some(path) => {
            let file =
                fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
            write_csv(&rows, io::BufWriter::new(file))?;
        }
        None => write_csv(&rows, &mut *out)?,
    }
    Ok(EXIT_OK)
}

fn cmd_generate(a: &GenerateArgs, out: &mut dyn Write) -> anyhow::Result<i32> {
    if a.n < 2 {
        return usage("--n must be at least 2");
    }
    let g = a
        .class
        .generate(a.n, a.seed, &weights(a.zero_fraction, a.integer_costs)?)?;
    let t = g.vertex_count() - 1;
    let Some(q) = rsp_core::generate::interesting_query(&g, 0, t, a.seed)? else {
        bail!("generated graph does not reach vertex {}", t + 1);
    };
    writeln!(
        out,
        "c class {} seed {} zero-cost fraction {}",
        a.class.name(),
        a.seed,
        a.zero_fraction
    )?;
    write!(out, "{}", write_instance(&g, Some(&q)))?;
    Ok(EXIT_OK)
}

pub fn execute(cli: &Cli, out: &mut dyn Write) -> anyhow::Result<i32> {
    match &cli.command {
        Command::Solve(a) => cmd_solve(a, out),
        Command::Exact(a) => cmd_exact(a, out),
        Command::Check(a) => cmd_check(a, out),
        Command::Bench(a) => cmd_bench(a, out),
        Command::Generate(a) => cmd_generate(a, out),
    }
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code. Usage, parse and I/O errors exit with 1.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            EXIT_USAGE
        }
    }
}
