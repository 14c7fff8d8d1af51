use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use plevo::problems::default_segments;
use plevo::{EsConfig, ProblemKind};
use plevo_cli::table::{render_text, run_all, write_table};
use plevo_cli::{build_table, default_sigma, execute, write_run_outputs, Instance};

#[derive(Parser)]
#[command(
    name = "plevo",
    version,
    about = "Evolution strategy on piecewise-linear curves"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one seeded optimisation and write trace.csv, result.json, trace.svg
    Run(RunArgs),
    /// Print the exact reference solution as JSON
    Exact {
        #[arg(long, value_parser = parse_kind)]
        problem: ProblemKind,
        #[arg(long)]
        segments: Option<usize>,
        #[command(flatten)]
        instance: InstanceArgs,
    },
    /// Run every problem over several seeds and tabulate medians
    Table {
        #[arg(long, value_delimiter = ',', default_values_t = [1u64, 2, 3, 4, 5])]
        seeds: Vec<u64>,
        #[arg(long, default_value_t = 100_000)]
        iters: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, value_parser = parse_kind)]
    problem: ProblemKind,
    /// Defaults to 20 (31 for thermal)
    #[arg(long)]
    segments: Option<usize>,
    /// Defaults to 0.01 (0.001 for ramm)
    #[arg(long)]
    sigma: Option<f64>,
    #[arg(long, default_value_t = 10)]
    lambda: usize,
    #[arg(long, default_value_t = 100_000)]
    iters: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
    #[command(flatten)]
    instance: InstanceArgs,
}

#[derive(Args)]
struct InstanceArgs {
    /// Brachistochrone start point `x,y`
    #[arg(long, value_parser = parse_point, default_value = "0,10", allow_hyphen_values = true)]
    from: (f64, f64),
    /// Brachistochrone end point `x,y`
    #[arg(long, value_parser = parse_point, default_value = "10,0", allow_hyphen_values = true)]
    to: (f64, f64),
    /// Ramm chord length
    #[arg(long, default_value_t = 2.0)]
    b: f64,
    /// Newton body radius
    #[arg(long, default_value_t = 1.0)]
    radius: f64,
    /// Newton height H or thermal body height h
    #[arg(long, default_value_t = 2.0)]
    height: f64,
}

impl From<&InstanceArgs> for Instance {
    fn from(a: &InstanceArgs) -> Self {
        Instance {
            from: a.from,
            to: a.to,
            b: a.b,
            radius: a.radius,
            height: a.height,
        }
    }
}

fn parse_kind(s: &str) -> Result<ProblemKind, String> {
    s.parse().map_err(|_| {
        let names: Vec<&str> = ProblemKind::ALL.iter().map(|k| k.name()).collect();
        format!(
            "unknown problem `{s}` (expected one of: {})",
            names.join(", ")
        )
    })
}

fn parse_point(s: &str) -> Result<(f64, f64), String> {
    let (x, y) = s.split_once(',').ok_or("expected `x,y`")?;
    let num = |v: &str| v.trim().parse::<f64>().map_err(|e| format!("`{v}`: {e}"));
    Ok((num(x)?, num(y)?))
}

/// Writes to stdout, treating a closed pipe as success.
fn emit(text: &str) -> Result<()> {
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn cmd_run(args: &RunArgs) -> Result<()> {
    let kind = args.problem;
    let problem = Instance::from(&args.instance).build(kind, args.segments)?;
    let config = EsConfig {
        lambda: args.lambda,
        sigma: args.sigma.unwrap_or_else(|| default_sigma(kind)),
        iterations: args.iters,
        seed: args.seed,
    };
    let (result, outcome) = execute(&problem, &config)?;
    write_run_outputs(&args.out, &result, &outcome)?;
    emit(&(result.summary() + "\n"))
}

fn cmd_exact(kind: ProblemKind, segments: Option<usize>, instance: &InstanceArgs) -> Result<()> {
    let problem = Instance::from(instance).build(kind, segments)?;
    let out = json!({
        "problem": kind.name(),
        "segments": segments.unwrap_or_else(|| default_segments(kind)),
        "reference_objective": problem.reference().objective(),
        "interpolant_objective": problem.interpolant_objective()?,
        "solution": problem.reference(),
    });
    emit(&(serde_json::to_string_pretty(&out)? + "\n"))
}

fn cmd_table(seeds: &[u64], iters: usize, out: &std::path::Path) -> Result<()> {
    std::fs::create_dir_all(out).with_context(|| format!("creating {}", out.display()))?;
    let runs = run_all(&ProblemKind::ALL, seeds, iters, &Instance::default())?;
    for (result, outcome) in &runs {
        let dir = out
            .join(&result.problem)
            .join(format!("seed-{}", result.seed));
        write_run_outputs(&dir, result, outcome)?;
    }
    let results: Vec<_> = runs.into_iter().map(|(r, _)| r).collect();
    let rows = build_table(&results);
    write_table(out, &rows)?;
    emit(&render_text(&rows))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Run(args) => cmd_run(args),
        Command::Exact {
            problem,
            segments,
            instance,
        } => cmd_exact(*problem, *segments, instance),
        Command::Table { seeds, iters, out } => cmd_table(seeds, *iters, out),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
