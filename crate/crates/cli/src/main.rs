mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use lqmatch::gen::Fig1Variant;

/// Matchings under lower quotas: checkers, kernels, exact solvers, oracles
/// and generators.
///
/// Exit codes: 0 success, 2 no solution, 3 budget exceeded, 4 input or usage error.
#[derive(Parser, Debug)]
#[command(name = "lqmatch", version)]
pub struct Cli {
    /// Emit a single JSON object instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct Solver {
    /// Worker threads (0 = all cores, 1 = sequential).
    #[arg(long, env = "LQMATCH_THREADS", default_value_t = 0)]
    threads: usize,
    /// Maximum number of LQ assignments to enumerate.
    #[arg(long)]
    budget: Option<u64>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check a matching against every predicate.
    Check {
        instance: PathBuf,
        #[arg(long)]
        matching: PathBuf,
    },
    /// Print the parameter profile of an instance.
    Params { instance: PathBuf },
    /// Maximum-size feasible envy-free matching.
    SolveEfm {
        instance: PathBuf,
        #[command(flatten)]
        solver: Solver,
    },
    /// Maximum-size feasible relaxed-stable matching.
    SolveRsm {
        instance: PathBuf,
        #[command(flatten)]
        solver: Solver,
    },
    /// Kernelize for the envy-free problem.
    KernelEfm {
        instance: PathBuf,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        marks: Option<PathBuf>,
    },
    /// Kernelize for the relaxed-stable problem.
    KernelRsm {
        instance: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        marks: Option<PathBuf>,
    },
    /// Extend a minimal feasible matching by a stable matching of the rest.
    Extend {
        instance: PathBuf,
        #[arg(long)]
        matching: PathBuf,
    },
    /// Exhaustive search on small instances.
    Oracle {
        instance: PathBuf,
        #[arg(long, conflicts_with = "rsm", required_unless_present = "rsm")]
        efm: bool,
        #[arg(long)]
        rsm: bool,
        /// Largest number of vertices accepted.
        #[arg(long, default_value_t = lqmatch::oracle::DEFAULT_CAP)]
        cap: usize,
    },
    /// Generate an instance.
    #[command(subcommand)]
    Gen(Gen),
    /// Replace every resource by unit-capacity copies.
    Clone {
        instance: PathBuf,
        /// Write `<resource> <copy>...` lines here.
        #[arg(long)]
        map: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
pub enum Gen {
    /// The two-agent, two-resource example.
    Fig1 {
        #[arg(long, default_value = "base")]
        variant: Fig1Variant,
    },
    /// Independent-set reduction of a graph (`n m` then `u v` lines, 1-based).
    Indset {
        graph: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Seeded random instance with a feasible matching.
    Random {
        #[arg(long)]
        agents: usize,
        #[arg(long)]
        resources: usize,
        #[arg(long, default_value_t = 0)]
        lq: usize,
        #[arg(long)]
        maxlen: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Upper quotas are drawn from 1..=N.
        #[arg(long, default_value_t = 1)]
        max_upper: u32,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 4 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let start = Instant::now();
    match commands::run(&cli.command) {
        Ok((mut report, code)) => {
            report.stats.elapsed_ms = start.elapsed().as_millis() as u64;
            if cli.json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.to_text());
            }
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
