//! `cascade-seq`: solve, check and benchmark product sequencing instances.

mod bench;
mod instance;

use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::anyhow;
use cascade_seq::model::{optimal_prices, DisplaySequence, PriceVector, ProductId};
use cascade_seq::oracle::{
    exact_pa, exact_pb_grid, simulate, simulate_priced, PriceGrid, DEFAULT_GRID_POINTS,
};
use cascade_seq::{solve_pricing, solve_sequencing};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use instance::{Instance, InstanceFile, Mode};

#[derive(Parser)]
#[command(
    name = "cascade-seq",
    version,
    about = "Product sequencing and pricing for consumers who browse a list top-down"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Approximately optimal sequence (and prices, for priced instances).
    Solve {
        instance: PathBuf,
        #[command(flatten)]
        solver: SolverArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact optimum by enumeration; price grid search for priced instances.
    Exact {
        instance: PathBuf,
        #[arg(long, default_value_t = DEFAULT_GRID_POINTS)]
        grid_points: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Random instance file.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        b: usize,
        #[arg(long, value_enum, default_value_t = Mode::Fixed)]
        mode: Mode,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Monte Carlo estimate of a sequence's revenue.
    Simulate {
        instance: PathBuf,
        /// Comma-separated product ids in display order.
        #[arg(long, value_delimiter = ',', required = true)]
        sequence: Vec<ProductId>,
        /// `id=price` pairs; priced instances default to the optimal prices
        /// of the displayed set.
        #[arg(long, value_delimiter = ',', value_parser = parse_price)]
        prices: Vec<(ProductId, f64)>,
        #[arg(long, default_value_t = 1_000_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sweep generated instances and write a CSV of realized ratios.
    Bench(bench::BenchArgs),
}

#[derive(Args, Clone, Copy)]
struct SolverArgs {
    #[arg(long, default_value_t = 0.5)]
    rho: f64,
    #[arg(long, default_value_t = 0.1)]
    epsilon: f64,
}

fn parse_price(s: &str) -> Result<(ProductId, f64), String> {
    let (id, price) = s.split_once('=').ok_or("expected id=price")?;
    Ok((
        id.trim().parse().map_err(|e| format!("{e}"))?,
        price.trim().parse().map_err(|e| format!("{e}"))?,
    ))
}

/// Failure with the exit code it maps to.
#[derive(Debug)]
enum Failure {
    Input(anyhow::Error),
    Infeasible(anyhow::Error),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Infeasible(_) => 3,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Input(e) | Failure::Infeasible(e) => write!(f, "{e:#}"),
        }
    }
}

impl From<cascade_seq::Error> for Failure {
    fn from(e: cascade_seq::Error) -> Self {
        use cascade_seq::Error::*;
        match e {
            InvalidParameter { .. }
            | Oversize { .. }
            | GridBudget(_)
            | LambertNoConvergence(_)
            | NoPositiveRevenue => Failure::Infeasible(e.into()),
            _ => Failure::Input(e.into()),
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Input(e)
    }
}

#[derive(Serialize)]
struct SolveDocument {
    mode: Mode,
    #[serde(rename = "B")]
    budget: usize,
    sequence: DisplaySequence,
    #[serde(skip_serializing_if = "Option::is_none")]
    prices: Option<PriceVector>,
    revenue: f64,
    set_revenue: f64,
    certified_ratio: f64,
    rho: f64,
    epsilon: f64,
}

#[derive(Serialize)]
struct ExactDocument {
    mode: Mode,
    #[serde(rename = "B")]
    budget: usize,
    sequence: DisplaySequence,
    #[serde(skip_serializing_if = "Option::is_none")]
    prices: Option<PriceVector>,
    revenue: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    grid_points: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    grid_error_bound: Option<f64>,
}

fn load(path: &Path) -> Result<Instance, Failure> {
    Ok(InstanceFile::read(path)?.catalog()?)
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::Input(anyhow!("writing {}: {e}", path.display()))),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Input(e.into())),
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("documents always serialize");
    text.push('\n');
    text
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Solve {
            instance,
            solver,
            out,
        } => {
            let inst = load(&instance)?;
            let result = match &inst {
                Instance::Fixed(c) => solve_sequencing(c, solver.rho, solver.epsilon)?,
                Instance::Priced(c) => solve_pricing(c, solver.rho, solver.epsilon)?,
            };
            let doc = SolveDocument {
                mode: inst.mode(),
                budget: inst.display_budget(),
                sequence: result.sequence,
                prices: result.prices,
                revenue: result.revenue,
                set_revenue: result.set_revenue,
                certified_ratio: result.certified_ratio,
                rho: result.rho,
                epsilon: result.epsilon,
            };
            emit(&json(&doc), out.as_deref())
        }
        Command::Exact {
            instance,
            grid_points,
            out,
        } => {
            let inst = load(&instance)?;
            let doc = match &inst {
                Instance::Fixed(c) => {
                    let (sequence, revenue) = exact_pa(c)?;
                    ExactDocument {
                        mode: Mode::Fixed,
                        budget: c.display_budget(),
                        sequence,
                        prices: None,
                        revenue,
                        grid_points: None,
                        grid_error_bound: None,
                    }
                }
                Instance::Priced(c) => {
                    let best = exact_pb_grid(c, &PriceGrid::default_for(c, grid_points)?)?;
                    ExactDocument {
                        mode: Mode::Priced,
                        budget: c.display_budget(),
                        sequence: best.sequence,
                        prices: Some(best.prices),
                        revenue: best.revenue,
                        grid_points: Some(best.grid_points),
                        grid_error_bound: Some(best.grid_error_bound),
                    }
                }
            };
            emit(&json(&doc), out.as_deref())
        }
        Command::Gen {
            n,
            b,
            mode,
            seed,
            out,
        } => emit(
            &InstanceFile::generate(n, b, mode, seed)?.to_json(),
            out.as_deref(),
        ),
        Command::Simulate {
            instance,
            sequence,
            prices,
            trials,
            seed,
            out,
        } => {
            let inst = load(&instance)?;
            let seq = DisplaySequence::new(sequence)?;
            let report = match &inst {
                Instance::Fixed(c) => {
                    if !prices.is_empty() {
                        return Err(anyhow!("--prices only applies to priced instances").into());
                    }
                    simulate(&seq, c, trials, seed)?
                }
                Instance::Priced(c) => {
                    let prices: PriceVector = if prices.is_empty() {
                        optimal_prices(seq.as_slice(), c)?.0
                    } else {
                        prices.into_iter().collect()
                    };
                    simulate_priced(&seq, &prices, c, trials, seed)?
                }
            };
            emit(&json(&report), out.as_deref())
        }
        Command::Bench(args) => emit(&bench::run(&args)?, args.out.as_deref()),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
