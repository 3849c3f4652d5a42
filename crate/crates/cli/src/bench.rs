//! Benchmark sweeps over generated instances.

use std::path::PathBuf;
use std::time::Instant;

use cascade_seq::oracle::{exact_pa, exact_pb_grid, PriceGrid, PA_LIMIT, PB_GRID_LIMIT};
use cascade_seq::{solve_pricing, solve_sequencing};
use clap::Args;
use rayon::prelude::*;
use serde::Serialize;

use crate::instance::{Instance, InstanceFile, Mode};
use crate::Failure;

#[derive(Args)]
pub struct BenchArgs {
    #[arg(long, value_enum, default_value_t = Mode::Fixed)]
    mode: Mode,
    #[arg(long, value_delimiter = ',', default_value = "5")]
    n_list: Vec<usize>,
    /// Display budgets; each is capped at N.
    #[arg(long, value_delimiter = ',', default_value = "3")]
    b_list: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "0.1")]
    eps_list: Vec<f64>,
    #[arg(long, value_delimiter = ',', default_value = "0.5")]
    rho_list: Vec<f64>,
    #[arg(long, value_delimiter = ',', default_value = "0")]
    seeds: Vec<u64>,
    #[arg(long, default_value_t = 21)]
    grid_points: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub const HEADER: [&str; 10] = [
    "instance",
    "N",
    "B",
    "epsilon",
    "rho",
    "alg_revenue",
    "oracle_revenue",
    "realized_ratio",
    "certified_ratio",
    "wall_ms",
];

#[derive(Serialize)]
struct Row {
    instance: String,
    #[serde(rename = "N")]
    n: usize,
    #[serde(rename = "B")]
    b: usize,
    epsilon: f64,
    rho: f64,
    alg_revenue: f64,
    oracle_revenue: Option<f64>,
    realized_ratio: Option<f64>,
    certified_ratio: f64,
    wall_ms: String,
}

struct Case {
    name: String,
    instance: Instance,
    oracle: Option<f64>,
}

fn oracle(instance: &Instance, grid_points: usize) -> Option<f64> {
    match instance {
        Instance::Fixed(c) if c.len() <= PA_LIMIT => exact_pa(c).ok().map(|(_, r)| r),
        Instance::Priced(c) if c.len() <= PB_GRID_LIMIT => PriceGrid::default_for(c, grid_points)
            .and_then(|g| exact_pb_grid(c, &g))
            .ok()
            .map(|best| best.revenue),
        _ => None,
    }
}

pub fn run(args: &BenchArgs) -> Result<String, Failure> {
    let mut specs = Vec::new();
    for &n in &args.n_list {
        for &b in &args.b_list {
            for &seed in &args.seeds {
                let b = b.min(n);
                let name = format!("{}-n{n}-b{b}-s{seed}", mode_name(args.mode));
                specs.push((name, InstanceFile::generate(n, b, args.mode, seed)?));
            }
        }
    }
    let cases = specs
        .into_par_iter()
        .map(|(name, file)| {
            let instance = file.catalog()?;
            let oracle = oracle(&instance, args.grid_points);
            Ok(Case {
                name,
                instance,
                oracle,
            })
        })
        .collect::<Result<Vec<_>, Failure>>()?;

    let jobs: Vec<(&Case, f64, f64)> = cases
        .iter()
        .flat_map(|case| {
            args.eps_list
                .iter()
                .flat_map(move |&eps| args.rho_list.iter().map(move |&rho| (case, eps, rho)))
        })
        .collect();
    let rows = jobs
        .into_par_iter()
        .map(|(case, epsilon, rho)| {
            let start = Instant::now();
            let result = match &case.instance {
                Instance::Fixed(c) => solve_sequencing(c, rho, epsilon)?,
                Instance::Priced(c) => solve_pricing(c, rho, epsilon)?,
            };
            let wall_ms = start.elapsed().as_secs_f64() * 1e3;
            Ok(Row {
                instance: case.name.clone(),
                n: case.instance.len(),
                b: case.instance.display_budget(),
                epsilon,
                rho,
                alg_revenue: result.revenue,
                oracle_revenue: case.oracle,
                realized_ratio: case
                    .oracle
                    .map(|o| if o > 0.0 { result.revenue / o } else { 1.0 }),
                certified_ratio: result.certified_ratio,
                wall_ms: format!("{wall_ms:.3}"),
            })
        })
        .collect::<Result<Vec<_>, Failure>>()?;

    let mut writer = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(Vec::new());
    writer
        .write_record(HEADER)
        .map_err(|e| Failure::Input(e.into()))?;
    for row in rows {
        writer
            .serialize(row)
            .map_err(|e| Failure::Input(e.into()))?;
    }
    let bytes = writer
        .into_inner()
        .map_err(|e| Failure::Input(anyhow::anyhow!("{e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn mode_name(mode: Mode) -> &'static str {
    match mode {
        Mode::Fixed => "fixed",
        Mode::Priced => "priced",
    }
}
