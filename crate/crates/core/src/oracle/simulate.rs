//! Monte Carlo consumers walking a displayed sequence.
//!
//! Trial `t` draws from ChaCha8 seeded with `seed` on stream `t`, so any
//! split of the trials across threads reproduces the same report.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{Catalog, DisplaySequence, PriceVector, PricedCatalog, Product, ProductId};

const CHUNK: u64 = 8192;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimulationReport {
    pub trials: u64,
    pub empirical_revenue: f64,
    /// Sample standard deviation over `sqrt(trials)`.
    pub std_error: f64,
    pub per_product_purchase_freq: BTreeMap<ProductId, f64>,
    pub no_purchase_freq: f64,
    /// Fraction of consumers whose consideration set ended at each position.
    pub stop_freq: Vec<f64>,
}

#[derive(Debug, Clone)]
struct Tally {
    n: u64,
    mean: f64,
    m2: f64,
    purchases: Vec<u64>,
    no_purchase: u64,
    stops: Vec<u64>,
}

impl Tally {
    fn new(len: usize) -> Self {
        Tally {
            n: 0,
            mean: 0.0,
            m2: 0.0,
            purchases: vec![0; len],
            no_purchase: 0,
            stops: vec![0; len],
        }
    }

    fn record(&mut self, revenue: f64) {
        self.n += 1;
        let delta = revenue - self.mean;
        self.mean += delta / self.n as f64;
        self.m2 += delta * (revenue - self.mean);
    }

    /// Chan et al. pairwise merge of running moments.
    fn merge(mut self, other: Tally) -> Tally {
        let n = self.n + other.n;
        if n > 0 {
            let delta = other.mean - self.mean;
            let (a, b) = (self.n as f64, other.n as f64);
            self.mean += delta * b / n as f64;
            self.m2 += other.m2 + delta * delta * a * b / n as f64;
        }
        self.n = n;
        for (x, y) in self.purchases.iter_mut().zip(&other.purchases) {
            *x += y;
        }
        for (x, y) in self.stops.iter_mut().zip(&other.stops) {
            *x += y;
        }
        self.no_purchase += other.no_purchase;
        self
    }
}

/// Simulates `trials` independent consumers facing `seq`.
pub fn simulate(
    seq: &DisplaySequence,
    catalog: &Catalog,
    trials: u64,
    seed: u64,
) -> Result<SimulationReport> {
    if trials == 0 {
        return Err(Error::NoTrials);
    }
    if seq.is_empty() {
        return Err(Error::EmptyAssortment);
    }
    let products = seq
        .iter()
        .map(|id| catalog.get(id).copied())
        .collect::<Result<Vec<_>>>()?;
    let base = ChaCha8Rng::seed_from_u64(seed);
    let chunks = trials.div_ceil(CHUNK);
    let tally = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut tally = Tally::new(products.len());
            for t in c * CHUNK..((c + 1) * CHUNK).min(trials) {
                let mut rng = base.clone();
                rng.set_stream(t);
                run_trial(&products, &mut rng, &mut tally);
            }
            tally
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(Tally::new(products.len()), Tally::merge);

    let n = tally.n as f64;
    let variance = if tally.n > 1 {
        tally.m2 / (n - 1.0)
    } else {
        0.0
    };
    Ok(SimulationReport {
        trials,
        empirical_revenue: tally.mean,
        std_error: (variance / n).sqrt(),
        per_product_purchase_freq: products
            .iter()
            .zip(&tally.purchases)
            .map(|(p, &k)| (p.id, k as f64 / n))
            .collect(),
        no_purchase_freq: tally.no_purchase as f64 / n,
        stop_freq: tally.stops.iter().map(|&k| k as f64 / n).collect(),
    })
}

/// [`simulate`] at the given prices.
pub fn simulate_priced(
    seq: &DisplaySequence,
    prices: &PriceVector,
    catalog: &PricedCatalog,
    trials: u64,
    seed: u64,
) -> Result<SimulationReport> {
    for id in seq.iter() {
        catalog.get(id)?;
        prices.require(id)?;
    }
    simulate(seq, &catalog.priced_subset(prices)?, trials, seed)
}

fn run_trial(products: &[Product], rng: &mut ChaCha8Rng, tally: &mut Tally) {
    let last = products.len() - 1;
    let mut stop = last;
    let mut weight = 1.0;
    for (k, p) in products.iter().enumerate() {
        weight += p.beta;
        if k == last || rng.gen::<f64>() >= p.theta {
            stop = k;
            break;
        }
    }
    tally.stops[stop] += 1;
    let mut u = rng.gen::<f64>() * weight;
    for (k, p) in products[..=stop].iter().enumerate() {
        if u < p.beta {
            tally.purchases[k] += 1;
            tally.record(p.alpha);
            return;
        }
        u -= p.beta;
    }
    tally.no_purchase += 1;
    tally.record(0.0);
}
