//! FPTAS for the reachability-constrained assortment problem: choose a last
//! product `y` and a set `S` not containing it, maximizing `g(S + y)` subject
//! to `sum_{i in S} -ln(theta_i) <= -ln(rho)` and `|S| <= B - 1`.

use std::cmp::Ordering;

use rayon::prelude::*;
use serde::Serialize;

use super::dp::{Frontier, Shape, TakeLayer};
use super::grid::{build_guess_grids, dp_extent, ScaledItem};
use crate::error::{unit_open, Result};
use crate::model::{assortment_revenue, Catalog, Listing, Product, ProductId};

/// A set `S` and last product `y`, with the exact `g(S + y)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Pa1Solution {
    /// Sorted ascending.
    pub chosen_set: Vec<ProductId>,
    pub last_product: ProductId,
    pub revenue: f64,
}

impl Pa1Solution {
    pub(crate) fn new(
        mut chosen_set: Vec<ProductId>,
        last_product: ProductId,
        catalog: &Catalog,
    ) -> Result<Self> {
        chosen_set.sort_unstable();
        let mut all = chosen_set.clone();
        all.push(last_product);
        let revenue = assortment_revenue(&all, catalog)?;
        Ok(Pa1Solution {
            chosen_set,
            last_product,
            revenue,
        })
    }

    /// Higher revenue first, then lower `y`, then the lexicographically
    /// smaller set.
    pub fn preference(&self, other: &Self) -> Ordering {
        other
            .revenue
            .total_cmp(&self.revenue)
            .then(self.last_product.cmp(&other.last_product))
            .then_with(|| self.chosen_set.cmp(&other.chosen_set))
    }

    pub(crate) fn best(a: Self, b: Self) -> Self {
        if b.preference(&a) == Ordering::Less {
            b
        } else {
            a
        }
    }
}

/// Work done by one [`solve_pa1_with_stats`] call.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Pa1Stats {
    /// `|I| * |J|`.
    pub guess_pairs: usize,
    /// Pairs left after discarding guesses no feasible subset sum can fall
    /// under.
    pub guess_pairs_solved: usize,
    pub u_max: usize,
    pub v_max: usize,
    /// Cells in one `(u, v, l)` slice.
    pub slice_cells: usize,
    /// Most table entries alive at once in one worker: frontier values plus
    /// take-bit words.
    pub peak_entries: usize,
}

pub fn solve_pa1(catalog: &Catalog, rho: f64, epsilon: f64) -> Result<Pa1Solution> {
    solve_pa1_with_stats(catalog, rho, epsilon).map(|(s, _)| s)
}

pub fn solve_pa1_with_stats(
    catalog: &Catalog,
    rho: f64,
    epsilon: f64,
) -> Result<(Pa1Solution, Pa1Stats)> {
    let rho = unit_open("rho", rho)?;
    let epsilon = unit_open("epsilon", epsilon)?;
    let cap = -rho.ln();
    let products = catalog.products();
    let budget = catalog.display_budget();
    let max_len = budget - 1;

    let any_positive = products.iter().any(|p| p.gamma() > 0.0);
    let is_last_candidate = |p: &Product| !any_positive || p.gamma() > 0.0;

    // S = {} is feasible for every y and sits in cell (0, 0, 0) of every
    // table; score it up front so it survives even when no table is built.
    let mut best = products
        .iter()
        .filter(|p| is_last_candidate(p))
        .map(|p| Pa1Solution::new(Vec::new(), p.id, catalog))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .reduce(Pa1Solution::best)
        .expect("catalog is non-empty");

    let mut stats = Pa1Stats::default();
    let insertable: Vec<&Product> = products.iter().filter(|p| p.omega() <= cap).collect();
    if max_len == 0 || insertable.is_empty() || !any_positive {
        return Ok((best, stats));
    }

    let grid = build_guess_grids(catalog, epsilon)?;
    let extent = dp_extent(budget, epsilon);
    let shape = Shape {
        u_max: extent,
        v_max: extent,
        max_len,
    };
    stats.guess_pairs = grid.gamma_guesses.len() * grid.beta_guesses.len();
    stats.u_max = extent;
    stats.v_max = extent;
    stats.slice_cells = shape.cells();

    // A guess can only be the one bracketing some feasible non-empty S if it
    // lies within a factor (1 + eps) of an attainable subset sum.
    let gamma_range = sum_range(insertable.iter().map(|p| p.gamma()), max_len, epsilon);
    let beta_range = sum_range(insertable.iter().map(|p| p.beta), max_len, epsilon);
    let useful = |g: f64, (lo, hi): (f64, f64)| g >= lo && g <= hi;
    let pairs: Vec<(f64, f64)> = grid
        .gamma_guesses
        .iter()
        .filter(|&&g| useful(g, gamma_range))
        .flat_map(|&g| {
            grid.beta_guesses
                .iter()
                .filter(|&&h| useful(h, beta_range))
                .map(move |&h| (g, h))
        })
        .collect();
    stats.guess_pairs_solved = pairs.len();

    let lasts: Vec<bool> = products.iter().map(is_last_candidate).collect();
    let results = pairs
        .par_iter()
        .map(|&(g, h)| {
            let items: Vec<ScaledItem> = products
                .iter()
                .map(|p| ScaledItem::new(p, g, h, epsilon, budget))
                .collect();
            solve_guess_pair(catalog, &items, &lasts, shape, cap)
        })
        .collect::<Vec<_>>();
    for r in results {
        let (candidate, peak) = r?;
        stats.peak_entries = stats.peak_entries.max(peak);
        if let Some(c) = candidate {
            best = Pa1Solution::best(best, c);
        }
    }
    Ok((best, stats))
}

/// `[smallest positive value / (1 + eps), (1 + eps) * sum of the largest
/// max_len values]`.
fn sum_range(values: impl Iterator<Item = f64>, max_len: usize, epsilon: f64) -> (f64, f64) {
    let mut v: Vec<f64> = values.filter(|&x| x > 0.0).collect();
    v.sort_unstable_by(|a, b| b.total_cmp(a));
    let lo = v.last().copied().unwrap_or(0.0);
    let hi: f64 = v.iter().take(max_len).sum();
    // the slack factor absorbs rounding in the geometric grid
    let slack = 1.0 + 1e-9;
    (lo / (1.0 + epsilon) / slack, hi * (1.0 + epsilon) * slack)
}

struct LeaveOneOut<'a> {
    catalog: &'a Catalog,
    items: &'a [ScaledItem],
    lasts: &'a [bool],
    cap: f64,
    layers: Vec<TakeLayer>,
    best: Option<Pa1Solution>,
    live_frontiers: usize,
    peak: usize,
}

/// For each `y`, the DP over every item except `y`, scanned for the best
/// `g(S + y)`. The leave-one-out tables are built by divide and conquer:
/// each half is solved on a copy of the table that already holds the other
/// half, so every item is inserted O(log n) times instead of O(n).
fn solve_guess_pair(
    catalog: &Catalog,
    items: &[ScaledItem],
    lasts: &[bool],
    shape: Shape,
    cap: f64,
) -> Result<(Option<Pa1Solution>, usize)> {
    let mut run = LeaveOneOut {
        catalog,
        items,
        lasts,
        cap,
        layers: Vec::new(),
        best: None,
        live_frontiers: 1,
        peak: 0,
    };
    let root = Frontier::new(shape);
    run.recurse(&root, 0, items.len())?;
    Ok((run.best, run.peak))
}

impl LeaveOneOut<'_> {
    fn recurse(&mut self, frontier: &Frontier, lo: usize, hi: usize) -> Result<()> {
        if !self.lasts[lo..hi].iter().any(|&b| b) {
            return Ok(());
        }
        if hi - lo == 1 {
            return self.visit(frontier, lo);
        }
        let mid = (lo + hi) / 2;
        self.branch(frontier, mid..hi, lo, mid)?;
        self.branch(frontier, lo..mid, mid, hi)
    }

    fn branch(
        &mut self,
        frontier: &Frontier,
        add: std::ops::Range<usize>,
        lo: usize,
        hi: usize,
    ) -> Result<()> {
        let depth = self.layers.len();
        let mut next = frontier.clone();
        self.live_frontiers += 1;
        for k in add {
            if let Some(layer) = next.insert(k, &self.items[k], self.cap) {
                self.layers.push(layer);
            }
        }
        self.track_peak(&next);
        self.recurse(&next, lo, hi)?;
        self.layers.truncate(depth);
        self.live_frontiers -= 1;
        Ok(())
    }

    fn track_peak(&mut self, frontier: &Frontier) {
        let words: usize = self.layers.iter().map(TakeLayer::words).sum();
        let entries = self.live_frontiers * frontier.shape.cells() + words;
        self.peak = self.peak.max(entries);
    }

    fn visit(&mut self, frontier: &Frontier, y_index: usize) -> Result<()> {
        if !self.lasts[y_index] {
            return Ok(());
        }
        let y = &self.items[y_index];
        let mut top: Option<(f64, usize)> = None;
        for (idx, &w) in frontier.omega.iter().enumerate() {
            if w > self.cap {
                continue;
            }
            let revenue =
                (frontier.gamma_sum[idx] + y.gamma) / (frontier.beta_sum[idx] + y.beta + 1.0);
            match top {
                Some((r, _)) if revenue <= r => {}
                _ => top = Some((revenue, idx)),
            }
        }
        let Some((_, idx)) = top else { return Ok(()) };
        let chosen = frontier
            .reconstruct(idx, &self.layers, self.items)
            .into_iter()
            .map(|k| self.items[k].id)
            .collect();
        let candidate = Pa1Solution::new(chosen, y.id, self.catalog)?;
        self.best = Some(match self.best.take() {
            Some(b) => Pa1Solution::best(b, candidate),
            None => candidate,
        });
        Ok(())
    }
}
