//! Exact solvers by enumeration, for certifying the approximation schemes on
//! small instances.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{unit_open, Error, Result};
use crate::fptas::Pa1Solution;
use crate::model::browse::cascade_revenue;
use crate::model::{
    lambert_w, Catalog, DisplaySequence, Listing, PriceVector, PricedCatalog, Product, ProductId,
};

pub const PA_LIMIT: usize = 8;
pub const PA1_LIMIT: usize = 15;
pub const PB_GRID_LIMIT: usize = 5;
pub const PB_GRID_MAX_POINTS: usize = 25;
/// Upper bound on `(sequence, price combination)` evaluations.
pub const PB_GRID_MAX_EVALUATIONS: u128 = 50_000_000;
pub const DEFAULT_GRID_POINTS: usize = 21;

/// All ordered, duplicate-free sequences of length `1..=max_len` over
/// `ids`, lengths ascending and lexicographic within a length.
pub(crate) fn ordered_sequences(ids: &[ProductId], max_len: usize) -> Vec<Vec<ProductId>> {
    fn extend(
        ids: &[ProductId],
        prefix: &mut Vec<ProductId>,
        len: usize,
        out: &mut Vec<Vec<ProductId>>,
    ) {
        if prefix.len() == len {
            out.push(prefix.clone());
            return;
        }
        for &id in ids {
            if !prefix.contains(&id) {
                prefix.push(id);
                extend(ids, prefix, len, out);
                prefix.pop();
            }
        }
    }
    let mut sorted = ids.to_vec();
    sorted.sort_unstable();
    let mut out = Vec::new();
    for len in 1..=max_len.min(sorted.len()) {
        extend(&sorted, &mut Vec::with_capacity(len), len, &mut out);
    }
    out
}

/// Highest revenue wins; among equals the earlier index (enumeration order).
fn first_argmax<T>(scored: impl Iterator<Item = (usize, f64, T)>) -> Option<(usize, f64, T)> {
    scored.fold(None, |best, cand| match best {
        None => Some(cand),
        Some(b) => match cand.1.total_cmp(&b.1).then(b.0.cmp(&cand.0)) {
            Ordering::Greater => Some(cand),
            _ => Some(b),
        },
    })
}

/// The optimal sequence of at most `B` products, by enumerating every
/// ordered sequence. Refuses catalogs larger than [`PA_LIMIT`].
pub fn exact_pa(catalog: &Catalog) -> Result<(DisplaySequence, f64)> {
    exact_pa_with_limit(catalog, PA_LIMIT)
}

pub fn exact_pa_with_limit(catalog: &Catalog, limit: usize) -> Result<(DisplaySequence, f64)> {
    if catalog.len() > limit {
        return Err(Error::Oversize {
            size: catalog.len(),
            limit,
        });
    }
    let ids: Vec<ProductId> = catalog.ids().collect();
    let sequences = ordered_sequences(&ids, catalog.display_budget());
    let scored: Vec<(usize, f64)> = sequences
        .par_iter()
        .enumerate()
        .map(|(k, seq)| {
            let products: Vec<Product> = seq.iter().map(|&id| *catalog.get(id).unwrap()).collect();
            (k, cascade_revenue(&products))
        })
        .collect();
    let (k, revenue, _) =
        first_argmax(scored.into_iter().map(|(k, r)| (k, r, ()))).expect("catalog is non-empty");
    Ok((DisplaySequence::new(sequences[k].clone())?, revenue))
}

/// Best assortment revenue `g(R)` over every ordered sequence `R` of at most
/// `B` products in which each product is reached with probability at least
/// `rho`. Refuses catalogs larger than [`PA_LIMIT`].
pub fn reachable_prefix_optimum(catalog: &Catalog, rho: f64) -> Result<(DisplaySequence, f64)> {
    let rho = unit_open("rho", rho)?;
    if catalog.len() > PA_LIMIT {
        return Err(Error::Oversize {
            size: catalog.len(),
            limit: PA_LIMIT,
        });
    }
    let ids: Vec<ProductId> = catalog.ids().collect();
    let sequences = ordered_sequences(&ids, catalog.display_budget());
    let scored = sequences.iter().enumerate().filter_map(|(k, seq)| {
        let products: Vec<&Product> = seq.iter().map(|&id| catalog.get(id).unwrap()).collect();
        let reach: f64 = products[..products.len() - 1]
            .iter()
            .map(|p| p.theta)
            .product();
        (reach >= rho).then(|| {
            let num: f64 = products.iter().map(|p| p.gamma()).sum();
            let den: f64 = 1.0 + products.iter().map(|p| p.beta).sum::<f64>();
            (k, num / den, ())
        })
    });
    let (k, revenue, _) = first_argmax(scored).expect("single products are always reachable");
    Ok((DisplaySequence::new(sequences[k].clone())?, revenue))
}

/// The optimal reachability-constrained assortment, by enumerating every
/// last product and every feasible set of the others.
pub fn exact_pa1(catalog: &Catalog, rho: f64) -> Result<Pa1Solution> {
    exact_pa1_with_limit(catalog, rho, PA1_LIMIT)
}

pub fn exact_pa1_with_limit(catalog: &Catalog, rho: f64, limit: usize) -> Result<Pa1Solution> {
    let rho = unit_open("rho", rho)?;
    if catalog.len() > limit {
        return Err(Error::Oversize {
            size: catalog.len(),
            limit,
        });
    }
    let cap = -rho.ln();
    let max_len = catalog.display_budget() - 1;
    let products = catalog.products();
    let best = products
        .par_iter()
        .map(|y| {
            let others: Vec<&Product> = products.iter().filter(|p| p.id != y.id).collect();
            let mut best: Option<Pa1Solution> = None;
            for mask in 0u32..(1 << others.len()) {
                if mask.count_ones() as usize > max_len {
                    continue;
                }
                let chosen: Vec<&Product> = others
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| mask & (1 << k) != 0)
                    .map(|(_, p)| *p)
                    .collect();
                if chosen.iter().map(|p| p.omega()).sum::<f64>() > cap {
                    continue;
                }
                let cand = Pa1Solution::new(chosen.iter().map(|p| p.id).collect(), y.id, catalog)?;
                best = Some(match best {
                    Some(b) => Pa1Solution::best(b, cand),
                    None => cand,
                });
            }
            Ok(best.expect("the empty set is always feasible"))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(best
        .into_iter()
        .reduce(Pa1Solution::best)
        .expect("catalog is non-empty"))
}

/// Candidate prices per product.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct PriceGrid(BTreeMap<ProductId, Vec<f64>>);

impl PriceGrid {
    pub fn new(points: BTreeMap<ProductId, Vec<f64>>) -> Self {
        PriceGrid(points)
    }

    /// `points` evenly spaced prices on `[c + 0.05, c + W(N * max v) + 2]`
    /// for every product. The optimal markup of any set is `W(sum v) + 1`,
    /// which that range brackets.
    pub fn default_for(catalog: &PricedCatalog, points: usize) -> Result<Self> {
        if points == 0 {
            return Err(Error::GridBudget(
                "a price grid needs at least one point".into(),
            ));
        }
        let v_max = catalog
            .products()
            .iter()
            .map(|p| p.potential())
            .fold(0.0, f64::max);
        let top = lambert_w(catalog.len() as f64 * v_max)? + 2.0;
        let map = catalog
            .products()
            .iter()
            .map(|p| {
                let (lo, hi) = (p.cost + 0.05, p.cost + top);
                let pts = if points == 1 {
                    vec![lo]
                } else {
                    let step = (hi - lo) / (points - 1) as f64;
                    (0..points).map(|k| lo + step * k as f64).collect()
                };
                (p.id, pts)
            })
            .collect();
        Ok(PriceGrid(map))
    }

    pub fn points(&self, id: ProductId) -> Result<&[f64]> {
        self.0
            .get(&id)
            .map(Vec::as_slice)
            .ok_or(Error::MissingPrice(id))
    }

    /// Largest number of points over all products.
    pub fn resolution(&self) -> usize {
        self.0.values().map(Vec::len).max().unwrap_or(0)
    }

    /// Largest gap between neighbouring points of one product; 0 for a
    /// single point.
    pub fn step(&self, id: ProductId) -> Result<f64> {
        let pts = self.points(id)?;
        Ok(pts
            .windows(2)
            .map(|w| (w[1] - w[0]).abs())
            .fold(0.0, f64::max))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridOptimum {
    pub sequence: DisplaySequence,
    pub prices: PriceVector,
    pub revenue: f64,
    pub grid_points: usize,
    /// `max_i max(|f(p + step_i e_i) - f(p)|, |f(p - step_i e_i) - f(p)|)`
    /// over the displayed products, at the grid optimum.
    pub grid_error_bound: f64,
}

/// Best `f(S, p)` over every sequence of at most `B` products and every
/// combination of grid prices for the displayed products.
pub fn exact_pb_grid(catalog: &PricedCatalog, grid: &PriceGrid) -> Result<GridOptimum> {
    if catalog.len() > PB_GRID_LIMIT {
        return Err(Error::Oversize {
            size: catalog.len(),
            limit: PB_GRID_LIMIT,
        });
    }
    if grid.resolution() > PB_GRID_MAX_POINTS {
        return Err(Error::GridBudget(format!(
            "{} points per product exceeds {}",
            grid.resolution(),
            PB_GRID_MAX_POINTS
        )));
    }
    // per product: the fixed-parameter view at every grid price
    let views: BTreeMap<ProductId, Vec<(f64, Product)>> = catalog
        .products()
        .iter()
        .map(|p| {
            let pts = grid.points(p.id)?;
            if pts.is_empty() {
                return Err(Error::GridBudget(format!(
                    "product {} has no grid points",
                    p.id
                )));
            }
            Ok((p.id, pts.iter().map(|&x| (x, p.at_price(x))).collect()))
        })
        .collect::<Result<_>>()?;

    let ids: Vec<ProductId> = catalog.ids().collect();
    let sequences = ordered_sequences(&ids, catalog.display_budget());
    let evaluations: u128 = sequences
        .iter()
        .map(|s| s.iter().map(|id| views[id].len() as u128).product::<u128>())
        .sum();
    if evaluations > PB_GRID_MAX_EVALUATIONS {
        return Err(Error::GridBudget(format!(
            "{evaluations} evaluations exceeds {PB_GRID_MAX_EVALUATIONS}"
        )));
    }

    let scored: Vec<(usize, f64, Vec<usize>)> = sequences
        .par_iter()
        .enumerate()
        .map(|(k, seq)| {
            let options: Vec<&[(f64, Product)]> =
                seq.iter().map(|id| views[id].as_slice()).collect();
            let (revenue, choice) = best_prices(&options);
            (k, revenue, choice)
        })
        .collect();
    let (k, revenue, choice) = first_argmax(scored.into_iter()).expect("catalog is non-empty");
    let seq = &sequences[k];
    let prices: PriceVector = seq
        .iter()
        .zip(&choice)
        .map(|(id, &c)| (*id, views[id][c].0))
        .collect();

    let mut grid_error_bound: f64 = 0.0;
    let base: Vec<Product> = seq
        .iter()
        .zip(&choice)
        .map(|(id, &c)| views[id][c].1)
        .collect();
    for (pos, id) in seq.iter().enumerate() {
        let step = grid.step(*id)?;
        let p = catalog.get(*id)?;
        let price = prices.require(*id)?;
        for shifted in [price + step, price - step] {
            let mut probe = base.clone();
            probe[pos] = p.at_price(shifted);
            grid_error_bound = grid_error_bound.max((cascade_revenue(&probe) - revenue).abs());
        }
    }

    Ok(GridOptimum {
        sequence: DisplaySequence::new(seq.clone())?,
        prices,
        revenue,
        grid_points: grid.resolution(),
        grid_error_bound,
    })
}

/// Odometer over one grid index per position; first maximum wins.
fn best_prices(options: &[&[(f64, Product)]]) -> (f64, Vec<usize>) {
    let k = options.len();
    let mut idx = vec![0usize; k];
    let mut current: Vec<Product> = options.iter().map(|o| o[0].1).collect();
    let mut best = (cascade_revenue(&current), idx.clone());
    loop {
        let mut pos = k;
        loop {
            if pos == 0 {
                return best;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < options[pos].len() {
                current[pos] = options[pos][idx[pos]].1;
                break;
            }
            idx[pos] = 0;
            current[pos] = options[pos][0].1;
        }
        let r = cascade_revenue(&current);
        if r > best.0 {
            best = (r, idx.clone());
        }
    }
}
