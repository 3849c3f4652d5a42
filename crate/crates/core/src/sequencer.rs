//! End-to-end solvers: pick the final consideration set with an FPTAS,
//! display it in some order, and append the last product.
//!
//! Every product of the returned prefix is reached with probability at least
//! `rho`, so the consumer sees the whole set with probability at least `rho`
//! and `f >= rho * g(set)`. Together with the inner FPTAS guarantee and the
//! fact that the best reachability-constrained set earns at least
//! `(1 - rho)` times the optimal sequence revenue, this certifies
//! [`sequencing_ratio`] and [`pricing_ratio`].

use std::cmp::Ordering;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fptas::{solve_pa1, solve_pb1};
use crate::model::{
    priced_sequence_revenue, sequence_revenue, Catalog, DisplaySequence, PriceVector,
    PricedCatalog, Product, ProductId,
};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SequencingResult {
    pub sequence: DisplaySequence,
    pub prices: Option<PriceVector>,
    /// Exact `f` of `sequence` (at `prices` when present).
    pub revenue: f64,
    /// `g` of the displayed set, i.e. what the inner solver optimized.
    pub set_revenue: f64,
    pub certified_ratio: f64,
    pub rho: f64,
    pub epsilon: f64,
}

/// `rho (1 - rho)` peaks at one half.
pub fn default_rho() -> f64 {
    0.5
}

/// `(1 - eps(1 + eps)) / (1 + eps(1 + eps)) * rho (1 - rho)`.
pub fn sequencing_ratio(rho: f64, epsilon: f64) -> f64 {
    let e = epsilon * (1.0 + epsilon);
    (1.0 - e) / (1.0 + e) * rho * (1.0 - rho)
}

/// `(1 - eps) * rho (1 - rho)`.
pub fn pricing_ratio(rho: f64, epsilon: f64) -> f64 {
    (1.0 - epsilon) * rho * (1.0 - rho)
}

/// Fixed revenues: approximately optimal sequence of at most `B` products.
pub fn solve_sequencing(catalog: &Catalog, rho: f64, epsilon: f64) -> Result<SequencingResult> {
    if catalog.is_empty() {
        return Err(Error::EmptyCatalog);
    }
    let inner = solve_pa1(catalog, rho, epsilon)?;
    let sequence = order_chosen_set(&inner.chosen_set, inner.last_product, catalog)?;
    let revenue = sequence_revenue(&sequence, catalog)?;
    Ok(SequencingResult {
        sequence,
        prices: None,
        revenue,
        set_revenue: inner.revenue,
        certified_ratio: sequencing_ratio(rho, epsilon),
        rho,
        epsilon,
    })
}

/// Prices are decisions too: approximately optimal sequence plus prices.
pub fn solve_pricing(catalog: &PricedCatalog, rho: f64, epsilon: f64) -> Result<SequencingResult> {
    if catalog.is_empty() {
        return Err(Error::EmptyCatalog);
    }
    let inner = solve_pb1(catalog, rho, epsilon)?;
    let induced = catalog.priced_subset(&inner.prices)?;
    let sequence = order_chosen_set(&inner.chosen_set, inner.last_product, &induced)?;
    let revenue = priced_sequence_revenue(&sequence, &inner.prices, catalog)?;
    Ok(SequencingResult {
        sequence,
        prices: Some(inner.prices),
        revenue,
        set_revenue: inner.revenue,
        certified_ratio: pricing_ratio(rho, epsilon),
        rho,
        epsilon,
    })
}

/// Orders `chosen_set` and appends `last`.
///
/// Any order keeps the guarantee; this tries descending `theta` and
/// descending `alpha * beta` (ties by ascending id) and keeps whichever has
/// the higher exact `f`, preferring the `theta` order on a tie.
pub fn order_chosen_set(
    chosen_set: &[ProductId],
    last: ProductId,
    catalog: &Catalog,
) -> Result<DisplaySequence> {
    let mut members = chosen_set
        .iter()
        .map(|&id| catalog.get(id).copied())
        .collect::<Result<Vec<_>>>()?;
    catalog.get(last)?;

    let by = |key: fn(&Product) -> f64| {
        move |a: &Product, b: &Product| key(b).total_cmp(&key(a)).then(a.id.cmp(&b.id))
    };
    let finish = |order: &[Product]| {
        let mut ids: Vec<ProductId> = order.iter().map(|p| p.id).collect();
        ids.push(last);
        DisplaySequence::new(ids)
    };

    members.sort_by(by(|p| p.theta));
    let by_theta = finish(&members)?;
    members.sort_by(by(|p| p.gamma()));
    let by_gamma = finish(&members)?;

    let f_theta = sequence_revenue(&by_theta, catalog)?;
    let f_gamma = sequence_revenue(&by_gamma, catalog)?;
    Ok(match f_gamma.total_cmp(&f_theta) {
        Ordering::Greater => by_gamma,
        _ => by_theta,
    })
}
