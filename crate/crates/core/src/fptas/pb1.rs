//! Joint selection and pricing of the final consideration set.
//!
//! With optimal prices a set `T` earns `W(sum_{i in T} v_i)`, and `W` is
//! increasing, so for a fixed last product `y` the problem is a knapsack over
//! the potentials `v_i` with weights `-ln(theta_i)`, capacity `-ln(rho)` and
//! at most `B - 1` members. Concavity of `W` with `W(0) = 0` carries the
//! knapsack's `(1 - eps)` factor through to revenue.

use std::cmp::Ordering;

use rayon::prelude::*;
use serde::Serialize;

use super::knapsack::{knapsack_fptas_cardinality, KnapsackItem};
use crate::error::{unit_open, Result};
use crate::model::{optimal_prices, Listing, PriceVector, PricedCatalog, ProductId};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Pb1Solution {
    /// Sorted ascending.
    pub chosen_set: Vec<ProductId>,
    pub last_product: ProductId,
    /// Optimal prices for `chosen_set + last_product`.
    pub prices: PriceVector,
    /// `W(sum of potentials)`, the optimal `g` of the final set.
    pub revenue: f64,
}

impl Pb1Solution {
    fn preference(&self, other: &Self) -> Ordering {
        other
            .revenue
            .total_cmp(&self.revenue)
            .then(self.last_product.cmp(&other.last_product))
            .then_with(|| self.chosen_set.cmp(&other.chosen_set))
    }
}

pub fn solve_pb1(catalog: &PricedCatalog, rho: f64, epsilon: f64) -> Result<Pb1Solution> {
    let rho = unit_open("rho", rho)?;
    let epsilon = unit_open("epsilon", epsilon)?;
    let capacity = -rho.ln();
    let cardinality = catalog.display_budget() - 1;
    let products = catalog.products();

    let candidates = products
        .par_iter()
        .map(|y| {
            let items: Vec<KnapsackItem> = products
                .iter()
                .filter(|p| p.id != y.id && p.omega().is_finite())
                .map(|p| KnapsackItem {
                    id: p.id,
                    value: p.potential(),
                    weight: p.omega(),
                })
                .collect();
            let chosen_set = knapsack_fptas_cardinality(&items, capacity, cardinality, epsilon)?;
            let mut all = chosen_set.clone();
            all.push(y.id);
            let (prices, revenue) = optimal_prices(&all, catalog)?;
            Ok(Pb1Solution {
                chosen_set,
                last_product: y.id,
                prices,
                revenue,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(candidates
        .into_iter()
        .min_by(|a, b| a.preference(b))
        .expect("catalog is non-empty"))
}
