#![allow(dead_code)]

use cascade_seq::model::{Catalog, PricedCatalog, PricedProduct, Product, ProductId};
use proptest::prelude::*;

pub fn fixed(spec: &[(f64, f64, f64)], budget: usize) -> Catalog {
    let products = spec
        .iter()
        .enumerate()
        .map(|(k, &(a, b, t))| Product::new(k as ProductId + 1, a, b, t).unwrap())
        .collect();
    Catalog::new(products, budget).unwrap()
}

pub fn priced(spec: &[(f64, f64, f64)], budget: usize) -> PricedCatalog {
    let products = spec
        .iter()
        .enumerate()
        .map(|(k, &(q, c, t))| PricedProduct::new(k as ProductId + 1, q, c, t).unwrap())
        .collect();
    Catalog::new(products, budget).unwrap()
}

pub fn fixed_product() -> impl Strategy<Value = (f64, f64, f64)> {
    (0.0..10.0f64, 0.01..5.0f64, 0.0..=1.0f64)
}

/// Catalog of `n_min..=n_max` products with a budget in `1..=min(N, b_max)`.
pub fn fixed_catalog(n_min: usize, n_max: usize, b_max: usize) -> impl Strategy<Value = Catalog> {
    prop::collection::vec(fixed_product(), n_min..=n_max).prop_flat_map(move |spec| {
        let n = spec.len();
        (Just(spec), 1..=n.min(b_max)).prop_map(|(spec, b)| fixed(&spec, b))
    })
}

pub fn priced_catalog(
    n_min: usize,
    n_max: usize,
    b_max: usize,
) -> impl Strategy<Value = PricedCatalog> {
    prop::collection::vec((0.0..5.0f64, 0.1..2.0f64, 0.5..0.99f64), n_min..=n_max).prop_flat_map(
        move |spec| {
            let n = spec.len();
            (Just(spec), 1..=n.min(b_max)).prop_map(|(spec, b)| priced(&spec, b))
        },
    )
}

/// A permutation of some subset of `ids`, as picked by the mask and shuffle.
pub fn subsequence(ids: &[ProductId], mask: u32, shuffle: &[usize]) -> Vec<ProductId> {
    let mut chosen: Vec<ProductId> = ids
        .iter()
        .enumerate()
        .filter(|(k, _)| mask & (1 << k) != 0)
        .map(|(_, &id)| id)
        .collect();
    for (k, &s) in shuffle.iter().enumerate().take(chosen.len()) {
        let j = k + s % (chosen.len() - k);
        chosen.swap(k, j);
    }
    chosen
}
