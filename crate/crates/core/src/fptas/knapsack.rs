//! 0/1 knapsack with one capacity and one cardinality constraint, solved
//! approximately by profit scaling.
//!
//! Values are rounded down to multiples of `eps * v_max / K`, where `K` is the
//! cardinality bound and `v_max` the largest value of an item that fits on
//! its own. A chosen set loses less than one unit per item, so at most
//! `eps * v_max <= eps * OPT` in total. The DP keeps, for every (scaled
//! profit, count) pair, the lightest subset reaching it (ties broken by true
//! value), and the answer is the stored subset of highest true value, which
//! is never worse than the one of highest scaled profit.

use std::collections::BTreeMap;

use crate::error::{unit_open, Result};
use crate::model::ProductId;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KnapsackItem {
    pub id: ProductId,
    pub value: f64,
    pub weight: f64,
}

const ROOT: u32 = u32::MAX;

#[derive(Debug, Clone, Copy)]
struct State {
    weight: f64,
    value: f64,
    node: u32,
}

/// Returns ids (ascending) of a set with total weight `<= capacity`, at most
/// `cardinality` members and value at least `(1 - eps)` times the optimum.
pub fn knapsack_fptas_cardinality(
    items: &[KnapsackItem],
    capacity: f64,
    cardinality: usize,
    epsilon: f64,
) -> Result<Vec<ProductId>> {
    let epsilon = unit_open("epsilon", epsilon)?;
    let fits: Vec<&KnapsackItem> = items
        .iter()
        .filter(|it| it.weight <= capacity && it.value > 0.0)
        .collect();
    if cardinality == 0 || fits.is_empty() {
        return Ok(Vec::new());
    }
    let v_max = fits.iter().map(|it| it.value).fold(0.0, f64::max);
    let unit = epsilon * v_max / cardinality as f64;

    // arena of (item position in `fits`, parent node) back-pointers
    let mut arena: Vec<(u32, u32)> = Vec::new();
    // by_count[c]: scaled profit -> lightest state with c items
    let mut by_count: Vec<BTreeMap<u64, State>> = vec![BTreeMap::new(); cardinality + 1];
    by_count[0].insert(
        0,
        State {
            weight: 0.0,
            value: 0.0,
            node: ROOT,
        },
    );

    for (k, it) in fits.iter().enumerate() {
        let profit = (it.value / unit).floor() as u64;
        for c in (1..=cardinality).rev() {
            let (lower, upper) = by_count.split_at_mut(c);
            let from = &lower[c - 1];
            let to = &mut upper[0];
            for (&p, s) in from {
                let weight = s.weight + it.weight;
                if weight > capacity {
                    continue;
                }
                let key = p + profit;
                let value = s.value + it.value;
                let better = to.get(&key).is_none_or(|old| {
                    weight < old.weight || (weight == old.weight && value > old.value)
                });
                if better {
                    arena.push((k as u32, s.node));
                    to.insert(
                        key,
                        State {
                            weight,
                            value,
                            node: (arena.len() - 1) as u32,
                        },
                    );
                }
            }
        }
    }

    // Highest true value; ties go to fewer items, then lighter weight.
    let mut best: Option<&State> = None;
    for s in by_count.iter().flat_map(|states| states.values()) {
        let take =
            best.is_none_or(|b| s.value > b.value || (s.value == b.value && s.weight < b.weight));
        if take {
            best = Some(s);
        }
    }
    let mut node = best.map_or(ROOT, |b| b.node);
    let mut chosen = Vec::new();
    while node != ROOT {
        let (k, parent) = arena[node as usize];
        chosen.push(fits[k as usize].id);
        node = parent;
    }
    chosen.sort_unstable();
    Ok(chosen)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn items(spec: &[(f64, f64)]) -> Vec<KnapsackItem> {
        spec.iter()
            .enumerate()
            .map(|(k, &(value, weight))| KnapsackItem {
                id: k as ProductId,
                value,
                weight,
            })
            .collect()
    }

    fn exhaustive(items: &[KnapsackItem], capacity: f64, cardinality: usize) -> f64 {
        (0u32..1 << items.len())
            .filter(|m| m.count_ones() as usize <= cardinality)
            .filter_map(|m| {
                let (v, w) = items
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| m & (1 << k) != 0)
                    .fold((0.0, 0.0), |(v, w), (_, it)| (v + it.value, w + it.weight));
                (w <= capacity).then_some(v)
            })
            .fold(0.0, f64::max)
    }

    #[test]
    fn nothing_fits() {
        let it = items(&[(1.0, 0.5), (2.0, 0.1)]);
        assert!(knapsack_fptas_cardinality(&it, 0.0, 2, 0.1)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn weightless_items_pick_the_top_values() {
        let it = items(&[(1.0, 0.0), (5.0, 0.0), (3.0, 0.0), (4.0, 0.0)]);
        for eps in [0.01, 0.5, 0.9] {
            let mut got = knapsack_fptas_cardinality(&it, 0.0, 2, eps).unwrap();
            got.sort();
            assert_eq!(got, vec![1, 3]);
        }
    }

    #[test]
    fn cardinality_zero() {
        let it = items(&[(1.0, 0.0)]);
        assert!(knapsack_fptas_cardinality(&it, 1.0, 0, 0.1)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn tiny_epsilon_is_exact_on_integers() {
        let it = items(&[
            (3.0, 0.4),
            (4.0, 0.5),
            (5.0, 0.3),
            (6.0, 0.6),
            (2.0, 0.1),
            (7.0, 0.9),
        ]);
        for (cap, card) in [(1.0, 2), (1.0, 3), (0.5, 2), (2.0, 6), (0.05, 1)] {
            let got = knapsack_fptas_cardinality(&it, cap, card, 1e-6).unwrap();
            let value: f64 = got.iter().map(|&id| it[id as usize].value).sum();
            assert_eq!(value, exhaustive(&it, cap, card), "cap {cap} card {card}");
        }
    }

    #[test]
    fn respects_constraints() {
        let it = items(&[(3.0, 0.4), (4.0, 0.5), (5.0, 0.3), (6.0, 0.6)]);
        let got = knapsack_fptas_cardinality(&it, 0.8, 2, 0.2).unwrap();
        let w: f64 = got.iter().map(|&id| it[id as usize].weight).sum();
        assert!(w <= 0.8 && got.len() <= 2);
    }
}
