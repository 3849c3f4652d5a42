//! The scaled-sum dynamic program.
//!
//! `h(j, u, v, l)` is the smallest total `omega` over subsets of the first
//! `j` items whose scaled gamma sum is exactly `u`, scaled beta sum exactly
//! `v`, and size exactly `l`. Items are added one at a time into a rolling
//! three-dimensional [`Frontier`]; each insertion records a bit per cell
//! saying whether the new item was taken there, which is all that is needed
//! to walk a solution back.

use super::grid::ScaledItem;
use crate::model::ProductId;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Shape {
    pub u_max: usize,
    pub v_max: usize,
    pub max_len: usize,
}

impl Shape {
    pub fn cells(&self) -> usize {
        (self.u_max + 1) * (self.v_max + 1) * (self.max_len + 1)
    }

    #[inline]
    pub fn index(&self, u: usize, v: usize, l: usize) -> usize {
        (l * (self.u_max + 1) + u) * (self.v_max + 1) + v
    }

    pub fn coords(&self, idx: usize) -> (usize, usize, usize) {
        let v = idx % (self.v_max + 1);
        let rest = idx / (self.v_max + 1);
        (rest % (self.u_max + 1), v, rest / (self.u_max + 1))
    }

    pub fn admits(&self, item: &ScaledItem) -> bool {
        self.max_len > 0
            && item.omega.is_finite()
            && item.gamma_tilde <= self.u_max
            && item.beta_tilde <= self.v_max
    }
}

/// One bit per cell: did this insertion take its item there?
#[derive(Debug, Clone)]
pub(crate) struct TakeLayer {
    pub item: usize,
    bits: Vec<u64>,
}

impl TakeLayer {
    fn new(item: usize, cells: usize) -> Self {
        TakeLayer {
            item,
            bits: vec![0; cells.div_ceil(64)],
        }
    }

    #[inline]
    fn set(&mut self, idx: usize) {
        self.bits[idx / 64] |= 1 << (idx % 64);
    }

    #[inline]
    pub fn get(&self, idx: usize) -> bool {
        self.bits[idx / 64] & (1 << (idx % 64)) != 0
    }

    pub fn words(&self) -> usize {
        self.bits.len()
    }
}

/// The current slice `h(j, ., ., .)` plus the exact (unscaled) gamma and
/// beta sums of the subset stored in each cell.
#[derive(Debug, Clone)]
pub(crate) struct Frontier {
    pub shape: Shape,
    pub omega: Vec<f64>,
    pub gamma_sum: Vec<f64>,
    pub beta_sum: Vec<f64>,
}

impl Frontier {
    pub fn new(shape: Shape) -> Self {
        let cells = shape.cells();
        let mut omega = vec![f64::INFINITY; cells];
        omega[0] = 0.0;
        Frontier {
            shape,
            omega,
            gamma_sum: vec![0.0; cells],
            beta_sum: vec![0.0; cells],
        }
    }

    /// Adds `item` (at position `item_index` of the caller's list). Cells
    /// whose total would exceed `cap` stay infinite. Returns `None` when the
    /// item cannot enter any subset.
    pub fn insert(&mut self, item_index: usize, item: &ScaledItem, cap: f64) -> Option<TakeLayer> {
        let s = self.shape;
        if !s.admits(item) || item.omega > cap {
            return None;
        }
        let mut layer = TakeLayer::new(item_index, s.cells());
        let (du, dv) = (item.gamma_tilde, item.beta_tilde);
        // l descends so that every source cell (at l - 1) is still h(j - 1).
        for l in (1..=s.max_len).rev() {
            for u in du..=s.u_max {
                let dst_row = s.index(u, 0, l);
                let src_row = s.index(u - du, 0, l - 1);
                for v in dv..=s.v_max {
                    let src = src_row + v - dv;
                    let base = self.omega[src];
                    if base == f64::INFINITY {
                        continue;
                    }
                    let cand = base + item.omega;
                    let dst = dst_row + v;
                    if cand < self.omega[dst] && cand <= cap {
                        self.omega[dst] = cand;
                        self.gamma_sum[dst] = self.gamma_sum[src] + item.gamma;
                        self.beta_sum[dst] = self.beta_sum[src] + item.beta;
                        layer.set(dst);
                    }
                }
            }
        }
        Some(layer)
    }

    /// Walks the take-bits back from `idx`, returning positions of the chosen
    /// items in the caller's list.
    pub fn reconstruct(
        &self,
        mut idx: usize,
        layers: &[TakeLayer],
        items: &[ScaledItem],
    ) -> Vec<usize> {
        let s = self.shape;
        let mut chosen = Vec::new();
        for layer in layers.iter().rev() {
            if layer.get(idx) {
                let item = &items[layer.item];
                let (u, v, l) = s.coords(idx);
                idx = s.index(u - item.gamma_tilde, v - item.beta_tilde, l - 1);
                chosen.push(layer.item);
            }
        }
        debug_assert_eq!(idx, 0);
        chosen
    }
}

/// The full table `h(j, u, v, l)` for `j = 0..=n`, with back-pointers.
#[derive(Debug, Clone)]
pub struct DPTable {
    shape: Shape,
    items: Vec<ScaledItem>,
    slices: Vec<Vec<f64>>,
    layers: Vec<Option<TakeLayer>>,
    last: Frontier,
}

/// Fills `h` over `items` in order, with `u <= u_max`, `v <= v_max` and
/// subset sizes up to `max_len`. Infeasible cells hold `+inf`.
pub fn dp_fill(items: &[ScaledItem], max_len: usize, u_max: usize, v_max: usize) -> DPTable {
    let shape = Shape {
        u_max,
        v_max,
        max_len,
    };
    let mut frontier = Frontier::new(shape);
    let mut slices = vec![frontier.omega.clone()];
    let mut layers = Vec::with_capacity(items.len());
    for (k, item) in items.iter().enumerate() {
        layers.push(frontier.insert(k, item, f64::INFINITY));
        slices.push(frontier.omega.clone());
    }
    DPTable {
        shape,
        items: items.to_vec(),
        slices,
        layers,
        last: frontier,
    }
}

impl DPTable {
    pub fn items(&self) -> usize {
        self.items.len()
    }

    pub fn u_max(&self) -> usize {
        self.shape.u_max
    }

    pub fn v_max(&self) -> usize {
        self.shape.v_max
    }

    pub fn max_len(&self) -> usize {
        self.shape.max_len
    }

    /// `h(j, u, v, l)`; out-of-range coordinates are infeasible.
    pub fn h(&self, j: usize, u: usize, v: usize, l: usize) -> f64 {
        let s = self.shape;
        if j > self.items.len() || u > s.u_max || v > s.v_max || l > s.max_len {
            return f64::INFINITY;
        }
        self.slices[j][s.index(u, v, l)]
    }

    /// The subset realizing `h(j, u, v, l)`, as product ids in item order.
    pub fn reconstruct(&self, j: usize, u: usize, v: usize, l: usize) -> Option<Vec<ProductId>> {
        if self.h(j, u, v, l) == f64::INFINITY {
            return None;
        }
        let layers: Vec<TakeLayer> = self.layers[..j].iter().flatten().cloned().collect();
        let mut picked = self
            .last
            .reconstruct(self.shape.index(u, v, l), &layers, &self.items);
        picked.sort_unstable();
        Some(picked.into_iter().map(|k| self.items[k].id).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Exhaustive oracle: min omega over all subsets hitting (u, v, l).
    fn brute(items: &[ScaledItem], u: usize, v: usize, l: usize) -> f64 {
        let mut best = f64::INFINITY;
        for mask in 0u32..(1 << items.len()) {
            let chosen: Vec<&ScaledItem> = items
                .iter()
                .enumerate()
                .filter(|(k, _)| mask & (1 << k) != 0)
                .map(|(_, it)| it)
                .collect();
            if chosen.len() == l
                && chosen.iter().map(|i| i.gamma_tilde).sum::<usize>() == u
                && chosen.iter().map(|i| i.beta_tilde).sum::<usize>() == v
            {
                best = best.min(chosen.iter().map(|i| i.omega).sum());
            }
        }
        best
    }

    #[test]
    fn empty_table() {
        let t = dp_fill(&[], 2, 3, 3);
        for u in 0..=3 {
            for v in 0..=3 {
                for l in 0..=2 {
                    let want = if (u, v, l) == (0, 0, 0) {
                        0.0
                    } else {
                        f64::INFINITY
                    };
                    assert_eq!(t.h(0, u, v, l), want);
                }
            }
        }
    }

    #[test]
    fn one_item() {
        let t = dp_fill(&[ScaledItem::raw(9, 2, 3, 0.7)], 1, 4, 4);
        assert_eq!(t.h(1, 2, 3, 1), 0.7);
        assert_eq!(t.h(1, 0, 0, 0), 0.0);
        assert_eq!(t.h(1, 2, 3, 0), f64::INFINITY);
        assert_eq!(t.reconstruct(1, 2, 3, 1), Some(vec![9]));
        assert_eq!(t.reconstruct(1, 0, 0, 0), Some(vec![]));
    }

    #[test]
    fn zero_theta_items_never_enter() {
        let t = dp_fill(&[ScaledItem::raw(1, 1, 1, f64::INFINITY)], 1, 2, 2);
        assert_eq!(t.h(1, 1, 1, 1), f64::INFINITY);
    }

    fn item_strategy() -> impl Strategy<Value = ScaledItem> {
        (0usize..5, 0usize..5, 0.0f64..2.0).prop_map(|(g, b, w)| ScaledItem::raw(0, g, b, w))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn matches_exhaustive_enumeration(mut items in prop::collection::vec(item_strategy(), 0..=8),
                                          max_len in 0usize..4) {
            for (k, it) in items.iter_mut().enumerate() {
                it.id = k as ProductId;
            }
            let (u_max, v_max) = (9, 9);
            let t = dp_fill(&items, max_len, u_max, v_max);
            let n = items.len();
            for u in 0..=u_max {
                for v in 0..=v_max {
                    for l in 0..=max_len {
                        let want = brute(&items, u, v, l);
                        let got = t.h(n, u, v, l);
                        if want.is_finite() {
                            prop_assert!((got - want).abs() < 1e-12, "({u},{v},{l}): {got} vs {want}");
                            let set = t.reconstruct(n, u, v, l).unwrap();
                            let pick: Vec<&ScaledItem> = set.iter().map(|&id| &items[id as usize]).collect();
                            prop_assert_eq!(pick.len(), l);
                            prop_assert_eq!(pick.iter().map(|i| i.gamma_tilde).sum::<usize>(), u);
                            prop_assert_eq!(pick.iter().map(|i| i.beta_tilde).sum::<usize>(), v);
                            prop_assert!((pick.iter().map(|i| i.omega).sum::<f64>() - want).abs() < 1e-12);
                        } else {
                            prop_assert_eq!(got, f64::INFINITY);
                        }
                        for j in 1..=n {
                            prop_assert!(t.h(j, u, v, l) <= t.h(j - 1, u, v, l));
                        }
                    }
                }
            }
        }
    }
}
