//! Phase one of the consumer model: forming the consideration set.

use super::{Catalog, DisplaySequence, Listing, Product, ProductId};
use crate::error::Result;

/// Probability that a consumer looks at `id` at all: the product of the
/// continuation probabilities of everything displayed before it.
pub fn reachability<P: Listing>(
    seq: &DisplaySequence,
    id: ProductId,
    catalog: &Catalog<P>,
) -> Result<f64> {
    seq.before(id)?
        .iter()
        .try_fold(1.0, |acc, &j| Ok(acc * catalog.get(j)?.theta()))
}

/// Probability that the consideration set is exactly `S_{<=id}`, i.e. the
/// consumer stops right after `id`.
pub fn consideration_probability<P: Listing>(
    seq: &DisplaySequence,
    id: ProductId,
    catalog: &Catalog<P>,
) -> Result<f64> {
    let reach = reachability(seq, id, catalog)?;
    if seq.last() == Some(id) {
        Ok(reach)
    } else {
        Ok(reach * (1.0 - catalog.get(id)?.theta()))
    }
}

/// Expected revenue `f(S)` of displaying `seq`: the expectation of the MNL
/// assortment revenue over the random consideration set.
pub fn sequence_revenue(seq: &DisplaySequence, catalog: &Catalog) -> Result<f64> {
    let products = seq
        .iter()
        .map(|id| catalog.get(id).copied())
        .collect::<Result<Vec<_>>>()?;
    Ok(cascade_revenue(&products))
}

/// `f` over an already-resolved list of products, in display order.
///
/// Accumulates `sum(alpha * beta)` and `sum(beta)` over the prefix so each
/// prefix revenue costs O(1).
pub(crate) fn cascade_revenue(products: &[Product]) -> f64 {
    let mut reach = 1.0;
    let mut num = 0.0;
    let mut den = 1.0;
    let mut total = 0.0;
    let last = products.len().saturating_sub(1);
    for (k, p) in products.iter().enumerate() {
        num += p.gamma();
        den += p.beta;
        let stop = if k == last {
            reach
        } else {
            reach * (1.0 - p.theta)
        };
        total += stop * num / den;
        reach *= p.theta;
        if reach == 0.0 {
            break;
        }
    }
    total
}
