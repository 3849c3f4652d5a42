//! Phase two: the MNL purchase decision over a realized consideration set.

use super::{Catalog, ProductId};
use crate::error::{Error, Result};

fn weight_sum(assortment: &[ProductId], catalog: &Catalog) -> Result<f64> {
    assortment
        .iter()
        .try_fold(0.0, |acc, &id| Ok(acc + catalog.get(id)?.beta))
}

/// `beta_i / (sum of beta over the assortment + 1)`.
pub fn mnl_purchase_prob(
    assortment: &[ProductId],
    id: ProductId,
    catalog: &Catalog,
) -> Result<f64> {
    if !assortment.contains(&id) {
        return Err(Error::NotInAssortment(id));
    }
    let beta = catalog.get(id)?.beta;
    Ok(beta / (weight_sum(assortment, catalog)? + 1.0))
}

/// Probability that the consumer walks away with nothing.
pub fn no_purchase_prob(assortment: &[ProductId], catalog: &Catalog) -> Result<f64> {
    Ok(1.0 / (weight_sum(assortment, catalog)? + 1.0))
}

/// Expected revenue `g` of a consideration set. `g(empty) = 0`.
pub fn assortment_revenue(assortment: &[ProductId], catalog: &Catalog) -> Result<f64> {
    let (num, den) = assortment.iter().try_fold((0.0, 1.0), |(num, den), &id| {
        let p = catalog.get(id)?;
        Ok::<_, Error>((num + p.gamma(), den + p.beta))
    })?;
    Ok(num / den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Product;
    use approx::assert_abs_diff_eq;

    fn catalog(spec: &[(f64, f64)]) -> Catalog {
        let products = spec
            .iter()
            .enumerate()
            .map(|(k, &(a, b))| Product::new(k as ProductId + 1, a, b, 0.5).unwrap())
            .collect::<Vec<_>>();
        let n = products.len();
        Catalog::new(products, n).unwrap()
    }

    #[test]
    fn purchase_probabilities() {
        let c = catalog(&[(1.0, 1.0), (1.0, 2.0)]);
        assert_eq!(mnl_purchase_prob(&[1], 1, &c).unwrap(), 0.5);
        assert_eq!(mnl_purchase_prob(&[1, 2], 2, &c).unwrap(), 0.5);
        let total = mnl_purchase_prob(&[1, 2], 1, &c).unwrap()
            + mnl_purchase_prob(&[1, 2], 2, &c).unwrap()
            + no_purchase_prob(&[1, 2], &c).unwrap();
        assert_abs_diff_eq!(total, 1.0, epsilon = 1e-15);
        assert_eq!(
            mnl_purchase_prob(&[1], 2, &c).unwrap_err(),
            Error::NotInAssortment(2)
        );
    }

    #[test]
    fn revenue_examples() {
        let c = catalog(&[(2.0, 1.0)]);
        assert_eq!(assortment_revenue(&[], &c).unwrap(), 0.0);
        assert_eq!(assortment_revenue(&[1], &c).unwrap(), 1.0);
        let c = catalog(&[(1.0, 1.0), (2.0, 1.0)]);
        assert_abs_diff_eq!(
            assortment_revenue(&[1, 2], &c).unwrap(),
            1.0,
            epsilon = 1e-15
        );
        assert_eq!(
            assortment_revenue(&[3], &c).unwrap_err(),
            Error::UnknownProduct(3)
        );
    }
}
