//! The priced variant: `alpha_i = p_i - c_i`, `beta_i = exp(q_i - p_i)`.
//!
//! For a fixed consideration set the revenue-maximizing prices share one
//! markup, `p_i - c_i = W(V) + 1` with `V = sum_i exp(q_i - c_i - 1)`, and the
//! optimal revenue is `W(V)` itself, where `W` is the principal branch of the
//! Lambert W function.

use super::browse::cascade_revenue;
use super::{DisplaySequence, PriceVector, PricedCatalog, PricedProduct, ProductId};
use crate::error::{Error, Result};

const LAMBERT_MAX_ITER: usize = 100;
const LAMBERT_REL_TOL: f64 = 1e-12;

/// Principal branch of Lambert W on `z >= 0`: the `w >= 0` with
/// `w * exp(w) = z`.
///
/// Halley iteration from `ln(1 + z)`, stopping once
/// `|w e^w - z| <= 1e-12 * max(1, z)`.
///
/// ```
/// let w = cascade_seq::model::lambert_w(1.0).unwrap();
/// assert!((w - 0.567143290409784).abs() < 1e-12);
/// ```
pub fn lambert_w(z: f64) -> Result<f64> {
    if z.is_nan() || z < 0.0 || z.is_infinite() {
        return Err(Error::LambertDomain(z));
    }
    let tol = LAMBERT_REL_TOL * z.max(1.0);
    let mut w = z.ln_1p();
    for _ in 0..LAMBERT_MAX_ITER {
        let ew = w.exp();
        let residual = w * ew - z;
        if residual.abs() <= tol {
            return Ok(w);
        }
        let wp1 = w + 1.0;
        let step = residual / (ew * wp1 - (w + 2.0) * residual / (2.0 * wp1));
        w -= step;
    }
    if (w * w.exp() - z).abs() <= tol {
        Ok(w)
    } else {
        Err(Error::LambertNoConvergence(z))
    }
}

/// `v_i = exp(q_i - c_i - 1)`: what a product contributes to the argument of
/// `W` in the optimal-revenue formula.
pub fn preference_potential(p: &PricedProduct) -> f64 {
    (p.quality - p.cost - 1.0).exp()
}

/// Revenue-maximizing prices for a consideration set, and the revenue they
/// achieve.
pub fn optimal_prices(
    assortment: &[ProductId],
    catalog: &PricedCatalog,
) -> Result<(PriceVector, f64)> {
    if assortment.is_empty() {
        return Err(Error::EmptyAssortment);
    }
    let products = assortment
        .iter()
        .map(|&id| catalog.get(id))
        .collect::<Result<Vec<_>>>()?;
    let potential: f64 = products.iter().map(|p| p.potential()).sum();
    let w = lambert_w(potential)?;
    let prices = products.iter().map(|p| (p.id, w + p.cost + 1.0)).collect();
    Ok((prices, w))
}

/// `g(S, p)`.
pub fn priced_assortment_revenue(
    assortment: &[ProductId],
    prices: &PriceVector,
    catalog: &PricedCatalog,
) -> Result<f64> {
    let mut num = 0.0;
    let mut den = 1.0;
    for &id in assortment {
        let p = catalog.get(id)?.at_price(prices.require(id)?);
        num += p.gamma();
        den += p.beta;
    }
    Ok(num / den)
}

/// `f(S, p)`.
pub fn priced_sequence_revenue(
    seq: &DisplaySequence,
    prices: &PriceVector,
    catalog: &PricedCatalog,
) -> Result<f64> {
    let products = seq
        .iter()
        .map(|id| Ok(catalog.get(id)?.at_price(prices.require(id)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(cascade_revenue(&products))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Catalog, PricedProduct};
    use approx::assert_abs_diff_eq;
    use std::f64::consts::E;

    /// Plain Newton on `w e^w - z`, independent of the Halley path.
    fn newton_w(z: f64) -> f64 {
        let mut w = if z < 1.0 { z } else { z.ln() };
        for _ in 0..200 {
            let ew = w.exp();
            w -= (w * ew - z) / (ew * (w + 1.0));
        }
        w
    }

    fn priced(spec: &[(f64, f64, f64)]) -> PricedCatalog {
        let products = spec
            .iter()
            .enumerate()
            .map(|(k, &(q, c, t))| PricedProduct::new(k as ProductId + 1, q, c, t).unwrap())
            .collect::<Vec<_>>();
        let n = products.len();
        Catalog::new(products, n).unwrap()
    }

    #[test]
    fn lambert_examples() {
        assert_eq!(lambert_w(0.0).unwrap(), 0.0);
        assert_abs_diff_eq!(lambert_w(E).unwrap(), 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(newton_w(1.0), 0.567143290409784, epsilon = 1e-15);
        assert_abs_diff_eq!(lambert_w(1.0).unwrap(), 0.567143290409784, epsilon = 1e-12);
        for z in [1e-300, 1e-8, 0.3, 7.0, 1e3, 1e6] {
            assert_abs_diff_eq!(lambert_w(z).unwrap(), newton_w(z), epsilon = 1e-11);
        }
    }

    #[test]
    fn lambert_domain() {
        assert_eq!(lambert_w(-0.1).unwrap_err(), Error::LambertDomain(-0.1));
        assert!(lambert_w(f64::NAN).is_err());
        assert!(lambert_w(f64::INFINITY).is_err());
    }

    #[test]
    fn potential_examples() {
        let p = |q, c| PricedProduct::new(1, q, c, 0.5).unwrap();
        assert_eq!(preference_potential(&p(2.0, 1.0)), 1.0);
        assert_eq!(preference_potential(&p(4.5, 3.5)), 1.0);
        assert_abs_diff_eq!(preference_potential(&p(3.0, 1.0)), E, epsilon = 1e-15);
    }

    #[test]
    fn optimal_price_examples() {
        let c = priced(&[(2.0, 1.0, 0.5)]);
        let (prices, revenue) = optimal_prices(&[1], &c).unwrap();
        assert_abs_diff_eq!(revenue, 0.567143290409784, epsilon = 1e-12);
        assert_abs_diff_eq!(prices.get(1).unwrap(), 2.567143290409784, epsilon = 1e-12);
        assert_abs_diff_eq!(
            priced_assortment_revenue(&[1], &prices, &c).unwrap(),
            revenue,
            epsilon = 1e-9
        );
        assert_eq!(optimal_prices(&[], &c).unwrap_err(), Error::EmptyAssortment);
    }

    #[test]
    fn optimal_markup_is_uniform_and_revenue_grows() {
        let c = priced(&[(2.0, 1.0, 0.5), (3.5, 0.2, 0.7), (1.0, 1.5, 0.9)]);
        let (prices, r3) = optimal_prices(&[1, 2, 3], &c).unwrap();
        let markups: Vec<f64> = prices
            .iter()
            .map(|(id, p)| p - c.get(id).unwrap().cost)
            .collect();
        for m in &markups {
            assert_abs_diff_eq!(*m, markups[0], epsilon = 1e-12);
        }
        let (_, r2) = optimal_prices(&[1, 2], &c).unwrap();
        let (_, r1) = optimal_prices(&[1], &c).unwrap();
        assert!(r1 < r2 && r2 < r3);
        assert_abs_diff_eq!(
            priced_assortment_revenue(&[1, 2, 3], &prices, &c).unwrap(),
            r3,
            epsilon = 1e-9
        );
    }

    #[test]
    fn priced_revenue_examples() {
        let c = priced(&[(2.0, 1.0, 0.5), (2.0, 1.0, 0.5)]);
        let prices: PriceVector = [(1, 2.0), (2, 2.0)].into_iter().collect();
        assert_eq!(priced_assortment_revenue(&[], &prices, &c).unwrap(), 0.0);
        assert_abs_diff_eq!(
            priced_assortment_revenue(&[1], &prices, &c).unwrap(),
            0.5,
            epsilon = 1e-15
        );
        let missing: PriceVector = [(1, 2.0)].into_iter().collect();
        assert_eq!(
            priced_assortment_revenue(&[1, 2], &missing, &c).unwrap_err(),
            Error::MissingPrice(2)
        );

        let single = DisplaySequence::new(vec![1]).unwrap();
        assert_abs_diff_eq!(
            priced_sequence_revenue(&single, &prices, &c).unwrap(),
            0.5,
            epsilon = 1e-15
        );
        let both = DisplaySequence::new(vec![1, 2]).unwrap();
        let mixture = 0.5 * priced_assortment_revenue(&[1], &prices, &c).unwrap()
            + 0.5 * priced_assortment_revenue(&[1, 2], &prices, &c).unwrap();
        assert_abs_diff_eq!(
            priced_sequence_revenue(&both, &prices, &c).unwrap(),
            mixture,
            epsilon = 1e-15
        );
        assert_eq!(
            priced_sequence_revenue(&DisplaySequence::empty(), &prices, &c).unwrap(),
            0.0
        );
    }
}
