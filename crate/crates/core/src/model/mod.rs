//! Domain types and exact evaluation of the cascade browse + MNL model.
//!
//! Consumers scan a [`DisplaySequence`] from the top. After looking at
//! product `i` they move on with probability `theta_i` and otherwise stop.
//! Whatever they have seen so far is their consideration set, and they buy
//! from it according to a multinomial logit with an outside option of
//! weight 1.
//!
//! The evaluation functions live in submodules and are re-exported here:
//! [`browse`] covers reachability and the sequence revenue `f`, [`choice`]
//! the MNL purchase probabilities and assortment revenue `g`, and
//! [`pricing`] the priced variant together with the Lambert-W markup.

pub mod browse;
pub mod choice;
pub mod pricing;

use std::collections::{BTreeMap, HashSet};

use serde::Serialize;

use crate::error::{Error, Result};

pub use browse::{consideration_probability, reachability, sequence_revenue};
pub use choice::{assortment_revenue, mnl_purchase_prob, no_purchase_prob};
pub use pricing::{
    lambert_w, optimal_prices, preference_potential, priced_assortment_revenue,
    priced_sequence_revenue,
};

pub type ProductId = u32;

/// Anything that can sit in a catalog: it has an id and a continuation
/// probability.
pub trait Listing {
    fn id(&self) -> ProductId;
    fn theta(&self) -> f64;

    /// `-ln(theta)`, the "weight" a product costs against the reachability
    /// budget. `+inf` when `theta == 0`.
    fn omega(&self) -> f64 {
        -self.theta().ln()
    }
}

/// A product with fixed revenue `alpha` and MNL preference weight `beta`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Product {
    pub id: ProductId,
    pub alpha: f64,
    pub beta: f64,
    pub theta: f64,
}

impl Product {
    pub fn new(id: ProductId, alpha: f64, beta: f64, theta: f64) -> Result<Self> {
        let p = Product {
            id,
            alpha,
            beta,
            theta,
        };
        p.validate()?;
        Ok(p)
    }

    fn validate(&self) -> Result<()> {
        let bad = |reason: &str| {
            Err(Error::InvalidProduct {
                id: self.id,
                reason: reason.to_string(),
            })
        };
        if !(self.alpha >= 0.0 && self.alpha.is_finite()) {
            return bad("alpha must be finite and >= 0");
        }
        if !(self.beta > 0.0 && self.beta.is_finite()) {
            return bad("beta must be finite and > 0");
        }
        check_theta(self.id, self.theta)
    }

    /// `alpha * beta`, the numerator contribution to `g`.
    pub fn gamma(&self) -> f64 {
        self.alpha * self.beta
    }
}

impl Listing for Product {
    fn id(&self) -> ProductId {
        self.id
    }
    fn theta(&self) -> f64 {
        self.theta
    }
}

/// A product whose price is a decision variable. At price `p` it behaves
/// like a [`Product`] with `alpha = p - cost` and `beta = exp(quality - p)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PricedProduct {
    pub id: ProductId,
    pub quality: f64,
    pub cost: f64,
    pub theta: f64,
}

impl PricedProduct {
    pub fn new(id: ProductId, quality: f64, cost: f64, theta: f64) -> Result<Self> {
        if !quality.is_finite() {
            return Err(Error::InvalidProduct {
                id,
                reason: "quality must be finite".into(),
            });
        }
        if !(cost >= 0.0 && cost.is_finite()) {
            return Err(Error::InvalidProduct {
                id,
                reason: "cost must be finite and >= 0".into(),
            });
        }
        check_theta(id, theta)?;
        Ok(PricedProduct {
            id,
            quality,
            cost,
            theta,
        })
    }

    /// Fixed-parameter view of this product at `price`.
    pub fn at_price(&self, price: f64) -> Product {
        Product {
            id: self.id,
            alpha: price - self.cost,
            beta: (self.quality - price).exp(),
            theta: self.theta,
        }
    }

    /// `exp(quality - cost - 1)`; see [`preference_potential`].
    pub fn potential(&self) -> f64 {
        preference_potential(self)
    }
}

impl Listing for PricedProduct {
    fn id(&self) -> ProductId {
        self.id
    }
    fn theta(&self) -> f64 {
        self.theta
    }
}

fn check_theta(id: ProductId, theta: f64) -> Result<()> {
    if (0.0..=1.0).contains(&theta) {
        Ok(())
    } else {
        Err(Error::InvalidProduct {
            id,
            reason: "theta must lie in [0, 1]".into(),
        })
    }
}

/// The product universe together with the number of display slots.
#[derive(Debug, Clone)]
pub struct Catalog<P = Product> {
    products: Vec<P>,
    display_budget: usize,
    index: BTreeMap<ProductId, usize>,
}

pub type PricedCatalog = Catalog<PricedProduct>;

impl<P: Listing> Catalog<P> {
    pub fn new(products: Vec<P>, display_budget: usize) -> Result<Self> {
        if products.is_empty() {
            return Err(Error::EmptyCatalog);
        }
        if display_budget < 1 || display_budget > products.len() {
            return Err(Error::InvalidBudget {
                budget: display_budget,
                products: products.len(),
            });
        }
        let mut index = BTreeMap::new();
        for (k, p) in products.iter().enumerate() {
            if index.insert(p.id(), k).is_some() {
                return Err(Error::DuplicateId(p.id()));
            }
        }
        Ok(Catalog {
            products,
            display_budget,
            index,
        })
    }

    pub fn products(&self) -> &[P] {
        &self.products
    }

    pub fn len(&self) -> usize {
        self.products.len()
    }

    pub fn is_empty(&self) -> bool {
        self.products.is_empty()
    }

    pub fn display_budget(&self) -> usize {
        self.display_budget
    }

    pub fn get(&self, id: ProductId) -> Result<&P> {
        self.index
            .get(&id)
            .map(|&k| &self.products[k])
            .ok_or(Error::UnknownProduct(id))
    }

    /// Position of `id` in [`Catalog::products`].
    pub fn position(&self, id: ProductId) -> Option<usize> {
        self.index.get(&id).copied()
    }

    pub fn ids(&self) -> impl Iterator<Item = ProductId> + '_ {
        self.products.iter().map(Listing::id)
    }

    /// Same products, different budget.
    pub fn with_budget(&self, display_budget: usize) -> Result<Self>
    where
        P: Clone,
    {
        Catalog::new(self.products.clone(), display_budget)
    }
}

impl PricedCatalog {
    /// Materializes the fixed-parameter catalog induced by `prices`. Every
    /// product must be priced.
    pub fn at_prices(&self, prices: &PriceVector) -> Result<Catalog> {
        let products = self
            .products
            .iter()
            .map(|p| prices.require(p.id).map(|price| p.at_price(price)))
            .collect::<Result<Vec<_>>>()?;
        Catalog::new(products, self.display_budget)
    }

    /// Like [`at_prices`](Self::at_prices) but restricted to the priced
    /// products, which keeps the original budget when it still fits.
    pub(crate) fn priced_subset(&self, prices: &PriceVector) -> Result<Catalog> {
        let products = self
            .products
            .iter()
            .filter_map(|p| prices.get(p.id).map(|price| p.at_price(price)))
            .collect::<Vec<_>>();
        let budget = self.display_budget.min(products.len());
        Catalog::new(products, budget)
    }
}

/// An ordered, duplicate-free list of product ids.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct DisplaySequence(Vec<ProductId>);

impl DisplaySequence {
    pub fn new(order: Vec<ProductId>) -> Result<Self> {
        let mut seen = HashSet::with_capacity(order.len());
        for &id in &order {
            if !seen.insert(id) {
                return Err(Error::DuplicateId(id));
            }
        }
        Ok(DisplaySequence(order))
    }

    pub fn empty() -> Self {
        DisplaySequence(Vec::new())
    }

    pub fn as_slice(&self) -> &[ProductId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn last(&self) -> Option<ProductId> {
        self.0.last().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = ProductId> + '_ {
        self.0.iter().copied()
    }

    pub fn position(&self, id: ProductId) -> Result<usize> {
        self.0
            .iter()
            .position(|&x| x == id)
            .ok_or(Error::NotInSequence(id))
    }

    /// `S_{<i}`: everything displayed strictly before `id`.
    pub fn before(&self, id: ProductId) -> Result<&[ProductId]> {
        Ok(&self.0[..self.position(id)?])
    }

    /// `S_{<=i}`.
    pub fn up_to(&self, id: ProductId) -> Result<&[ProductId]> {
        Ok(&self.0[..=self.position(id)?])
    }

    /// `S_{>i}`.
    pub fn after(&self, id: ProductId) -> Result<&[ProductId]> {
        Ok(&self.0[self.position(id)? + 1..])
    }

    /// `S_{>=i}`.
    pub fn from(&self, id: ProductId) -> Result<&[ProductId]> {
        Ok(&self.0[self.position(id)?..])
    }

    /// Checks every id against the catalog.
    pub fn validate<P: Listing>(&self, catalog: &Catalog<P>) -> Result<()> {
        self.0
            .iter()
            .try_for_each(|&id| catalog.get(id).map(|_| ()))
    }

    pub fn into_vec(self) -> Vec<ProductId> {
        self.0
    }
}

impl TryFrom<Vec<ProductId>> for DisplaySequence {
    type Error = Error;
    fn try_from(order: Vec<ProductId>) -> Result<Self> {
        DisplaySequence::new(order)
    }
}

/// Price per product id.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
#[serde(transparent)]
pub struct PriceVector(BTreeMap<ProductId, f64>);

impl PriceVector {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, id: ProductId, price: f64) {
        self.0.insert(id, price);
    }

    pub fn get(&self, id: ProductId) -> Option<f64> {
        self.0.get(&id).copied()
    }

    pub fn require(&self, id: ProductId) -> Result<f64> {
        self.get(id).ok_or(Error::MissingPrice(id))
    }

    pub fn iter(&self) -> impl Iterator<Item = (ProductId, f64)> + '_ {
        self.0.iter().map(|(&k, &v)| (k, v))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl FromIterator<(ProductId, f64)> for PriceVector {
    fn from_iter<I: IntoIterator<Item = (ProductId, f64)>>(iter: I) -> Self {
        PriceVector(iter.into_iter().collect())
    }
}
