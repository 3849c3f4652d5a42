use crate::model::ProductId;

/// Everything that can go wrong while building or evaluating an instance.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("product {0} not in catalog")]
    UnknownProduct(ProductId),
    #[error("product not in sequence: {0}")]
    NotInSequence(ProductId),
    #[error("product {0} not in assortment")]
    NotInAssortment(ProductId),
    #[error("duplicate product id {0}")]
    DuplicateId(ProductId),
    #[error("invalid product {id}: {reason}")]
    InvalidProduct { id: ProductId, reason: String },
    #[error("display budget {budget} must lie in 1..={products}")]
    InvalidBudget { budget: usize, products: usize },
    #[error("catalog is empty")]
    EmptyCatalog,
    #[error("assortment is empty")]
    EmptyAssortment,
    #[error("no price given for product {0}")]
    MissingPrice(ProductId),
    #[error("Lambert W argument {0} is outside the principal branch domain z >= 0")]
    LambertDomain(f64),
    #[error("Lambert W iteration did not converge for z = {0}")]
    LambertNoConvergence(f64),
    #[error("parameter {name} = {value} must lie in the open interval (0, 1)")]
    InvalidParameter { name: &'static str, value: f64 },
    #[error("no product has positive alpha * beta; guess grids are undefined")]
    NoPositiveRevenue,
    #[error("instance with {size} products exceeds the exhaustive limit of {limit}; use the FPTAS solver")]
    Oversize { size: usize, limit: usize },
    #[error("price grid is too large: {0}")]
    GridBudget(String),
    #[error("trials must be at least 1")]
    NoTrials,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Checks that `value` lies strictly between 0 and 1.
pub(crate) fn unit_open(name: &'static str, value: f64) -> Result<f64> {
    if value > 0.0 && value < 1.0 {
        Ok(value)
    } else {
        Err(Error::InvalidParameter { name, value })
    }
}
