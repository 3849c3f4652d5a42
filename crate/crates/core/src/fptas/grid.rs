use crate::error::{unit_open, Error, Result};
use crate::model::{Catalog, Listing, Product, ProductId};

/// Geometric guesses for the subset sums of `gamma = alpha * beta` and of
/// `beta`. Every candidate subset sum falls into some `[g, g * (1 + eps)]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GuessGrid {
    pub gamma_guesses: Vec<f64>,
    pub beta_guesses: Vec<f64>,
    pub epsilon: f64,
}

/// Builds both grids from the whole catalog.
///
/// The gamma grid is anchored at the smallest *positive* gamma; products with
/// `alpha = 0` add nothing to any numerator and are ignored here.
pub fn build_guess_grids(catalog: &Catalog, epsilon: f64) -> Result<GuessGrid> {
    let epsilon = unit_open("epsilon", epsilon)?;
    let n = catalog.len();
    let (gmin, gmax) = min_max(
        catalog
            .products()
            .iter()
            .map(Product::gamma)
            .filter(|&g| g > 0.0),
    )
    .ok_or(Error::NoPositiveRevenue)?;
    let (bmin, bmax) =
        min_max(catalog.products().iter().map(|p| p.beta)).ok_or(Error::EmptyCatalog)?;
    Ok(GuessGrid {
        gamma_guesses: geometric(gmin, gmax, n, epsilon),
        beta_guesses: geometric(bmin, bmax, n, epsilon),
        epsilon,
    })
}

fn min_max(values: impl Iterator<Item = f64>) -> Option<(f64, f64)> {
    values.fold(None, |acc, x| match acc {
        None => Some((x, x)),
        Some((lo, hi)) => Some((lo.min(x), hi.max(x))),
    })
}

/// `min * (1 + eps)^a` for `a = 0..=ceil(log_{1+eps}(n * max / (eps * min)))`.
fn geometric(min: f64, max: f64, n: usize, epsilon: f64) -> Vec<f64> {
    let span = n as f64 * max / (epsilon * min);
    let top = (span.ln() / epsilon.ln_1p()).ceil().max(0.0) as i32;
    (0..=top).map(|a| min * (1.0 + epsilon).powi(a)).collect()
}

/// A product rescaled for one `(gamma guess, beta guess)` pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledItem {
    pub id: ProductId,
    /// `ceil(gamma / (G * eps / B))`
    pub gamma_tilde: usize,
    /// `floor(beta / (H * eps / B))`
    pub beta_tilde: usize,
    /// `-ln(theta)`, `+inf` for `theta = 0`
    pub omega: f64,
    /// Unscaled `alpha * beta`, carried along so candidates can be priced
    /// exactly.
    pub gamma: f64,
    /// Unscaled `beta`.
    pub beta: f64,
}

impl ScaledItem {
    pub fn new(
        product: &Product,
        gamma_guess: f64,
        beta_guess: f64,
        epsilon: f64,
        budget: usize,
    ) -> Self {
        let b = budget as f64;
        let gamma = product.gamma();
        let gamma_unit = gamma_guess * epsilon / b;
        let beta_unit = beta_guess * epsilon / b;
        ScaledItem {
            id: product.id,
            gamma_tilde: saturating_index((gamma / gamma_unit).ceil()),
            beta_tilde: saturating_index((product.beta / beta_unit).floor()),
            omega: product.omega(),
            gamma,
            beta: product.beta,
        }
    }

    /// An item with hand-picked scaled values; the unscaled sums are set to
    /// the scaled ones.
    pub fn raw(id: ProductId, gamma_tilde: usize, beta_tilde: usize, omega: f64) -> Self {
        ScaledItem {
            id,
            gamma_tilde,
            beta_tilde,
            omega,
            gamma: gamma_tilde as f64,
            beta: beta_tilde as f64,
        }
    }
}

fn saturating_index(x: f64) -> usize {
    if x >= usize::MAX as f64 {
        usize::MAX
    } else {
        x.max(0.0) as usize
    }
}

/// Largest scaled sum the DP tables need to index, per dimension:
/// `ceil(B (1 + eps) / eps) + B`.
pub fn dp_extent(budget: usize, epsilon: f64) -> usize {
    // ceil(B/eps + B) + B, with the integer part pulled out of the ceiling
    (budget as f64 / epsilon).ceil() as usize + 2 * budget
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn catalog(spec: &[(f64, f64)]) -> Catalog {
        let products = spec
            .iter()
            .enumerate()
            .map(|(k, &(a, b))| Product::new(k as ProductId + 1, a, b, 0.9).unwrap())
            .collect::<Vec<_>>();
        let n = products.len();
        Catalog::new(products, n).unwrap()
    }

    #[test]
    fn single_product_grid() {
        let grid = build_guess_grids(&catalog(&[(1.0, 1.0)]), 0.5).unwrap();
        assert_eq!(grid.gamma_guesses.len(), 3);
        for (g, want) in grid.gamma_guesses.iter().zip([1.0, 1.5, 2.25]) {
            assert_abs_diff_eq!(*g, want, epsilon = 1e-15);
        }
    }

    #[test]
    fn grid_size_bound() {
        let c = catalog(&[(0.3, 2.0), (7.0, 0.4), (2.0, 4.0), (9.0, 0.1)]);
        for eps in [0.05, 0.1, 0.3, 0.9] {
            let grid = build_guess_grids(&c, eps).unwrap();
            let gammas: Vec<f64> = c.products().iter().map(Product::gamma).collect();
            let (lo, hi) = min_max(gammas.iter().copied()).unwrap();
            let bound = (4.0 * hi / (eps * lo)).ln() / (1.0 + eps).ln();
            assert!(grid.gamma_guesses.len() <= bound.ceil() as usize + 1);
        }
    }

    #[test]
    fn grid_covers_every_subset_sum() {
        let c = catalog(&[(0.3, 2.0), (7.0, 0.4), (2.0, 4.0), (9.0, 0.1), (1.0, 1.0)]);
        let eps = 0.2;
        let grid = build_guess_grids(&c, eps).unwrap();
        let ps = c.products();
        for mask in 1u32..(1 << ps.len()) {
            let (g, b) = ps
                .iter()
                .enumerate()
                .filter(|(k, _)| mask & (1 << k) != 0)
                .fold((0.0, 0.0), |(g, b), (_, p)| (g + p.gamma(), b + p.beta));
            let covered = |guesses: &[f64], x: f64| {
                guesses
                    .iter()
                    .any(|&lo| lo <= x * (1.0 + 1e-12) && x <= lo * (1.0 + eps) * (1.0 + 1e-12))
            };
            assert!(covered(&grid.gamma_guesses, g), "gamma sum {g}");
            assert!(covered(&grid.beta_guesses, b), "beta sum {b}");
        }
    }

    #[test]
    fn grid_rejects_bad_epsilon() {
        let c = catalog(&[(1.0, 1.0)]);
        assert!(build_guess_grids(&c, 0.0).is_err());
        assert!(build_guess_grids(&c, 1.0).is_err());
        assert_eq!(
            build_guess_grids(&catalog(&[(0.0, 1.0)]), 0.1).unwrap_err(),
            Error::NoPositiveRevenue
        );
    }

    #[test]
    fn scaled_values() {
        let p = Product::new(4, 2.0, 1.5, 0.5).unwrap();
        // gamma = 3, unit = 1 * 0.5 / 2 = 0.25 -> 12; beta unit 0.25 -> 6
        let item = ScaledItem::new(&p, 1.0, 1.0, 0.5, 2);
        assert_eq!(item.gamma_tilde, 12);
        assert_eq!(item.beta_tilde, 6);
        assert_abs_diff_eq!(item.omega, 2f64.ln(), epsilon = 1e-15);

        let tiny = Product::new(5, 0.01, 0.01, 0.0).unwrap();
        let item = ScaledItem::new(&tiny, 1.0, 1.0, 0.5, 2);
        assert_eq!(item.gamma_tilde, 1);
        assert_eq!(item.beta_tilde, 0);
        assert_eq!(item.omega, f64::INFINITY);
    }

    #[test]
    fn extent() {
        assert_eq!(dp_extent(10, 0.2), 70);
        assert_eq!(dp_extent(1, 0.5), 4);
    }
}
