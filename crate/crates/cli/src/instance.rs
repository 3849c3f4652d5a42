//! Instance documents: the JSON file every command reads.

use std::path::Path;

use anyhow::{bail, Context};
use cascade_seq::model::{Catalog, PricedCatalog, PricedProduct, Product, ProductId};
use clap::ValueEnum;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Fixed,
    Priced,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FixedRecord {
    pub id: ProductId,
    pub alpha: f64,
    pub beta: f64,
    pub theta: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PricedRecord {
    pub id: ProductId,
    pub quality: f64,
    pub cost: f64,
    pub theta: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "lowercase", deny_unknown_fields)]
pub enum InstanceFile {
    Fixed {
        #[serde(rename = "B")]
        budget: usize,
        products: Vec<FixedRecord>,
    },
    Priced {
        #[serde(rename = "B")]
        budget: usize,
        products: Vec<PricedRecord>,
    },
}

/// A parsed and validated instance.
pub enum Instance {
    Fixed(Catalog),
    Priced(PricedCatalog),
}

impl Instance {
    pub fn mode(&self) -> Mode {
        match self {
            Instance::Fixed(_) => Mode::Fixed,
            Instance::Priced(_) => Mode::Priced,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Instance::Fixed(c) => c.len(),
            Instance::Priced(c) => c.len(),
        }
    }

    pub fn display_budget(&self) -> usize {
        match self {
            Instance::Fixed(c) => c.display_budget(),
            Instance::Priced(c) => c.display_budget(),
        }
    }
}

impl InstanceFile {
    pub fn parse(text: &str) -> anyhow::Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn read(path: &Path) -> anyhow::Result<Self> {
        let text =
            std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Self::parse(&text).with_context(|| format!("parsing {}", path.display()))
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("instances always serialize");
        text.push('\n');
        text
    }

    pub fn catalog(&self) -> cascade_seq::Result<Instance> {
        Ok(match self {
            InstanceFile::Fixed { budget, products } => Instance::Fixed(Catalog::new(
                products
                    .iter()
                    .map(|r| Product::new(r.id, r.alpha, r.beta, r.theta))
                    .collect::<cascade_seq::Result<_>>()?,
                *budget,
            )?),
            InstanceFile::Priced { budget, products } => Instance::Priced(Catalog::new(
                products
                    .iter()
                    .map(|r| PricedProduct::new(r.id, r.quality, r.cost, r.theta))
                    .collect::<cascade_seq::Result<_>>()?,
                *budget,
            )?),
        })
    }

    /// Seeded random instance with ids `1..=n`.
    pub fn generate(n: usize, budget: usize, mode: Mode, seed: u64) -> anyhow::Result<Self> {
        if budget == 0 || n < budget {
            bail!("need n >= b >= 1, got n = {n}, b = {budget}");
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ids = 1..=n as ProductId;
        Ok(match mode {
            Mode::Fixed => InstanceFile::Fixed {
                budget,
                products: ids
                    .map(|id| FixedRecord {
                        id,
                        alpha: rng.gen_range(0.1..=10.0),
                        beta: rng.gen_range(0.1..=5.0),
                        theta: rng.gen_range(0.5..=0.99),
                    })
                    .collect(),
            },
            Mode::Priced => InstanceFile::Priced {
                budget,
                products: ids
                    .map(|id| PricedRecord {
                        id,
                        quality: rng.gen_range(0.0..=5.0),
                        cost: rng.gen_range(0.1..=2.0),
                        theta: rng.gen_range(0.5..=0.99),
                    })
                    .collect(),
            },
        })
    }
}
