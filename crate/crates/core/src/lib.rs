//! Product sequencing and pricing under a cascade browse + MNL consumer model.

pub mod error;
pub mod fptas;
pub mod model;
pub mod oracle;
pub mod sequencer;

pub use error::{Error, Result};
pub use sequencer::{solve_pricing, solve_sequencing, SequencingResult};

#[cfg(doctest)]
pub mod book {
    #[doc = include_str!("../../../README.md")]
    pub mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/consumer-model.md")]
    pub mod consumer_model {}
    #[doc = include_str!("../../../book/src/sequencing.md")]
    pub mod sequencing {}
    #[doc = include_str!("../../../book/src/pricing.md")]
    pub mod pricing {}
    #[doc = include_str!("../../../book/src/oracles.md")]
    pub mod oracles {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
}
