//! The two dynamic-programming approximation schemes.
//!
//! * [`solve_pa1`] handles fixed revenues. For every candidate last product
//!   and every pair of geometric guesses for the chosen set's `sum(alpha*beta)`
//!   and `sum(beta)`, it rescales those quantities to small integers and runs
//!   the exact DP of [`dp_fill`] on the rescaled problem.
//! * [`solve_pb1`] handles the priced case, where the problem collapses to a
//!   cardinality-constrained knapsack solved by
//!   [`knapsack_fptas_cardinality`].

mod dp;
mod grid;
mod knapsack;
mod pa1;
mod pb1;

pub use dp::{dp_fill, DPTable};
pub use grid::{build_guess_grids, dp_extent, GuessGrid, ScaledItem};
pub use knapsack::{knapsack_fptas_cardinality, KnapsackItem};
pub use pa1::{solve_pa1, solve_pa1_with_stats, Pa1Solution, Pa1Stats};
pub use pb1::{solve_pb1, Pb1Solution};
