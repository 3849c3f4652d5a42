//! Brute-force optima and a Monte Carlo simulator, for checking the solvers
//! on small instances.

mod exhaustive;
mod simulate;

pub use exhaustive::{
    exact_pa, exact_pa1, exact_pa1_with_limit, exact_pa_with_limit, exact_pb_grid,
    reachable_prefix_optimum, GridOptimum, PriceGrid, DEFAULT_GRID_POINTS, PA1_LIMIT, PA_LIMIT,
    PB_GRID_LIMIT, PB_GRID_MAX_EVALUATIONS, PB_GRID_MAX_POINTS,
};
pub use simulate::{simulate, simulate_priced, SimulationReport};
