//! Independent reference solvers used to cross-check [`crate::solver`].

mod exhaustive;
mod naive;
mod pav;

pub use exhaustive::{exhaustive_anchored_solve, EXHAUSTIVE_MAX_N};
pub use naive::naive_quadratic_solve;
pub use pav::pav_isotonic_solve;

use crate::model::Configuration;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult<T> {
    pub best_cost: T,
    pub witness: Configuration<T>,
    /// Every distinct anchored optimum (exhaustive search only), sorted.
    pub all_optima: Option<Vec<Configuration<T>>>,
}
