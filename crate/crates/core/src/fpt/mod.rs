//! Exact solvers parameterized by the LQ resources.
//!
//! Every feasible matching of a ONE-ONE instance contains a minimal feasible
//! one: a single agent on each LQ resource. The solvers enumerate those
//! assignments and complete each one with a stable matching of what is left.

mod assign;
mod extend;
mod solve;

pub use assign::{enumerate_assignments, Assignments, LQAssignment};
pub use extend::{extend, extension_graph, threshold_agents, Threshold, ThresholdMap};
pub use solve::{alg_efm, alg_rsm, SolveOptions, SolveOutcome, SolveStats};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FptError {
    #[error("instance is not ONE-ONE (some upper quota exceeds 1)")]
    NotOneOne,
    #[error("no feasible matching exists")]
    NoFeasibleMatching,
    #[error("matching is not minimal feasible")]
    NotMinimalFeasible,
    #[error("more than {budget} assignments enumerated")]
    BudgetExceeded { budget: u64 },
    #[error("thread pool: {0}")]
    ThreadPool(String),
}
