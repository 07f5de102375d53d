//! A small exact solver for 0-1 minimization models.
//!
//! Models are built from named variables and integer linear constraints.
//! Constraints carry a [`Group`] tag so a caller can add a batch and later
//! retract it as a unit. [`LinearModel::solve`] runs a depth-first
//! branch-and-bound with LP bounds, and [`LinearModel::to_lp`] writes the
//! model in CPLEX LP format for cross-checking with external solvers.

mod bnb;
mod error;
mod lp;
mod lp_format;
mod model;

pub use bnb::{solve_with_oracle, LeafVerdict, NodeBounds, NodeOracle, SolveOptions, SolveOutcome, SolveStatus};
pub use error::ModelError;
pub use lp::{DualSimplex, LpStatus};
pub use model::{Constraint, Group, LinearModel, Sense, VarId, VarKind, Variable, COEFFICIENT_LIMIT};
