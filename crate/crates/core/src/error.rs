//! Error type shared by every solver, oracle and generator.

use alloc::string::String;

use crate::instance::ValidationReport;
use crate::schedule::FeasibilityReport;

/// Everything that can go wrong in the toolkit.
///
/// Infeasible or unbounded linear programs are *outcomes*, not errors, and are
/// reported through [`crate::lp::LpOutcome`].
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// The instance violates a structural invariant.
    #[error("invalid instance: {0}")]
    InvalidInstance(ValidationReport),

    /// A schedule handed to an evaluator or solver is not feasible.
    #[error("infeasible schedule: {0}")]
    InfeasibleSchedule(FeasibilityReport),

    /// The instance is valid but does not meet a solver's precondition
    /// (wrong preemption regime, not a path, non-integer data, ...).
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// An exhaustive search visited more nodes than its budget allows.
    #[error("search budget exceeded after {nodes} nodes")]
    BudgetExceeded { nodes: u64 },

    /// A linear program references undeclared variables or has crossed bounds.
    #[error("malformed linear program: {0}")]
    MalformedLp(String),

    /// Generator parameters are out of range.
    #[error("invalid generator parameters: {0}")]
    Generator(String),

    /// An internal invariant failed; indicates a bug rather than bad input.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
