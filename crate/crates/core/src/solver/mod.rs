//! Color-demand clauses, unit propagation, backtracking search and the
//! upward scan that pins down `RR(e0, e1)`.

mod clause;
mod propagate;
mod rr;
mod schaal;
mod search;

use thiserror::Error;

use crate::equation::EquationError;
use crate::oracle::{OracleError, ValidityReport};

pub use clause::{build_clauses, clauses_with_max, Clause, ClauseDb};
pub use propagate::{Propagation, PropagationMode, Reason, SolverState, TrailEntry};
pub use rr::{
    compute_rr, default_start_hint, known_witnesses, Partial, RrConfig, RrOutcome, RrResult,
    StopReason, DEFAULT_SCAN_CAP,
};
pub use schaal::{schaal_fixpoint, schaal_force, Fixpoint, Forcing};
pub use search::{solve, solve_db, Outcome, SolveOptions, Stats, DEFAULT_TIMEOUT};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error(transparent)]
    Equation(#[from] EquationError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("solver produced a coloring the oracle rejects: {0:?}")]
    InvalidModel(ValidityReport),
}
