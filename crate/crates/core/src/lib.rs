//! Exact two-color off-diagonal Rado numbers `RR(e0, e1)`: the least `N`
//! such that every Red/Blue coloring of `[1,N]` has a Red solution of `e0`
//! or a Blue solution of `e1`.
//!
//! Lower bounds come from explicit colorings ([`witness`]), upper bounds
//! from a propagation-based backtracking refutation ([`solver`]), and both
//! are cross-checked against brute force ([`oracle`]) and closed forms
//! ([`bounds`]).

pub mod bounds;
pub mod catalog;
pub mod coloring;
pub mod equation;
pub mod oracle;
pub mod solver;
pub mod table;
pub mod witness;

pub use coloring::{Color, Coloring, PartialColoring};
pub use equation::{LinearEquation, SolutionTuple};
