use std::time::{Duration, Instant};

use crate::coloring::{Color, Coloring};
use crate::oracle::check_valid;

use super::clause::{Clause, ClauseDb};
use super::propagate::{Propagation, Reason, SolverState};
use super::SolverError;

/// Default per-`N` time limit.
pub const DEFAULT_TIMEOUT: Duration = Duration::from_secs(300);

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Stats {
    pub decisions: u64,
    pub propagations: u64,
    pub conflicts: u64,
}

impl std::ops::AddAssign for Stats {
    fn add_assign(&mut self, rhs: Stats) {
        self.decisions += rhs.decisions;
        self.propagations += rhs.propagations;
        self.conflicts += rhs.conflicts;
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    /// A total coloring satisfying every clause, re-checked by the oracle.
    Satisfiable(Coloring, Stats),
    /// Every branch refuted.
    Unsatisfiable(Stats),
    /// The deadline passed first.
    Indeterminate(Stats),
}

impl Outcome {
    pub fn stats(&self) -> Stats {
        match self {
            Outcome::Satisfiable(_, s) | Outcome::Unsatisfiable(s) | Outcome::Indeterminate(s) => {
                *s
            }
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct SolveOptions<'a> {
    /// Branch toward this coloring first where it covers the position.
    /// Changes only the order of exploration, never the verdict.
    pub phase: Option<&'a Coloring>,
    pub deadline: Option<Instant>,
}

/// Decides whether `[1, db.n()]` has a coloring with no Red solution of
/// `e0` and no Blue solution of `e1`.
///
/// Branches on the lowest unset position that occurs in some clause, trying
/// Red first (or the phase color), with chronological backtracking.
pub fn solve_db(db: &ClauseDb, options: &SolveOptions<'_>) -> Result<Outcome, SolverError> {
    let n = db.n();
    let outcome = search(n, db.clauses(), options);
    if let Outcome::Satisfiable(coloring, _) = &outcome {
        let (e0, e1) = db.equations();
        let report = check_valid(coloring, e0, e1)?;
        if !report.is_valid() {
            return Err(SolverError::InvalidModel(report));
        }
    }
    Ok(outcome)
}

/// Builds the clauses for `[1,n]` and runs [`solve_db`].
pub fn solve(
    e0: &crate::equation::LinearEquation,
    e1: &crate::equation::LinearEquation,
    n: u32,
    options: &SolveOptions<'_>,
) -> Result<Outcome, SolverError> {
    let mut db = ClauseDb::new(e0.clone(), e1.clone());
    db.extend_to(n)?;
    solve_db(&db, options)
}

fn preferred(options: &SolveOptions<'_>, position: u32) -> Color {
    match options.phase {
        Some(c) if position <= c.len() => c.get(position),
        _ => Color::Red,
    }
}

fn search(n: u32, clauses: &[Clause], options: &SolveOptions<'_>) -> Outcome {
    let mut state = SolverState::new(n, clauses);
    let mut stats = Stats::default();
    let mut cursor_hint = 1u32;
    let mut steps = 0u64;

    loop {
        steps += 1;
        if steps % 256 == 1 {
            if let Some(deadline) = options.deadline {
                if Instant::now() >= deadline {
                    stats.propagations = state.propagations;
                    return Outcome::Indeterminate(stats);
                }
            }
        }
        match state.propagate() {
            Propagation::Conflict { .. } => {
                stats.conflicts += 1;
                // The refuted color's complement lives one level up, so a
                // later conflict there exhausts the parent decision in turn.
                match state.backtrack() {
                    None => {
                        stats.propagations = state.propagations;
                        return Outcome::Unsatisfiable(stats);
                    }
                    Some(d) => {
                        state.assign(d.position, d.color.flip(), Reason::Refuted);
                        cursor_hint = cursor_hint.min(d.position);
                    }
                }
            }
            Propagation::Progress { .. } => {
                let next = (cursor_hint..=n).find(|&p| state.occurs(p) && state.value(p).is_none());
                match next {
                    Some(p) => {
                        cursor_hint = p;
                        stats.decisions += 1;
                        state.decide(p, preferred(options, p));
                    }
                    None => {
                        let colors = (1..=n)
                            .map(|p| state.value(p).unwrap_or_else(|| preferred(options, p)))
                            .collect();
                        stats.propagations = state.propagations;
                        return Outcome::Satisfiable(Coloring::from_colors(colors), stats);
                    }
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equation::LinearEquation;
    use crate::witness::witness_gamma_s1;

    fn eq(text: &str) -> LinearEquation {
        text.parse().unwrap()
    }

    #[test]
    fn schur_boundary() {
        let schur = eq("1,1,-1");
        let opts = SolveOptions::default();
        match solve(&schur, &schur, 4, &opts).unwrap() {
            Outcome::Satisfiable(c, _) => {
                assert!(check_valid(&c, &schur, &schur).unwrap().is_valid());
            }
            other => panic!("expected a model, got {other:?}"),
        }
        assert!(matches!(
            solve(&schur, &schur, 5, &opts).unwrap(),
            Outcome::Unsatisfiable(_)
        ));
    }

    #[test]
    fn gamma_instance_is_satisfiable() {
        let (e0, e1) = (eq("1,3,-1"), eq("1,1,-1"));
        let opts = SolveOptions::default();
        assert!(matches!(
            solve(&e0, &e1, 10, &opts).unwrap(),
            Outcome::Satisfiable(..)
        ));
        let gamma = witness_gamma_s1(3).unwrap();
        assert!(check_valid(&gamma, &e0, &e1).unwrap().is_valid());
        assert!(matches!(
            solve(&e0, &e1, 11, &opts).unwrap(),
            Outcome::Unsatisfiable(_)
        ));
    }

    #[test]
    fn phase_hint_guides_the_model() {
        let (e0, e1) = (eq("1,3,-1"), eq("1,1,-1"));
        let gamma = witness_gamma_s1(3).unwrap();
        let opts = SolveOptions {
            phase: Some(&gamma),
            deadline: None,
        };
        match solve(&e0, &e1, 10, &opts).unwrap() {
            Outcome::Satisfiable(c, stats) => {
                assert_eq!(c, gamma);
                assert_eq!(stats.conflicts, 0);
            }
            other => panic!("expected a model, got {other:?}"),
        }
    }

    #[test]
    fn expired_deadline_is_indeterminate() {
        let (e0, e1) = (eq("2,4,-1"), eq("2,3,-1"));
        let opts = SolveOptions {
            phase: None,
            deadline: Some(Instant::now()),
        };
        let got = solve(&e0, &e1, 66, &opts).unwrap();
        assert!(matches!(got, Outcome::Indeterminate(_)));
    }

    #[test]
    fn empty_interval_is_satisfiable() {
        let schur = eq("1,1,-1");
        match solve(&schur, &schur, 0, &SolveOptions::default()).unwrap() {
            Outcome::Satisfiable(c, _) => assert!(c.is_empty()),
            other => panic!("{other:?}"),
        }
    }
}
