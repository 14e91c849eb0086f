use std::collections::{BTreeSet, HashSet};

use crate::coloring::Color;
use crate::equation::{enumerate_solutions, solutions_involving, EquationError, LinearEquation};

/// At least one of `members` must receive the `demanded` color.
///
/// A solution of `e0` yields a Blue-demand clause (it may not be all Red),
/// a solution of `e1` a Red-demand clause.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Clause {
    pub demanded: Color,
    members: Vec<u32>,
}

impl Clause {
    /// Sorts and deduplicates `members`.
    pub fn new(demanded: Color, mut members: Vec<u32>) -> Self {
        assert!(!members.is_empty(), "empty clause");
        members.sort_unstable();
        members.dedup();
        Clause { demanded, members }
    }

    pub fn members(&self) -> &[u32] {
        &self.members
    }

    pub fn max_member(&self) -> u32 {
        *self.members.last().expect("nonempty")
    }
}

fn clauses_from(
    eq: &LinearEquation,
    demanded: Color,
    tuples: Vec<crate::equation::SolutionTuple>,
    out: &mut BTreeSet<Clause>,
) {
    debug_assert!(tuples.iter().all(|t| eq.is_solution(t.values())));
    out.extend(tuples.into_iter().map(|t| Clause::new(demanded, t.0)));
}

/// One clause per distinct value-set of each equation's solutions in `[1,n]`.
/// Blue-demand clauses (from `e0`) come first; each group is sorted.
pub fn build_clauses(
    e0: &LinearEquation,
    e1: &LinearEquation,
    n: u32,
) -> Result<Vec<Clause>, EquationError> {
    let mut set = BTreeSet::new();
    clauses_from(e0, Color::Blue, enumerate_solutions(e0, n)?, &mut set);
    clauses_from(e1, Color::Red, enumerate_solutions(e1, n)?, &mut set);
    // Color orders Red < Blue; emit the Blue group first.
    let (red, blue): (Vec<Clause>, Vec<Clause>) =
        set.into_iter().partition(|c| c.demanded == Color::Red);
    Ok(blue.into_iter().chain(red).collect())
}

/// The clauses whose largest member is exactly `n`.
pub fn clauses_with_max(
    e0: &LinearEquation,
    e1: &LinearEquation,
    n: u32,
) -> Result<Vec<Clause>, EquationError> {
    let mut set = BTreeSet::new();
    clauses_from(e0, Color::Blue, solutions_involving(e0, n, n)?, &mut set);
    clauses_from(e1, Color::Red, solutions_involving(e1, n, n)?, &mut set);
    Ok(set.into_iter().collect())
}

/// Clause store for a growing interval `[1,n]` with subsumption: a clause is
/// dropped when a proper subset with the same demand is already present.
#[derive(Debug, Clone)]
pub struct ClauseDb {
    e0: LinearEquation,
    e1: LinearEquation,
    n: u32,
    clauses: Vec<Clause>,
    keys: HashSet<(Color, Vec<u32>)>,
    subsumed: usize,
}

impl ClauseDb {
    pub fn new(e0: LinearEquation, e1: LinearEquation) -> Self {
        ClauseDb {
            e0,
            e1,
            n: 0,
            clauses: Vec::new(),
            keys: HashSet::new(),
            subsumed: 0,
        }
    }

    pub fn equations(&self) -> (&LinearEquation, &LinearEquation) {
        (&self.e0, &self.e1)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn subsumed(&self) -> usize {
        self.subsumed
    }

    /// Grows the interval to `[1,n]`. Shrinking rebuilds from scratch.
    pub fn extend_to(&mut self, n: u32) -> Result<(), EquationError> {
        if n < self.n {
            self.clauses.clear();
            self.keys.clear();
            self.subsumed = 0;
            self.n = 0;
        }
        if n == self.n {
            return Ok(());
        }
        if self.n == 0 {
            // Bulk build: group by maximum element, then insert level by level.
            let mut by_max: Vec<Vec<Clause>> = vec![Vec::new(); n as usize + 1];
            for c in build_clauses(&self.e0, &self.e1, n)? {
                by_max[c.max_member() as usize].push(c);
            }
            for level in by_max {
                self.insert_level(level);
            }
        } else {
            for v in self.n + 1..=n {
                let level = clauses_with_max(&self.e0, &self.e1, v)?;
                self.insert_level(level);
            }
        }
        self.n = n;
        Ok(())
    }

    /// Inserts clauses sharing one maximum element. Older clauses cannot be
    /// supersets of these, so only the new ones need checking.
    fn insert_level(&mut self, mut level: Vec<Clause>) {
        level.sort_by(|a, b| a.members.len().cmp(&b.members.len()).then_with(|| a.cmp(b)));
        for clause in level {
            if self.is_subsumed(&clause) {
                self.subsumed += 1;
                continue;
            }
            self.keys.insert((clause.demanded, clause.members.clone()));
            self.clauses.push(clause);
        }
    }

    fn is_subsumed(&self, clause: &Clause) -> bool {
        let m = clause.members.len();
        if m > 20 {
            return false;
        }
        let full = (1u32 << m) - 1;
        (1..full).any(|mask| {
            let subset: Vec<u32> = (0..m)
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| clause.members[i])
                .collect();
            self.keys.contains(&(clause.demanded, subset))
        })
    }
}
