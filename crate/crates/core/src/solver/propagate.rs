use crate::coloring::{Color, PartialColoring};

use super::clause::Clause;

/// Why a position holds its color.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reason {
    /// Given as part of the starting state.
    Seed,
    /// A branching choice.
    Decision,
    /// The other color was refuted under the enclosing decisions.
    Refuted,
    /// Unit propagation on the clause with this index.
    Clause(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrailEntry {
    pub position: u32,
    pub color: Color,
    pub reason: Reason,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Propagation {
    /// Fixpoint reached; `forced` positions were colored on the way.
    Progress { forced: usize },
    /// The clause with this index has every member colored against its demand.
    Conflict { clause: usize },
}

/// Which unit forcings [`SolverState::propagate`] may perform.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PropagationMode {
    /// Every unit clause forces its last member.
    #[default]
    Full,
    /// Only forcings of a member below the clause maximum: the deductions a
    /// pair (or single element) of same-colored larger values yields.
    BelowMax,
}

/// Watched-member clause, members rearranged so the two watches sit first.
#[derive(Debug, Clone)]
struct Watched {
    demanded: Color,
    max: u32,
    members: Vec<u32>,
}

/// Partial coloring plus trail and two-watched-member index.
#[derive(Debug, Clone)]
pub struct SolverState {
    partial: PartialColoring,
    clauses: Vec<Watched>,
    // watches[pos][demand]: clauses with that demand watching pos.
    watches: Vec<[Vec<usize>; 2]>,
    // Single-member clauses, asserted by `propagate` when first called.
    units: Vec<usize>,
    trail: Vec<TrailEntry>,
    trail_lim: Vec<usize>,
    qhead: usize,
    mode: PropagationMode,
    occurs: Vec<bool>,
    conflict: Option<usize>,
    pub propagations: u64,
}

impl SolverState {
    pub fn new(n: u32, clauses: &[Clause]) -> Self {
        Self::with_mode(n, clauses, PropagationMode::Full)
    }

    pub fn with_mode(n: u32, clauses: &[Clause], mode: PropagationMode) -> Self {
        let mut watches = vec![[Vec::new(), Vec::new()]; n as usize + 1];
        let mut occurs = vec![false; n as usize + 1];
        let mut units = Vec::new();
        let mut stored = Vec::with_capacity(clauses.len());
        for (i, c) in clauses.iter().enumerate() {
            assert!(c.max_member() <= n, "clause outside [1,{n}]");
            for &m in c.members() {
                occurs[m as usize] = true;
            }
            let members = c.members().to_vec();
            if members.len() == 1 {
                units.push(i);
            } else {
                for &w in &members[..2] {
                    watches[w as usize][c.demanded.index()].push(i);
                }
            }
            stored.push(Watched {
                demanded: c.demanded,
                max: c.max_member(),
                members,
            });
        }
        SolverState {
            partial: PartialColoring::new(n),
            clauses: stored,
            watches,
            units,
            trail: Vec::new(),
            trail_lim: Vec::new(),
            qhead: 0,
            mode,
            occurs,
            conflict: None,
            propagations: 0,
        }
    }

    pub fn n(&self) -> u32 {
        self.partial.len()
    }

    pub fn partial(&self) -> &PartialColoring {
        &self.partial
    }

    pub fn trail(&self) -> &[TrailEntry] {
        &self.trail
    }

    pub fn value(&self, position: u32) -> Option<Color> {
        self.partial.get(position)
    }

    /// Whether `position` belongs to at least one clause.
    pub fn occurs(&self, position: u32) -> bool {
        self.occurs[position as usize]
    }

    pub fn decision_level(&self) -> usize {
        self.trail_lim.len()
    }

    /// Colors `position` at the current level. Returns `false`, changing
    /// nothing, when it already carries the opposite color.
    pub fn assign(&mut self, position: u32, color: Color, reason: Reason) -> bool {
        match self.partial.get(position) {
            Some(c) => c == color,
            None => {
                self.partial.set(position, color);
                self.trail.push(TrailEntry {
                    position,
                    color,
                    reason,
                });
                true
            }
        }
    }

    /// Opens a decision level and colors `position`.
    pub fn decide(&mut self, position: u32, color: Color) {
        debug_assert!(self.partial.get(position).is_none());
        self.trail_lim.push(self.trail.len());
        self.assign(position, color, Reason::Decision);
    }

    /// Undoes the most recent decision level, returning its decision.
    pub fn backtrack(&mut self) -> Option<TrailEntry> {
        let start = self.trail_lim.pop()?;
        let decision = self.trail[start];
        for entry in self.trail.drain(start..) {
            self.partial.unset(entry.position);
        }
        self.qhead = self.qhead.min(start);
        self.conflict = None;
        Some(decision)
    }

    /// Runs unit propagation to a fixpoint.
    pub fn propagate(&mut self) -> Propagation {
        let before = self.trail.len();
        if let Some(clause) = self.conflict {
            return Propagation::Conflict { clause };
        }
        for k in 0..self.units.len() {
            let ci = self.units[k];
            let (pos, demanded) = (self.clauses[ci].members[0], self.clauses[ci].demanded);
            if self.mode == PropagationMode::BelowMax {
                if self.partial.get(pos) == Some(demanded.flip()) {
                    return self.fail(ci, before);
                }
                continue;
            }
            if !self.assign(pos, demanded, Reason::Clause(ci)) {
                return self.fail(ci, before);
            }
        }
        while self.qhead < self.trail.len() {
            let TrailEntry {
                position, color, ..
            } = self.trail[self.qhead];
            self.qhead += 1;
            if let Some(ci) = self.visit(position, color.flip()) {
                return self.fail(ci, before);
            }
        }
        let forced = self.trail.len() - before;
        self.propagations += forced as u64;
        Propagation::Progress { forced }
    }

    fn fail(&mut self, ci: usize, before: usize) -> Propagation {
        self.propagations += (self.trail.len() - before) as u64;
        self.conflict = Some(ci);
        Propagation::Conflict { clause: ci }
    }

    /// `position` was just colored against `demand`; revisit the clauses
    /// with that demand watching it.
    fn visit(&mut self, position: u32, demand: Color) -> Option<usize> {
        let against = demand.flip();
        let mut list = std::mem::take(&mut self.watches[position as usize][demand.index()]);
        let mut keep = 0;
        let mut conflict = None;
        let mut i = 0;
        while i < list.len() {
            let ci = list[i];
            i += 1;
            let clause = &mut self.clauses[ci];
            if clause.members[0] == position {
                clause.members.swap(0, 1);
            }
            let other = clause.members[0];
            let other_value = self.partial.get(other);
            if other_value == Some(demand) {
                list[keep] = ci;
                keep += 1;
                continue;
            }
            let replacement = (2..clause.members.len())
                .find(|&k| self.partial.get(clause.members[k]) != Some(against));
            if let Some(k) = replacement {
                clause.members.swap(1, k);
                let w = clause.members[1];
                self.watches[w as usize][demand.index()].push(ci);
                continue;
            }
            list[keep] = ci;
            keep += 1;
            match other_value {
                None => {
                    let allowed = self.mode == PropagationMode::Full || other < clause.max;
                    if allowed {
                        self.partial.set(other, demand);
                        self.trail.push(TrailEntry {
                            position: other,
                            color: demand,
                            reason: Reason::Clause(ci),
                        });
                    }
                }
                Some(_) => {
                    conflict = Some(ci);
                    break;
                }
            }
        }
        while i < list.len() {
            list[keep] = list[i];
            keep += 1;
            i += 1;
        }
        list.truncate(keep);
        self.watches[position as usize][demand.index()] = list;
        conflict
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::clause::build_clauses;

    fn schur_state() -> SolverState {
        let schur = "1,1,-1".parse().unwrap();
        let clauses = build_clauses(&schur, &schur, 4).unwrap();
        SolverState::new(4, &clauses)
    }

    #[test]
    fn forcing_from_two_reds() {
        let mut s = schur_state();
        s.assign(1, Color::Red, Reason::Seed);
        s.assign(4, Color::Red, Reason::Seed);
        assert_eq!(s.propagate(), Propagation::Progress { forced: 2 });
        assert_eq!(s.value(2), Some(Color::Blue));
        assert_eq!(s.value(3), Some(Color::Blue));
        let forced: Vec<(u32, Color)> = s.trail()[2..]
            .iter()
            .map(|e| (e.position, e.color))
            .collect();
        assert_eq!(forced, vec![(2, Color::Blue), (3, Color::Blue)]);
        assert!(s.trail()[2..]
            .iter()
            .all(|e| matches!(e.reason, Reason::Clause(_))));
    }

    #[test]
    fn fully_violated_clause_conflicts() {
        let clauses = vec![Clause::new(Color::Blue, vec![1, 2])];
        let mut s = SolverState::new(2, &clauses);
        s.assign(1, Color::Red, Reason::Seed);
        s.assign(2, Color::Red, Reason::Seed);
        assert_eq!(s.propagate(), Propagation::Conflict { clause: 0 });
    }

    #[test]
    fn empty_assignment_is_a_fixpoint() {
        let mut s = schur_state();
        assert_eq!(s.propagate(), Propagation::Progress { forced: 0 });
        assert!(s.trail().is_empty());
    }

    #[test]
    fn backtrack_restores_state() {
        let clauses = vec![
            Clause::new(Color::Blue, vec![1, 2]),
            Clause::new(Color::Red, vec![2, 3]),
            Clause::new(Color::Blue, vec![3, 4, 5]),
        ];
        let mut s = SolverState::new(5, &clauses);
        s.decide(1, Color::Red);
        assert_eq!(s.propagate(), Propagation::Progress { forced: 2 });
        assert_eq!(s.value(3), Some(Color::Red));
        s.decide(4, Color::Red);
        assert_eq!(s.propagate(), Propagation::Progress { forced: 1 });
        assert_eq!(s.value(5), Some(Color::Blue));
        let d = s.backtrack().unwrap();
        assert_eq!((d.position, d.color), (4, Color::Red));
        assert_eq!(s.value(5), None);
        assert_eq!(s.value(2), Some(Color::Blue));
        assert_eq!(s.decision_level(), 1);
        assert!(s.assign(5, Color::Red, Reason::Refuted));
        assert_eq!(s.propagate(), Propagation::Progress { forced: 1 });
        assert_eq!(s.value(4), Some(Color::Blue));
        s.backtrack();
        assert!(s.trail().is_empty());
        s.decide(3, Color::Blue);
        assert_eq!(s.propagate(), Propagation::Progress { forced: 2 });
        assert_eq!(s.value(1), Some(Color::Blue));
        assert!(!s.assign(1, Color::Red, Reason::Seed));
    }

    #[test]
    fn unit_clauses_are_asserted() {
        // x + y = 2z has the constant solutions (v, v, v).
        let e: crate::equation::LinearEquation = "1,1,-2".parse().unwrap();
        let clauses = build_clauses(&e, &e, 1).unwrap();
        let mut s = SolverState::new(1, &clauses);
        assert!(matches!(s.propagate(), Propagation::Conflict { .. }));
    }

    #[test]
    fn below_max_mode_skips_top_forcings() {
        let clauses = vec![Clause::new(Color::Blue, vec![1, 2, 3])];
        let mut s = SolverState::with_mode(3, &clauses, PropagationMode::BelowMax);
        s.assign(1, Color::Red, Reason::Seed);
        s.assign(2, Color::Red, Reason::Seed);
        assert_eq!(s.propagate(), Propagation::Progress { forced: 0 });
        let mut s = SolverState::with_mode(3, &clauses, PropagationMode::BelowMax);
        s.assign(1, Color::Red, Reason::Seed);
        s.assign(3, Color::Red, Reason::Seed);
        assert_eq!(s.propagate(), Propagation::Progress { forced: 1 });
        assert_eq!(s.value(2), Some(Color::Blue));
    }
}
