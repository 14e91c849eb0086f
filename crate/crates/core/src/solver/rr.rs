use std::time::{Duration, Instant};

use crate::bounds::{best_lower_bound, exact_multivar_rr1};
use crate::coloring::Coloring;
use crate::equation::LinearEquation;
use crate::oracle::check_valid;
use crate::witness::Construction;

use super::clause::ClauseDb;
use super::search::{solve_db, Outcome, SolveOptions, Stats, DEFAULT_TIMEOUT};
use super::SolverError;

/// Default ceiling for the upward scan.
pub const DEFAULT_SCAN_CAP: u32 = 5_000;

#[derive(Debug, Clone)]
pub struct RrConfig {
    /// First `N` to test for unsatisfiability; `None` picks the best
    /// closed-form lower bound. Satisfiability at `start - 1` is checked first,
    /// moving down when it fails.
    pub start_hint: Option<u32>,
    /// Largest `N` the upward scan may reach.
    pub cap: u32,
    /// Limit for each individual `N`.
    pub per_n_timeout: Duration,
    /// Limit for the whole computation.
    pub budget: Option<Duration>,
}

impl Default for RrConfig {
    fn default() -> Self {
        RrConfig {
            start_hint: None,
            cap: DEFAULT_SCAN_CAP,
            per_n_timeout: DEFAULT_TIMEOUT,
            budget: None,
        }
    }
}

/// An exact value with its certificate.
#[derive(Debug, Clone, PartialEq)]
pub struct RrResult {
    pub value: u32,
    /// A valid coloring of `[1, value - 1]`.
    pub witness: Coloring,
    /// Summed over every solver call of the scan.
    pub stats: Stats,
    /// Counters of the refutation at `value` alone.
    pub refutation: Stats,
    pub elapsed: Duration,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    Timeout,
    Cap,
}

/// What is known when the scan stops early.
#[derive(Debug, Clone, PartialEq)]
pub struct Partial {
    /// The value is at least this, certified by a valid coloring of `[1, lower - 1]`.
    pub lower: Option<(u32, Coloring)>,
    /// The value is at most this (`[1, upper]` was refuted).
    pub upper: Option<u32>,
    pub reason: StopReason,
    pub stats: Stats,
    pub elapsed: Duration,
}

#[derive(Debug, Clone, PartialEq)]
pub enum RrOutcome {
    Exact(RrResult),
    Indeterminate(Partial),
}

impl RrOutcome {
    pub fn value(&self) -> Option<u32> {
        match self {
            RrOutcome::Exact(r) => Some(r.value),
            RrOutcome::Indeterminate(_) => None,
        }
    }
}

/// Every known construction certifying a lower bound for `(e0, e1)`, Red
/// avoiding `e0`. Constructions for the swapped pair are flipped.
pub fn known_witnesses(e0: &LinearEquation, e1: &LinearEquation) -> Vec<Coloring> {
    let (Some(f0), Some(f1)) = (e0.as_f_form(), e1.as_f_form()) else {
        return Vec::new();
    };
    if f0.t != f1.t {
        return Vec::new();
    }
    let t = f0.t;
    let mut out = Vec::new();
    for (q, s, flip) in [(f0.j, f1.j, false), (f1.j, f0.j, true)] {
        let mut candidates = vec![
            Construction::Thm22Corrected { t, q, s },
            Construction::Thm22 { t, q, s },
            Construction::Thm21 { t, q, s },
        ];
        if t == 1 && s == 1 {
            candidates.push(Construction::Gamma { q });
        }
        if q == 2 * t + 1 && s == t {
            candidates.push(Construction::Anomalous { t });
        }
        if (t, q, s) == (6, 13, 6) {
            candidates.push(Construction::RemarkT6);
        }
        for c in candidates {
            if let Ok(col) = c.build() {
                out.push(if flip { col.flipped() } else { col });
            }
        }
    }
    out
}

/// The largest proven lower bound for the pair or its color swap, else 2.
pub fn default_start_hint(e0: &LinearEquation, e1: &LinearEquation) -> u32 {
    let mut best: Option<i64> = None;
    if let (Some(f0), Some(f1)) = (e0.as_f_form(), e1.as_f_form()) {
        if f0.t == f1.t {
            best = best_lower_bound(f0.t, f0.j, f1.j).max(best_lower_bound(f0.t, f1.j, f0.j));
        }
    }
    // x + sum a_i y_i = z against x + sum b_i y_i = z.
    let tail = |e: &LinearEquation| match e.coeffs() {
        [1, middle @ .., -1] if !middle.is_empty() && middle.iter().all(|&a| a > 0) => {
            Some(middle.to_vec())
        }
        _ => None,
    };
    if let (Some(a), Some(b)) = (tail(e0), tail(e1)) {
        let multi = exact_multivar_rr1(&a, &b)
            .or_else(|_| exact_multivar_rr1(&b, &a))
            .ok();
        best = best.max(multi);
    }
    best.and_then(|v| u32::try_from(v).ok()).unwrap_or(2).max(2)
}

/// Picks the phase for `[1, n]`: the last model found, else the first known
/// witness that is valid on its own domain.
fn pick_phase(last: Option<&Coloring>, known: &[Coloring]) -> Option<Coloring> {
    last.cloned().or_else(|| known.first().cloned())
}

/// Least `N` such that every coloring of `[1,N]` has a Red solution of `e0`
/// or a Blue solution of `e1`.
pub fn compute_rr(
    e0: &LinearEquation,
    e1: &LinearEquation,
    config: &RrConfig,
) -> Result<RrOutcome, SolverError> {
    let started = Instant::now();
    let overall = config.budget.map(|b| started + b);
    let known: Vec<Coloring> = known_witnesses(e0, e1)
        .into_iter()
        .filter(|c| {
            check_valid(c, e0, e1)
                .map(|r| r.is_valid())
                .unwrap_or(false)
        })
        .collect();
    let start = config
        .start_hint
        .unwrap_or_else(|| default_start_hint(e0, e1))
        .max(2);

    let mut db = ClauseDb::new(e0.clone(), e1.clone());
    let mut total = Stats::default();
    let mut lower: Option<(u32, Coloring)> = None;
    let mut upper: Option<u32> = None;

    let stop = |reason, lower, upper, total| {
        Ok(RrOutcome::Indeterminate(Partial {
            lower,
            upper,
            reason,
            stats: total,
            elapsed: started.elapsed(),
        }))
    };

    let run = |db: &ClauseDb, phase: Option<&Coloring>, total: &mut Stats| {
        let per_n = Instant::now() + config.per_n_timeout;
        let deadline = Some(overall.map_or(per_n, |o| o.min(per_n)));
        let outcome = solve_db(db, &SolveOptions { phase, deadline })?;
        *total += outcome.stats();
        Ok::<_, SolverError>(outcome)
    };

    // Downward phase: find a satisfiable N below the start.
    let mut n = start - 1;
    loop {
        db.extend_to(n)?;
        let phase = pick_phase(None, &known);
        match run(&db, phase.as_ref(), &mut total)? {
            Outcome::Satisfiable(model, _) => {
                lower = Some((n + 1, model));
                break;
            }
            Outcome::Unsatisfiable(_) => {
                upper = Some(n);
                // [1,0] is trivially colorable, so n >= 1 here.
                n -= 1;
            }
            Outcome::Indeterminate(_) => return stop(StopReason::Timeout, lower, upper, total),
        }
    }

    let (mut value, mut witness) = lower.take().expect("set by the downward phase");
    if upper == Some(value) {
        // Refuted on the way down; the counters of that step are in `total`.
        return Ok(RrOutcome::Exact(RrResult {
            value,
            witness,
            stats: total,
            refutation: Stats::default(),
            elapsed: started.elapsed(),
        }));
    }

    // Upward phase: extend until refuted.
    loop {
        if value > config.cap {
            return stop(StopReason::Cap, Some((value, witness)), None, total);
        }
        db.extend_to(value)?;
        match run(&db, Some(&witness), &mut total)? {
            Outcome::Satisfiable(model, _) => {
                witness = model;
                value += 1;
            }
            Outcome::Unsatisfiable(stats) => {
                return Ok(RrOutcome::Exact(RrResult {
                    value,
                    witness,
                    stats: total,
                    refutation: stats,
                    elapsed: started.elapsed(),
                }));
            }
            Outcome::Indeterminate(_) => {
                return stop(StopReason::Timeout, Some((value, witness)), None, total);
            }
        }
    }
}
