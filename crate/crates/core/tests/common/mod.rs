//! Checks shared by the integration tests and the acceptance harness.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rado::bounds::{forcing_window, thm22_multiplier};
use rado::oracle::{check_valid, exhaustive_sat};
use rado::solver::{
    build_clauses, compute_rr, schaal_fixpoint, solve, Fixpoint, Outcome, Propagation,
    PropagationMode, Reason, RrConfig, RrOutcome, RrResult, SolveOptions, SolverState,
};
use rado::witness::{f_form_pair, Construction};
use rado::{Color, Coloring, LinearEquation};

pub fn eq(text: &str) -> LinearEquation {
    text.parse().unwrap()
}

pub fn fpair(t: i64, q: i64, s: i64) -> (LinearEquation, LinearEquation) {
    f_form_pair(t, q, s).unwrap()
}

pub fn rr(e0: &LinearEquation, e1: &LinearEquation) -> RrResult {
    match compute_rr(e0, e1, &RrConfig::default()).unwrap() {
        RrOutcome::Exact(r) => r,
        other => panic!("RR({e0}; {e1}) not determined: {other:?}"),
    }
}

pub fn is_valid(c: &Coloring, e0: &LinearEquation, e1: &LinearEquation) -> bool {
    check_valid(c, e0, e1).unwrap().is_valid()
}

/// A constructor instance that fails its own designated pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessFailure {
    pub construction: Construction,
    pub first_violation: String,
}

/// Every instance of the constructor grids, in a fixed order.
pub fn witness_grid() -> Vec<Construction> {
    let mut out = Vec::new();
    for t in 1..=3 {
        for s in t..=6 {
            for q in s..=6 {
                out.push(Construction::Thm21 { t, q, s });
            }
        }
    }
    for t in 1..=3 {
        for s in t..=8 {
            for q in s..=8 {
                out.push(Construction::Thm22 { t, q, s });
            }
        }
    }
    for q in 1..=12 {
        out.push(Construction::Gamma { q });
    }
    for t in 3..=5 {
        out.push(Construction::Anomalous { t });
    }
    out.push(Construction::RemarkT6);
    out
}

/// The corrected multiplier construction over the same grid as the literal one.
pub fn corrected_grid() -> Vec<Construction> {
    let mut out = Vec::new();
    for t in 1..=3 {
        for s in t..=8 {
            for q in s..=8 {
                out.push(Construction::Thm22Corrected { t, q, s });
            }
        }
    }
    out
}

pub fn check_construction(c: Construction) -> Option<WitnessFailure> {
    let coloring = c.build().unwrap();
    let (e0, e1) = c.equations().unwrap();
    let report = check_valid(&coloring, &e0, &e1).unwrap();
    if report.is_valid() {
        return None;
    }
    let first = report
        .red_violations
        .first()
        .map(|t| format!("Red {t} of {e0}"))
        .or_else(|| {
            report
                .blue_violations
                .first()
                .map(|t| format!("Blue {t} of {e1}"))
        })
        .unwrap();
    Some(WitnessFailure {
        construction: c,
        first_violation: first,
    })
}

pub fn multiplier(c: Construction) -> Option<i64> {
    match c {
        Construction::Thm22 { t, q, s } | Construction::Thm22Corrected { t, q, s } => {
            Some(thm22_multiplier(t, q, s))
        }
        _ => None,
    }
}

/// F-form pairs `(tx+qy=z, tx+sy=z)` with `1 <= t <= s <= q <= 3`.
pub fn small_f_pairs() -> Vec<(i64, i64, i64)> {
    let mut out = Vec::new();
    for t in 1..=3 {
        for s in t..=3 {
            for q in s..=3 {
                out.push((t, q, s));
            }
        }
    }
    out
}

/// `(t, q, s, n, solver_sat, oracle_sat)` for every disagreement with `n <= max_n`.
pub fn oracle_disagreements(
    pairs: &[(LinearEquation, LinearEquation)],
    max_n: u32,
) -> (usize, Vec<String>) {
    let mut checked = 0;
    let mut bad = Vec::new();
    for (e0, e1) in pairs {
        for n in 1..=max_n {
            let solver_sat = match solve(e0, e1, n, &SolveOptions::default()).unwrap() {
                Outcome::Satisfiable(c, _) => {
                    assert!(is_valid(&c, e0, e1));
                    true
                }
                Outcome::Unsatisfiable(_) => false,
                Outcome::Indeterminate(_) => panic!("no deadline was set"),
            };
            let oracle_sat = exhaustive_sat(e0, e1, n).unwrap().is_some();
            checked += 1;
            if solver_sat != oracle_sat {
                bad.push(format!(
                    "{e0} / {e1} at N={n}: solver {solver_sat}, oracle {oracle_sat}"
                ));
            }
        }
    }
    (checked, bad)
}

fn random_state(rng: &mut ChaCha8Rng, n: u32) -> (BTreeSet<u32>, BTreeSet<u32>) {
    let mut red = BTreeSet::new();
    let mut blue = BTreeSet::new();
    let k = rng.gen_range(0..=8);
    for _ in 0..k {
        let v = rng.gen_range(1..=n);
        if red.contains(&v) || blue.contains(&v) {
            continue;
        }
        if rng.gen_bool(0.5) {
            red.insert(v);
        } else {
            blue.insert(v);
        }
    }
    (red, blue)
}

/// Fixpoint of unit propagation limited to pair-derived forcings, seeded
/// with `red`/`blue`, or `None` on conflict.
pub fn propagate_fixpoint(
    t: i64,
    q: i64,
    s: i64,
    red: &BTreeSet<u32>,
    blue: &BTreeSet<u32>,
    n: u32,
) -> Option<(BTreeSet<u32>, BTreeSet<u32>)> {
    let (e0, e1) = fpair(t, q, s);
    let clauses = build_clauses(&e0, &e1, n).unwrap();
    let mut state = SolverState::with_mode(n, &clauses, PropagationMode::BelowMax);
    for (set, color) in [(red, Color::Red), (blue, Color::Blue)] {
        for &v in set {
            assert!(state.assign(v, color, Reason::Seed));
        }
    }
    match state.propagate() {
        Propagation::Conflict { .. } => None,
        Propagation::Progress { .. } => Some((
            state
                .partial()
                .positions_of(Color::Red)
                .into_iter()
                .collect(),
            state
                .partial()
                .positions_of(Color::Blue)
                .into_iter()
                .collect(),
        )),
    }
}

/// Compares the literal-rule fixpoint with the propagation fixpoint on
/// `states` random seeded states inside the forcing window.
pub fn propagation_disagreements(t: i64, q: i64, s: i64, states: usize, seed: u64) -> Vec<String> {
    let n = u32::try_from(forcing_window(t, q, s).unwrap()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bad = Vec::new();
    for i in 0..states {
        let (red, blue) = random_state(&mut rng, n);
        let literal = match schaal_fixpoint(t, q, s, &red, &blue, n).unwrap() {
            Fixpoint::Stable { red, blue } => Some((red, blue)),
            Fixpoint::Contradiction => None,
        };
        let clausal = propagate_fixpoint(t, q, s, &red, &blue, n);
        if literal != clausal {
            bad.push(format!(
                "({t},{q},{s}) state {i} R={red:?} B={blue:?}: rules {literal:?} vs propagation {clausal:?}"
            ));
        }
    }
    bad
}

pub fn rado(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rado"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("rado binary runs")
}

pub fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// Catalog lines with the run-dependent fields removed.
pub fn normalized_catalog(path: &Path) -> Vec<serde_json::Value> {
    fs::read_to_string(path)
        .unwrap()
        .lines()
        .map(|line| {
            let mut v: serde_json::Value = serde_json::from_str(line).unwrap();
            let obj = v.as_object_mut().unwrap();
            obj.remove("elapsed_ms");
            obj.remove("tool_version");
            v
        })
        .collect()
}

/// Every file under `dir/witnesses`, by name.
pub fn witness_files(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    let Ok(entries) = fs::read_dir(dir.join("witnesses")) else {
        return BTreeMap::new();
    };
    entries
        .map(|e| {
            let e = e.unwrap();
            (
                e.file_name().into_string().unwrap(),
                fs::read(e.path()).unwrap(),
            )
        })
        .collect()
}

/// Runs `table --t-range 2` in `dir`, returning the report text.
pub fn table_t2(dir: &Path, extra: &[&str]) -> (Output, String) {
    let mut args = vec![
        "table",
        "--t-range",
        "2",
        "--catalog",
        "cat.jsonl",
        "--report",
        "report.tsv",
    ];
    args.extend_from_slice(extra);
    let out = rado(dir, &args);
    let report = fs::read_to_string(dir.join("report.tsv")).unwrap_or_default();
    (out, report)
}
