//! The literal pairwise forcing rules for `RR_t(q,s)`.
//!
//! For two Red elements `x, y` (avoiding Red solutions of `tx+qy=z`):
//!
//! * R1: `q | y - tx`, `y - tx > 0`  =>  `(y - tx)/q` is Blue
//! * R2: `t | y - qx`, `y - qx > 0`  =>  `(y - qx)/t` is Blue
//! * R3: `(q+t) | x`                 =>  `x/(q+t)` is Blue
//!
//! and B1-B3 symmetrically for Blue elements with `s` in place of `q`.
//! These are evaluated directly on integers, independently of the clause
//! machinery, so they can be checked against [`SolverState::propagate`].
//!
//! [`SolverState::propagate`]: super::SolverState::propagate

use std::collections::BTreeSet;

use crate::bounds::{require, ParameterError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Forcing {
    /// Newly forced elements (not already in the given sets).
    Forced {
        red: BTreeSet<u32>,
        blue: BTreeSet<u32>,
    },
    /// Some element is forced to both colors.
    Contradiction { element: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Fixpoint {
    Stable {
        red: BTreeSet<u32>,
        blue: BTreeSet<u32>,
    },
    Contradiction,
}

/// Elements forced by same-colored pairs under `tx + jy = z`, limited to
/// `[1, n]`. With `x, y` already colored, returns the value opposite.
fn pair_forcings(t: i64, j: i64, same: &BTreeSet<u32>, n: u32, out: &mut BTreeSet<u32>) {
    let in_window = |w: i64| w >= 1 && w <= i64::from(n);
    for &x in same {
        let x = i64::from(x);
        if x % (j + t) == 0 && in_window(x / (j + t)) {
            out.insert((x / (j + t)) as u32);
        }
        for &y in same {
            let y = i64::from(y);
            let d = y - t * x;
            if d > 0 && d % j == 0 && in_window(d / j) {
                out.insert((d / j) as u32);
            }
            let d = y - j * x;
            if d > 0 && d % t == 0 && in_window(d / t) {
                out.insert((d / t) as u32);
            }
        }
    }
}

/// One round of R1-R3 over all ordered pairs of `red` and B1-B3 over `blue`.
pub fn schaal_force(
    t: i64,
    q: i64,
    s: i64,
    red: &BTreeSet<u32>,
    blue: &BTreeSet<u32>,
    n: u32,
) -> Result<Forcing, ParameterError> {
    let params = || format!("t={t}, q={q}, s={s}");
    require(
        t >= 1 && q >= 1 && s >= 1,
        "schaal_force",
        "t, q, s >= 1",
        params,
    )?;
    require(
        red.iter().chain(blue).all(|&v| v >= 1 && v <= n),
        "schaal_force",
        "R, B within [1,N]",
        params,
    )?;
    require(
        red.is_disjoint(blue),
        "schaal_force",
        "R and B disjoint",
        params,
    )?;

    let mut to_blue = BTreeSet::new();
    pair_forcings(t, q, red, n, &mut to_blue);
    let mut to_red = BTreeSet::new();
    pair_forcings(t, s, blue, n, &mut to_red);

    let clash = to_blue
        .iter()
        .find(|v| red.contains(v) || to_red.contains(v))
        .or_else(|| to_red.iter().find(|v| blue.contains(v)));
    if let Some(&element) = clash {
        return Ok(Forcing::Contradiction { element });
    }
    Ok(Forcing::Forced {
        red: to_red.difference(red).copied().collect(),
        blue: to_blue.difference(blue).copied().collect(),
    })
}

/// Repeats [`schaal_force`] until nothing new is forced or a contradiction appears.
pub fn schaal_fixpoint(
    t: i64,
    q: i64,
    s: i64,
    red: &BTreeSet<u32>,
    blue: &BTreeSet<u32>,
    n: u32,
) -> Result<Fixpoint, ParameterError> {
    let mut red = red.clone();
    let mut blue = blue.clone();
    loop {
        match schaal_force(t, q, s, &red, &blue, n)? {
            Forcing::Contradiction { .. } => return Ok(Fixpoint::Contradiction),
            Forcing::Forced { red: r, blue: b } => {
                if r.is_empty() && b.is_empty() {
                    return Ok(Fixpoint::Stable { red, blue });
                }
                red.extend(r);
                blue.extend(b);
            }
        }
    }
}
