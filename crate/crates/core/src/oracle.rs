//! Ground truth for small instances.
//!
//! [`check_valid`] decides the off-diagonal condition for a given coloring by
//! enumerating every solution. [`exhaustive_sat`] and [`exhaustive_rr`] scan
//! all colorings of `[1,N]` and share no code with the forcing solver beyond
//! solution enumeration.

use thiserror::Error;

use crate::coloring::{Color, Coloring};
use crate::equation::{enumerate_solutions, EquationError, LinearEquation, SolutionTuple};

/// Largest domain the brute-force scan accepts.
pub const EXHAUSTIVE_CAP: u32 = 25;

/// Violations kept per equation in a [`ValidityReport`].
pub const MAX_REPORTED: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error(transparent)]
    Equation(#[from] EquationError),
    #[error("exhaustive search is limited to N <= {cap}, got {n}")]
    CapExceeded { n: u32, cap: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidityReport {
    /// Solutions of `e0` colored entirely Red.
    pub red_violations: Vec<SolutionTuple>,
    /// Solutions of `e1` colored entirely Blue.
    pub blue_violations: Vec<SolutionTuple>,
}

impl ValidityReport {
    pub fn is_valid(&self) -> bool {
        self.red_violations.is_empty() && self.blue_violations.is_empty()
    }
}

fn monochromatic(
    col: &Coloring,
    eq: &LinearEquation,
    color: Color,
) -> Result<Vec<SolutionTuple>, EquationError> {
    Ok(enumerate_solutions(eq, col.len())?
        .into_iter()
        .filter(|t| t.values().iter().all(|&v| col.get(v) == color))
        .take(MAX_REPORTED)
        .collect())
}

/// Valid iff no solution of `e0` in `[1, col.len()]` is all Red and no
/// solution of `e1` is all Blue.
pub fn check_valid(
    col: &Coloring,
    e0: &LinearEquation,
    e1: &LinearEquation,
) -> Result<ValidityReport, OracleError> {
    Ok(ValidityReport {
        red_violations: monochromatic(col, e0, Color::Red)?,
        blue_violations: monochromatic(col, e1, Color::Blue)?,
    })
}

/// Solution value-sets as bitmasks, grouped by their largest element.
struct MaskIndex {
    // by_max[p]: (mask, forbidden color) for solutions whose maximum is p.
    by_max: Vec<Vec<(u32, Color)>>,
}

impl MaskIndex {
    fn build(e0: &LinearEquation, e1: &LinearEquation, n: u32) -> Result<Self, EquationError> {
        let mut by_max = vec![Vec::new(); n as usize + 1];
        for (eq, forbidden) in [(e0, Color::Red), (e1, Color::Blue)] {
            for tuple in enumerate_solutions(eq, n)? {
                let mask = tuple.values().iter().fold(0u32, |m, &v| m | 1 << (v - 1));
                by_max[tuple.max_value() as usize].push((mask, forbidden));
            }
        }
        Ok(MaskIndex { by_max })
    }

    fn search(&self, p: u32, n: u32, masks: &mut [u32; 2], out: &mut Vec<Color>) -> bool {
        if p > n {
            return true;
        }
        let bit = 1u32 << (p - 1);
        for color in [Color::Red, Color::Blue] {
            masks[color.index()] |= bit;
            let ok = self.by_max[p as usize]
                .iter()
                .all(|&(mask, forbidden)| mask & masks[forbidden.index()] != mask);
            if ok {
                out.push(color);
                if self.search(p + 1, n, masks, out) {
                    return true;
                }
                out.pop();
            }
            masks[color.index()] &= !bit;
        }
        false
    }
}

/// The lexicographically first valid coloring of `[1,n]` (Red before Blue,
/// position 1 most significant), or `None` when every coloring fails.
pub fn exhaustive_sat(
    e0: &LinearEquation,
    e1: &LinearEquation,
    n: u32,
) -> Result<Option<Coloring>, OracleError> {
    if n > EXHAUSTIVE_CAP {
        return Err(OracleError::CapExceeded {
            n,
            cap: EXHAUSTIVE_CAP,
        });
    }
    let index = MaskIndex::build(e0, e1, n)?;
    let mut colors = Vec::with_capacity(n as usize);
    let mut masks = [0u32; 2];
    Ok(index
        .search(1, n, &mut masks, &mut colors)
        .then(|| Coloring::from_colors(colors)))
}

/// Least `n <= cap` for which no valid coloring of `[1,n]` exists.
pub fn exhaustive_rr(
    e0: &LinearEquation,
    e1: &LinearEquation,
    cap: u32,
) -> Result<Option<u32>, OracleError> {
    if cap > EXHAUSTIVE_CAP {
        return Err(OracleError::CapExceeded {
            n: cap,
            cap: EXHAUSTIVE_CAP,
        });
    }
    for n in 1..=cap {
        if exhaustive_sat(e0, e1, n)?.is_none() {
            return Ok(Some(n));
        }
    }
    Ok(None)
}
