//! Linear homogeneous equations over the positive integers.
//!
//! An equation is stored as its coefficient vector `(a1, ..., an)` with the
//! meaning `a1*x1 + ... + an*xn = 0`. The F-form `tx + jy = z` is the
//! coefficient vector `(t, j, -1)`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use thiserror::Error;

/// Default ceiling on the predicted number of tuples an enumeration may visit.
pub const DEFAULT_TUPLE_CAP: u64 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseEquationError {
    #[error("empty coefficient list")]
    Empty,
    #[error("coefficient {index} is zero")]
    ZeroCoefficient { index: usize },
    #[error("invalid coefficient token {token:?}")]
    InvalidToken { token: String },
    #[error("an equation needs at least two coefficients, got {0}")]
    TooFewCoefficients(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EquationError {
    #[error(transparent)]
    Parse(#[from] ParseEquationError),
    #[error("equation {0} needs at least 3 variables with both signs")]
    NotMixedSign(String),
    #[error("F-form coefficients must be positive (t = {t}, j = {j})")]
    BadFForm { t: i64, j: i64 },
    #[error("enumeration over [1,{n}] predicts {predicted} tuples, above the cap of {cap}")]
    TooManyTuples { n: u32, predicted: u128, cap: u64 },
    #[error("integer overflow while evaluating {0}")]
    Overflow(String),
    #[error("pinned value {v} outside [1,{n}]")]
    PinOutOfRange { v: u32, n: u32 },
}

/// `sum(coeffs[i] * x[i]) = 0` over positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearEquation {
    coeffs: Vec<i64>,
}

/// `t*x + j*y = z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FForm {
    pub t: i64,
    pub j: i64,
}

/// `a*x + b*y = c*z`, all coefficients positive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CanonicalForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

/// One solution, listing a value for each variable of the source equation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SolutionTuple(pub Vec<u32>);

impl SolutionTuple {
    pub fn values(&self) -> &[u32] {
        &self.0
    }

    pub fn max_value(&self) -> u32 {
        self.0.iter().copied().max().unwrap_or(0)
    }
}

impl fmt::Display for SolutionTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl LinearEquation {
    pub fn new(coeffs: Vec<i64>) -> Result<Self, ParseEquationError> {
        if coeffs.is_empty() {
            return Err(ParseEquationError::Empty);
        }
        if let Some(index) = coeffs.iter().position(|&c| c == 0) {
            return Err(ParseEquationError::ZeroCoefficient { index });
        }
        if coeffs.len() < 2 {
            return Err(ParseEquationError::TooFewCoefficients(coeffs.len()));
        }
        Ok(LinearEquation { coeffs })
    }

    /// The equation `t*x + j*y = z`.
    pub fn f_form(t: i64, j: i64) -> Result<Self, EquationError> {
        Ok(FForm::new(t, j)?.to_equation())
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn arity(&self) -> usize {
        self.coeffs.len()
    }

    /// At least three variables and coefficients of both signs.
    pub fn is_mixed_sign_3var(&self) -> bool {
        self.coeffs.len() >= 3
            && self.coeffs.iter().any(|&c| c > 0)
            && self.coeffs.iter().any(|&c| c < 0)
    }

    /// Recognizes `(t, j, -1)` with `t, j >= 1`.
    pub fn as_f_form(&self) -> Option<FForm> {
        match self.coeffs.as_slice() {
            &[t, j, -1] if t >= 1 && j >= 1 => Some(FForm { t, j }),
            _ => None,
        }
    }

    /// `sum(a_i * x_i)` with overflow reported as an error.
    pub fn evaluate(&self, values: &[u32]) -> Result<i64, EquationError> {
        assert_eq!(values.len(), self.coeffs.len(), "arity mismatch");
        self.coeffs
            .iter()
            .zip(values)
            .try_fold(0i64, |acc, (&a, &x)| {
                a.checked_mul(i64::from(x))
                    .and_then(|term| acc.checked_add(term))
            })
            .ok_or_else(|| EquationError::Overflow(self.to_string()))
    }

    pub fn is_solution(&self, values: &[u32]) -> bool {
        values.len() == self.coeffs.len()
            && values.iter().all(|&v| v >= 1)
            && matches!(self.evaluate(values), Ok(0))
    }

    /// Collapses the equation to `a*x + b*y = c*z` by identifying variables:
    /// all but the last positive-side variable become `x`, the last becomes
    /// `y`, and every negative-side variable becomes `z`. The whole equation
    /// is negated first when fewer than two coefficients are positive.
    pub fn normalize(&self) -> Result<CanonicalForm, EquationError> {
        if !self.is_mixed_sign_3var() {
            return Err(EquationError::NotMixedSign(self.to_string()));
        }
        let sign = self.orientation();
        let overflow = || EquationError::Overflow(self.to_string());
        let oriented = self.coeffs.iter().map(|&c| c * sign);
        let positives: Vec<i64> = oriented.clone().filter(|&c| c > 0).collect();
        let (&b, rest) = positives.split_last().expect("k >= 2 after orientation");
        let a = rest
            .iter()
            .try_fold(0i64, |acc, &x| acc.checked_add(x))
            .ok_or_else(overflow)?;
        let c = oriented
            .filter(|&c| c < 0)
            .try_fold(0i64, |acc, x| acc.checked_add(-x))
            .ok_or_else(overflow)?;
        Ok(CanonicalForm { a, b, c })
    }

    /// Maps a solution of [`normalize`](Self::normalize)'s canonical form back
    /// to a tuple for this equation by duplicating variables.
    pub fn lift_canonical(&self, x: u32, y: u32, z: u32) -> SolutionTuple {
        let sign = self.orientation();
        let last_positive = self
            .coeffs
            .iter()
            .rposition(|&c| c * sign > 0)
            .expect("mixed sign equation");
        let values = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| {
                if c * sign < 0 {
                    z
                } else if i == last_positive {
                    y
                } else {
                    x
                }
            })
            .collect();
        SolutionTuple(values)
    }

    fn orientation(&self) -> i64 {
        let positives = self.coeffs.iter().filter(|&&c| c > 0).count();
        if positives >= 2 {
            1
        } else {
            -1
        }
    }
}

impl FromStr for LinearEquation {
    type Err = ParseEquationError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        if text.is_empty() {
            return Err(ParseEquationError::Empty);
        }
        let coeffs = text
            .split(',')
            .map(|token| {
                token
                    .parse::<i64>()
                    .map_err(|_| ParseEquationError::InvalidToken {
                        token: token.to_string(),
                    })
            })
            .collect::<Result<Vec<_>, _>>()?;
        LinearEquation::new(coeffs)
    }
}

impl fmt::Display for LinearEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl FForm {
    pub fn new(t: i64, j: i64) -> Result<Self, EquationError> {
        if t < 1 || j < 1 {
            return Err(EquationError::BadFForm { t, j });
        }
        Ok(FForm { t, j })
    }

    pub fn to_equation(self) -> LinearEquation {
        LinearEquation {
            coeffs: vec![self.t, self.j, -1],
        }
    }
}

/// All solutions in `[1,n]^arity`, in lexicographic order.
pub fn enumerate_solutions(
    eq: &LinearEquation,
    n: u32,
) -> Result<Vec<SolutionTuple>, EquationError> {
    enumerate_solutions_capped(eq, n, DEFAULT_TUPLE_CAP)
}

pub fn enumerate_solutions_capped(
    eq: &LinearEquation,
    n: u32,
    cap: u64,
) -> Result<Vec<SolutionTuple>, EquationError> {
    check_cap(eq, n, cap)?;
    let ranges = vec![(1, n); eq.arity()];
    let mut out = Vec::new();
    Search::new(eq, &ranges)?.run(&mut |t| out.push(SolutionTuple(t.to_vec())));
    Ok(out)
}

/// The solutions in `[1,n]^arity` that use the value `v` somewhere.
pub fn solutions_involving(
    eq: &LinearEquation,
    n: u32,
    v: u32,
) -> Result<Vec<SolutionTuple>, EquationError> {
    solutions_involving_capped(eq, n, v, DEFAULT_TUPLE_CAP)
}

pub fn solutions_involving_capped(
    eq: &LinearEquation,
    n: u32,
    v: u32,
    cap: u64,
) -> Result<Vec<SolutionTuple>, EquationError> {
    if v < 1 || v > n {
        return Err(EquationError::PinOutOfRange { v, n });
    }
    check_cap(eq, n, cap)?;
    let mut found = BTreeSet::new();
    for pinned in 0..eq.arity() {
        let mut ranges = vec![(1, n); eq.arity()];
        ranges[pinned] = (v, v);
        Search::new(eq, &ranges)?.run(&mut |t| {
            found.insert(SolutionTuple(t.to_vec()));
        });
    }
    Ok(found.into_iter().collect())
}

/// The last variable is determined by the others, so `n^(arity-1)` bounds the
/// number of tuples visited.
fn check_cap(eq: &LinearEquation, n: u32, cap: u64) -> Result<(), EquationError> {
    let predicted = (1..eq.arity()).try_fold(1u128, |acc, _| acc.checked_mul(u128::from(n)));
    match predicted {
        Some(p) if p <= u128::from(cap) => Ok(()),
        p => Err(EquationError::TooManyTuples {
            n,
            predicted: p.unwrap_or(u128::MAX),
            cap,
        }),
    }
}

/// Left-to-right assignment with the achievable range of the remaining
/// terms used to clip each variable's loop bounds.
struct Search<'a> {
    coeffs: &'a [i64],
    ranges: &'a [(u32, u32)],
    // rest_min[i], rest_max[i]: extreme values of sum_{j >= i} a_j x_j.
    rest_min: Vec<i64>,
    rest_max: Vec<i64>,
    current: Vec<u32>,
}

impl<'a> Search<'a> {
    fn new(eq: &'a LinearEquation, ranges: &'a [(u32, u32)]) -> Result<Self, EquationError> {
        let coeffs = eq.coeffs();
        let k = coeffs.len();
        let mut rest_min = vec![0i64; k + 1];
        let mut rest_max = vec![0i64; k + 1];
        let overflow = || EquationError::Overflow(eq.to_string());
        for i in (0..k).rev() {
            let (lo, hi) = ranges[i];
            let p = coeffs[i].checked_mul(i64::from(lo)).ok_or_else(overflow)?;
            let q = coeffs[i].checked_mul(i64::from(hi)).ok_or_else(overflow)?;
            rest_min[i] = rest_min[i + 1].checked_add(p.min(q)).ok_or_else(overflow)?;
            rest_max[i] = rest_max[i + 1].checked_add(p.max(q)).ok_or_else(overflow)?;
        }
        // Every partial sum is bounded by these totals, so the recursion cannot overflow.
        rest_max[0].checked_sub(rest_min[0]).ok_or_else(overflow)?;
        Ok(Search {
            coeffs,
            ranges,
            rest_min,
            rest_max,
            current: Vec::with_capacity(k),
        })
    }

    fn run(mut self, emit: &mut dyn FnMut(&[u32])) {
        if self.ranges.iter().any(|&(lo, hi)| lo > hi) {
            return;
        }
        self.step(0, 0, emit);
    }

    fn step(&mut self, i: usize, partial: i64, emit: &mut dyn FnMut(&[u32])) {
        let a = self.coeffs[i];
        let (lo, hi) = self.ranges[i];
        // Need rest_min[i+1] <= -(partial + a*x) <= rest_max[i+1].
        let low_target = -partial - self.rest_max[i + 1];
        let high_target = -partial - self.rest_min[i + 1];
        let (from, to) = if a > 0 {
            (
                Integer::div_ceil(&low_target, &a),
                Integer::div_floor(&high_target, &a),
            )
        } else {
            (
                Integer::div_ceil(&high_target, &a),
                Integer::div_floor(&low_target, &a),
            )
        };
        let from = from.max(i64::from(lo));
        let to = to.min(i64::from(hi));
        if from > to {
            return;
        }
        if i + 1 == self.coeffs.len() {
            // Interval has collapsed to the unique root when it exists.
            for x in from..=to {
                if partial + a * x == 0 {
                    self.current.push(x as u32);
                    emit(&self.current);
                    self.current.pop();
                }
            }
            return;
        }
        for x in from..=to {
            self.current.push(x as u32);
            self.step(i + 1, partial + a * x, emit);
            self.current.pop();
        }
    }
}
