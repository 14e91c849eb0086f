//! Closed-form values and lower bounds for `RR_t(q,s) = RR(tx+qy=z, tx+sy=z)`.
//!
//! Every function checks its hypotheses exactly and evaluates in checked
//! 64-bit arithmetic.

use num_integer::Integer;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParameterError {
    #[error("{formula} requires {condition} (got {params})")]
    Precondition {
        formula: &'static str,
        condition: &'static str,
        params: String,
    },
    #[error("{0} overflows 64-bit arithmetic")]
    Overflow(&'static str),
}

pub(crate) fn require(
    ok: bool,
    formula: &'static str,
    condition: &'static str,
    params: impl FnOnce() -> String,
) -> Result<(), ParameterError> {
    if ok {
        Ok(())
    } else {
        Err(ParameterError::Precondition {
            formula,
            condition,
            params: params(),
        })
    }
}

/// Evaluates a checked expression, mapping `None` to an overflow error.
fn checked(formula: &'static str, value: Option<i64>) -> Result<i64, ParameterError> {
    value.ok_or(ParameterError::Overflow(formula))
}

fn tqs(t: i64, q: i64, s: i64) -> String {
    format!("t={t}, q={q}, s={s}")
}

/// `t(t+q)(t+s)`, shared by both general lower bounds.
fn product_term(t: i64, q: i64, s: i64) -> Option<i64> {
    t.checked_mul(t.checked_add(q)?)?
        .checked_mul(t.checked_add(s)?)
}

/// `t(t+q)(t+s) + s`, valid for `q >= s >= 1`, `t >= 1`.
pub fn lower_bound_thm21(t: i64, q: i64, s: i64) -> Result<i64, ParameterError> {
    const NAME: &str = "thm21";
    require(t >= 1, NAME, "t >= 1", || tqs(t, q, s))?;
    require(s >= 1, NAME, "s >= 1", || tqs(t, q, s))?;
    require(q >= s, NAME, "q >= s", || tqs(t, q, s))?;
    checked(NAME, product_term(t, q, s).and_then(|p| p.checked_add(s)))
}

/// `gcd(t,q) / gcd(t,q,s)`.
pub fn thm22_multiplier(t: i64, q: i64, s: i64) -> i64 {
    let g = t.gcd(&q);
    g / g.gcd(&s)
}

/// `t(t+q)(t+s) + m*s` with `m = gcd(t,q)/gcd(t,q,s)`, valid for `q >= s >= t >= 1`.
pub fn lower_bound_thm22(t: i64, q: i64, s: i64) -> Result<i64, ParameterError> {
    const NAME: &str = "thm22";
    require(t >= 1, NAME, "t >= 1", || tqs(t, q, s))?;
    require(s >= t, NAME, "s >= t", || tqs(t, q, s))?;
    require(q >= s, NAME, "q >= s", || tqs(t, q, s))?;
    let m = thm22_multiplier(t, q, s);
    checked(
        NAME,
        product_term(t, q, s).and_then(|p| p.checked_add(m.checked_mul(s)?)),
    )
}

/// `2q + 2*floor((q+1)/2) + 1`, the exact `RR_1(q,1)`.
fn schur_like(q: i64) -> Option<i64> {
    q.checked_mul(2)?
        .checked_add(((q.checked_add(1)?) / 2).checked_mul(2)?)?
        .checked_add(1)
}

/// `(q+1)(s+1) + s`.
fn product_plus(q: i64, s: i64) -> Option<i64> {
    q.checked_add(1)?
        .checked_mul(s.checked_add(1)?)?
        .checked_add(s)
}

/// Exact `RR_1(q,s)` for `1 <= s <= q`.
pub fn exact_rr1(q: i64, s: i64) -> Result<i64, ParameterError> {
    const NAME: &str = "exact_rr1";
    require(s >= 1, NAME, "s >= 1", || format!("q={q}, s={s}"))?;
    require(q >= s, NAME, "q >= s", || format!("q={q}, s={s}"))?;
    if s == 1 {
        checked(NAME, schur_like(q))
    } else {
        checked(NAME, product_plus(q, s))
    }
}

/// Exact `RR(x + sum a_i y_i = z, x + sum b_i y_i = z)` for `sum a >= sum b >= 1`.
pub fn exact_multivar_rr1(a: &[i64], b: &[i64]) -> Result<i64, ParameterError> {
    const NAME: &str = "exact_multivar_rr1";
    let params = || format!("a={a:?}, b={b:?}");
    require(
        !a.is_empty() && !b.is_empty() && a.iter().chain(b).all(|&v| v >= 1),
        NAME,
        "nonempty positive coefficient lists",
        params,
    )?;
    let sum = |v: &[i64]| v.iter().try_fold(0i64, |acc, &x| acc.checked_add(x));
    let q = checked(NAME, sum(a))?;
    let s = checked(NAME, sum(b))?;
    require(q >= s, NAME, "sum(a) >= sum(b)", params)?;
    if s == 1 {
        checked(NAME, schur_like(q))
    } else {
        checked(NAME, product_plus(q, s))
    }
}

/// `t*q^2 + (2t^2+1)*q + t^3`, the two-color Rado number of `tx + qy = z`.
///
/// The formula is the minimum-coefficient case, so it needs `t <= q`.
pub fn diagonal_exact(t: i64, q: i64) -> Result<i64, ParameterError> {
    const NAME: &str = "diagonal_exact";
    require(t >= 1, NAME, "t >= 1", || format!("t={t}, q={q}"))?;
    require(q >= t, NAME, "q >= t", || format!("t={t}, q={q}"))?;
    let value = (|| {
        let t2 = t.checked_mul(t)?;
        let first = t.checked_mul(q.checked_mul(q)?)?;
        let second = t2.checked_mul(2)?.checked_add(1)?.checked_mul(q)?;
        first.checked_add(second)?.checked_add(t2.checked_mul(t)?)
    })();
    checked(NAME, value)
}

/// `6t^3 + 2t^2 + 4t`, a lower bound for `RR_t(2t+1, t)` when `t >= 3`.
pub fn lower_bound_anomalous(t: i64) -> Result<i64, ParameterError> {
    const NAME: &str = "anomalous";
    require(t >= 3, NAME, "t >= 3", || format!("t={t}"))?;
    let value = (|| {
        let t2 = t.checked_mul(t)?;
        t2.checked_mul(t)?
            .checked_mul(6)?
            .checked_add(t2.checked_mul(2)?)?
            .checked_add(t.checked_mul(4)?)
    })();
    checked(NAME, value)
}

/// Size of the search window `tqs + t^2 q + (t^2+1) s + t^3` used by the
/// literal forcing rules.
pub fn forcing_window(t: i64, q: i64, s: i64) -> Option<i64> {
    let t2 = t.checked_mul(t)?;
    t.checked_mul(q)?
        .checked_mul(s)?
        .checked_add(t2.checked_mul(q)?)?
        .checked_add(t2.checked_add(1)?.checked_mul(s)?)?
        .checked_add(t2.checked_mul(t)?)
}

/// The largest closed-form lower bound whose hypotheses hold for `(t,q,s)`.
pub fn best_lower_bound(t: i64, q: i64, s: i64) -> Option<i64> {
    [
        lower_bound_thm22(t, q, s).ok(),
        lower_bound_thm21(t, q, s).ok(),
        (t == 1).then(|| exact_rr1(q, s).ok()).flatten(),
        (q == s).then(|| diagonal_exact(t, q).ok()).flatten(),
        (q == 2 * t + 1 && s == t)
            .then(|| lower_bound_anomalous(t).ok())
            .flatten(),
    ]
    .into_iter()
    .flatten()
    .max()
}
