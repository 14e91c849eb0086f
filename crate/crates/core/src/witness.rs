//! Explicit lower-bound colorings.
//!
//! Each constructor returns a coloring of `[1, N-1]`, where `N` is the bound
//! it certifies. The designated equation pair for each construction is
//! exposed alongside it, with Red avoiding `e0` and Blue avoiding `e1`.

use crate::bounds::{
    exact_rr1, lower_bound_anomalous, lower_bound_thm21, lower_bound_thm22, require,
    thm22_multiplier, ParameterError,
};
use crate::coloring::Coloring;
use crate::equation::LinearEquation;

fn to_u32(value: i64, formula: &'static str) -> Result<u32, ParameterError> {
    u32::try_from(value).map_err(|_| ParameterError::Overflow(formula))
}

/// The pair `(tx+qy=z, tx+sy=z)`.
pub fn f_form_pair(
    t: i64,
    q: i64,
    s: i64,
) -> Result<(LinearEquation, LinearEquation), ParameterError> {
    let bad = |_| ParameterError::Precondition {
        formula: "f_form_pair",
        condition: "t, q, s >= 1",
        params: format!("t={t}, q={q}, s={s}"),
    };
    Ok((
        LinearEquation::f_form(t, q).map_err(bad)?,
        LinearEquation::f_form(t, s).map_err(bad)?,
    ))
}

/// Red on `[s+t, (q+t)(s+t)-1]`, Blue elsewhere, over `[1, t(t+q)(t+s)+s-1]`.
pub fn witness_thm21(t: i64, q: i64, s: i64) -> Result<Coloring, ParameterError> {
    let n = to_u32(lower_bound_thm21(t, q, s)?, "thm21")?;
    let lo = s + t;
    let hi = (q + t) * (s + t) - 1;
    Ok(Coloring::from_red_predicate(n - 1, |i| {
        (lo..=hi).contains(&i64::from(i))
    }))
}

/// The [`witness_thm21`] interval plus the `m-1` extra Red points
/// `t(t+q)(t+s) + i*s`, `1 <= i < m`.
///
/// For `m >= 2` this coloring is not valid in general: with `x` Blue at
/// `(q+t)(s+t)` or above and `y` small, `tx+sy` lands on a Blue point of the
/// top band, e.g. `3*64 + 4*1 = 196` for `(t,q,s) = (3,6,4)`. See
/// [`witness_thm22_corrected`].
pub fn witness_thm22(t: i64, q: i64, s: i64) -> Result<Coloring, ParameterError> {
    let n = to_u32(lower_bound_thm22(t, q, s)?, "thm22")?;
    let m = thm22_multiplier(t, q, s);
    let lo = s + t;
    let hi = (q + t) * (s + t) - 1;
    let base = t * (t + q) * (t + s);
    Ok(Coloring::from_red_predicate(n - 1, |i| {
        let i = i64::from(i);
        (lo..=hi).contains(&i) || (i > base && (i - base) % s == 0 && (i - base) / s < m)
    }))
}

/// The [`witness_thm21`] interval plus every point of the top band
/// `(t(t+q)(t+s), t(t+q)(t+s)+ms-1]` that is not a multiple of `m`.
///
/// Red solutions of `tx+qy=z` reaching the band are multiples of `m`, since
/// `m` divides both `t` and `q`. A Blue solution of `tx+sy=z` in the band
/// needs `x >= (q+t)(s+t)` and `y < m` with `m | sy`, impossible when
/// `gcd(m, s) = 1`, which is required here.
pub fn witness_thm22_corrected(t: i64, q: i64, s: i64) -> Result<Coloring, ParameterError> {
    let n = to_u32(lower_bound_thm22(t, q, s)?, "thm22_corrected")?;
    let m = thm22_multiplier(t, q, s);
    require(
        num_integer::gcd(m, s) == 1,
        "thm22_corrected",
        "gcd(m, s) = 1",
        || format!("t={t}, q={q}, s={s}, m={m}"),
    )?;
    let lo = s + t;
    let hi = (q + t) * (s + t) - 1;
    let base = t * (t + q) * (t + s);
    Ok(Coloring::from_red_predicate(n - 1, |i| {
        let i = i64::from(i);
        (lo..=hi).contains(&i) || (i > base && i % m != 0)
    }))
}

/// The s = 1 coloring of `[1, 2q + 2*floor((q+1)/2)]`: an alternating
/// prefix starting Blue, a Red middle block `[2*floor((q+1)/2), 2q+1]`, and
/// an alternating suffix starting Blue at `2q+2`.
pub fn witness_gamma_s1(q: i64) -> Result<Coloring, ParameterError> {
    require(q >= 1, "gamma", "q >= 1", || format!("q={q}"))?;
    let n = to_u32(exact_rr1(q, 1)?, "gamma")?;
    let half = 2 * ((q + 1) / 2);
    Ok(Coloring::from_red_predicate(n - 1, |i| {
        let i = i64::from(i);
        if i < half {
            i % 2 == 0
        } else if i <= 2 * q + 1 {
            true
        } else {
            (i - (2 * q + 2)) % 2 == 1
        }
    }))
}

/// Red on `{1, 2, 6t} ∪ [6t+3, 6t²+2t-1] ∪ {i ∈ [6t²+2t, 12t²+4t] : t | i}`
/// over `[1, 6t³+2t²+4t-1]`.
pub fn witness_anomalous(t: i64) -> Result<Coloring, ParameterError> {
    let n = to_u32(lower_bound_anomalous(t)?, "anomalous")?;
    let middle = (6 * t + 3)..=(6 * t * t + 2 * t - 1);
    let tail = (6 * t * t + 2 * t)..=(12 * t * t + 4 * t);
    Ok(Coloring::from_red_predicate(n - 1, |i| {
        let i = i64::from(i);
        i == 1 || i == 2 || i == 6 * t || middle.contains(&i) || (tail.contains(&i) && i % t == 0)
    }))
}

const REMARK_T6_SMALL: [u32; 15] = [1, 2, 3, 37, 39, 40, 41, 43, 46, 47, 48, 49, 50, 52, 56];
const REMARK_T6_LARGE: [u32; 7] = [570, 576, 594, 606, 612, 648, 684];

/// A coloring of `[1,1392]` avoiding Red solutions of `6x+13y=z` and Blue
/// solutions of `6x+6y=z`, one past the anomalous bound for `t = 6`.
pub fn witness_remark_t6() -> Coloring {
    Coloring::from_red_predicate(1392, |i| {
        REMARK_T6_SMALL.contains(&i)
            || (58..=228).contains(&i)
            || ((234..=558).contains(&i) && i % 6 == 0)
            || REMARK_T6_LARGE.contains(&i)
    })
}

/// The witness constructions known to the crate, with their parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Construction {
    Thm21 { t: i64, q: i64, s: i64 },
    Thm22 { t: i64, q: i64, s: i64 },
    Thm22Corrected { t: i64, q: i64, s: i64 },
    Gamma { q: i64 },
    Anomalous { t: i64 },
    RemarkT6,
}

impl Construction {
    pub fn build(self) -> Result<Coloring, ParameterError> {
        match self {
            Construction::Thm21 { t, q, s } => witness_thm21(t, q, s),
            Construction::Thm22 { t, q, s } => witness_thm22(t, q, s),
            Construction::Thm22Corrected { t, q, s } => witness_thm22_corrected(t, q, s),
            Construction::Gamma { q } => witness_gamma_s1(q),
            Construction::Anomalous { t } => witness_anomalous(t),
            Construction::RemarkT6 => Ok(witness_remark_t6()),
        }
    }

    /// `(e0, e1)`: Red must avoid solutions of `e0`, Blue those of `e1`.
    pub fn equations(self) -> Result<(LinearEquation, LinearEquation), ParameterError> {
        match self {
            Construction::Thm21 { t, q, s }
            | Construction::Thm22 { t, q, s }
            | Construction::Thm22Corrected { t, q, s } => f_form_pair(t, q, s),
            Construction::Gamma { q } => f_form_pair(1, q, 1),
            Construction::Anomalous { t } => f_form_pair(t, 2 * t + 1, t),
            Construction::RemarkT6 => f_form_pair(6, 13, 6),
        }
    }
}
