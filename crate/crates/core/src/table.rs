//! Batch computation of `RR_t(q,s)` over a parameter range, compared
//! against the published small values shipped in `data/table1.tsv`.

use std::fmt::Write as _;
use std::ops::RangeInclusive;
use std::str::FromStr;
use std::sync::OnceLock;
use std::time::Duration;

use crate::bounds::lower_bound_thm22;
use crate::catalog::{Catalog, CatalogEntry, CatalogError, Status};
use crate::solver::RrConfig;
use crate::witness::f_form_pair;

const TABLE_TSV: &str = include_str!("../data/table1.tsv");

/// Report column header.
pub const REPORT_HEADER: &str = "t\tq\ts\tcomputed\ttable\tbound_thm22\tflags";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PublishedRow {
    pub t: i64,
    pub q: i64,
    pub s: i64,
    pub value: u32,
    /// Marked as exceeding the gcd-multiplier lower bound.
    pub starred: bool,
    pub note: String,
}

fn parse_table(text: &str) -> Vec<PublishedRow> {
    text.lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .map(|line| {
            let f: Vec<&str> = line.split('\t').collect();
            assert_eq!(f.len(), 6, "bad table row: {line}");
            PublishedRow {
                t: f[0].parse().expect("t"),
                q: f[1].parse().expect("q"),
                s: f[2].parse().expect("s"),
                value: f[3].parse().expect("value"),
                starred: f[4] == "1",
                note: f[5].to_string(),
            }
        })
        .collect()
}

/// Every published row, in printed order.
pub fn published() -> &'static [PublishedRow] {
    static ROWS: OnceLock<Vec<PublishedRow>> = OnceLock::new();
    ROWS.get_or_init(|| parse_table(TABLE_TSV))
}

pub fn published_row(t: i64, q: i64, s: i64) -> Option<&'static PublishedRow> {
    published().iter().find(|r| (r.t, r.q, r.s) == (t, q, s))
}

/// Inclusive range of `t`, written `A`, `A-B` or `A..B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TRange(pub RangeInclusive<i64>);

impl FromStr for TRange {
    type Err = String;

    fn from_str(text: &str) -> Result<Self, String> {
        let parse = |p: &str| {
            p.trim()
                .parse::<i64>()
                .map_err(|_| format!("invalid t-range {text:?}"))
        };
        let (lo, hi) = match text.split_once("..").or_else(|| text.split_once('-')) {
            Some((a, b)) => (parse(a)?, parse(b.trim_start_matches('='))?),
            None => {
                let v = parse(text)?;
                (v, v)
            }
        };
        if lo < 1 || hi < lo {
            return Err(format!("t-range must satisfy 1 <= lo <= hi, got {text:?}"));
        }
        Ok(TRange(lo..=hi))
    }
}

/// Off-diagonal instances `q > s >= t` with `t` in range and `q <= q_max`,
/// plus every published row with `t` in range. Ordered by `t`, `s`, `q`.
pub fn instances(t_range: &RangeInclusive<i64>, q_max: i64) -> Vec<(i64, i64, i64)> {
    let mut out = Vec::new();
    for t in t_range.clone() {
        for s in t..q_max {
            for q in s + 1..=q_max {
                out.push((t, q, s));
            }
        }
    }
    for r in published() {
        if t_range.contains(&r.t) && !out.contains(&(r.t, r.q, r.s)) {
            out.push((r.t, r.q, r.s));
        }
    }
    out.sort_by_key(|&(t, q, s)| (t, s, q));
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Computed {
    Exact(u32),
    AtLeast(u32),
    AtMost(u32),
    Unknown,
}

impl Computed {
    pub fn from_entry(entry: &CatalogEntry) -> Self {
        match entry.status {
            Status::Exact => Computed::Exact(entry.value),
            Status::LowerBound => Computed::AtLeast(entry.value),
            Status::UpperBound => Computed::AtMost(entry.value),
            Status::Indeterminate => Computed::Unknown,
        }
    }

    pub fn exact(self) -> Option<u32> {
        match self {
            Computed::Exact(v) => Some(v),
            _ => None,
        }
    }

    fn render(self) -> String {
        match self {
            Computed::Exact(v) => v.to_string(),
            Computed::AtLeast(v) => format!(">={v}"),
            Computed::AtMost(v) => format!("<={v}"),
            Computed::Unknown => "?".to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportRow {
    pub t: i64,
    pub q: i64,
    pub s: i64,
    pub computed: Computed,
    pub table: Option<u32>,
    pub starred: bool,
    pub bound: Option<i64>,
}

impl ReportRow {
    pub fn new(t: i64, q: i64, s: i64, computed: Computed) -> Self {
        let row = published_row(t, q, s);
        ReportRow {
            t,
            q,
            s,
            computed,
            table: row.map(|r| r.value),
            starred: row.is_some_and(|r| r.starred),
            bound: lower_bound_thm22(t, q, s).ok(),
        }
    }

    /// Findings for this row; empty means computed, table and bound agree.
    pub fn flags(&self) -> Vec<&'static str> {
        let mut flags = Vec::new();
        let bound = self.bound.and_then(|b| u32::try_from(b).ok());
        if self.starred {
            flags.push("starred");
        }
        match self.computed.exact() {
            None => flags.push("indeterminate"),
            Some(v) => {
                if self.table.is_some_and(|tv| tv != v) {
                    flags.push("table-differs");
                }
                match bound {
                    Some(b) if v < b => flags.push("below-bound"),
                    Some(b) if v > b => flags.push("above-bound"),
                    _ => {}
                }
            }
        }
        if let (Some(tv), Some(b)) = (self.table, bound) {
            if tv != b {
                flags.push("table-bound-differ");
            }
        }
        if self.table.is_none() {
            flags.push("untabulated");
        }
        flags
    }

    /// A computed value under a proven lower bound means a defect somewhere.
    pub fn contradicts_bound(&self) -> bool {
        matches!(
            (self.computed.exact(), self.bound),
            (Some(v), Some(b)) if i64::from(v) < b
        )
    }

    pub fn render(&self) -> String {
        let opt = |v: Option<String>| v.unwrap_or_else(|| "-".to_string());
        let flags = self.flags();
        format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}",
            self.t,
            self.q,
            self.s,
            self.computed.render(),
            opt(self.table.map(|v| v.to_string())),
            opt(self.bound.map(|v| v.to_string())),
            if flags.is_empty() {
                "ok".to_string()
            } else {
                flags.join(",")
            },
        )
    }
}

/// Header, one line per row, and a `#` summary line.
pub fn render_report(rows: &[ReportRow]) -> String {
    let mut out = String::new();
    writeln!(out, "{REPORT_HEADER}").unwrap();
    for row in rows {
        writeln!(out, "{}", row.render()).unwrap();
    }
    let exact = rows.iter().filter(|r| r.computed.exact().is_some()).count();
    let differs = rows
        .iter()
        .filter(|r| r.flags().contains(&"table-differs"))
        .count();
    writeln!(
        out,
        "# rows={} exact={} indeterminate={} table_differs={}",
        rows.len(),
        exact,
        rows.len() - exact,
        differs
    )
    .unwrap();
    out
}

#[derive(Debug, Clone)]
pub struct TableOptions {
    pub t_range: RangeInclusive<i64>,
    pub q_max: i64,
    /// Per-instance limit.
    pub budget: Duration,
    /// Reuse exact catalog entries whose witness re-verifies.
    pub resume: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRun {
    pub rows: Vec<ReportRow>,
    /// Instances taken from the catalog instead of recomputed.
    pub reused: usize,
}

impl TableRun {
    pub fn report(&self) -> String {
        render_report(&self.rows)
    }

    pub fn any_indeterminate(&self) -> bool {
        self.rows.iter().any(|r| r.computed.exact().is_none())
    }
}

/// Computes every instance in order, appending to `catalog`. `progress`
/// receives each finished row (for diagnostics).
pub fn run_table(
    catalog: &mut Catalog,
    options: &TableOptions,
    mut progress: impl FnMut(&ReportRow, bool),
) -> Result<TableRun, CatalogError> {
    let config = RrConfig {
        per_n_timeout: options.budget,
        budget: Some(options.budget),
        ..RrConfig::default()
    };
    let mut rows = Vec::new();
    let mut reused = 0;
    for (t, q, s) in instances(&options.t_range, options.q_max) {
        let (e0, e1) = f_form_pair(t, q, s).expect("instances satisfy q > s >= t >= 1");
        let cached = if options.resume {
            catalog.verified_exact(&e0, &e1)?.map(|e| e.value)
        } else {
            None
        };
        let computed = match cached {
            Some(v) => {
                reused += 1;
                Computed::Exact(v)
            }
            None => Computed::from_entry(&catalog.compute_and_record(&e0, &e1, &config)?),
        };
        let row = ReportRow::new(t, q, s, computed);
        progress(&row, cached.is_some());
        rows.push(row);
    }
    Ok(TableRun { rows, reused })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_file_is_complete() {
        let rows = published();
        assert_eq!(rows.len(), 86);
        assert_eq!(rows.iter().filter(|r| r.starred).count(), 3);
        assert_eq!(published_row(2, 3, 2).unwrap().value, 43);
        assert_eq!(published_row(3, 5, 4).unwrap().value, 172);
        assert_eq!(published_row(5, 11, 5).unwrap().value, 820);
        assert!(published_row(3, 7, 3).unwrap().starred);
        for r in rows {
            assert!(r.q > r.s && r.s >= r.t, "{r:?}");
        }
    }

    #[test]
    fn t_range_syntax() {
        assert_eq!("2".parse::<TRange>().unwrap(), TRange(2..=2));
        assert_eq!("2-4".parse::<TRange>().unwrap(), TRange(2..=4));
        assert_eq!("2..3".parse::<TRange>().unwrap(), TRange(2..=3));
        assert_eq!("2..=3".parse::<TRange>().unwrap(), TRange(2..=3));
        assert!("0".parse::<TRange>().is_err());
        assert!("3-2".parse::<TRange>().is_err());
        assert!("x".parse::<TRange>().is_err());
    }

    #[test]
    fn instance_order_and_coverage() {
        let all = instances(&(2..=2), 10);
        // q > s >= 2 with q <= 10, and every published t = 2 row is among them.
        assert_eq!(all.len(), 36);
        assert_eq!(&all[..3], &[(2, 3, 2), (2, 4, 2), (2, 5, 2)]);
        assert_eq!(all.last(), Some(&(2, 10, 9)));
        let small = instances(&(2..=2), 4);
        assert_eq!(small, all, "published rows are always included");
        assert!(instances(&(5..=5), 10).contains(&(5, 11, 5)));
        assert_eq!(instances(&(5..=5), 5), vec![(5, 11, 5)]);
    }

    #[test]
    fn flags() {
        let row = ReportRow::new(2, 3, 2, Computed::Exact(42));
        assert_eq!(row.flags(), vec!["table-differs", "table-bound-differ"]);
        assert_eq!(
            row.render(),
            "2\t3\t2\t42\t43\t42\ttable-differs,table-bound-differ"
        );
        let row = ReportRow::new(2, 4, 3, Computed::Exact(66));
        assert_eq!(row.render(), "2\t4\t3\t66\t66\t66\tok");
        let row = ReportRow::new(3, 7, 3, Computed::Exact(192));
        assert_eq!(
            row.flags(),
            vec!["starred", "above-bound", "table-bound-differ"]
        );
        let row = ReportRow::new(2, 4, 3, Computed::AtLeast(60));
        assert_eq!(row.render(), "2\t4\t3\t>=60\t66\t66\tindeterminate");
        let row = ReportRow::new(2, 11, 3, Computed::Exact(1));
        assert!(row.contradicts_bound());
        assert!(row.flags().contains(&"untabulated"));
    }
}
