//! Append-only JSONL results catalog with witness files beside it.
//!
//! Each line is one [`CatalogEntry`]. Witness colorings live under
//! `witnesses/` next to the catalog and are referenced by a path relative to
//! the catalog's directory, so a catalog and its witnesses move together.

use std::fs::{self, OpenOptions};
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::time::Duration;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coloring::{Coloring, ColoringFormatError};
use crate::equation::LinearEquation;
use crate::oracle::{check_valid, OracleError};
use crate::solver::{compute_rr, RrConfig, RrOutcome, SolverError, Stats};

/// Recorded in every entry.
pub const TOOL_VERSION: &str = concat!("rado ", env!("CARGO_PKG_VERSION"));

/// Directory, relative to the catalog, that holds witness files.
pub const WITNESS_DIR: &str = "witnesses";

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{path}:{line}: {source}")]
    Parse {
        path: PathBuf,
        line: usize,
        source: serde_json::Error,
    },
    #[error("{path}: {source}")]
    Coloring {
        path: PathBuf,
        source: ColoringFormatError,
    },
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Solver(#[from] SolverError),
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> CatalogError + '_ {
    move |source| CatalogError::Io {
        path: path.to_path_buf(),
        source,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    /// `value` is the number itself.
    Exact,
    /// The number is at least `value`; the witness colors `[1, value - 1]`.
    LowerBound,
    /// The number is at most `value`.
    UpperBound,
    /// Nothing was established; `value` is 0.
    Indeterminate,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Exact => "exact",
            Status::LowerBound => "lower_bound",
            Status::UpperBound => "upper_bound",
            Status::Indeterminate => "indeterminate",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatalogEntry {
    pub e0: String,
    pub e1: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<i64>,
    pub value: u32,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness_path: Option<String>,
    pub elapsed_ms: u64,
    pub decisions: u64,
    pub propagations: u64,
    pub conflicts: u64,
    pub tool_version: String,
}

impl CatalogEntry {
    /// The F-form parameters when all three are recorded.
    pub fn tqs(&self) -> Option<(i64, i64, i64)> {
        Some((self.t?, self.q?, self.s?))
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("entry serializes")
    }
}

/// F-form parameters of the pair, when both equations share one `t`.
pub fn f_form_params(e0: &LinearEquation, e1: &LinearEquation) -> Option<(i64, i64, i64)> {
    let (a, b) = (e0.as_f_form()?, e1.as_f_form()?);
    (a.t == b.t).then_some((a.t, a.j, b.j))
}

/// File name used for the witness of a pair.
pub fn witness_file_name(e0: &LinearEquation, e1: &LinearEquation) -> String {
    format!("rr_{e0}__{e1}.coloring")
}

#[derive(Debug)]
pub struct Catalog {
    path: PathBuf,
    entries: Vec<CatalogEntry>,
}

impl Catalog {
    /// Loads the catalog at `path`; a missing file is an empty catalog.
    pub fn open(path: impl Into<PathBuf>) -> Result<Self, CatalogError> {
        let path = path.into();
        let text = match fs::read_to_string(&path) {
            Ok(text) => text,
            Err(e) if e.kind() == io::ErrorKind::NotFound => String::new(),
            Err(e) => return Err(io_err(&path)(e)),
        };
        let mut entries = Vec::new();
        for (i, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let entry = serde_json::from_str(line).map_err(|source| CatalogError::Parse {
                path: path.clone(),
                line: i + 1,
                source,
            })?;
            entries.push(entry);
        }
        Ok(Catalog { path, entries })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    /// Directory that relative witness paths resolve against.
    pub fn base_dir(&self) -> PathBuf {
        match self.path.parent() {
            Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
            _ => PathBuf::from("."),
        }
    }

    /// Writes one line and flushes it before returning.
    pub fn append(&mut self, entry: CatalogEntry) -> Result<(), CatalogError> {
        let mut file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)
            .map_err(io_err(&self.path))?;
        let mut line = entry.to_json_line();
        line.push('\n');
        file.write_all(line.as_bytes())
            .and_then(|_| file.flush())
            .map_err(io_err(&self.path))?;
        self.entries.push(entry);
        Ok(())
    }

    pub fn resolve(&self, witness_path: &str) -> PathBuf {
        let p = Path::new(witness_path);
        if p.is_absolute() {
            p.to_path_buf()
        } else {
            self.base_dir().join(p)
        }
    }

    /// Writes `coloring` for the pair and returns its catalog-relative path.
    pub fn store_witness(
        &self,
        e0: &LinearEquation,
        e1: &LinearEquation,
        coloring: &Coloring,
    ) -> Result<String, CatalogError> {
        let rel = format!("{WITNESS_DIR}/{}", witness_file_name(e0, e1));
        let full = self.resolve(&rel);
        if let Some(dir) = full.parent() {
            fs::create_dir_all(dir).map_err(io_err(dir))?;
        }
        fs::write(&full, coloring.write()).map_err(io_err(&full))?;
        Ok(rel)
    }

    pub fn load_witness(&self, entry: &CatalogEntry) -> Result<Option<Coloring>, CatalogError> {
        let Some(rel) = &entry.witness_path else {
            return Ok(None);
        };
        let full = self.resolve(rel);
        let bytes = fs::read(&full).map_err(io_err(&full))?;
        Coloring::read(&bytes)
            .map(Some)
            .map_err(|source| CatalogError::Coloring { path: full, source })
    }

    /// Re-checks an entry: its witness must exist, color `[1, value - 1]`
    /// for exact and lower-bound entries, and pass the oracle.
    pub fn verify_entry(&self, entry: &CatalogEntry) -> Result<bool, CatalogError> {
        let needs_witness = matches!(entry.status, Status::Exact | Status::LowerBound);
        let Ok(Some(coloring)) = self.load_witness(entry) else {
            return Ok(!needs_witness);
        };
        if needs_witness && coloring.len() + 1 != entry.value {
            return Ok(false);
        }
        let (Ok(e0), Ok(e1)) = (entry.e0.parse(), entry.e1.parse()) else {
            return Ok(false);
        };
        Ok(check_valid(&coloring, &e0, &e1)?.is_valid())
    }

    /// The latest exact entry for the pair whose witness still verifies.
    pub fn verified_exact(
        &self,
        e0: &LinearEquation,
        e1: &LinearEquation,
    ) -> Result<Option<&CatalogEntry>, CatalogError> {
        let (k0, k1) = (e0.to_string(), e1.to_string());
        for entry in self.entries.iter().rev() {
            if entry.e0 == k0
                && entry.e1 == k1
                && entry.status == Status::Exact
                && self.verify_entry(entry)?
            {
                return Ok(Some(entry));
            }
        }
        Ok(None)
    }

    /// Runs [`compute_rr`], stores any certificate and appends the entry.
    pub fn compute_and_record(
        &mut self,
        e0: &LinearEquation,
        e1: &LinearEquation,
        config: &RrConfig,
    ) -> Result<CatalogEntry, CatalogError> {
        let outcome = compute_rr(e0, e1, config)?;
        let entry = self.record(e0, e1, &outcome)?;
        Ok(entry)
    }

    /// Stores the outcome's witness (if any) and appends its entry.
    pub fn record(
        &mut self,
        e0: &LinearEquation,
        e1: &LinearEquation,
        outcome: &RrOutcome,
    ) -> Result<CatalogEntry, CatalogError> {
        let (status, value, witness, stats, elapsed) = summarize(outcome);
        let witness_path = match witness {
            Some(c) => Some(self.store_witness(e0, e1, c)?),
            None => None,
        };
        let (t, q, s) = match f_form_params(e0, e1) {
            Some((t, q, s)) => (Some(t), Some(q), Some(s)),
            None => (None, None, None),
        };
        let entry = CatalogEntry {
            e0: e0.to_string(),
            e1: e1.to_string(),
            t,
            q,
            s,
            value,
            status,
            witness_path,
            elapsed_ms: u64::try_from(elapsed.as_millis()).unwrap_or(u64::MAX),
            decisions: stats.decisions,
            propagations: stats.propagations,
            conflicts: stats.conflicts,
            tool_version: TOOL_VERSION.to_string(),
        };
        self.append(entry.clone())?;
        Ok(entry)
    }
}

fn summarize(outcome: &RrOutcome) -> (Status, u32, Option<&Coloring>, Stats, Duration) {
    match outcome {
        RrOutcome::Exact(r) => (Status::Exact, r.value, Some(&r.witness), r.stats, r.elapsed),
        RrOutcome::Indeterminate(p) => match (&p.lower, p.upper) {
            (Some((v, c)), _) => (Status::LowerBound, *v, Some(c), p.stats, p.elapsed),
            (None, Some(u)) => (Status::UpperBound, u, None, p.stats, p.elapsed),
            (None, None) => (Status::Indeterminate, 0, None, p.stats, p.elapsed),
        },
    }
}
