use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};

use rado::bounds::{
    diagonal_exact, exact_multivar_rr1, exact_rr1, lower_bound_anomalous, lower_bound_thm21,
    lower_bound_thm22, ParameterError,
};
use rado::catalog::{Catalog, CatalogError, Status};
use rado::oracle::{check_valid, exhaustive_rr, EXHAUSTIVE_CAP};
use rado::solver::{RrConfig, SolverError, DEFAULT_SCAN_CAP};
use rado::table::{run_table, TRange, TableOptions};
use rado::witness::{f_form_pair, Construction};
use rado::{Coloring, LinearEquation};

#[derive(Parser)]
#[command(
    name = "rado",
    version,
    about = "Exact two-color off-diagonal Rado numbers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute RR(e0, e1) and append it to the catalog.
    Compute(ComputeArgs),
    /// Check a coloring file against an equation pair.
    Verify(VerifyArgs),
    /// Write a known witness coloring.
    Witness(WitnessArgs),
    /// Compute a range of RR_t(q,s) and compare with the published values.
    Table(TableArgs),
    /// Print every closed-form value whose hypotheses hold.
    Bounds(BoundsArgs),
    /// Exhaustive RR for tiny instances.
    Oracle(OracleArgs),
}

/// Either `--e0/--e1` or `--t/--q/--s` (Red avoids `tx+qy=z`, Blue `tx+sy=z`).
#[derive(Args)]
struct PairArgs {
    /// Equation Red must avoid, as comma-separated coefficients.
    #[arg(long, allow_hyphen_values = true, requires = "e1", conflicts_with_all = ["t", "q", "s"])]
    e0: Option<LinearEquation>,
    /// Equation Blue must avoid.
    #[arg(long, allow_hyphen_values = true, requires = "e0")]
    e1: Option<LinearEquation>,
    #[arg(long)]
    t: Option<i64>,
    #[arg(long)]
    q: Option<i64>,
    #[arg(long)]
    s: Option<i64>,
}

impl PairArgs {
    fn resolve(&self) -> Result<(LinearEquation, LinearEquation), Failure> {
        match (&self.e0, &self.e1, self.t, self.q, self.s) {
            (Some(e0), Some(e1), ..) => Ok((e0.clone(), e1.clone())),
            (None, None, Some(t), Some(q), Some(s)) => {
                f_form_pair(t, q, s).map_err(|e| Failure::Usage(e.to_string()))
            }
            _ => Err(Failure::Usage(
                "give --e0 and --e1, or all of --t, --q, --s".into(),
            )),
        }
    }
}

#[derive(Args)]
struct ComputeArgs {
    #[command(flatten)]
    pair: PairArgs,
    #[arg(long, default_value = "./rado-catalog.jsonl")]
    catalog: PathBuf,
    /// Limit for the whole computation.
    #[arg(long, default_value_t = 300.0)]
    budget_seconds: f64,
    /// First N tested for unsatisfiability (default: best known lower bound).
    #[arg(long)]
    start_hint: Option<u32>,
    /// Largest N the scan may reach.
    #[arg(long, default_value_t = DEFAULT_SCAN_CAP)]
    cap: u32,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    coloring: PathBuf,
    #[command(flatten)]
    pair: PairArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConstructionName {
    Thm21,
    Thm22,
    #[value(name = "thm22-corrected")]
    Thm22Corrected,
    Gamma,
    Anomalous,
    #[value(name = "remark-t6")]
    RemarkT6,
}

#[derive(Args)]
struct WitnessArgs {
    #[arg(long, value_enum)]
    construction: ConstructionName,
    #[arg(long)]
    t: Option<i64>,
    #[arg(long)]
    q: Option<i64>,
    #[arg(long)]
    s: Option<i64>,
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TableArgs {
    /// `A`, `A-B` or `A..B`.
    #[arg(long)]
    t_range: TRange,
    /// Largest q enumerated (published rows in range are always included).
    #[arg(long, default_value_t = 10)]
    q_max: i64,
    /// Limit per entry.
    #[arg(long, default_value_t = 300.0)]
    budget_seconds: f64,
    /// Skip entries already exact in the catalog.
    #[arg(long)]
    resume: bool,
    #[arg(long, default_value = "./rado-catalog.jsonl")]
    catalog: PathBuf,
    /// Also write the report here.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args)]
struct BoundsArgs {
    #[arg(long, requires = "q")]
    t: Option<i64>,
    #[arg(long, requires = "t")]
    q: Option<i64>,
    /// Defaults to q (the diagonal case).
    #[arg(long, requires = "q")]
    s: Option<i64>,
    /// Coefficients a_i of x + sum a_i y_i = z.
    #[arg(long, value_delimiter = ',', requires = "b", conflicts_with_all = ["t", "q", "s"])]
    a: Option<Vec<i64>>,
    /// Coefficients b_i of x + sum b_i y_i = z.
    #[arg(long, value_delimiter = ',', requires = "a")]
    b: Option<Vec<i64>>,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long, allow_hyphen_values = true)]
    e0: LinearEquation,
    #[arg(long, allow_hyphen_values = true)]
    e1: LinearEquation,
    #[arg(long, default_value_t = EXHAUSTIVE_CAP)]
    cap: u32,
}

enum Failure {
    Verify,
    Usage(String),
    Indeterminate(String),
    SelfCheck(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Verify => 1,
            Failure::Usage(_) => 2,
            Failure::Indeterminate(_) => 3,
            Failure::SelfCheck(_) => 4,
        }
    }
}

impl From<CatalogError> for Failure {
    fn from(e: CatalogError) -> Self {
        match e {
            CatalogError::Solver(SolverError::InvalidModel(_)) => Failure::SelfCheck(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn budget(seconds: f64) -> Result<Duration, Failure> {
    Duration::try_from_secs_f64(seconds)
        .ok()
        .filter(|d| !d.is_zero())
        .ok_or_else(|| Failure::Usage(format!("--budget-seconds must be positive, got {seconds}")))
}

fn print_stdout(text: &str) -> Result<(), Failure> {
    io::stdout()
        .write_all(text.as_bytes())
        .and_then(|_| io::stdout().flush())
        .map_err(|e| Failure::Usage(format!("cannot write to standard output: {e}")))
}

fn cmd_compute(args: &ComputeArgs) -> Result<(), Failure> {
    let (e0, e1) = args.pair.resolve()?;
    let limit = budget(args.budget_seconds)?;
    if args.start_hint.is_some_and(|h| h < 2) {
        return Err(Failure::Usage("--start-hint must be at least 2".into()));
    }
    let config = RrConfig {
        start_hint: args.start_hint,
        cap: args.cap,
        per_n_timeout: limit,
        budget: Some(limit),
    };
    let mut catalog = Catalog::open(&args.catalog)?;
    let entry = catalog.compute_and_record(&e0, &e1, &config)?;
    let stats = format!(
        "decisions={} propagations={} conflicts={} elapsed_ms={}",
        entry.decisions, entry.propagations, entry.conflicts, entry.elapsed_ms
    );
    let witness = entry.witness_path.as_deref().unwrap_or("-");
    match entry.status {
        Status::Exact => {
            eprintln!(
                "RR({e0} ; {e1}) = {} ({stats}; witness {witness})",
                entry.value
            );
            print_stdout(&format!("{}\n", entry.value))
        }
        status => Err(Failure::Indeterminate(format!(
            "RR({e0} ; {e1}) not determined: {} {} ({stats}; witness {witness})",
            status.as_str(),
            entry.value
        ))),
    }
}

fn cmd_verify(args: &VerifyArgs) -> Result<(), Failure> {
    let (e0, e1) = args.pair.resolve()?;
    let bytes = fs::read(&args.coloring)
        .map_err(|e| Failure::Usage(format!("{}: {e}", args.coloring.display())))?;
    let coloring = Coloring::read(&bytes)
        .map_err(|e| Failure::Usage(format!("{}: {e}", args.coloring.display())))?;
    let report = check_valid(&coloring, &e0, &e1).map_err(|e| Failure::Usage(e.to_string()))?;
    if report.is_valid() {
        return print_stdout("VALID\n");
    }
    let mut out = String::new();
    for tuple in report.red_violations.iter().chain(&report.blue_violations) {
        out.push_str(&format!("{tuple}\n"));
    }
    eprintln!(
        "invalid on [1,{}]: {} Red solution(s) of {e0}, {} Blue solution(s) of {e1} shown",
        coloring.len(),
        report.red_violations.len(),
        report.blue_violations.len()
    );
    print_stdout(&out)?;
    Err(Failure::Verify)
}

fn cmd_witness(args: &WitnessArgs) -> Result<(), Failure> {
    let need = |v: Option<i64>, name: &str| {
        v.ok_or_else(|| Failure::Usage(format!("this construction needs --{name}")))
    };
    let construction = match args.construction {
        ConstructionName::Thm21 => Construction::Thm21 {
            t: need(args.t, "t")?,
            q: need(args.q, "q")?,
            s: need(args.s, "s")?,
        },
        ConstructionName::Thm22 => Construction::Thm22 {
            t: need(args.t, "t")?,
            q: need(args.q, "q")?,
            s: need(args.s, "s")?,
        },
        ConstructionName::Thm22Corrected => Construction::Thm22Corrected {
            t: need(args.t, "t")?,
            q: need(args.q, "q")?,
            s: need(args.s, "s")?,
        },
        ConstructionName::Gamma => Construction::Gamma {
            q: need(args.q, "q")?,
        },
        ConstructionName::Anomalous => Construction::Anomalous {
            t: need(args.t, "t")?,
        },
        ConstructionName::RemarkT6 => Construction::RemarkT6,
    };
    let usage = |e: ParameterError| Failure::Usage(e.to_string());
    let coloring = construction.build().map_err(usage)?;
    let (e0, e1) = construction.equations().map_err(usage)?;
    let report = check_valid(&coloring, &e0, &e1).map_err(|e| Failure::SelfCheck(e.to_string()))?;
    if !report.is_valid() {
        let first = report
            .red_violations
            .first()
            .map(|t| format!("Red solution {t} of {e0}"))
            .or_else(|| {
                report
                    .blue_violations
                    .first()
                    .map(|t| format!("Blue solution {t} of {e1}"))
            })
            .unwrap_or_default();
        return Err(Failure::SelfCheck(format!(
            "constructed coloring of [1,{}] is not valid: {first} ({} Red, {} Blue violations listed)",
            coloring.len(),
            report.red_violations.len(),
            report.blue_violations.len()
        )));
    }
    let bytes = coloring.write();
    match &args.out {
        Some(path) => {
            fs::write(path, &bytes)
                .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            eprintln!(
                "wrote [1,{}] to {}; valid against e0={e0} e1={e1}",
                coloring.len(),
                path.display()
            );
            Ok(())
        }
        None => print_stdout(std::str::from_utf8(&bytes).expect("ASCII")),
    }
}

fn cmd_table(args: &TableArgs) -> Result<(), Failure> {
    let options = TableOptions {
        t_range: args.t_range.0.clone(),
        q_max: args.q_max,
        budget: budget(args.budget_seconds)?,
        resume: args.resume,
    };
    let mut catalog = Catalog::open(&args.catalog)?;
    let run = run_table(&mut catalog, &options, |row, reused| {
        eprintln!(
            "{}{}",
            row.render(),
            if reused { "\t(catalog)" } else { "" }
        );
    })?;
    let report = run.report();
    if let Some(path) = &args.report {
        fs::write(path, &report).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    }
    print_stdout(&report)?;
    if let Some(row) = run.rows.iter().find(|r| r.contradicts_bound()) {
        return Err(Failure::SelfCheck(format!(
            "computed value below a proven lower bound: {}",
            row.render()
        )));
    }
    if run.any_indeterminate() {
        return Err(Failure::Indeterminate(
            "some entries are indeterminate".into(),
        ));
    }
    Ok(())
}

fn cmd_bounds(args: &BoundsArgs) -> Result<(), Failure> {
    let mut lines = Vec::new();
    let mut rejected = Vec::new();
    let mut push = |name: &str, value: Result<i64, ParameterError>| match value {
        Ok(v) => lines.push(format!("{name} {v}")),
        Err(e) => rejected.push(e.to_string()),
    };
    match (args.t, args.q, &args.a, &args.b) {
        (Some(t), Some(q), ..) => {
            let s = args.s.unwrap_or(q);
            push("thm21", lower_bound_thm21(t, q, s));
            push("thm22", lower_bound_thm22(t, q, s));
            if t == 1 {
                push("exact_rr1", exact_rr1(q, s));
            }
            if q == s {
                push("diagonal_exact", diagonal_exact(t, q));
            }
            if q == 2 * t + 1 && s == t {
                push("anomalous", lower_bound_anomalous(t));
            }
        }
        (_, _, Some(a), Some(b)) => push("exact_multivar_rr1", exact_multivar_rr1(a, b)),
        _ => {
            return Err(Failure::Usage(
                "give --t and --q (optionally --s), or --a and --b".into(),
            ))
        }
    }
    if lines.is_empty() {
        return Err(Failure::Usage(format!(
            "no formula applies: {}",
            rejected.join("; ")
        )));
    }
    print_stdout(&(lines.join("\n") + "\n"))
}

fn cmd_oracle(args: &OracleArgs) -> Result<(), Failure> {
    if args.cap > EXHAUSTIVE_CAP {
        return Err(Failure::Usage(format!(
            "--cap is limited to {EXHAUSTIVE_CAP}"
        )));
    }
    match exhaustive_rr(&args.e0, &args.e1, args.cap).map_err(|e| Failure::Usage(e.to_string()))? {
        Some(v) => print_stdout(&format!("{v}\n")),
        None => Err(Failure::Indeterminate(format!(
            "every N <= {} admits a valid coloring",
            args.cap
        ))),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Compute(a) => cmd_compute(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Witness(a) => cmd_witness(a),
        Command::Table(a) => cmd_table(a),
        Command::Bounds(a) => cmd_bounds(a),
        Command::Oracle(a) => cmd_oracle(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            match &failure {
                Failure::Verify => {}
                Failure::Usage(m) | Failure::Indeterminate(m) | Failure::SelfCheck(m) => {
                    eprintln!("rado: {m}")
                }
            }
            ExitCode::from(failure.code())
        }
    }
}
