//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verification found violations, 2 usage, parse
//! or budget errors. Reports are line-oriented text; `--json` appends one
//! machine-readable summary line. Commands that emit a document write it to
//! `--out` when given (and report on stdout), otherwise to stdout alone.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::catalog;
use crate::classify;
use crate::clifford::{self, CliffordBasis, ExportKind, SubsetIndex};
use crate::error::Error;
use crate::nlie::format::{self, AlgebraDoc};
use crate::nlie::{self, BracketTable, LinearFunctional, SeriesKind, Subspace};
use crate::scalar::GaussScalar;
use crate::superspace::BasisSignature;

#[derive(Debug, Parser)]
#[command(name = "superlie", version, about = "Exact structure-constant engine for n-Lie superalgebras")]
struct Cli {
    /// Append a JSON summary line to the report.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads; 0 lets the runtime decide.
    #[arg(long, global = true, env = "SUPERLIE_THREADS", default_value_t = 0)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Verify grading, graded skew-symmetry and the graded Filippov identity.
    Check { file: PathBuf },
    /// Build the (n+1)-ary bracket induced by a supertrace.
    Induce {
        file: PathBuf,
        /// Functional file, or `auto` to solve for the supertrace space.
        #[arg(long)]
        supertrace: String,
        /// Basis element of the supertrace space to use with `auto`.
        #[arg(long)]
        index: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Derived or lower central series of the whole algebra.
    Series {
        file: PathBuf,
        #[arg(long, value_enum)]
        kind: Kind,
    },
    /// Tables and matrices of the Clifford algebra on n generators.
    Clifford {
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum)]
        emit: Emit,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search a finite grid of structure constants for solutions.
    Classify {
        #[arg(long, value_parser = parse_dim)]
        dim: BasisSignature,
        /// Comma-separated scalars, e.g. `0,1,-1,i`.
        #[arg(long, value_parser = parse_grid)]
        grid: Grid,
        #[arg(long, default_value_t = classify::DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long, default_value_t = 3)]
        arity: usize,
    },
    /// Write the quadratic Filippov constraint system.
    Constraints {
        #[arg(long, value_parser = parse_dim)]
        dim: BasisSignature,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 3)]
        arity: usize,
    },
    /// Built-in algebras.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Debug, Subcommand)]
enum CatalogAction {
    List,
    Dump { name: String },
    Verify,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Kind {
    Derived,
    Central,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Emit {
    Lie,
    Ternary,
    Proposition,
    Matrix,
}

#[derive(Debug, Clone)]
struct Grid(Vec<GaussScalar>);

fn parse_dim(s: &str) -> Result<BasisSignature, String> {
    let (m, n) = s.split_once(',').ok_or("expected m,n")?;
    let parse = |x: &str| x.trim().parse::<usize>().map_err(|e| format!("{x:?}: {e}"));
    Ok(BasisSignature::new(parse(m)?, parse(n)?))
}

fn parse_grid(s: &str) -> Result<Grid, String> {
    let values = s
        .split(',')
        .map(|x| x.trim().parse::<GaussScalar>().map_err(|e| e.to_string()))
        .collect::<Result<Vec<_>, _>>()?;
    if values.is_empty() {
        return Err("empty grid".into());
    }
    Ok(Grid(values))
}

/// A failed command: exit code plus a diagnostic for stderr.
struct Failure(i32, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(2, e.to_string())
    }
}

type Outcome = Result<i32, Failure>;

/// Buffered report; the engine may run on pool threads, so output is
/// collected and written once the command finishes.
#[derive(Default)]
struct Report {
    out: Vec<u8>,
    summary: Option<Value>,
}

impl Report {
    fn line(&mut self, s: impl AsRef<str>) -> Result<(), Failure> {
        writeln!(self.out, "{}", s.as_ref()).map_err(|e| Failure(2, e.to_string()))
    }

    fn raw(&mut self, s: &str) -> Result<(), Failure> {
        self.out.write_all(s.as_bytes()).map_err(|e| Failure(2, e.to_string()))
    }
}

/// Runs the CLI on `args` (including the program name) and returns the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 2;
        }
    };
    let json = cli.json;
    let mut report = Report::default();
    let result = pool.install(|| dispatch(cli.command, &mut report));
    let _ = out.write_all(&report.out);
    let code = match result {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    };
    if json {
        let mut summary = report.summary.take().unwrap_or_else(|| json!({}));
        summary["exit_code"] = json!(code);
        let _ = writeln!(out, "{summary}");
    }
    let _ = out.flush();
    code
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure(2, format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure(2, format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<BracketTable, Failure> {
    Ok(format::parse_table(&read(path)?)?)
}

/// Writes `doc` to `out` if given (returning true), else to the report.
fn emit(report: &mut Report, out: &Option<PathBuf>, doc: &str) -> Result<bool, Failure> {
    match out {
        Some(path) => {
            write_file(path, doc)?;
            Ok(true)
        }
        None => {
            report.raw(doc)?;
            Ok(false)
        }
    }
}

fn with_newline(mut s: String) -> String {
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

fn dispatch(command: Command, report: &mut Report) -> Outcome {
    match command {
        Command::Check { file } => check(report, &file),
        Command::Induce { file, supertrace, index, out } => induce(report, &file, &supertrace, index, &out),
        Command::Series { file, kind } => series(report, &file, kind),
        Command::Clifford { n, emit, out } => clifford_cmd(report, n, emit, &out),
        Command::Classify { dim, grid, budget, arity } => classify_cmd(report, dim, &grid.0, budget, arity),
        Command::Constraints { dim, out, arity } => constraints(report, dim, &out, arity),
        Command::Catalog { action } => catalog_cmd(report, action),
    }
}

fn ok(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "FAILED"
    }
}

fn axiom_lines(report: &mut Report, t: &BracketTable, r: &nlie::AxiomReport) -> Result<(), Failure> {
    report.line(format!("grading {}, skew {}, filippov {}", ok(r.grading_ok), ok(r.skew_ok), ok(r.filippov_ok)))?;
    for w in &r.witnesses {
        report.line(format!("  {}", w.describe(t)))?;
    }
    Ok(())
}

fn axiom_json(r: &nlie::AxiomReport) -> Value {
    json!({
        "grading_ok": r.grading_ok,
        "skew_ok": r.skew_ok,
        "filippov_ok": r.filippov_ok,
        "witnesses": r.witnesses.len(),
    })
}

fn is_structural(e: &Error) -> bool {
    matches!(e, Error::ForcedZero { .. } | Error::Ungraded { .. } | Error::DuplicateKey { .. })
}

fn check(report: &mut Report, file: &Path) -> Outcome {
    let doc = AlgebraDoc::from_json(&read(file)?)?;
    let (rejection, table) = match doc.to_table() {
        Ok(t) => (None, t),
        Err(e) if is_structural(&e) => (Some(e), doc.to_raw_table()?),
        Err(e) => return Err(e.into()),
    };
    if let Some(e) = &rejection {
        report.line(format!("rejected: {e}"))?;
    }
    let r = nlie::verify_axioms(&table);
    axiom_lines(report, &table, &r)?;
    let mut summary = axiom_json(&r);
    summary["command"] = json!("check");
    summary["rejected"] = json!(rejection.as_ref().map(|e| e.to_string()));
    report.summary = Some(summary);
    Ok(if rejection.is_none() && r.all_ok() { 0 } else { 1 })
}

fn induce(report: &mut Report, file: &Path, supertrace: &str, index: Option<usize>, out: &Option<PathBuf>) -> Outcome {
    let t = load(file)?;
    let s: LinearFunctional = if supertrace == "auto" {
        let space = nlie::supertrace_space(&t);
        match index {
            Some(j) if j < space.len() => space[j].clone(),
            Some(j) => {
                return Err(Failure(
                    2,
                    format!("--index {j} out of range; supertrace space has dimension {}", space.len()),
                ))
            }
            None if space.len() == 1 => space[0].clone(),
            None => return Err(Error::AmbiguousSupertrace(space.len()).into()),
        }
    } else {
        format::parse_functional(&read(Path::new(supertrace))?, &t)?
    };
    let verdict = nlie::is_supertrace(&t, &s);
    if !verdict.is_ok() {
        report.line(format!("not a supertrace: {}", verdict.describe(&t)))?;
        report.summary = Some(json!({"command": "induce", "supertrace_ok": false}));
        return Ok(1);
    }
    let induced = nlie::induce(&t, &s)?;
    let wrote = emit(report, out, &with_newline(format::table_to_json(&induced)))?;
    if wrote {
        report.line(format!("supertrace {}", format::vector_text(t.names(), &s.coeffs)))?;
        report.line(format!("induced {}-ary table with {} brackets", induced.arity(), induced.entry_count()))?;
    }
    report.summary = Some(json!({
        "command": "induce",
        "supertrace_ok": true,
        "arity": induced.arity(),
        "brackets": induced.entry_count(),
    }));
    Ok(0)
}

fn series(report: &mut Report, file: &Path, kind: Kind) -> Outcome {
    let t = load(file)?;
    let (kind, label) = match kind {
        Kind::Derived => (SeriesKind::Derived, "D"),
        Kind::Central => (SeriesKind::Central, "C"),
    };
    let s = nlie::series(&t, &Subspace::whole(t.dim()), kind)?;
    let mut dims = Vec::new();
    for (p, term) in s.terms.iter().enumerate() {
        let basis: Vec<String> = term.basis().iter().map(|v| format::vector_text(t.names(), v)).collect();
        report.line(format!("{label}^{p}: dim {} [{}]", term.dim(), basis.join("; ")))?;
        dims.push(term.dim());
    }
    let (prop, holds) = match kind {
        SeriesKind::Derived => ("solvable", s.is_solvable()),
        SeriesKind::Central => ("nilpotent", s.is_nilpotent()),
    };
    report.line(format!("{prop}: {}", if holds { "yes" } else { "no" }))?;
    report.summary = Some(json!({"command": "series", "dims": dims, prop: holds}));
    Ok(0)
}

fn matrix_text(m: &nlie::Matrix) -> String {
    let cells: Vec<Vec<String>> = m.iter().map(|row| row.iter().map(|c| c.to_string()).collect()).collect();
    let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
    let mut out = String::new();
    for row in cells {
        let padded: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
        out.push_str(padded.join(" ").trim_end());
        out.push('\n');
    }
    out
}

fn clifford_cmd(report: &mut Report, n: u32, which: Emit, out: &Option<PathBuf>) -> Outcome {
    let kind = match which {
        Emit::Lie => ExportKind::Lie,
        Emit::Ternary => ExportKind::Ternary,
        Emit::Proposition => ExportKind::Proposition,
        Emit::Matrix => {
            let mut text = String::new();
            for k in 1..=n {
                let g = clifford::matrix_rep(n, SubsetIndex::from_positions(&[k]))?;
                text.push_str(&format!("{}\n{}\n", SubsetIndex::from_positions(&[k]).name(n), matrix_text(&g)));
            }
            text.push_str(&format!("grading\n{}", matrix_text(&clifford::grading_operator(n)?)));
            let wrote = emit(report, out, &text)?;
            if wrote {
                report.line(format!("wrote {n} generator matrices and the grading operator"))?;
            }
            report.summary = Some(json!({"command": "clifford", "n": n, "emit": "matrix", "size": 1u64 << (n / 2)}));
            return Ok(0);
        }
    };
    let t = clifford::export(n, kind)?;
    let wrote = emit(report, out, &with_newline(format::table_to_json(&t)))?;
    if wrote {
        let sig = CliffordBasis::new(n).sig();
        report.line(format!("{}-ary table on {sig} basis with {} nontrivial relations", t.arity(), t.entry_count()))?;
    }
    report.summary = Some(json!({
        "command": "clifford",
        "n": n,
        "emit": format!("{which:?}").to_lowercase(),
        "relations": t.entry_count(),
    }));
    Ok(0)
}

fn classify_cmd(report: &mut Report, sig: BasisSignature, grid: &[GaussScalar], budget: u64, arity: usize) -> Outcome {
    let system = classify::generate_constraints(sig, arity)?;
    report.line(format!(
        "signature {sig}, arity {arity}: {} variables, {} constraints",
        system.variables.len(),
        system.constraints.len()
    ))?;
    let hits = classify::grid_search_system(&system, grid, budget)?;
    report.line(format!("{} solutions on the grid", hits.len()))?;
    let mut abelian = 0;
    for (k, hit) in hits.iter().enumerate() {
        let t = &hit.table;
        if t.is_abelian() {
            abelian += 1;
        }
        let brackets: Vec<String> = t
            .entries()
            .map(|(key, v)| format!("{} = {}", t.tuple_label(key), format::vector_text(t.names(), v)))
            .collect();
        let body = if brackets.is_empty() { "abelian".to_string() } else { brackets.join(", ") };
        report.line(format!("#{k}: {body}"))?;
        report.line(format!("    {}", classify::fingerprint(t)))?;
    }
    report.summary = Some(json!({
        "command": "classify",
        "signature": sig.to_string(),
        "variables": system.variables.len(),
        "constraints": system.constraints.len(),
        "solutions": hits.len(),
        "abelian": abelian,
    }));
    Ok(0)
}

fn constraints(report: &mut Report, sig: BasisSignature, out: &Path, arity: usize) -> Outcome {
    let system = classify::generate_constraints(sig, arity)?;
    write_file(out, &system.render())?;
    report.line(format!(
        "wrote {} constraints in {} variables to {}",
        system.constraints.len(),
        system.variables.len(),
        out.display()
    ))?;
    report.summary = Some(json!({
        "command": "constraints",
        "variables": system.variables.len(),
        "constraints": system.constraints.len(),
    }));
    Ok(0)
}

fn catalog_cmd(report: &mut Report, action: CatalogAction) -> Outcome {
    match action {
        CatalogAction::List => {
            let names = catalog::list();
            for name in &names {
                let e = catalog::get_entry(name)?;
                report.line(format!("{name}\t{}\t{}", e.expected_status, e.description))?;
            }
            report.summary = Some(json!({"command": "catalog list", "entries": names}));
            Ok(0)
        }
        CatalogAction::Dump { name } => {
            let e = catalog::get_entry(&name)?;
            report.raw(&with_newline(e.doc.to_json()))?;
            report.summary = Some(json!({"command": "catalog dump", "name": name}));
            Ok(0)
        }
        CatalogAction::Verify => {
            let verdicts = catalog::verify_catalog()?;
            let mut entries = serde_json::Map::new();
            let mut violations = 0;
            for (name, v) in &verdicts {
                let status = match (&v.rejection, v.report.all_ok()) {
                    (Some(e), _) => format!("rejected ({e})"),
                    (None, true) => "pass".into(),
                    (None, false) => "fail".into(),
                };
                let r = &v.report;
                let mut line = format!(
                    "{name}: {status}; grading {}, skew {}, filippov {}; expected {}",
                    ok(r.grading_ok),
                    ok(r.skew_ok),
                    ok(r.filippov_ok),
                    v.expected_status
                );
                if let Some(w) = v.witness_ok {
                    line.push_str(&format!("; isomorphism witness {}", ok(w)));
                }
                if v.is_violation() {
                    violations += 1;
                    line.push_str(" VIOLATION");
                }
                report.line(line)?;
                let mut j = axiom_json(r);
                j["passes"] = json!(v.passes());
                j["expected"] = json!(v.expected_status.to_string());
                entries.insert(name.clone(), j);
            }
            report.summary = Some(json!({"command": "catalog verify", "entries": entries, "violations": violations}));
            Ok(if violations == 0 { 0 } else { 1 })
        }
    }
}
