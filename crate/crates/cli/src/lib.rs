//! Driver behind the `omega` command: loads `.gmod` presentations, runs
//! the engine and renders reports.

pub mod parse;
pub mod report;

use std::path::{Path, PathBuf};
use std::time::Instant;

use omega_kernel::invariants::ModuleAnalysis;
use omega_kernel::{Error as EngineError, Limits};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::parse::{parse_with_limits, ParseError, Presentation};
use crate::report::{Conditions, Engine, GapOneEcho, Report};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INCONSISTENT: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_ZERO_MODULE: i32 = 3;
pub const EXIT_RESOURCE_CAP: i32 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
    #[error("{0}")]
    Config(String),
    #[error("{0}")]
    Engine(#[from] EngineError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Parse { .. } | CliError::Config(_) => EXIT_PARSE,
            CliError::Engine(e) => match e {
                EngineError::ZeroModule => EXIT_ZERO_MODULE,
                EngineError::ResourceCap(_) | EngineError::ExponentOverflow => EXIT_RESOURCE_CAP,
                EngineError::Inconsistent(_) | EngineError::Disagreement(_) => EXIT_INCONSISTENT,
                _ => EXIT_PARSE,
            },
        }
    }
}

/// Caps from `OMEGA_MAX_SPAIRS` and `OMEGA_MAX_PIECE_DEGREE`, falling back
/// to the engine defaults.
pub fn limits_from_env() -> Result<Limits, CliError> {
    let mut limits = Limits::default();
    if let Ok(v) = std::env::var("OMEGA_MAX_SPAIRS") {
        limits.max_spairs = v
            .trim()
            .parse()
            .map_err(|_| CliError::Config(format!("OMEGA_MAX_SPAIRS: `{v}` is not a count")))?;
    }
    if let Ok(v) = std::env::var("OMEGA_MAX_PIECE_DEGREE") {
        limits.max_piece_degree = v.trim().parse().map_err(|_| {
            CliError::Config(format!("OMEGA_MAX_PIECE_DEGREE: `{v}` is not an integer"))
        })?;
    }
    Ok(limits)
}

pub fn load(path: &Path, limits: Limits) -> Result<Presentation, CliError> {
    let shown = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: shown.clone(),
        source,
    })?;
    parse_with_limits(&text, limits).map_err(|source| CliError::Parse {
        path: shown,
        source,
    })
}

fn default_label(p: &Presentation, path: &Path) -> String {
    match p.label() {
        Some(l) => l.to_string(),
        None => path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default(),
    }
}

/// Invariants only, or with `check` the four conditions and the gap-one
/// verdict as well.
pub fn build_report(p: &Presentation, label: String, check: bool) -> Result<Report, CliError> {
    let start = Instant::now();
    let analysis = ModuleAnalysis::new(&p.module())?;
    let inv = analysis.report()?;
    let mut report = Report::new(label, p, &inv);
    if check {
        let verdict = analysis.verdict()?;
        report.conditions = Some(Conditions::of(&verdict));
        report.gap_one = Some(GapOneEcho::of(&analysis.gap_one(p.claims_cohomology())));
    }
    report.wall_time_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

/// Exit status of a finished report.
pub fn report_exit_code(r: &Report) -> i32 {
    match &r.conditions {
        Some(c) if !c.agree => EXIT_INCONSISTENT,
        _ => EXIT_OK,
    }
}

pub fn report_file(path: &Path, check: bool, limits: Limits) -> Result<Report, CliError> {
    let p = load(path, limits)?;
    let label = default_label(&p, path);
    build_report(&p, label, check)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub files: usize,
    pub agree: usize,
    pub inconsistent: usize,
    pub errors: usize,
    pub gap_one_confirmed: usize,
    pub gap_one_refuted: usize,
    pub refuted_with_claim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FileResult {
    pub file: String,
    pub status: &'static str,
    pub exit_code: i32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<Report>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorpusReport {
    pub engine: Engine,
    pub summary: Summary,
    pub results: Vec<FileResult>,
    pub wall_time_ms: u64,
}

impl CorpusReport {
    pub fn exit_code(&self) -> i32 {
        if self.summary.inconsistent > 0 {
            EXIT_INCONSISTENT
        } else {
            EXIT_OK
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.results {
            match (&r.report, &r.error) {
                (Some(rep), _) => {
                    out.push_str(&format!("[{}] {}\n", r.status, r.file));
                    out.push_str(&rep.to_text());
                }
                (None, Some(e)) => out.push_str(&format!("[{}] {}: {e}\n", r.status, r.file)),
                (None, None) => {}
            }
        }
        let s = &self.summary;
        out.push_str(&format!(
            "files {}  agree {}  inconsistent {}  errors {}  gap-one confirmed {}  refuted {}  refuted with cohomology claim {}\n",
            s.files, s.agree, s.inconsistent, s.errors, s.gap_one_confirmed, s.gap_one_refuted, s.refuted_with_claim
        ));
        out
    }
}

/// `.gmod` files under `dir`, sorted by their path relative to it.
pub fn corpus_files(dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    fn walk(d: &Path, out: &mut Vec<PathBuf>) -> std::io::Result<()> {
        for entry in std::fs::read_dir(d)? {
            let path = entry?.path();
            if path.is_dir() {
                walk(&path, out)?;
            } else if path.extension().is_some_and(|e| e == "gmod") {
                out.push(path);
            }
        }
        Ok(())
    }
    let mut out = Vec::new();
    walk(dir, &mut out).map_err(|source| CliError::Io {
        path: dir.display().to_string(),
        source,
    })?;
    out.sort();
    Ok(out)
}

fn check_one(dir: &Path, path: &Path, limits: Limits) -> FileResult {
    let file = path
        .strip_prefix(dir)
        .unwrap_or(path)
        .to_string_lossy()
        .replace('\\', "/");
    match report_file(path, true, limits) {
        Ok(report) => {
            let code = report_exit_code(&report);
            FileResult {
                file,
                status: if code == EXIT_OK {
                    "agree"
                } else {
                    "inconsistent"
                },
                exit_code: code,
                error: None,
                report: Some(report),
            }
        }
        Err(e) => {
            let code = e.exit_code();
            FileResult {
                file,
                status: if code == EXIT_INCONSISTENT {
                    "inconsistent"
                } else {
                    "error"
                },
                exit_code: code,
                error: Some(e.to_string()),
                report: None,
            }
        }
    }
}

/// Checks every `.gmod` file under `dir` with at most `jobs` files in
/// flight. Results are ordered by file name whatever the scheduling.
pub fn run_corpus(dir: &Path, jobs: usize, limits: Limits) -> Result<CorpusReport, CliError> {
    let start = Instant::now();
    let files = corpus_files(dir)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| CliError::Config(e.to_string()))?;
    let results: Vec<FileResult> = pool.install(|| {
        files
            .par_iter()
            .map(|f| check_one(dir, f, limits))
            .collect()
    });
    let mut summary = Summary {
        files: results.len(),
        agree: 0,
        inconsistent: 0,
        errors: 0,
        gap_one_confirmed: 0,
        gap_one_refuted: 0,
        refuted_with_claim: 0,
    };
    for r in &results {
        match r.status {
            "agree" => summary.agree += 1,
            "inconsistent" => summary.inconsistent += 1,
            _ => summary.errors += 1,
        }
        if let Some(g) = r.report.as_ref().and_then(|rep| rep.gap_one.as_ref()) {
            match g.verdict {
                "confirmed" => summary.gap_one_confirmed += 1,
                "refuted" => {
                    summary.gap_one_refuted += 1;
                    if g.claim_cohomology {
                        summary.refuted_with_claim += 1;
                    }
                }
                _ => {}
            }
        }
    }
    Ok(CorpusReport {
        engine: Engine::current(),
        summary,
        results,
        wall_time_ms: start.elapsed().as_millis() as u64,
    })
}

pub fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("reports serialize")
}

/// Minimal resolution as text: free modules with their generator degrees,
/// the differentials as matrices, and the Betti table.
pub fn resolution_text(p: &Presentation, max_length: usize) -> Result<String, CliError> {
    use std::fmt::Write as _;
    let res = omega_kernel::resolution::free_resolution(&p.module(), max_length)?;
    let names = p.ring.names();
    let mut out = String::new();
    for (i, f) in res.modules().iter().enumerate() {
        let degrees: Vec<String> = f.degrees().iter().map(|d| d.to_string()).collect();
        writeln!(
            out,
            "F_{i}: rank {}, generator degrees [{}]",
            f.rank(),
            degrees.join(", ")
        )
        .unwrap();
    }
    for i in 0..res.length() {
        let src = res.module(i + 1).unwrap();
        let dst = res.module(i).unwrap();
        writeln!(out, "d_{}: F_{} <- F_{}", i + 1, i, i + 1).unwrap();
        for row in 0..dst.rank() {
            let cells: Vec<String> = (0..src.rank())
                .map(|col| {
                    let e = res.entry(i, row, col);
                    if e.is_zero() {
                        "0".to_string()
                    } else {
                        display_poly(&e, names)
                    }
                })
                .collect();
            writeln!(out, "  [{}]", cells.join(", ")).unwrap();
        }
    }
    out.push_str(&report::betti_text(&report::betti_entries(&res.betti())));
    Ok(out)
}

fn display_poly(p: &omega_kernel::Polynomial, names: &[String]) -> String {
    let mut out = String::new();
    for (k, (m, c)) in p.terms().iter().enumerate() {
        if k > 0 {
            out.push('+');
        }
        match (m.is_one(), *c) {
            (true, c) => out.push_str(&c.to_string()),
            (false, 1) => out.push_str(&m.display(names).to_string()),
            (false, c) => out.push_str(&format!("{c}*{}", m.display(names))),
        }
    }
    out
}
