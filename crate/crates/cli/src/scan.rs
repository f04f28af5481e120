use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;

use serde::Serialize;

use algorec::java::scan_tree;
use algorec::matcher::{match_corpus, MatchOptions, StateBudgetExceeded};

use crate::inject::{self, Marker};
use crate::select::Selected;
use crate::CliError;

pub const SCAN_SCHEMA: &str = "algorec-scan";
pub const SCAN_VERSION: u32 = 1;

pub struct ScanConfig {
    pub corpus: PathBuf,
    pub patterns: Vec<Selected>,
    pub json: bool,
    pub budget: u64,
    pub inject_comments: bool,
    pub comment_template: String,
    pub strict: bool,
}

#[derive(Serialize)]
struct Record {
    file: String,
    start_line: u32,
    end_line: u32,
    method: String,
    algorithm: String,
    pattern: String,
    pattern_version: u32,
    /// Where the pattern root matched, `line:col-line:col`.
    matched: String,
    bindings: BTreeMap<String, Vec<String>>,
}

#[derive(Serialize)]
struct ScanDocument<'a> {
    schema: &'static str,
    version: u32,
    files: usize,
    entries: usize,
    results: &'a [Record],
    parse_errors: Vec<String>,
    budget_exceeded: &'a [StateBudgetExceeded],
    total_states: u64,
}

fn io(e: std::io::Error) -> CliError {
    CliError::Io(format!("cannot write output: {e}"))
}

pub fn run(config: &ScanConfig, out: &mut impl Write) -> Result<u8, CliError> {
    let tree = scan_tree(&config.corpus).map_err(|e| CliError::Io(e.to_string()))?;
    let opts = MatchOptions {
        budget: config.budget,
    };
    let mut records = Vec::new();
    let mut diagnostics = Vec::new();
    let mut total_states = 0;
    let mut entries = 0;
    for sel in &config.patterns {
        let found = match_corpus(&sel.pattern, &tree.units, &opts);
        total_states += found.total_states;
        entries = found.entries;
        diagnostics.extend(found.diagnostics);
        for r in found.results {
            records.push(Record {
                file: r.entry.file.to_string(),
                start_line: r.entry.span.start_line,
                end_line: r.entry.span.end_line,
                method: r.entry.name.clone(),
                algorithm: sel.algorithm.clone(),
                pattern: r.pattern.clone(),
                pattern_version: r.pattern_version,
                matched: format!(
                    "{}:{}-{}:{}",
                    r.span.start_line, r.span.start_col, r.span.end_line, r.span.end_col
                ),
                bindings: r
                    .bindings
                    .iter()
                    .map(|(k, vs)| (k.clone(), vs.iter().map(|v| v.display.clone()).collect()))
                    .collect(),
            });
        }
    }
    records.sort_by(|a, b| {
        (&a.file, a.start_line, a.end_line, &a.pattern, &a.matched).cmp(&(
            &b.file,
            b.start_line,
            b.end_line,
            &b.pattern,
            &b.matched,
        ))
    });

    for e in &tree.errors {
        eprintln!("warning: {e}");
    }
    for d in &diagnostics {
        eprintln!("warning: {d}");
    }

    if config.json {
        let doc = ScanDocument {
            schema: SCAN_SCHEMA,
            version: SCAN_VERSION,
            files: tree.units.len() + tree.errors.len(),
            entries,
            results: &records,
            parse_errors: tree.errors.iter().map(|e| e.to_string()).collect(),
            budget_exceeded: &diagnostics,
            total_states,
        };
        let text = serde_json::to_string_pretty(&doc).expect("scan documents serialize");
        writeln!(out, "{text}").map_err(io)?;
    } else {
        for r in &records {
            let bindings: Vec<_> = r
                .bindings
                .iter()
                .map(|(k, vs)| format!("{k}={}", vs.join("|")))
                .collect();
            writeln!(
                out,
                "{}:{}-{}  {}  {}  [{} v{}]  {}",
                r.file,
                r.start_line,
                r.end_line,
                r.algorithm,
                r.method,
                r.pattern,
                r.pattern_version,
                bindings.join(", ")
            )
            .map_err(io)?;
        }
    }

    if config.inject_comments {
        inject_markers(config, &records)?;
    }

    let dirty = !tree.errors.is_empty() || !diagnostics.is_empty();
    Ok(if config.strict && dirty { 2 } else { 0 })
}

/// One marker per detected method and algorithm, written file by file.
fn inject_markers(config: &ScanConfig, records: &[Record]) -> Result<(), CliError> {
    let mut by_file: BTreeMap<&str, Vec<Marker>> = BTreeMap::new();
    for r in records {
        by_file.entry(&r.file).or_default().push(Marker {
            line: r.start_line,
            algorithm: r.algorithm.clone(),
            text: inject::render(
                &config.comment_template,
                &r.algorithm,
                &r.pattern,
                r.pattern_version,
            ),
        });
    }
    for (file, markers) in by_file {
        let path = config.corpus.join(file);
        let fail = |e: std::io::Error| CliError::Io(format!("{}: {e}", path.display()));
        let src = std::fs::read_to_string(&path).map_err(fail)?;
        let updated = inject::inject(&src, &markers);
        if updated != src {
            std::fs::write(&path, updated).map_err(fail)?;
        }
    }
    Ok(())
}
