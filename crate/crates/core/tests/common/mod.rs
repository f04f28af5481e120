#![allow(dead_code)]

pub mod checks;
pub mod desugar;
pub mod gen;
pub mod oracle;
pub mod validator;

use std::path::{Path, PathBuf};

use algorec::catalog::{load_catalog, CatalogEntry};
use algorec::java::{parse_file, CompilationUnit};

pub fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

pub fn parse(rel: &str) -> CompilationUnit {
    parse_file(&fixtures().join(rel)).unwrap_or_else(|e| panic!("{rel}: {e}"))
}

/// Parsed fixture files under `<algorithm>/<polarity>/`, sorted by name.
pub fn fixture_set(algorithm: &str, polarity: &str) -> Vec<(String, CompilationUnit)> {
    let dir = fixtures().join(algorithm).join(polarity);
    let mut files: Vec<_> = std::fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "java"))
        .collect();
    files.sort();
    files
        .into_iter()
        .map(|p| {
            let name = p.file_name().unwrap().to_string_lossy().into_owned();
            (name, parse_file(&p).unwrap_or_else(|e| panic!("{e}")))
        })
        .collect()
}

/// Every parsed fixture file outside the pathological directory.
pub fn fixture_corpus() -> Vec<CompilationUnit> {
    let mut out = Vec::new();
    for entry in load_catalog().unwrap() {
        for polarity in ["positive", "negative"] {
            out.extend(
                fixture_set(entry.name, polarity)
                    .into_iter()
                    .map(|(_, u)| u),
            );
        }
    }
    out.push(parse("worked/PrimeFactors.java"));
    out.push(parse("worked/MultipleBindings.java"));
    out
}

pub fn catalog() -> Vec<CatalogEntry> {
    load_catalog().unwrap()
}
