//! Browser bindings for the demo page in `www/`.
//!
//! Every export takes and returns strings; structured results are JSON.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use algorec::catalog::{describe as describe_entry, load_catalog};
use algorec::java::parse_source;
use algorec::matcher::{match_corpus, MatchOptions};

const FILE: &str = "Input.java";

/// Name, algorithm and version of every catalog pattern.
#[wasm_bindgen]
pub fn catalog() -> String {
    let entries: Vec<Value> = load_catalog()
        .map(|c| {
            c.iter()
                .map(|e| json!({"name": e.name, "algorithm": e.algorithm, "version": e.pattern.version}))
                .collect()
        })
        .unwrap_or_default();
    Value::Array(entries).to_string()
}

/// Runs the selected catalog patterns (all when `names` is empty) over one
/// source text.
#[wasm_bindgen]
pub fn detect(source: &str, names: &str) -> String {
    let unit = match parse_source(FILE, source) {
        Ok(u) => u,
        Err(e) => return json!({"error": e.to_string()}).to_string(),
    };
    let catalog = match load_catalog() {
        Ok(c) => c,
        Err(e) => return json!({"error": e.to_string()}).to_string(),
    };
    let wanted: Vec<&str> = names
        .split(',')
        .map(str::trim)
        .filter(|n| !n.is_empty())
        .collect();
    let units = [unit];
    let mut results = Vec::new();
    let mut warnings = Vec::new();
    let mut states = 0;
    for e in catalog
        .iter()
        .filter(|e| wanted.is_empty() || wanted.contains(&e.name))
    {
        let found = match_corpus(&e.pattern, &units, &MatchOptions::default());
        states += found.total_states;
        warnings.extend(found.diagnostics.iter().map(|d| d.to_string()));
        for r in found.results {
            let bindings: serde_json::Map<String, Value> = r
                .bindings
                .iter()
                .map(|(k, vs)| (k.clone(), vs.iter().map(|v| v.display.clone()).collect()))
                .collect();
            results.push(json!({
                "algorithm": e.algorithm,
                "pattern": e.name,
                "method": r.entry.name,
                "start_line": r.entry.span.start_line,
                "end_line": r.entry.span.end_line,
                "bindings": bindings,
                "unified_states": r.unified_states(),
            }));
        }
    }
    json!({
        "entries": units[0].entry_count(),
        "states": states,
        "results": results,
        "warnings": warnings,
    })
    .to_string()
}

/// Outline of one catalog pattern.
#[wasm_bindgen]
pub fn describe(name: &str) -> String {
    match load_catalog() {
        Ok(c) => c
            .iter()
            .find(|e| e.name == name)
            .map(describe_entry)
            .unwrap_or_else(|| format!("no pattern named `{name}`")),
        Err(e) => e.to_string(),
    }
}

/// Normalized syntax tree of the source, or the parse error.
#[wasm_bindgen]
pub fn dump(source: &str) -> String {
    match parse_source(FILE, source) {
        Ok(u) => u.root.dump(),
        Err(e) => e.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const LISTING: &str = include_str!("../../core/fixtures/worked/PrimeFactors.java");

    #[test]
    fn detects_the_worked_example() {
        let out: Value = serde_json::from_str(&detect(LISTING, "")).unwrap();
        let results = out["results"].as_array().unwrap();
        assert_eq!(results.len(), 1);
        assert_eq!(results[0]["algorithm"], "Prime Factors");
        assert_eq!(results[0]["start_line"], 5);
        assert_eq!(results[0]["bindings"]["index"][0], "i");
    }

    #[test]
    fn pattern_filter_and_errors() {
        let out: Value = serde_json::from_str(&detect(LISTING, "gcd, fibonacci")).unwrap();
        assert_eq!(out["results"].as_array().unwrap().len(), 0);
        let out: Value = serde_json::from_str(&detect("class {", "")).unwrap();
        assert!(out["error"].as_str().unwrap().contains("Input.java"));
    }

    #[test]
    fn catalog_describe_dump() {
        let cat: Value = serde_json::from_str(&catalog()).unwrap();
        assert_eq!(cat.as_array().unwrap().len(), 6);
        assert!(describe("gcd").starts_with("Greatest Common Divisor (gcd v1)"));
        assert!(describe("nope").contains("no pattern"));
        assert!(dump(LISTING).contains("getPrimeFactors"));
    }
}
