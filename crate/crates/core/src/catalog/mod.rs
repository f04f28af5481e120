//! Ready-made search patterns for six algorithms.
//!
//! Each pattern is defined with the builder DSL in `patterns.rs` and shipped
//! as a JSON document under `catalog/` at the crate root. The documents are
//! embedded at build time; a unit test keeps them in sync with the builders.

mod patterns;

use std::fmt::Write;
use std::path::Path;

use thiserror::Error;

use crate::dsl::PatternBuilder;
use crate::pattern::{FormatError, Pattern};

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    /// Short identifier, also the pattern name and file stem.
    pub name: &'static str,
    pub algorithm: &'static str,
    pub file: &'static str,
    pub pattern: Pattern,
    /// Implementation shapes the pattern was modeled on.
    pub provenance: &'static str,
    pub variants: &'static [&'static str],
}

#[derive(Debug, Error)]
pub enum CatalogCause {
    #[error("cannot read pattern file: {0}")]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error("pattern file is named `{0}`")]
    NameMismatch(String),
}

#[derive(Debug, Error)]
#[error("catalog entry `{entry}` is corrupt: {cause}")]
pub struct CatalogCorrupt {
    pub entry: String,
    pub cause: CatalogCause,
}

struct Definition {
    name: &'static str,
    algorithm: &'static str,
    build: fn() -> PatternBuilder,
    embedded: &'static str,
    provenance: &'static str,
    variants: &'static [&'static str],
}

const DEFINITIONS: &[Definition] = &[
    Definition {
        name: "prime-factors",
        algorithm: "Prime Factors",
        build: patterns::prime_factors,
        embedded: include_str!("../../catalog/prime-factors.pattern.json"),
        provenance: "trial division with an outer candidate loop and an inner \
                     division loop; the inner loop may also be an if that divides once per step",
        variants: &["iterative", "return or print"],
    },
    Definition {
        name: "gcd",
        algorithm: "Greatest Common Divisor",
        build: patterns::gcd,
        embedded: include_str!("../../catalog/gcd.pattern.json"),
        provenance: "Euclid by remainder (loop with a temporary swap), Euclid by \
                     subtraction, and the recursive remainder call",
        variants: &["iterative", "recursive"],
    },
    Definition {
        name: "fibonacci",
        algorithm: "Fibonacci",
        build: patterns::fibonacci,
        embedded: include_str!("../../catalog/fibonacci.pattern.json"),
        provenance: "doubly recursive definition guarded by an early-return base \
                     case, or with the recursion in the else branch",
        variants: &["recursive"],
    },
    Definition {
        name: "palindrome",
        algorithm: "Palindrome",
        build: patterns::palindrome,
        embedded: include_str!("../../catalog/palindrome.pattern.json"),
        provenance: "two-index character comparison in a loop, recursive \
                     comparison of the outer characters, reverse-and-compare",
        variants: &["iterative", "recursive", "library reverse"],
    },
    Definition {
        name: "bubble-sort",
        algorithm: "Bubble Sort",
        build: patterns::bubble_sort,
        embedded: include_str!("../../catalog/bubble-sort.pattern.json"),
        provenance: "nested loops with a neighbouring-element comparison and an \
                     inline three-step swap or a swap helper",
        variants: &["iterative", "ascending or descending", "any loop kind"],
    },
    Definition {
        name: "binary-search",
        algorithm: "Binary Search",
        build: patterns::binary_search,
        embedded: include_str!("../../catalog/binary-search.pattern.json"),
        provenance: "low/high bounds narrowed around a halved midpoint in a loop, \
                     or recursion on midpoint-adjusted bounds",
        variants: &["iterative", "recursive"],
    },
];

fn entry(def: &Definition, pattern: Pattern) -> CatalogEntry {
    CatalogEntry {
        name: def.name,
        algorithm: def.algorithm,
        file: def.name,
        pattern,
        provenance: def.provenance,
        variants: def.variants,
    }
}

fn decode(def: &Definition, text: &str) -> Result<Pattern, CatalogCorrupt> {
    let corrupt = |cause| CatalogCorrupt {
        entry: def.name.to_string(),
        cause,
    };
    let pattern = Pattern::from_json(text).map_err(|e| corrupt(e.into()))?;
    if pattern.name != def.name {
        return Err(corrupt(CatalogCause::NameMismatch(pattern.name)));
    }
    Ok(pattern)
}

/// The embedded catalog.
pub fn load_catalog() -> Result<Vec<CatalogEntry>, CatalogCorrupt> {
    DEFINITIONS
        .iter()
        .map(|d| decode(d, d.embedded).map(|p| entry(d, p)))
        .collect()
}

/// The catalog read from `<dir>/<name>.pattern.json` files.
pub fn load_catalog_from(dir: &Path) -> Result<Vec<CatalogEntry>, CatalogCorrupt> {
    DEFINITIONS
        .iter()
        .map(|d| {
            let text = std::fs::read_to_string(dir.join(file_name(d.name))).map_err(|e| {
                CatalogCorrupt {
                    entry: d.name.to_string(),
                    cause: e.into(),
                }
            })?;
            decode(d, &text).map(|p| entry(d, p))
        })
        .collect()
}

/// The catalog compiled straight from the builder definitions.
pub fn compiled_catalog() -> Vec<CatalogEntry> {
    DEFINITIONS
        .iter()
        .map(|d| {
            let pattern =
                Pattern::from_builder(d.name, &(d.build)()).expect("catalog builders are valid");
            entry(d, pattern)
        })
        .collect()
}

/// The builder definition of a catalog pattern.
pub fn builder(name: &str) -> Option<PatternBuilder> {
    DEFINITIONS
        .iter()
        .find(|d| d.name == name)
        .map(|d| (d.build)())
}

pub fn file_name(name: &str) -> String {
    format!("{name}.pattern.json")
}

pub fn describe(entry: &CatalogEntry) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{} ({} v{})",
        entry.algorithm, entry.name, entry.pattern.version
    );
    let _ = writeln!(out, "modeled on: {}", entry.provenance);
    let _ = writeln!(out, "variants: {}", entry.variants.join(", "));
    let names: Vec<_> = entry.pattern.bindings.names().collect();
    let _ = writeln!(out, "bindings: {}", names.join(", "));
    out.push_str(&entry.pattern.root.outline());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_files_match_builders() {
        let bless = std::env::var_os("ALGOREC_BLESS").is_some();
        let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("catalog");
        for (def, compiled) in DEFINITIONS.iter().zip(compiled_catalog()) {
            let json = compiled.pattern.to_json();
            if bless {
                std::fs::write(dir.join(file_name(def.name)), &json).unwrap();
            } else {
                assert_eq!(
                    json, def.embedded,
                    "{} is stale; rerun with ALGOREC_BLESS=1",
                    def.name
                );
            }
        }
    }

    #[test]
    fn six_unique_entries() {
        let cat = load_catalog().unwrap();
        assert_eq!(cat.len(), 6);
        let mut names: Vec<_> = cat.iter().map(|e| e.name).collect();
        names.dedup();
        assert_eq!(names.len(), 6);
        for e in &cat {
            assert!(e.pattern.is_method_rooted(), "{}", e.name);
            assert!(e.pattern.bindings.names().any(|n| n == "method"));
        }
    }

    #[test]
    fn describe_prime_factors() {
        let cat = load_catalog().unwrap();
        let text = describe(&cat[0]);
        assert!(text.contains("binOp ∈ {%, /}"), "{text}");
        assert!(text.starts_with("Prime Factors (prime-factors v1)"));
    }

    #[test]
    fn missing_file_is_corrupt() {
        let dir = tempfile::tempdir().unwrap();
        let err = load_catalog_from(dir.path()).unwrap_err();
        assert_eq!(err.entry, "prime-factors");
        assert!(matches!(err.cause, CatalogCause::Io(_)));
    }

    #[test]
    fn renamed_pattern_is_corrupt() {
        let dir = tempfile::tempdir().unwrap();
        for e in load_catalog().unwrap() {
            let mut p = e.pattern.clone();
            if e.name == "gcd" {
                p.name = "other".into();
            }
            std::fs::write(dir.path().join(file_name(e.name)), p.to_json()).unwrap();
        }
        let err = load_catalog_from(dir.path()).unwrap_err();
        assert!(matches!(err.cause, CatalogCause::NameMismatch(_)));
    }
}
