use std::path::Path;

use algorec::catalog::{load_catalog, CatalogEntry};
use algorec::pattern::Pattern;

use crate::CliError;

/// A pattern chosen on the command line, with the algorithm name reports use.
#[derive(Debug, Clone)]
pub struct Selected {
    pub pattern: Pattern,
    pub algorithm: String,
}

pub fn catalog() -> Result<Vec<CatalogEntry>, CliError> {
    load_catalog().map_err(|e| CliError::Data(e.to_string()))
}

pub fn unknown(name: &str, catalog: &[CatalogEntry]) -> CliError {
    let names: Vec<_> = catalog.iter().map(|e| e.name).collect();
    CliError::Usage(format!(
        "unknown pattern `{name}`; catalog patterns are {} (or pass a pattern file)",
        names.join(", ")
    ))
}

/// A catalog name or a path to a pattern JSON file.
pub fn resolve(spec: &str, catalog: &[CatalogEntry]) -> Result<Selected, CliError> {
    if let Some(e) = catalog.iter().find(|e| e.name == spec) {
        return Ok(Selected {
            pattern: e.pattern.clone(),
            algorithm: e.algorithm.to_string(),
        });
    }
    let path = Path::new(spec);
    if !path.exists() {
        return Err(unknown(spec, catalog));
    }
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read {spec}: {e}")))?;
    let pattern = Pattern::from_json(&text).map_err(|e| CliError::Data(format!("{spec}: {e}")))?;
    Ok(Selected {
        algorithm: pattern.name.clone(),
        pattern,
    })
}

pub fn resolve_all(specs: &[String]) -> Result<Vec<Selected>, CliError> {
    let catalog = catalog()?;
    let mut out: Vec<Selected> = Vec::new();
    for spec in specs {
        let s = resolve(spec, &catalog)?;
        if !out.iter().any(|o| o.pattern.name == s.pattern.name) {
            out.push(s);
        }
    }
    Ok(out)
}
