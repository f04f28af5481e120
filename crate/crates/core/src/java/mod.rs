//! Java front-end: source text to resolved, normalized [`Node`] trees.

mod lexer;
mod parser;

use std::path::{Path, PathBuf};
use std::sync::Arc;

use thiserror::Error;
use walkdir::WalkDir;

use crate::ast::{normalize_all_compound_assignments, resolve_references, IdGen, Node, NodeKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{file}:{line}:{col}: {message}")]
pub struct ParseError {
    pub file: String,
    pub line: u32,
    pub col: u32,
    pub message: String,
}

#[derive(Debug, Error)]
#[error("cannot read {path}: {source}")]
pub struct IoError {
    pub path: PathBuf,
    #[source]
    pub source: std::io::Error,
}

/// One parsed `.java` file.
#[derive(Debug, Clone)]
pub struct CompilationUnit {
    pub path: Arc<str>,
    pub root: Node,
    /// Pre-order ids of every method, constructor and initializer block.
    entry_ids: Vec<crate::ast::NodeId>,
}

impl CompilationUnit {
    fn new(path: Arc<str>, root: Node) -> Self {
        let entry_ids = root
            .walk()
            .filter(|n| n.kind.is_executable())
            .map(|n| n.id)
            .collect();
        CompilationUnit {
            path,
            root,
            entry_ids,
        }
    }

    pub fn entry_points(&self) -> Vec<&Node> {
        let mut out = Vec::with_capacity(self.entry_ids.len());
        let mut want = self.entry_ids.iter().peekable();
        for n in self.root.walk() {
            match want.peek() {
                Some(id) if **id == n.id => {
                    out.push(n);
                    want.next();
                }
                Some(_) => {}
                None => break,
            }
        }
        out
    }

    pub fn entry_count(&self) -> usize {
        self.entry_ids.len()
    }
}

/// Parse one source text. `path` is only used for spans and diagnostics.
pub fn parse_source(path: &str, src: &str) -> Result<CompilationUnit, ParseError> {
    let file: Arc<str> = Arc::from(path);
    let tokens = lexer::tokenize(path, src)?;
    let mut parser = parser::Parser::new(file.clone(), tokens);
    let root = parser.compilation_unit()?;
    let mut ids: IdGen = parser.into_ids();
    let root = normalize_all_compound_assignments(root, &mut ids);
    let root = resolve_references(root);
    Ok(CompilationUnit::new(file, root))
}

/// Read and parse a file; I/O failures surface as a [`ParseError`] at 0:0.
pub fn parse_file(path: &Path) -> Result<CompilationUnit, ParseError> {
    let display = path.to_string_lossy();
    let src = std::fs::read_to_string(path).map_err(|e| ParseError {
        file: display.to_string(),
        line: 0,
        col: 0,
        message: e.to_string(),
    })?;
    parse_source(&display, &src)
}

#[derive(Debug, Default)]
pub struct ScanOutput {
    pub units: Vec<CompilationUnit>,
    pub errors: Vec<ParseError>,
}

/// Every `.java` file under `dir`, sorted by path.
pub fn java_files(dir: &Path) -> Result<Vec<PathBuf>, IoError> {
    std::fs::read_dir(dir).map_err(|source| IoError {
        path: dir.to_path_buf(),
        source,
    })?;
    let mut files = Vec::new();
    for entry in WalkDir::new(dir).sort_by_file_name() {
        let entry = entry.map_err(|e| IoError {
            path: e.path().unwrap_or(dir).to_path_buf(),
            source: e
                .into_io_error()
                .unwrap_or_else(|| std::io::Error::other("directory loop")),
        })?;
        if entry.file_type().is_file() && entry.path().extension().is_some_and(|ext| ext == "java")
        {
            files.push(entry.into_path());
        }
    }
    files.sort();
    Ok(files)
}

/// Parse every `.java` file below `dir`. Spans carry paths relative to `dir`.
pub fn scan_tree(dir: &Path) -> Result<ScanOutput, IoError> {
    let files = java_files(dir)?;
    let parse = |path: &PathBuf| {
        let rel = path.strip_prefix(dir).unwrap_or(path);
        let name = rel.to_string_lossy().replace('\\', "/");
        match std::fs::read_to_string(path) {
            Ok(src) => parse_source(&name, &src),
            Err(e) => Err(ParseError {
                file: name,
                line: 0,
                col: 0,
                message: e.to_string(),
            }),
        }
    };
    #[cfg(feature = "parallel")]
    let parsed: Vec<_> = {
        use rayon::prelude::*;
        files.par_iter().map(parse).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let parsed: Vec<_> = files.iter().map(parse).collect();

    let mut out = ScanOutput::default();
    for result in parsed {
        match result {
            Ok(unit) => out.units.push(unit),
            Err(e) => out.errors.push(e),
        }
    }
    Ok(out)
}

/// Whether a node is an executable that can serve as a match entry point.
pub fn is_entry(node: &Node) -> bool {
    matches!(node.kind, NodeKind::Method | NodeKind::Constructor)
}
