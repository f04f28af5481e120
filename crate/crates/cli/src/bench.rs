use std::io::Write;
use std::path::PathBuf;

use algorec::bench::{
    clone_pair_recall, evaluate, load_labels, load_pairs, BenchReport, DataFileError, ReportRow,
};
use algorec::java::scan_tree;
use algorec::matcher::MatchOptions;

use crate::select::{self, Selected};
use crate::CliError;

pub struct BenchConfig {
    pub corpus: PathBuf,
    pub labels: PathBuf,
    /// Clone-pair file and minimum token length.
    pub pairs: Option<(PathBuf, u32)>,
    pub out: PathBuf,
    /// Pattern files labels may name besides the catalog.
    pub extra: Vec<Selected>,
    pub budget: u64,
}

fn data(e: DataFileError) -> CliError {
    match e {
        DataFileError::Io { .. } => CliError::Io(e.to_string()),
        _ => CliError::Data(e.to_string()),
    }
}

fn in_file(path: &std::path::Path) -> impl Fn(DataFileError) -> CliError + '_ {
    move |e| match data(e) {
        CliError::Data(m) => CliError::Data(format!("{}: {m}", path.display())),
        other => other,
    }
}

pub fn run(config: &BenchConfig, out: &mut impl Write) -> Result<u8, CliError> {
    let labels = load_labels(&config.labels).map_err(in_file(&config.labels))?;
    let pairs = match &config.pairs {
        Some((path, min)) => Some((load_pairs(path).map_err(in_file(path))?, *min)),
        None => None,
    };
    let tree = scan_tree(&config.corpus).map_err(|e| CliError::Io(e.to_string()))?;
    for e in &tree.errors {
        eprintln!("warning: {e}");
    }

    let catalog = select::catalog()?;
    let mut names: Vec<&str> = Vec::new();
    for l in &labels {
        if !names.contains(&l.pattern.as_str()) {
            names.push(&l.pattern);
        }
    }
    let mut chosen = Vec::new();
    for name in names {
        let sel = match config.extra.iter().find(|s| s.pattern.name == name) {
            Some(s) => s.clone(),
            None => select::resolve(name, &catalog)
                .map_err(|_| CliError::Data(format!("labels refer to unknown pattern `{name}`")))?,
        };
        chosen.push(sel);
    }

    let opts = MatchOptions {
        budget: config.budget,
    };
    let mut report = BenchReport::default();
    let mut unresolved = Vec::new();
    for sel in &chosen {
        match evaluate(&sel.pattern, &tree.units, &labels, &opts) {
            Ok(eval) => {
                let recall = pairs.as_ref().map(|(all, min)| {
                    let own: Vec<_> = all
                        .iter()
                        .filter(|p| p.pattern == sel.pattern.name)
                        .cloned()
                        .collect();
                    clone_pair_recall(&eval.results, &own, *min)
                });
                report
                    .rows
                    .push(ReportRow::new(&sel.pattern, &sel.algorithm, &eval, recall));
            }
            Err(e) => unresolved.extend(e.unresolved),
        }
    }
    if !unresolved.is_empty() {
        for l in &unresolved {
            eprintln!(
                "error: label for `{}` matches no method: {}",
                l.pattern, l.location
            );
        }
        return Err(CliError::Data(format!(
            "{} label(s) could not be resolved",
            unresolved.len()
        )));
    }

    let io = |e: std::io::Error| CliError::Io(format!("cannot write output: {e}"));
    write!(out, "{}", report.render_text()).map_err(io)?;
    std::fs::write(&config.out, report.to_json())
        .map_err(|e| CliError::Io(format!("{}: {e}", config.out.display())))?;
    writeln!(out, "report written to {}", config.out.display()).map_err(io)?;
    Ok(0)
}
