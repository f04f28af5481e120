//! Scoring detections against labeled corpora.
//!
//! Detection is judged per entry point. A detected entry labeled
//! `TRUE_POSITIVE` is a true positive; a detected entry that is labeled
//! `FALSE_POSITIVE` or carries no label at all is a false positive, so the
//! reported precision is a lower bound. Clone pairs count as found only when
//! both of their methods are detected.

mod files;
mod report;

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::java::CompilationUnit;
use crate::matcher::{match_corpus, MatchOptions, MatchResult, StateBudgetExceeded};
use crate::pattern::Pattern;

pub use files::{
    load_labels, load_pairs, read_labels, read_pairs, write_labels, ClonePair, CloneType,
    DataFileError, Label, LabelKind, Location, LABEL_HEADER, PAIR_HEADER,
};
pub use report::{format_hms, BenchReport, ReportRow, REPORT_SCHEMA, REPORT_VERSION};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ConfusionCounts {
    pub tp: u64,
    pub fp: u64,
    pub r#fn: u64,
    pub tn: u64,
    pub total: u64,
}

impl ConfusionCounts {
    pub fn new(tp: u64, fp: u64, r#fn: u64, tn: u64) -> Self {
        ConfusionCounts {
            tp,
            fp,
            r#fn,
            tn,
            total: tp + fp + r#fn + tn,
        }
    }

    /// Counts from a row that reports the number of entries instead of `tn`.
    pub fn with_total(tp: u64, fp: u64, r#fn: u64, total: u64) -> Self {
        ConfusionCounts::new(tp, fp, r#fn, total - tp - fp - r#fn)
    }

    pub fn metrics(&self) -> Metrics {
        Metrics::of(self)
    }
}

/// Quality metrics. `None` marks a ratio with a zero denominator.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Metrics {
    pub tpr: Option<f64>,
    pub ppv: Option<f64>,
    pub f1: Option<f64>,
    pub mcc: Option<f64>,
    pub accuracy: Option<f64>,
}

fn ratio(num: f64, den: f64) -> Option<f64> {
    (den != 0.0).then(|| num / den)
}

impl Metrics {
    pub fn of(c: &ConfusionCounts) -> Self {
        let (tp, fp, fn_, tn) = (c.tp as f64, c.fp as f64, c.r#fn as f64, c.tn as f64);
        let tpr = ratio(tp, tp + fn_);
        let ppv = ratio(tp, tp + fp);
        let f1 = match (ppv, tpr) {
            (Some(p), Some(r)) if p * r == 0.0 => Some(0.0),
            (Some(p), Some(r)) => Some(2.0 * p * r / (p + r)),
            _ => None,
        };
        let mcc = ratio(
            tp * tn - fp * fn_,
            ((tp + fp) * (tp + fn_) * (tn + fp) * (tn + fn_)).sqrt(),
        );
        Metrics {
            tpr,
            ppv,
            f1,
            mcc,
            accuracy: ratio(tp + tn, c.total as f64),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{} label(s) match no entry point: {}", unresolved.len(), list(unresolved))]
pub struct LabelResolutionError {
    pub unresolved: Vec<Label>,
}

fn list(labels: &[Label]) -> String {
    let shown: Vec<_> = labels
        .iter()
        .take(5)
        .map(|l| l.location.to_string())
        .collect();
    let more = labels.len().saturating_sub(shown.len());
    if more > 0 {
        format!("{} and {more} more", shown.join(", "))
    } else {
        shown.join(", ")
    }
}

/// Location of every entry point in the corpus.
pub fn entry_locations(corpus: &[CompilationUnit]) -> BTreeSet<Location> {
    corpus
        .iter()
        .flat_map(|u| u.entry_points())
        .map(|e| Location {
            path: e.span.file.to_string(),
            start_line: e.span.start_line,
            end_line: e.span.end_line,
        })
        .collect()
}

/// Entry points with at least one result.
pub fn detected_locations(results: &[MatchResult]) -> BTreeSet<Location> {
    results
        .iter()
        .map(|r| Location {
            path: r.entry.file.to_string(),
            start_line: r.entry.span.start_line,
            end_line: r.entry.span.end_line,
        })
        .collect()
}

/// Confusion counts over `entries`. Every label must name one of them.
pub fn score(
    entries: &BTreeSet<Location>,
    detected: &BTreeSet<Location>,
    labels: &[Label],
) -> Result<ConfusionCounts, LabelResolutionError> {
    let unresolved: Vec<Label> = labels
        .iter()
        .filter(|l| !entries.contains(&l.location))
        .cloned()
        .collect();
    if !unresolved.is_empty() {
        return Err(LabelResolutionError { unresolved });
    }
    let truth: BTreeMap<&Location, LabelKind> =
        labels.iter().map(|l| (&l.location, l.kind)).collect();
    let mut c = ConfusionCounts::default();
    for e in entries {
        let positive = truth.get(e) == Some(&LabelKind::TruePositive);
        match (detected.contains(e), positive) {
            (true, true) => c.tp += 1,
            (true, false) => c.fp += 1,
            (false, true) => c.r#fn += 1,
            (false, false) => c.tn += 1,
        }
    }
    c.total = entries.len() as u64;
    Ok(c)
}

#[derive(Debug, Clone)]
pub struct Evaluation {
    pub counts: ConfusionCounts,
    pub metrics: Metrics,
    pub elapsed: Duration,
    /// Matching states derived over the whole corpus.
    pub states: u64,
    pub results: Vec<MatchResult>,
    pub diagnostics: Vec<StateBudgetExceeded>,
}

/// Match `pattern` over `corpus` and score it against the labels filed
/// under the pattern's name.
pub fn evaluate(
    pattern: &Pattern,
    corpus: &[CompilationUnit],
    labels: &[Label],
    opts: &MatchOptions,
) -> Result<Evaluation, LabelResolutionError> {
    let own: Vec<Label> = labels
        .iter()
        .filter(|l| l.pattern == pattern.name)
        .cloned()
        .collect();
    let entries = entry_locations(corpus);
    score(&entries, &BTreeSet::new(), &own)?;
    let started = Instant::now();
    let found = match_corpus(pattern, corpus, opts);
    let elapsed = started.elapsed();
    let counts = score(&entries, &detected_locations(&found.results), &own)?;
    Ok(Evaluation {
        counts,
        metrics: counts.metrics(),
        elapsed,
        states: found.total_states,
        results: found.results,
        diagnostics: found.diagnostics,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TypeRecall {
    pub clone_type: CloneType,
    pub found: u64,
    pub total: u64,
    pub recall: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CloneRecall {
    pub min_tokens: u32,
    /// One row per clone type, in [`CloneType::ALL`] order.
    pub rows: Vec<TypeRecall>,
}

/// Share of clone pairs, per type, whose two methods were both detected.
/// Pairs where either side is shorter than `min_tokens` are left out.
pub fn clone_pair_recall(
    results: &[MatchResult],
    pairs: &[ClonePair],
    min_tokens: u32,
) -> CloneRecall {
    let detected = detected_locations(results);
    let rows = CloneType::ALL
        .iter()
        .map(|&t| {
            let kept: Vec<_> = pairs
                .iter()
                .filter(|p| p.clone_type == t && p.tokens_a.min(p.tokens_b) >= min_tokens)
                .collect();
            let found = kept
                .iter()
                .filter(|p| detected.contains(&p.a) && detected.contains(&p.b))
                .count() as u64;
            let total = kept.len() as u64;
            TypeRecall {
                clone_type: t,
                found,
                total,
                recall: ratio(found as f64, total as f64),
            }
        })
        .collect();
    CloneRecall { min_tokens, rows }
}
