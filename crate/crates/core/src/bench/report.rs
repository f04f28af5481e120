use std::fmt::Write;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use super::{CloneRecall, ConfusionCounts, Evaluation, Metrics};
use crate::pattern::Pattern;

pub const REPORT_SCHEMA: &str = "algorec-bench";
pub const REPORT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub pattern: String,
    pub algorithm: String,
    pub pattern_version: u32,
    pub counts: ConfusionCounts,
    pub metrics: Metrics,
    pub wall_time_secs: f64,
    pub matching_states: u64,
    /// Entry points abandoned because the state budget ran out.
    pub budget_exceeded: u64,
    pub clone_recall: Option<CloneRecall>,
}

impl ReportRow {
    pub fn new(
        pattern: &Pattern,
        algorithm: &str,
        eval: &Evaluation,
        clone_recall: Option<CloneRecall>,
    ) -> Self {
        ReportRow {
            pattern: pattern.name.clone(),
            algorithm: algorithm.to_string(),
            pattern_version: pattern.version,
            counts: eval.counts,
            metrics: eval.metrics,
            wall_time_secs: eval.elapsed.as_secs_f64(),
            matching_states: eval.states,
            budget_exceeded: eval.diagnostics.len() as u64,
            clone_recall,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub schema: String,
    pub version: u32,
    pub rows: Vec<ReportRow>,
}

impl Default for BenchReport {
    fn default() -> Self {
        BenchReport {
            schema: REPORT_SCHEMA.to_string(),
            version: REPORT_VERSION,
            rows: Vec::new(),
        }
    }
}

/// Rounded to whole seconds, hours unpadded.
pub fn format_hms(d: Duration) -> String {
    let s = d.as_secs_f64().round() as u64;
    format!("{}:{:02}:{:02}", s / 3600, s / 60 % 60, s % 60)
}

fn cell(v: Option<f64>) -> String {
    v.map_or_else(|| "N/A".to_string(), |x| format!("{x:.4}"))
}

impl BenchReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }

    pub fn from_json(text: &str) -> Result<Self, String> {
        let report: BenchReport = serde_json::from_str(text).map_err(|e| e.to_string())?;
        if report.schema != REPORT_SCHEMA || report.version != REPORT_VERSION {
            return Err(format!(
                "unsupported report {} v{}, expected {REPORT_SCHEMA} v{REPORT_VERSION}",
                report.schema, report.version
            ));
        }
        Ok(report)
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for row in &self.rows {
            let c = &row.counts;
            let m = &row.metrics;
            let _ = writeln!(
                out,
                "{} ({} v{}, {} methods total)",
                row.algorithm, row.pattern, row.pattern_version, c.total
            );
            let _ = writeln!(
                out,
                "  {:>6} {:>6} {:>6} {:>7} {:>7} {:>7} {:>7} {:>9} {:>12}",
                "TP", "FP", "FN", "MCC", "F1", "TPR", "PPV", "h:mm:ss", "#MS"
            );
            let _ = writeln!(
                out,
                "  {:>6} {:>6} {:>6} {:>7} {:>7} {:>7} {:>7} {:>9} {:>12}",
                c.tp,
                c.fp,
                c.r#fn,
                cell(m.mcc),
                cell(m.f1),
                cell(m.tpr),
                cell(m.ppv),
                format_hms(Duration::from_secs_f64(row.wall_time_secs)),
                row.matching_states
            );
            if row.budget_exceeded > 0 {
                let _ = writeln!(
                    out,
                    "  {} entry point(s) exceeded the state budget",
                    row.budget_exceeded
                );
            }
            if let Some(cr) = &row.clone_recall {
                let _ = writeln!(out, "  clone pairs (min {} tokens)", cr.min_tokens);
                let _ = writeln!(
                    out,
                    "  {:>8} {:>7} {:>7} {:>7}",
                    "type", "found", "total", "TPR"
                );
                for t in &cr.rows {
                    let _ = writeln!(
                        out,
                        "  {:>8} {:>7} {:>7} {:>7}",
                        t.clone_type.name(),
                        t.found,
                        t.total,
                        cell(t.recall)
                    );
                }
            }
        }
        out
    }
}
