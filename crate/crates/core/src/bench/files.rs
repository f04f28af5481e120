//! `labels.csv` and `pairs.csv`.
//!
//! Both are UTF-8, comma-delimited, with a mandatory header row. Paths are
//! relative to the corpus root and use `/` separators. Lines are 1-based and
//! inclusive, identifying a method by its first and last line.
//!
//! ```text
//! pattern,path,start_line,end_line,label
//! prime-factors,src/Util.java,12,24,TRUE_POSITIVE
//! ```
//!
//! ```text
//! pattern,path_a,start_a,end_a,path_b,start_b,end_b,type,tokens_a,tokens_b
//! bubble-sort,a/Sort.java,3,17,b/Sorter.java,40,58,ST3,112,131
//! ```
//!
//! Clone types are `T1`, `T2`, `VST3`, `ST3`, `MT3` and `WT3/T4` (`WT3` and
//! `T4` are accepted as aliases).

use std::fmt;
use std::io::Read;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const LABEL_HEADER: &[&str] = &["pattern", "path", "start_line", "end_line", "label"];
pub const PAIR_HEADER: &[&str] = &[
    "pattern", "path_a", "start_a", "end_a", "path_b", "start_b", "end_b", "type", "tokens_a",
    "tokens_b",
];

#[derive(Debug, Error)]
pub enum DataFileError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("header must be `{}`, found `{found}`", expected.join(","))]
    Header {
        expected: &'static [&'static str],
        found: String,
    },
    #[error("line {line}: {message}")]
    Row { line: u64, message: String },
}

/// A method identified by file and line range.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Location {
    pub path: String,
    pub start_line: u32,
    pub end_line: u32,
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}-{}", self.path, self.start_line, self.end_line)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum LabelKind {
    TruePositive,
    FalsePositive,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Label {
    pub pattern: String,
    pub location: Location,
    pub kind: LabelKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum CloneType {
    T1,
    T2,
    #[serde(rename = "VST3")]
    Vst3,
    #[serde(rename = "ST3")]
    St3,
    #[serde(rename = "MT3")]
    Mt3,
    #[serde(rename = "WT3/T4", alias = "WT3", alias = "T4")]
    Wt3T4,
}

impl CloneType {
    pub const ALL: [CloneType; 6] = [
        CloneType::T1,
        CloneType::T2,
        CloneType::Vst3,
        CloneType::St3,
        CloneType::Mt3,
        CloneType::Wt3T4,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CloneType::T1 => "T1",
            CloneType::T2 => "T2",
            CloneType::Vst3 => "VST3",
            CloneType::St3 => "ST3",
            CloneType::Mt3 => "MT3",
            CloneType::Wt3T4 => "WT3/T4",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClonePair {
    pub pattern: String,
    pub a: Location,
    pub b: Location,
    pub clone_type: CloneType,
    pub tokens_a: u32,
    pub tokens_b: u32,
}

#[derive(Deserialize)]
struct LabelRow {
    pattern: String,
    path: String,
    start_line: u32,
    end_line: u32,
    label: LabelKind,
}

#[derive(Deserialize)]
struct PairRow {
    pattern: String,
    path_a: String,
    start_a: u32,
    end_a: u32,
    path_b: String,
    start_b: u32,
    end_b: u32,
    #[serde(rename = "type")]
    clone_type: CloneType,
    tokens_a: u32,
    tokens_b: u32,
}

fn rows<T: for<'de> Deserialize<'de>>(
    input: impl Read,
    expected: &'static [&'static str],
) -> Result<Vec<T>, DataFileError> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(input);
    let header = reader.headers().map_err(|e| DataFileError::Row {
        line: 1,
        message: e.to_string(),
    })?;
    if header.iter().ne(expected.iter().copied()) {
        return Err(DataFileError::Header {
            expected,
            found: header.iter().collect::<Vec<_>>().join(","),
        });
    }
    reader
        .deserialize()
        .map(|r| {
            r.map_err(|e: csv::Error| DataFileError::Row {
                line: e.position().map_or(0, |p| p.line()),
                message: match e.kind() {
                    csv::ErrorKind::Deserialize { err, .. } => err.to_string(),
                    _ => e.to_string(),
                },
            })
        })
        .collect()
}

fn normalize(path: String) -> String {
    path.replace('\\', "/")
}

pub fn read_labels(input: impl Read) -> Result<Vec<Label>, DataFileError> {
    Ok(rows::<LabelRow>(input, LABEL_HEADER)?
        .into_iter()
        .map(|r| Label {
            pattern: r.pattern,
            location: Location {
                path: normalize(r.path),
                start_line: r.start_line,
                end_line: r.end_line,
            },
            kind: r.label,
        })
        .collect())
}

pub fn read_pairs(input: impl Read) -> Result<Vec<ClonePair>, DataFileError> {
    Ok(rows::<PairRow>(input, PAIR_HEADER)?
        .into_iter()
        .map(|r| ClonePair {
            pattern: r.pattern,
            a: Location {
                path: normalize(r.path_a),
                start_line: r.start_a,
                end_line: r.end_a,
            },
            b: Location {
                path: normalize(r.path_b),
                start_line: r.start_b,
                end_line: r.end_b,
            },
            clone_type: r.clone_type,
            tokens_a: r.tokens_a,
            tokens_b: r.tokens_b,
        })
        .collect())
}

fn open(path: &Path) -> Result<std::fs::File, DataFileError> {
    std::fs::File::open(path).map_err(|source| DataFileError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn load_labels(path: &Path) -> Result<Vec<Label>, DataFileError> {
    read_labels(open(path)?)
}

pub fn load_pairs(path: &Path) -> Result<Vec<ClonePair>, DataFileError> {
    read_pairs(open(path)?)
}

/// Write labels in the format [`read_labels`] accepts.
pub fn write_labels(labels: &[Label]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(LABEL_HEADER).expect("in-memory write");
    for l in labels {
        let kind = match l.kind {
            LabelKind::TruePositive => "TRUE_POSITIVE",
            LabelKind::FalsePositive => "FALSE_POSITIVE",
        };
        w.write_record([
            l.pattern.as_str(),
            &l.location.path,
            &l.location.start_line.to_string(),
            &l.location.end_line.to_string(),
            kind,
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory write")).expect("utf-8 input")
}
