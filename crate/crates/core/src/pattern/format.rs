//! Versioned JSON document format for compiled patterns.
//!
//! ```json
//! {
//!   "format": "algorec-pattern",
//!   "version": 1,
//!   "name": "prime-factors",
//!   "pattern_version": 1,
//!   "root": {
//!     "kind": "Method",
//!     "binding": "method",
//!     "children": [ { "kind": "Block", "children": [ { "kind": "wide_wildcard" } ] } ]
//!   }
//! }
//! ```
//!
//! `kind` is a node kind name or one of `any`, `any_type`, `wide_wildcard`,
//! `depth_wildcard`, `one_of`, `optional`. Optional fields: `predicates`
//! (`{"attr": "op", "in": [..]}`, `{"attr": .., "equals": ..}`,
//! `{"attr": "arity", "arity_equals": n}`), `order` (`ordered` |
//! `unordered`), `binding`, `greedy` and `children`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{ChildOrder, KindMatcher, Pattern, PatternTreeNode, Predicate};
use crate::ast::NodeKind;

pub const FORMAT_TAG: &str = "algorec-pattern";
pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("malformed pattern document: {0}")]
    Syntax(String),
    #[error("not a pattern document (format tag {0:?})")]
    Tag(String),
    #[error("unsupported pattern format version {0}")]
    Version(u32),
    #[error("{path}: unknown node kind {kind:?}")]
    Kind { path: String, kind: String },
    #[error("{path}: {kind} needs {expected} children, found {found}")]
    Arity {
        path: String,
        kind: String,
        expected: &'static str,
        found: usize,
    },
    #[error("{path}: field `{field}` is not allowed on {kind}")]
    Field {
        path: String,
        kind: String,
        field: &'static str,
    },
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    format: String,
    version: u32,
    name: String,
    #[serde(default = "one")]
    pattern_version: u32,
    #[serde(default, skip_serializing_if = "is_false")]
    cross_executables: bool,
    root: NodeDoc,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NodeDoc {
    kind: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    predicates: Vec<Predicate>,
    #[serde(default, skip_serializing_if = "is_ordered")]
    order: ChildOrder,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    binding: Option<String>,
    #[serde(default, skip_serializing_if = "is_false")]
    greedy: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    children: Vec<NodeDoc>,
}

fn one() -> u32 {
    1
}

fn is_false(b: &bool) -> bool {
    !*b
}

fn is_ordered(o: &ChildOrder) -> bool {
    *o == ChildOrder::Ordered
}

fn kind_tag(m: &KindMatcher) -> String {
    match m {
        KindMatcher::Kind(k) => k.name().to_string(),
        KindMatcher::Any => "any".into(),
        KindMatcher::AnyType => "any_type".into(),
        KindMatcher::WideWildcard => "wide_wildcard".into(),
        KindMatcher::DepthWildcard => "depth_wildcard".into(),
        KindMatcher::OneOf => "one_of".into(),
        KindMatcher::Optional => "optional".into(),
    }
}

fn to_doc(n: &PatternTreeNode) -> NodeDoc {
    NodeDoc {
        kind: kind_tag(&n.matcher),
        predicates: n.predicates.clone(),
        order: n.child_order,
        binding: n.binding.clone(),
        greedy: n.greedy,
        children: n.children.iter().map(to_doc).collect(),
    }
}

fn from_doc(doc: NodeDoc, path: &str) -> Result<PatternTreeNode, FormatError> {
    let matcher = match doc.kind.as_str() {
        "any" => KindMatcher::Any,
        "any_type" => KindMatcher::AnyType,
        "wide_wildcard" => KindMatcher::WideWildcard,
        "depth_wildcard" => KindMatcher::DepthWildcard,
        "one_of" => KindMatcher::OneOf,
        "optional" => KindMatcher::Optional,
        other => match NodeKind::from_name(other) {
            Some(k) => KindMatcher::Kind(k),
            None => {
                return Err(FormatError::Kind {
                    path: path.into(),
                    kind: other.into(),
                })
            }
        },
    };
    let n = doc.children.len();
    let arity_error = |expected| FormatError::Arity {
        path: path.into(),
        kind: doc.kind.clone(),
        expected,
        found: n,
    };
    match matcher {
        KindMatcher::OneOf if n == 0 => return Err(arity_error("at least 1")),
        KindMatcher::Optional | KindMatcher::DepthWildcard if n != 1 => {
            return Err(arity_error("exactly 1"))
        }
        KindMatcher::WideWildcard if n != 0 => return Err(arity_error("no")),
        _ => {}
    }
    let field_error = |field| FormatError::Field {
        path: path.into(),
        kind: doc.kind.clone(),
        field,
    };
    if doc.greedy && matcher != KindMatcher::WideWildcard {
        return Err(field_error("greedy"));
    }
    if matcher.is_combinator() {
        if doc.binding.is_some() {
            return Err(field_error("binding"));
        }
        if !doc.predicates.is_empty() {
            return Err(field_error("predicates"));
        }
    }
    if doc.binding.as_deref() == Some("") {
        return Err(field_error("binding"));
    }
    let kind = doc.kind.clone();
    let children = doc
        .children
        .into_iter()
        .enumerate()
        .map(|(i, c)| from_doc(c, &format!("{path}/{kind}[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(PatternTreeNode {
        id: 0,
        matcher,
        predicates: doc.predicates,
        children,
        child_order: doc.order,
        binding: doc.binding,
        greedy: doc.greedy,
    })
}

impl Pattern {
    /// Pretty-printed JSON document.
    pub fn to_json(&self) -> String {
        let doc = Document {
            format: FORMAT_TAG.into(),
            version: FORMAT_VERSION,
            name: self.name.clone(),
            pattern_version: self.version,
            cross_executables: self.cross_executables,
            root: to_doc(&self.root),
        };
        let mut s = serde_json::to_string_pretty(&doc).expect("pattern documents serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Pattern, FormatError> {
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| FormatError::Syntax(e.to_string()))?;
        // check tag and version before field-level decoding so that future
        // documents fail with a version error rather than a field error
        match value.get("format").and_then(|v| v.as_str()) {
            Some(FORMAT_TAG) => {}
            other => return Err(FormatError::Tag(other.unwrap_or("").into())),
        }
        match value.get("version").and_then(|v| v.as_u64()) {
            Some(v) if v == FORMAT_VERSION as u64 => {}
            Some(v) => return Err(FormatError::Version(v as u32)),
            None => return Err(FormatError::Syntax("missing field `version`".into())),
        }
        let doc: Document =
            serde_json::from_value(value).map_err(|e| FormatError::Syntax(e.to_string()))?;
        let root = from_doc(doc.root, "")?;
        let mut pattern = Pattern::new(&doc.name, root).with_version(doc.pattern_version);
        pattern.cross_executables = doc.cross_executables;
        Ok(pattern)
    }
}

pub fn serialize(pattern: &Pattern) -> Vec<u8> {
    pattern.to_json().into_bytes()
}

pub fn deserialize(bytes: &[u8]) -> Result<Pattern, FormatError> {
    let text = std::str::from_utf8(bytes).map_err(|e| FormatError::Syntax(e.to_string()))?;
    Pattern::from_json(text)
}
