//! Language-neutral syntax tree shared by the Java front-end and the matcher.
//!
//! Every node carries a [`NodeKind`], a small attribute map, its children and
//! the source span it covers. Children are laid out per kind so that patterns
//! can address them positionally:
//!
//! | kind | children |
//! |------|----------|
//! | `Method`, `Constructor` | body `Block` (or `Other("no_body")`), then `Parameter`s |
//! | `Parameter` | `TypeRef` |
//! | `Block` | statements |
//! | `ForLoop` | condition, body `Block`, init statements, update expressions |
//! | `WhileLoop`, `DoWhileLoop` | condition, body `Block` |
//! | `ForEachLoop` | iterable, body `Block`, loop variable `VarDef` |
//! | `If` | condition, then `Block`, optional else `Block` |
//! | `BinOp` | left, right |
//! | `UnaryOp` | operand |
//! | `Assignment` | target, value |
//! | `VarDef` | `TypeRef`, optional initializer |
//! | `MethodCall` | arguments, then the receiver when present |
//! | `Return` | optional value |
//! | `FieldAccess` | target |
//! | `ArrayAccess` | array, index |
//!
//! Attribute schema (keys present on a kind after parsing and resolution):
//!
//! - `Method`/`Constructor`: `name`, `arity`, `sig`, `return_type`, `param_types`, `modifiers`
//!   (initializer blocks are `Method` nodes with an empty `name` and an `initializer` key)
//! - `Parameter`, `VarDef`: `name`, `type`, `decl_id`
//! - `VarRead`, `VarWrite`: `name`, `decl_id`
//! - `BinOp`: `op`; `UnaryOp`: `op`, `fix` (`pre`|`post`); `Assignment`: `op` (always `=`)
//! - `MethodCall`: `name`, `arity`, `sig`, and `decl_id` when the callee is declared in the same unit
//! - `Literal`: `text`, `type`; `TypeRef`: `name`; `FieldAccess`: `name`

mod normalize;
mod resolve;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

pub use normalize::{normalize_all_compound_assignments, normalize_compound_assignment};
pub use resolve::resolve_references;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct NodeId(pub u32);

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NodeKind {
    Method,
    Constructor,
    Parameter,
    Block,
    ForLoop,
    WhileLoop,
    DoWhileLoop,
    ForEachLoop,
    If,
    BinOp,
    UnaryOp,
    Assignment,
    VarDef,
    VarRead,
    VarWrite,
    MethodCall,
    Return,
    Literal,
    TypeRef,
    FieldAccess,
    ArrayAccess,
    Other(String),
}

impl NodeKind {
    /// Every kind except `Other`, in declaration order.
    pub const NAMED: [NodeKind; 21] = [
        NodeKind::Method,
        NodeKind::Constructor,
        NodeKind::Parameter,
        NodeKind::Block,
        NodeKind::ForLoop,
        NodeKind::WhileLoop,
        NodeKind::DoWhileLoop,
        NodeKind::ForEachLoop,
        NodeKind::If,
        NodeKind::BinOp,
        NodeKind::UnaryOp,
        NodeKind::Assignment,
        NodeKind::VarDef,
        NodeKind::VarRead,
        NodeKind::VarWrite,
        NodeKind::MethodCall,
        NodeKind::Return,
        NodeKind::Literal,
        NodeKind::TypeRef,
        NodeKind::FieldAccess,
        NodeKind::ArrayAccess,
    ];

    pub fn name(&self) -> &str {
        match self {
            NodeKind::Method => "Method",
            NodeKind::Constructor => "Constructor",
            NodeKind::Parameter => "Parameter",
            NodeKind::Block => "Block",
            NodeKind::ForLoop => "ForLoop",
            NodeKind::WhileLoop => "WhileLoop",
            NodeKind::DoWhileLoop => "DoWhileLoop",
            NodeKind::ForEachLoop => "ForEachLoop",
            NodeKind::If => "If",
            NodeKind::BinOp => "BinOp",
            NodeKind::UnaryOp => "UnaryOp",
            NodeKind::Assignment => "Assignment",
            NodeKind::VarDef => "VarDef",
            NodeKind::VarRead => "VarRead",
            NodeKind::VarWrite => "VarWrite",
            NodeKind::MethodCall => "MethodCall",
            NodeKind::Return => "Return",
            NodeKind::Literal => "Literal",
            NodeKind::TypeRef => "TypeRef",
            NodeKind::FieldAccess => "FieldAccess",
            NodeKind::ArrayAccess => "ArrayAccess",
            NodeKind::Other(label) => label,
        }
    }

    /// Inverse of [`NodeKind::name`] for the named kinds.
    pub fn from_name(name: &str) -> Option<NodeKind> {
        NodeKind::NAMED.iter().find(|k| k.name() == name).cloned()
    }

    pub fn is_executable(&self) -> bool {
        matches!(self, NodeKind::Method | NodeKind::Constructor)
    }

    /// Closed kinds have a fixed child layout: an ordered child pattern must
    /// account for every child. Open kinds carry auxiliary trailing children
    /// (parameters, loop init/update, call receivers) that an ordered child
    /// pattern may leave unmatched.
    pub fn is_closed(&self) -> bool {
        matches!(
            self,
            NodeKind::Block
                | NodeKind::If
                | NodeKind::BinOp
                | NodeKind::UnaryOp
                | NodeKind::Assignment
                | NodeKind::WhileLoop
                | NodeKind::DoWhileLoop
                | NodeKind::Return
                | NodeKind::FieldAccess
                | NodeKind::ArrayAccess
        )
    }
}

impl fmt::Display for NodeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NodeKind::Other(label) => write!(f, "Other({label})"),
            kind => f.write_str(kind.name()),
        }
    }
}

/// 1-based, inclusive line/column range within one file.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SourceSpan {
    pub file: Arc<str>,
    pub start_line: u32,
    pub start_col: u32,
    pub end_line: u32,
    pub end_col: u32,
}

impl SourceSpan {
    pub fn new(file: Arc<str>, start: (u32, u32), end: (u32, u32)) -> Self {
        SourceSpan {
            file,
            start_line: start.0,
            start_col: start.1,
            end_line: end.0,
            end_col: end.1,
        }
    }

    pub fn start(&self) -> (u32, u32) {
        (self.start_line, self.start_col)
    }

    pub fn end(&self) -> (u32, u32) {
        (self.end_line, self.end_col)
    }

    pub fn encloses(&self, other: &SourceSpan) -> bool {
        self.start() <= other.start() && other.end() <= self.end()
    }

    /// Position ordering key: start, then end.
    pub fn sort_key(&self) -> (&str, u32, u32, u32, u32) {
        (
            &self.file,
            self.start_line,
            self.start_col,
            self.end_line,
            self.end_col,
        )
    }
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{}:{}-{}:{}",
            self.file, self.start_line, self.start_col, self.end_line, self.end_col
        )
    }
}

/// Identity of a declared element, used for "same element" binding checks.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DeclRef(pub String);

impl DeclRef {
    pub fn local(id: NodeId) -> Self {
        DeclRef(id.to_string())
    }

    pub fn external(name: &str) -> Self {
        DeclRef(format!("ext:{name}"))
    }

    pub fn is_external(&self) -> bool {
        self.0.starts_with("ext:")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Node {
    pub id: NodeId,
    pub kind: NodeKind,
    pub attrs: BTreeMap<String, String>,
    pub children: Vec<Node>,
    pub span: SourceSpan,
}

impl Node {
    pub fn new(id: NodeId, kind: NodeKind, span: SourceSpan) -> Self {
        Node {
            id,
            kind,
            attrs: BTreeMap::new(),
            children: Vec::new(),
            span,
        }
    }

    pub fn with_attr(mut self, key: &str, value: impl Into<String>) -> Self {
        self.attrs.insert(key.to_string(), value.into());
        self
    }

    pub fn with_children(mut self, children: Vec<Node>) -> Self {
        self.children = children;
        self
    }

    pub fn attr(&self, key: &str) -> Option<&str> {
        self.attrs.get(key).map(String::as_str)
    }

    pub fn name(&self) -> Option<&str> {
        self.attr("name")
    }

    pub fn decl_ref(&self) -> Option<DeclRef> {
        self.attr("decl_id").map(|d| DeclRef(d.to_string()))
    }

    /// Pre-order traversal of this node and all descendants.
    pub fn walk(&self) -> Walk<'_> {
        Walk { stack: vec![self] }
    }

    pub fn find(&self, id: NodeId) -> Option<&Node> {
        self.walk().find(|n| n.id == id)
    }

    pub fn max_id(&self) -> NodeId {
        self.walk().map(|n| n.id).max().unwrap_or(self.id)
    }

    pub fn count(&self) -> usize {
        self.walk().count()
    }

    /// Structural equality that ignores node ids.
    pub fn same_shape(&self, other: &Node) -> bool {
        self.kind == other.kind
            && self.attrs_without_ids() == other.attrs_without_ids()
            && self.span == other.span
            && self.children.len() == other.children.len()
            && self
                .children
                .iter()
                .zip(&other.children)
                .all(|(a, b)| a.same_shape(b))
    }

    fn attrs_without_ids(&self) -> BTreeMap<&str, &str> {
        self.attrs
            .iter()
            .filter(|(k, _)| k.as_str() != "decl_id")
            .map(|(k, v)| (k.as_str(), v.as_str()))
            .collect()
    }

    /// Indented debug dump: one line per node with kind, attributes and span.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        self.dump_into(&mut out, 0);
        out
    }

    fn dump_into(&self, out: &mut String, depth: usize) {
        use std::fmt::Write;
        for _ in 0..depth {
            out.push_str("  ");
        }
        let _ = write!(out, "{} #{}", self.kind, self.id.0);
        for (k, v) in &self.attrs {
            let _ = write!(out, " {k}={v:?}");
        }
        let _ = writeln!(
            out,
            " @{}:{}-{}:{}",
            self.span.start_line, self.span.start_col, self.span.end_line, self.span.end_col
        );
        for child in &self.children {
            child.dump_into(out, depth + 1);
        }
    }
}

pub struct Walk<'a> {
    stack: Vec<&'a Node>,
}

impl<'a> Iterator for Walk<'a> {
    type Item = &'a Node;

    fn next(&mut self) -> Option<&'a Node> {
        let node = self.stack.pop()?;
        self.stack.extend(node.children.iter().rev());
        Some(node)
    }
}

/// Hands out fresh node ids for one compilation unit.
#[derive(Debug, Clone)]
pub struct IdGen {
    next: u32,
}

impl IdGen {
    pub fn new() -> Self {
        IdGen { next: 0 }
    }

    /// Continue numbering after every id already used in `root`.
    pub fn after(root: &Node) -> Self {
        IdGen {
            next: root.max_id().0 + 1,
        }
    }

    pub fn fresh(&mut self) -> NodeId {
        let id = NodeId(self.next);
        self.next += 1;
        id
    }
}

impl Default for IdGen {
    fn default() -> Self {
        Self::new()
    }
}
