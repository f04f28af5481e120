//! Compiled pattern trees: the low-level form the matcher executes.
//!
//! A [`PatternTreeNode`] tests one AST node (or, for wildcards and
//! combinators, a position in the tree) and carries attribute predicates,
//! an optional binding and its children with their matching order.

mod compile;
mod format;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::ast::{Node, NodeKind};

pub use compile::{compile, CompileError};
pub use format::{deserialize, serialize, FormatError, FORMAT_TAG, FORMAT_VERSION};

/// Preorder index of a node within its pattern tree.
pub type PatId = u32;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum KindMatcher {
    Kind(NodeKind),
    Any,
    AnyType,
    WideWildcard,
    DepthWildcard,
    OneOf,
    Optional,
}

impl KindMatcher {
    pub fn is_combinator(&self) -> bool {
        matches!(
            self,
            KindMatcher::WideWildcard
                | KindMatcher::DepthWildcard
                | KindMatcher::OneOf
                | KindMatcher::Optional
        )
    }

    /// Whether the matcher can ever accept a node of `kind`.
    pub fn admits(&self, kind: &NodeKind) -> bool {
        match self {
            KindMatcher::Kind(k) => k == kind,
            KindMatcher::AnyType => *kind == NodeKind::TypeRef,
            _ => true,
        }
    }
}

impl fmt::Display for KindMatcher {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KindMatcher::Kind(k) => write!(f, "{k}"),
            KindMatcher::Any => f.write_str("any"),
            KindMatcher::AnyType => f.write_str("anyType"),
            KindMatcher::WideWildcard => f.write_str("*"),
            KindMatcher::DepthWildcard => f.write_str("depthWildcard"),
            KindMatcher::OneOf => f.write_str("oneOf"),
            KindMatcher::Optional => f.write_str("optional"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChildOrder {
    #[default]
    Ordered,
    Unordered,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PredicateTest {
    In(Vec<String>),
    Equals(String),
    ArityEquals(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Predicate {
    pub attr: String,
    #[serde(flatten)]
    pub test: PredicateTest,
}

impl Predicate {
    pub fn one_of(attr: &str, values: &[&str]) -> Self {
        Predicate {
            attr: attr.into(),
            test: PredicateTest::In(values.iter().map(|s| s.to_string()).collect()),
        }
    }

    pub fn equals(attr: &str, value: &str) -> Self {
        Predicate {
            attr: attr.into(),
            test: PredicateTest::Equals(value.into()),
        }
    }

    pub fn arity(n: usize) -> Self {
        Predicate {
            attr: "arity".into(),
            test: PredicateTest::ArityEquals(n),
        }
    }

    pub fn holds(&self, node: &Node) -> bool {
        let Some(value) = node.attr(&self.attr) else {
            return false;
        };
        match &self.test {
            PredicateTest::In(set) => set.iter().any(|s| s == value),
            PredicateTest::Equals(s) => s == value,
            PredicateTest::ArityEquals(n) => value.parse::<usize>().ok() == Some(*n),
        }
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.test {
            PredicateTest::In(set) => write!(f, "{} ∈ {{{}}}", self.attr, set.join(", ")),
            PredicateTest::Equals(s) => write!(f, "{} = {s:?}", self.attr),
            PredicateTest::ArityEquals(n) => write!(f, "{} = {n}", self.attr),
        }
    }
}

#[derive(Debug, Clone)]
pub struct PatternTreeNode {
    pub id: PatId,
    pub matcher: KindMatcher,
    pub predicates: Vec<Predicate>,
    pub children: Vec<PatternTreeNode>,
    pub child_order: ChildOrder,
    pub binding: Option<String>,
    /// Only meaningful on wide wildcards.
    pub greedy: bool,
}

impl PatternTreeNode {
    pub fn new(matcher: KindMatcher) -> Self {
        PatternTreeNode {
            id: 0,
            matcher,
            predicates: Vec::new(),
            children: Vec::new(),
            child_order: ChildOrder::Ordered,
            binding: None,
            greedy: false,
        }
    }

    pub fn kind(kind: NodeKind) -> Self {
        Self::new(KindMatcher::Kind(kind))
    }

    pub fn with_children(mut self, children: Vec<PatternTreeNode>) -> Self {
        self.children = children;
        self
    }

    pub fn with_predicate(mut self, p: Predicate) -> Self {
        self.predicates.push(p);
        self
    }

    pub fn with_order(mut self, order: ChildOrder) -> Self {
        self.child_order = order;
        self
    }

    pub fn with_binding(mut self, name: &str) -> Self {
        self.binding = Some(name.into());
        self
    }

    /// Whether the node may match nothing at its position: an optional, or a
    /// one-of with such an alternative.
    pub fn is_nullable(&self) -> bool {
        match self.matcher {
            KindMatcher::Optional => true,
            KindMatcher::OneOf => self.children.iter().any(|c| c.is_nullable()),
            _ => false,
        }
    }

    pub fn walk(&self) -> Vec<&PatternTreeNode> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(n) = stack.pop() {
            out.push(n);
            stack.extend(n.children.iter().rev());
        }
        out
    }

    pub fn size(&self) -> usize {
        1 + self.children.iter().map(|c| c.size()).sum::<usize>()
    }

    /// Assign preorder ids starting at `next`; returns the next free id.
    pub fn renumber(&mut self, next: PatId) -> PatId {
        self.id = next;
        let mut next = next + 1;
        for c in &mut self.children {
            next = c.renumber(next);
        }
        next
    }

    /// Field-by-field equality ignoring ids. Children of an unordered node
    /// compare as multisets.
    pub fn structural_eq(&self, other: &PatternTreeNode) -> bool {
        if self.matcher != other.matcher
            || self.child_order != other.child_order
            || self.binding != other.binding
            || self.greedy != other.greedy
            || self.children.len() != other.children.len()
        {
            return false;
        }
        let mut a = self.predicates.clone();
        let mut b = other.predicates.clone();
        a.sort_by(|x, y| x.attr.cmp(&y.attr));
        b.sort_by(|x, y| x.attr.cmp(&y.attr));
        if a != b {
            return false;
        }
        match self.child_order {
            ChildOrder::Ordered => self
                .children
                .iter()
                .zip(&other.children)
                .all(|(x, y)| x.structural_eq(y)),
            ChildOrder::Unordered => {
                let mut used = vec![false; other.children.len()];
                multiset_eq(&self.children, &other.children, &mut used)
            }
        }
    }

    /// Indented outline with predicates and bindings, one node per line.
    pub fn outline(&self) -> String {
        let mut out = String::new();
        self.outline_into(&mut out, 0);
        out
    }

    fn outline_into(&self, out: &mut String, depth: usize) {
        use std::fmt::Write;
        for _ in 0..depth {
            out.push_str("  ");
        }
        let label = match &self.matcher {
            KindMatcher::Kind(k) => dsl_name(k).to_string(),
            m => m.to_string(),
        };
        out.push_str(&label);
        let mut first = true;
        for p in &self.predicates {
            let text = match (&p.attr[..], &p.test) {
                ("op", PredicateTest::In(set)) => format!("∈ {{{}}}", set.join(", ")),
                _ => p.to_string(),
            };
            let _ = write!(out, "{}{text}", if first { " " } else { ", " });
            first = false;
        }
        if self.child_order == ChildOrder::Unordered {
            out.push_str(" [unordered]");
        }
        if self.greedy {
            out.push_str(" [greedy]");
        }
        if let Some(b) = &self.binding {
            let _ = write!(out, " → {b}");
        }
        out.push('\n');
        for c in &self.children {
            c.outline_into(out, depth + 1);
        }
    }
}

fn multiset_eq(a: &[PatternTreeNode], b: &[PatternTreeNode], used: &mut [bool]) -> bool {
    let Some((head, rest)) = a.split_first() else {
        return true;
    };
    for j in 0..b.len() {
        if !used[j] && head.structural_eq(&b[j]) {
            used[j] = true;
            if multiset_eq(rest, b, used) {
                return true;
            }
            used[j] = false;
        }
    }
    false
}

/// The builder name of a kind, as used in outlines.
pub fn dsl_name(kind: &NodeKind) -> &str {
    match kind {
        NodeKind::Method => "method",
        NodeKind::Constructor => "constructor",
        NodeKind::Parameter => "parameter",
        NodeKind::Block => "block",
        NodeKind::ForLoop => "forLoop",
        NodeKind::WhileLoop => "whileLoop",
        NodeKind::DoWhileLoop => "doWhileLoop",
        NodeKind::ForEachLoop => "forEachLoop",
        NodeKind::If => "ite",
        NodeKind::BinOp => "binOp",
        NodeKind::UnaryOp => "unaryOp",
        NodeKind::Assignment => "assignment",
        NodeKind::VarDef => "varDef",
        NodeKind::VarRead => "varRead",
        NodeKind::VarWrite => "varWrite",
        NodeKind::MethodCall => "methodCall",
        NodeKind::Return => "returns",
        NodeKind::Literal => "literal",
        NodeKind::TypeRef => "typeRef",
        NodeKind::FieldAccess => "fieldAccess",
        NodeKind::ArrayAccess => "arrayAccess",
        NodeKind::Other(label) => label,
    }
}

/// Binding identifier → every pattern node that binds or constrains it.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BindingTable {
    pub sites: BTreeMap<String, Vec<PatId>>,
}

impl BindingTable {
    pub fn from_tree(root: &PatternTreeNode) -> Self {
        let mut sites: BTreeMap<String, Vec<PatId>> = BTreeMap::new();
        for n in root.walk() {
            if let Some(b) = &n.binding {
                sites.entry(b.clone()).or_default().push(n.id);
            }
        }
        BindingTable { sites }
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.sites.keys().map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.sites.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sites.is_empty()
    }
}

/// A named, versioned, compiled pattern ready for matching.
#[derive(Debug, Clone)]
pub struct Pattern {
    pub name: String,
    pub version: u32,
    pub root: PatternTreeNode,
    pub bindings: BindingTable,
    /// Let depth wildcards search inside nested methods (local and anonymous classes).
    pub cross_executables: bool,
}

impl Pattern {
    pub fn new(name: &str, mut root: PatternTreeNode) -> Self {
        root.renumber(0);
        let bindings = BindingTable::from_tree(&root);
        Pattern {
            name: name.into(),
            version: 1,
            root,
            bindings,
            cross_executables: false,
        }
    }

    pub fn from_builder(
        name: &str,
        builder: &crate::dsl::PatternBuilder,
    ) -> Result<Self, CompileError> {
        let (root, _) = compile(builder)?;
        Ok(Pattern::new(name, root))
    }

    pub fn with_version(mut self, version: u32) -> Self {
        self.version = version;
        self
    }

    pub fn node(&self, id: PatId) -> Option<&PatternTreeNode> {
        self.root.walk().into_iter().find(|n| n.id == id)
    }

    pub fn structural_eq(&self, other: &Pattern) -> bool {
        self.name == other.name
            && self.version == other.version
            && self.cross_executables == other.cross_executables
            && self.root.structural_eq(&other.root)
    }

    /// Binding identifiers that every successful match must bind: those with
    /// at least one site outside all `oneOf` alternatives and `optional`
    /// children. Sites that are only conditional constrain a match just when
    /// their branch is taken.
    pub fn required_bindings(&self) -> Vec<&str> {
        fn collect<'p>(n: &'p PatternTreeNode, conditional: bool, out: &mut Vec<&'p str>) {
            if let (Some(b), false) = (&n.binding, conditional) {
                if !out.contains(&b.as_str()) {
                    out.push(b);
                }
            }
            let cond =
                conditional || matches!(n.matcher, KindMatcher::OneOf | KindMatcher::Optional);
            for c in &n.children {
                collect(c, cond, out);
            }
        }
        let mut out = Vec::new();
        collect(&self.root, false, &mut out);
        out.sort_unstable();
        out
    }

    /// Whether the root only ever matches executables, so matching is
    /// attempted at the entry point itself rather than inside it.
    pub fn is_method_rooted(&self) -> bool {
        fn executable_only(n: &PatternTreeNode) -> bool {
            match &n.matcher {
                KindMatcher::Kind(k) => k.is_executable(),
                KindMatcher::OneOf => n.children.iter().all(executable_only),
                _ => false,
            }
        }
        executable_only(&self.root)
    }
}
