//! Builder → pattern tree translation.
//!
//! Expansions performed here:
//!
//! | builder form | pattern tree |
//! |---|---|
//! | `block().after(p)` | `[*, p]`, plus one trailing `*` for the block |
//! | `block().anywhere_after(p)` | `[*, depthWildcard(p)]`, plus the trailing `*` |
//! | `block().has(p)..` | children `[p, ..]`, unordered |
//! | `x.anywhere_in_rhs(p)` | rhs slot `depthWildcard(p)` |
//! | `ite().optional_otherwise(p)` | else slot `optional(block().after(p))` |
//! | `ite()` with no else configured | else slot `optional(any())` |
//! | `any_loop()` / `var_def_or_ass()` / `any_mod()` | `oneOf` of the configured alternatives |
//! | `method().parameters(ps)` | `[body, ps..]` plus `arity = len(ps)` |
//! | `method().has_parameters(ps)` | `[body, ps..]`, unordered |
//! | `method_call().args(ps)` | `[ps..]` plus `arity = len(ps)` |
//! | `method_call().has_args(ps)` | `[ps..]`, unordered |
//! | `bin_op().compare_commutative()` | binOp children unordered |
//!
//! Binary operations always get two operand children and unary operations
//! one; other constructs get positional children only once one of their
//! slots is configured, with `any()` filling the remaining positions.

use thiserror::Error;

use super::{BindingTable, ChildOrder, KindMatcher, PatternTreeNode, Predicate, PredicateTest};
use crate::ast::NodeKind;
use crate::dsl::{BlockItem, DslError, PatternBuilder, Placement, Slot};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{path}: {error}")]
pub struct CompileError {
    pub path: String,
    pub error: DslError,
}

/// Compile a builder into a pattern tree with preorder ids and its binding table.
pub fn compile(root: &PatternBuilder) -> Result<(PatternTreeNode, BindingTable), CompileError> {
    if let Some((path, error)) = root.first_error(&mut Vec::new()) {
        return Err(CompileError { path, error });
    }
    let mut tree = node(root);
    tree.renumber(0);
    let table = BindingTable::from_tree(&tree);
    Ok((tree, table))
}

fn any_node() -> PatternTreeNode {
    PatternTreeNode::new(KindMatcher::Any)
}

fn wide_node() -> PatternTreeNode {
    PatternTreeNode::new(KindMatcher::WideWildcard)
}

fn depth_node(p: PatternTreeNode) -> PatternTreeNode {
    PatternTreeNode::new(KindMatcher::DepthWildcard).with_children(vec![p])
}

fn optional_node(p: PatternTreeNode) -> PatternTreeNode {
    PatternTreeNode::new(KindMatcher::Optional).with_children(vec![p])
}

fn node(b: &PatternBuilder) -> PatternTreeNode {
    let mut n = PatternTreeNode::new(b.construct.clone());
    n.binding = b.binding.as_ref().map(|id| id.as_str().to_string());
    n.greedy = b.greedy;
    if !b.ops.is_empty() {
        n.predicates.push(Predicate {
            attr: "op".into(),
            test: PredicateTest::In(b.ops.clone()),
        });
    }
    if let Some(name) = &b.name {
        n.predicates.push(Predicate::equals("name", name));
    }
    if let Some(text) = &b.text {
        n.predicates.push(Predicate::equals("text", text));
    }

    let kind = match &b.construct {
        KindMatcher::Kind(k) => k.clone(),
        _ => {
            n.children = b.items.iter().map(node).collect();
            return n;
        }
    };

    let slot = |s: Slot| b.slots.iter().find(|v| v.slot == s).map(slot_tree);
    let configured = |ss: &[Slot]| ss.iter().any(|s| b.slots.iter().any(|v| v.slot == *s));
    let or_any = |t: Option<PatternTreeNode>| t.unwrap_or_else(any_node);

    match kind {
        NodeKind::Method | NodeKind::Constructor => {
            let body = slot(Slot::Body);
            match &b.params {
                Some(list) => {
                    let mut children = vec![or_any(body)];
                    children.extend(list.items.iter().map(node));
                    n.children = children;
                    if list.unordered {
                        n.child_order = ChildOrder::Unordered;
                    } else {
                        n.predicates.push(Predicate::arity(list.items.len()));
                    }
                }
                None => n.children = body.into_iter().collect(),
            }
        }
        NodeKind::Block => {
            let has_mode = b.block.iter().any(|i| matches!(i, BlockItem::Has(_)));
            let after_mode = b
                .block
                .iter()
                .any(|i| matches!(i, BlockItem::After(_) | BlockItem::AnywhereAfter(_)));
            for item in &b.block {
                match item {
                    BlockItem::Next(p) | BlockItem::Has(p) => n.children.push(node(p)),
                    BlockItem::After(p) => {
                        n.children.push(wide_node());
                        n.children.push(node(p));
                    }
                    BlockItem::AnywhereAfter(p) => {
                        n.children.push(wide_node());
                        n.children.push(depth_node(node(p)));
                    }
                }
            }
            let ends_wide = n
                .children
                .last()
                .is_some_and(|c| c.matcher == KindMatcher::WideWildcard);
            if after_mode && !ends_wide {
                n.children.push(wide_node());
            }
            if has_mode {
                n.child_order = ChildOrder::Unordered;
            }
        }
        NodeKind::ForLoop | NodeKind::WhileLoop | NodeKind::DoWhileLoop => {
            if configured(&[Slot::Condition, Slot::Body]) {
                n.children = vec![or_any(slot(Slot::Condition)), or_any(slot(Slot::Body))];
            }
        }
        NodeKind::ForEachLoop => {
            if configured(&[Slot::Iterable, Slot::Body]) {
                n.children = vec![or_any(slot(Slot::Iterable)), or_any(slot(Slot::Body))];
            }
        }
        NodeKind::If => {
            if configured(&[Slot::Condition, Slot::Then, Slot::Otherwise]) {
                let otherwise = slot(Slot::Otherwise).unwrap_or_else(|| optional_node(any_node()));
                n.children = vec![
                    or_any(slot(Slot::Condition)),
                    or_any(slot(Slot::Then)),
                    otherwise,
                ];
            }
        }
        NodeKind::BinOp => {
            n.children = vec![or_any(slot(Slot::Lhs)), or_any(slot(Slot::Rhs))];
            if b.commutative {
                n.child_order = ChildOrder::Unordered;
            }
        }
        NodeKind::UnaryOp => n.children = vec![or_any(slot(Slot::Operand))],
        NodeKind::Assignment => {
            if configured(&[Slot::Lhs, Slot::Rhs]) {
                n.children = vec![or_any(slot(Slot::Lhs)), or_any(slot(Slot::Rhs))];
            }
        }
        NodeKind::VarDef => {
            if let Some(init) = slot(Slot::Rhs) {
                n.children = vec![PatternTreeNode::new(KindMatcher::AnyType), init];
            }
        }
        NodeKind::MethodCall => {
            if let Some(list) = &b.args {
                n.children = list.items.iter().map(node).collect();
                if list.unordered {
                    n.child_order = ChildOrder::Unordered;
                } else {
                    n.predicates.push(Predicate::arity(list.items.len()));
                }
            }
        }
        NodeKind::Return => n.children = slot(Slot::Value).into_iter().collect(),
        NodeKind::FieldAccess => n.children = slot(Slot::Target).into_iter().collect(),
        NodeKind::ArrayAccess => {
            if configured(&[Slot::Array, Slot::Index]) {
                n.children = vec![or_any(slot(Slot::Array)), or_any(slot(Slot::Index))];
            }
        }
        _ => {}
    }
    n
}

fn slot_tree(v: &crate::dsl::SlotValue) -> PatternTreeNode {
    let inner = node(&v.pattern);
    match v.placement {
        Placement::Direct => inner,
        Placement::Anywhere => depth_node(inner),
        Placement::OptionalOtherwise => {
            // optional_node(block().after(p))
            let block = PatternTreeNode::kind(NodeKind::Block).with_children(vec![
                wide_node(),
                inner,
                wide_node(),
            ]);
            optional_node(block)
        }
    }
}
