use super::{IdGen, Node, NodeKind};

const COMPOUND_OPS: [&str; 11] = [
    "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<=", ">>=", ">>>=",
];

/// Rewrite `v op= e` into `v = v op e`.
///
/// The synthesized read and binary operation take the assignment's span; the
/// read copies the target's `name` and `decl_id`. Anything that is not a
/// compound assignment is returned unchanged.
pub fn normalize_compound_assignment(node: Node, ids: &mut IdGen) -> Node {
    if node.kind != NodeKind::Assignment {
        return node;
    }
    let op = match node.attr("op") {
        Some(op) if COMPOUND_OPS.contains(&op) => op.trim_end_matches('=').to_string(),
        _ => return node,
    };
    let mut node = node;
    if node.children.len() != 2 {
        // malformed; leave the operator in place rather than guess
        return node;
    }
    let span = node.span.clone();
    let rhs = node.children.pop().expect("two children");
    let lhs = node.children.pop().expect("two children");

    let read = as_read(&lhs, ids, &span);
    let bin = Node::new(ids.fresh(), NodeKind::BinOp, span)
        .with_attr("op", op)
        .with_children(vec![read, rhs]);
    node.attrs.insert("op".into(), "=".into());
    node.children = vec![lhs, bin];
    node
}

/// Apply [`normalize_compound_assignment`] to every node of a tree.
pub fn normalize_all_compound_assignments(mut root: Node, ids: &mut IdGen) -> Node {
    root.children = std::mem::take(&mut root.children)
        .into_iter()
        .map(|c| normalize_all_compound_assignments(c, ids))
        .collect();
    normalize_compound_assignment(root, ids)
}

fn as_read(target: &Node, ids: &mut IdGen, span: &super::SourceSpan) -> Node {
    let kind = match target.kind {
        NodeKind::VarWrite => NodeKind::VarRead,
        ref k => k.clone(),
    };
    let mut read = Node::new(ids.fresh(), kind, span.clone());
    read.attrs = target.attrs.clone();
    read.children = target
        .children
        .iter()
        .map(|c| as_read(c, ids, span))
        .collect();
    read
}
