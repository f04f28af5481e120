//! Independent check that a reported match is a genuine embedding of the
//! pattern into the entry's syntax tree.

use std::collections::{BTreeMap, BTreeSet};

use algorec::ast::{Node, NodeId};
use algorec::matcher::{MatchResult, MatchState};
use algorec::pattern::{ChildOrder, KindMatcher, PatId, Pattern, PatternTreeNode};

use super::oracle::{binding_key, kind_holds, predicates_hold, required, sites};

struct Tree<'a> {
    nodes: BTreeMap<NodeId, &'a Node>,
    parent: BTreeMap<NodeId, NodeId>,
}

impl<'a> Tree<'a> {
    fn new(entry: &'a Node, cross: bool) -> Self {
        let mut t = Tree {
            nodes: BTreeMap::new(),
            parent: BTreeMap::new(),
        };
        for n in sites(entry, cross) {
            t.nodes.insert(n.id, n);
            for c in &n.children {
                t.parent.insert(c.id, n.id);
            }
        }
        t
    }

    /// The child of `ancestor` whose subtree holds `n`.
    fn child_toward(&self, ancestor: NodeId, n: NodeId) -> Option<NodeId> {
        let mut cur = n;
        loop {
            let p = *self.parent.get(&cur)?;
            if p == ancestor {
                return Some(cur);
            }
            cur = p;
        }
    }
}

fn concrete(p: &PatternTreeNode) -> bool {
    matches!(
        p.matcher,
        KindMatcher::Kind(_) | KindMatcher::Any | KindMatcher::AnyType
    )
}

/// The concrete pattern node a child slot resolved to, and whether a depth
/// wildcard lies on the way.
fn resolve(p: &PatternTreeNode, map: &BTreeMap<PatId, NodeId>) -> Option<(PatId, bool)> {
    match p.matcher {
        KindMatcher::WideWildcard => None,
        KindMatcher::OneOf => p.children.iter().find_map(|c| resolve(c, map)),
        KindMatcher::Optional => resolve(&p.children[0], map),
        KindMatcher::DepthWildcard => resolve(&p.children[0], map).map(|(id, _)| (id, true)),
        _ => map.contains_key(&p.id).then_some((p.id, false)),
    }
}

/// Violations found in one state, empty when it is sound.
pub fn check_state(
    pattern: &Pattern,
    entry: &Node,
    result: &MatchResult,
    st: &MatchState,
) -> Vec<String> {
    let tree = Tree::new(entry, pattern.cross_executables);
    let mut errs = Vec::new();
    let map: BTreeMap<PatId, NodeId> = st.mapping.iter().copied().collect();
    if map.len() != st.mapping.len() {
        errs.push("pattern node mapped twice".into());
    }
    let targets: BTreeSet<NodeId> = map.values().copied().collect();
    if targets.len() != map.len() {
        errs.push("syntax node mapped twice".into());
    }

    let pats: BTreeMap<PatId, &PatternTreeNode> =
        pattern.root.walk().into_iter().map(|p| (p.id, p)).collect();
    for (&pid, &nid) in &map {
        let Some(p) = pats.get(&pid) else {
            errs.push(format!("unknown pattern node {pid}"));
            continue;
        };
        let Some(n) = tree.nodes.get(&nid) else {
            errs.push(format!("pattern node {pid} mapped outside the entry"));
            continue;
        };
        if !concrete(p) {
            errs.push(format!("combinator {pid} is mapped"));
        }
        if !kind_holds(p, n) {
            errs.push(format!("{pid}: {} does not accept {}", p.matcher, n.kind));
        }
        if !predicates_hold(p, n) {
            errs.push(format!("{pid}: predicate fails on {}", n.kind));
        }
        if let Some(b) = &p.binding {
            match st.bindings.get(b) {
                Some(v) if v.key == binding_key(n) => {}
                Some(v) => errs.push(format!(
                    "{b}: {} bound but site {pid} is {}",
                    v.key,
                    binding_key(n)
                )),
                None => errs.push(format!("{b}: site {pid} matched but unbound")),
            }
        }
    }
    for b in required(&pattern.root) {
        if !st.bindings.contains_key(&b) {
            errs.push(format!("required binding {b} missing"));
        }
    }

    for p in pattern.root.walk() {
        let Some(&at) = map.get(&p.id) else { continue };
        if !concrete(p) || p.children.is_empty() {
            continue;
        }
        let ast = tree.nodes[&at];
        let mut positions = Vec::new();
        for c in &p.children {
            let Some((cid, deep)) = resolve(c, &map) else {
                continue;
            };
            let target = map[&cid];
            let pos = if deep {
                if target == at {
                    errs.push(format!("{cid}: depth wildcard landed on its own parent"));
                    continue;
                }
                tree.child_toward(at, target)
            } else {
                tree.parent
                    .get(&target)
                    .filter(|&&q| q == at)
                    .map(|_| target)
            };
            match pos.and_then(|id| ast.children.iter().position(|x| x.id == id)) {
                Some(i) => positions.push(i),
                None => errs.push(format!("{cid} is not below its parent {}", p.id)),
            }
        }
        if p.child_order == ChildOrder::Ordered {
            if positions.windows(2).any(|w| w[0] >= w[1]) {
                errs.push(format!("children of {} out of order", p.id));
            }
            let flexible = p
                .children
                .iter()
                .any(|c| c.matcher == KindMatcher::WideWildcard || c.is_nullable());
            if !flexible
                && ast.kind.is_closed()
                && positions != (0..ast.children.len()).collect::<Vec<_>>()
            {
                errs.push(format!(
                    "closed {} not fully consumed by {}",
                    ast.kind, p.id
                ));
            }
        }
    }

    let covered = map.iter().next().map_or(result.node, |(_, n)| *n);
    if covered != result.node {
        errs.push("state covers a different node than its result".into());
    }
    match tree.nodes.get(&result.node) {
        Some(n) if n.span == result.span => {}
        _ => errs.push("result span differs from the covered node".into()),
    }
    errs
}

/// Violations across every state of every result.
pub fn check(pattern: &Pattern, entry: &Node, results: &[MatchResult]) -> Vec<String> {
    let mut errs = Vec::new();
    for r in results {
        if r.entry.node != entry.id {
            errs.push(format!("{}: result from another entry", r.entry.name));
        }
        for st in &r.states {
            for e in check_state(pattern, entry, r, st) {
                errs.push(format!(
                    "{}:{} {}: {e}",
                    r.entry.file, r.span.start_line, pattern.name
                ));
            }
        }
        let mut alts: BTreeMap<&str, BTreeSet<&str>> = BTreeMap::new();
        for st in &r.states {
            for (k, v) in &st.bindings {
                alts.entry(k).or_default().insert(&v.key);
            }
        }
        let reported: BTreeMap<&str, BTreeSet<&str>> = r
            .bindings
            .iter()
            .map(|(k, vs)| (k.as_str(), vs.iter().map(|v| v.key.as_str()).collect()))
            .collect();
        if alts != reported {
            errs.push(format!(
                "{}: reported bindings differ from its states",
                r.entry.name
            ));
        }
    }
    errs
}
