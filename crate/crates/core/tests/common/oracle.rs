//! Exhaustive reference matcher.
//!
//! Each step returns the full list of states it can produce; nothing is
//! pruned and wide wildcards always try every consumption. Derived states
//! are counted the same way as in the engine so the totals can be compared
//! on patterns whose wide wildcards are all greedy.

use std::collections::{BTreeMap, BTreeSet};

use algorec::ast::{Node, NodeId, NodeKind};
use algorec::pattern::{ChildOrder, KindMatcher, PatId, Pattern, PatternTreeNode, PredicateTest};

#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct OState {
    pub map: Vec<(PatId, NodeId)>,
    pub binds: BTreeMap<String, String>,
}

impl OState {
    fn maps(&self, n: NodeId) -> bool {
        self.map.iter().any(|(_, m)| *m == n)
    }

    /// Mapping sorted by pattern id.
    pub fn sorted(&self) -> Vec<(PatId, NodeId)> {
        let mut v = self.map.clone();
        v.sort();
        v
    }
}

#[derive(Debug, Clone, Default)]
pub struct Outcome {
    /// Valid final states with the node each covers.
    pub states: Vec<(NodeId, OState)>,
    /// Derived states, counted like the engine does.
    pub explored: u64,
}

impl Outcome {
    pub fn matched(&self) -> bool {
        !self.states.is_empty()
    }

    pub fn covered(&self) -> BTreeSet<NodeId> {
        self.states.iter().map(|(c, _)| *c).collect()
    }
}

pub fn binding_key(n: &Node) -> String {
    let display = n
        .attr("name")
        .or_else(|| n.attr("text"))
        .map(str::to_string)
        .unwrap_or_else(|| n.kind.name().to_string());
    if matches!(
        n.kind,
        NodeKind::Method | NodeKind::Constructor | NodeKind::MethodCall
    ) {
        format!("sig:{}", n.attr("sig").unwrap_or(&display))
    } else if let Some(d) = n.attr("decl_id") {
        format!("decl:{d}")
    } else if let Some(t) = n.attr("text") {
        format!("lit:{t}")
    } else {
        format!("node:{}", n.id)
    }
}

pub fn predicates_hold(p: &PatternTreeNode, n: &Node) -> bool {
    p.predicates
        .iter()
        .all(|q| match (n.attr(&q.attr), &q.test) {
            (None, _) => false,
            (Some(v), PredicateTest::In(set)) => set.iter().any(|s| s == v),
            (Some(v), PredicateTest::Equals(s)) => s == v,
            (Some(v), PredicateTest::ArityEquals(k)) => v.parse::<usize>() == Ok(*k),
        })
}

pub fn kind_holds(p: &PatternTreeNode, n: &Node) -> bool {
    match &p.matcher {
        KindMatcher::Kind(k) => *k == n.kind,
        KindMatcher::AnyType => n.kind == NodeKind::TypeRef,
        KindMatcher::Any => true,
        _ => false,
    }
}

fn executable(k: &NodeKind) -> bool {
    matches!(k, NodeKind::Method | NodeKind::Constructor)
}

/// `n` and its descendants in preorder, not entering nested executables
/// unless `cross` is set.
pub fn sites(n: &Node, cross: bool) -> Vec<&Node> {
    let mut out = vec![n];
    for c in &n.children {
        if cross || !executable(&c.kind) {
            out.extend(sites(c, cross));
        }
    }
    out
}

/// Names bound at some site reachable without passing through `oneOf` or
/// `optional`.
pub fn required(p: &PatternTreeNode) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    if let Some(b) = &p.binding {
        out.insert(b.clone());
    }
    if !matches!(p.matcher, KindMatcher::OneOf | KindMatcher::Optional) {
        for c in &p.children {
            out.extend(required(c));
        }
    }
    out
}

/// Patterns that may also match an empty position.
fn nullable(p: &PatternTreeNode) -> bool {
    match p.matcher {
        KindMatcher::Optional => true,
        KindMatcher::OneOf => p.children.iter().any(nullable),
        _ => false,
    }
}

fn method_only(p: &PatternTreeNode) -> bool {
    match &p.matcher {
        KindMatcher::Kind(k) => executable(k),
        KindMatcher::OneOf => p.children.iter().all(method_only),
        _ => false,
    }
}

struct Oracle {
    cross: bool,
    explored: u64,
}

impl Oracle {
    fn node(&mut self, p: &PatternTreeNode, n: &Node, st: &OState) -> Vec<OState> {
        match &p.matcher {
            KindMatcher::OneOf => p
                .children
                .iter()
                .flat_map(|a| self.node(a, n, st))
                .collect(),
            KindMatcher::Optional => self.node(&p.children[0], n, st),
            KindMatcher::DepthWildcard => {
                let mut out = Vec::new();
                for s in sites(n, self.cross) {
                    self.explored += 1;
                    out.extend(self.node(&p.children[0], s, st));
                }
                out
            }
            KindMatcher::WideWildcard => vec![st.clone()],
            _ => {
                if !kind_holds(p, n) || !predicates_hold(p, n) || st.maps(n.id) {
                    return Vec::new();
                }
                let mut next = st.clone();
                next.map.push((p.id, n.id));
                if let Some(b) = &p.binding {
                    let key = binding_key(n);
                    match next.binds.get(b) {
                        Some(k) if *k != key => return Vec::new(),
                        Some(_) => {}
                        None => {
                            next.binds.insert(b.clone(), key);
                        }
                    }
                }
                self.explored += 1;
                if p.children.is_empty() {
                    return vec![next];
                }
                match p.child_order {
                    ChildOrder::Ordered => {
                        self.seq(&p.children, &n.children, n.kind.is_closed(), &next)
                    }
                    ChildOrder::Unordered => {
                        let mut used = vec![false; n.children.len()];
                        self.unordered(&p.children, &n.children, &mut used, &next)
                    }
                }
            }
        }
    }

    fn seq(
        &mut self,
        pats: &[PatternTreeNode],
        nodes: &[Node],
        closed: bool,
        st: &OState,
    ) -> Vec<OState> {
        let Some((head, rest)) = pats.split_first() else {
            return if nodes.is_empty() || !closed {
                vec![st.clone()]
            } else {
                Vec::new()
            };
        };
        let mut out = Vec::new();
        match head.matcher {
            KindMatcher::WideWildcard => {
                for skip in 0..=nodes.len() {
                    self.explored += 1;
                    out.extend(self.seq(rest, &nodes[skip..], closed, st));
                }
            }
            _ => {
                if let Some((first, tail)) = nodes.split_first() {
                    for s in self.node(head, first, st) {
                        out.extend(self.seq(rest, tail, closed, &s));
                    }
                }
                if nullable(head) {
                    out.extend(self.seq(rest, nodes, closed, st));
                }
            }
        }
        out
    }

    fn unordered(
        &mut self,
        pats: &[PatternTreeNode],
        nodes: &[Node],
        used: &mut Vec<bool>,
        st: &OState,
    ) -> Vec<OState> {
        let Some((head, rest)) = pats.split_first() else {
            return vec![st.clone()];
        };
        if head.matcher == KindMatcher::WideWildcard {
            return self.unordered(rest, nodes, used, st);
        }
        let mut out = Vec::new();
        for i in 0..nodes.len() {
            if used[i] {
                continue;
            }
            used[i] = true;
            for s in self.node(head, &nodes[i], st) {
                out.extend(self.unordered(rest, nodes, used, &s));
            }
            used[i] = false;
        }
        if nullable(head) {
            out.extend(self.unordered(rest, nodes, used, st));
        }
        out
    }
}

/// Every valid final state of `pattern` within one entry point.
pub fn run(pattern: &Pattern, entry: &Node) -> Outcome {
    let mut o = Oracle {
        cross: pattern.cross_executables,
        explored: 0,
    };
    let req = required(&pattern.root);
    let candidates = if method_only(&pattern.root) {
        vec![entry]
    } else {
        sites(entry, false)
    };
    let mut states = Vec::new();
    for cand in candidates {
        for s in o.seq(
            std::slice::from_ref(&pattern.root),
            std::slice::from_ref(cand),
            true,
            &OState::default(),
        ) {
            if !req.iter().all(|r| s.binds.contains_key(r)) {
                continue;
            }
            let covered = s.map.iter().min().map_or(cand.id, |(_, n)| *n);
            states.push((covered, s));
        }
    }
    Outcome {
        states,
        explored: o.explored,
    }
}
