//! Backtracking search over pattern and syntax trees.
//!
//! Matching is written in continuation-passing style: each step receives the
//! current state and a continuation for "the rest of the match". A step
//! returns `true` when at least one of its derived states led to a valid
//! final state. Non-greedy wildcards use that signal to stop after the
//! shortest consumption that completes.
//!
//! Every derived state counts against the budget: a successful node match,
//! each consumption tried by a wide wildcard and each landing site tried by
//! a depth wildcard.

use std::cell::{Cell, RefCell};
use std::rc::Rc;

use super::BoundValue;
use crate::ast::{Node, NodeId, NodeKind};
use crate::pattern::{ChildOrder, KindMatcher, PatId, PatternTreeNode};

struct Cons<T> {
    head: T,
    tail: List<T>,
}

type List<T> = Option<Rc<Cons<T>>>;

fn iter<T>(list: &List<T>) -> impl Iterator<Item = &T> {
    let mut cur = list.as_deref();
    std::iter::from_fn(move || {
        let c = cur?;
        cur = c.tail.as_deref();
        Some(&c.head)
    })
}

/// Persistent matching state. Cloning is O(1) and derived states share
/// structure with their parents.
#[derive(Clone, Default)]
pub(crate) struct State<'a> {
    pub steps: usize,
    map: List<(PatId, NodeId)>,
    binds: List<(&'a str, Rc<BoundValue>)>,
}

impl<'a> State<'a> {
    pub fn binding(&self, name: &str) -> Option<&BoundValue> {
        iter(&self.binds)
            .find(|(n, _)| *n == name)
            .map(|(_, v)| &**v)
    }

    fn maps_ast(&self, id: NodeId) -> bool {
        iter(&self.map).any(|(_, n)| *n == id)
    }

    fn with_mapping(&self, p: PatId, n: NodeId) -> Self {
        State {
            steps: self.steps + 1,
            map: Some(Rc::new(Cons {
                head: (p, n),
                tail: self.map.clone(),
            })),
            binds: self.binds.clone(),
        }
    }

    fn with_binding(mut self, name: &'a str, value: BoundValue) -> Self {
        self.binds = Some(Rc::new(Cons {
            head: (name, Rc::new(value)),
            tail: self.binds.take(),
        }));
        self
    }

    pub fn mapping(&self) -> Vec<(PatId, NodeId)> {
        let mut v: Vec<_> = iter(&self.map).copied().collect();
        v.sort();
        v
    }

    pub fn bindings(&self) -> impl Iterator<Item = (&'a str, &BoundValue)> {
        iter(&self.binds).map(|(n, v)| (*n, &**v))
    }

    pub fn from_parts(
        steps: usize,
        mapping: &[(PatId, NodeId)],
        bindings: impl IntoIterator<Item = (&'a str, BoundValue)>,
    ) -> Self {
        let mut s = State {
            steps,
            ..State::default()
        };
        for &(p, n) in mapping {
            s.map = Some(Rc::new(Cons {
                head: (p, n),
                tail: s.map.take(),
            }));
        }
        for (name, v) in bindings {
            s = s.with_binding(name, v);
        }
        s
    }
}

pub(crate) type Cont<'k, 'a> = dyn FnMut(&State<'a>) -> bool + 'k;

pub(crate) struct Engine {
    cross_executables: bool,
    budget: u64,
    pub states: Cell<u64>,
    pub exceeded: Cell<bool>,
}

impl Engine {
    pub fn new(cross_executables: bool, budget: u64) -> Self {
        Engine {
            cross_executables,
            budget,
            states: Cell::new(0),
            exceeded: Cell::new(false),
        }
    }

    fn derive(&self) -> bool {
        let n = self.states.get() + 1;
        self.states.set(n);
        if n > self.budget {
            self.exceeded.set(true);
            return false;
        }
        true
    }

    pub fn node<'a>(
        &self,
        p: &'a PatternTreeNode,
        n: &'a Node,
        st: &State<'a>,
        k: &mut Cont<'_, 'a>,
    ) -> bool {
        if self.exceeded.get() {
            return false;
        }
        match &p.matcher {
            KindMatcher::OneOf => {
                let mut r = false;
                for alt in &p.children {
                    r |= self.node(alt, n, st, k);
                }
                r
            }
            KindMatcher::Optional => self.node(&p.children[0], n, st, k),
            KindMatcher::DepthWildcard => {
                let mut r = false;
                for site in landing_sites(n, self.cross_executables) {
                    if !self.derive() {
                        return r;
                    }
                    r |= self.node(&p.children[0], site, st, k);
                }
                r
            }
            KindMatcher::WideWildcard => k(st),
            KindMatcher::Any | KindMatcher::AnyType | KindMatcher::Kind(_) => {
                self.concrete(p, n, st, k)
            }
        }
    }

    fn concrete<'a>(
        &self,
        p: &'a PatternTreeNode,
        n: &'a Node,
        st: &State<'a>,
        k: &mut Cont<'_, 'a>,
    ) -> bool {
        let kind_ok = match &p.matcher {
            KindMatcher::Kind(kind) => *kind == n.kind,
            KindMatcher::AnyType => n.kind == NodeKind::TypeRef,
            _ => true,
        };
        if !kind_ok || !p.predicates.iter().all(|q| q.holds(n)) || st.maps_ast(n.id) {
            return false;
        }
        let mut next = st.with_mapping(p.id, n.id);
        if let Some(name) = &p.binding {
            let value = BoundValue::of(n);
            match st.binding(name) {
                Some(bound) if bound.key != value.key => return false,
                Some(_) => {}
                None => next = next.with_binding(name, value),
            }
        }
        if !self.derive() {
            return false;
        }
        if p.children.is_empty() {
            return k(&next);
        }
        match p.child_order {
            ChildOrder::Ordered => self.seq(&p.children, &n.children, n.kind.is_closed(), &next, k),
            ChildOrder::Unordered => {
                let used = RefCell::new(vec![false; n.children.len()]);
                self.unordered(&p.children, &n.children, &used, &next, k)
            }
        }
    }

    /// Match `pats` positionally against `nodes`. A closed parent requires
    /// every node to be consumed.
    pub fn seq<'a>(
        &self,
        pats: &'a [PatternTreeNode],
        nodes: &'a [Node],
        closed: bool,
        st: &State<'a>,
        k: &mut Cont<'_, 'a>,
    ) -> bool {
        if self.exceeded.get() {
            return false;
        }
        let Some((head, rest)) = pats.split_first() else {
            return (nodes.is_empty() || !closed) && k(st);
        };
        match head.matcher {
            KindMatcher::WideWildcard => {
                let mut r = false;
                for skip in 0..=nodes.len() {
                    if !self.derive() {
                        return r;
                    }
                    let ok = self.seq(rest, &nodes[skip..], closed, st, k);
                    r |= ok;
                    if ok && !head.greedy {
                        break;
                    }
                }
                r
            }
            _ => {
                let mut r = false;
                if let Some((first, tail)) = nodes.split_first() {
                    r |= self.node(head, first, st, &mut |s: &State<'a>| {
                        self.seq(rest, tail, closed, s, k)
                    });
                }
                if head.is_nullable() {
                    r |= self.seq(rest, nodes, closed, st, k);
                }
                r
            }
        }
    }

    /// Injective assignment of `pats` to `nodes` in any order. Extra nodes
    /// are allowed, wide wildcards are no-ops and nullable patterns may stay
    /// unassigned.
    fn unordered<'a>(
        &self,
        pats: &'a [PatternTreeNode],
        nodes: &'a [Node],
        used: &RefCell<Vec<bool>>,
        st: &State<'a>,
        k: &mut Cont<'_, 'a>,
    ) -> bool {
        if self.exceeded.get() {
            return false;
        }
        let Some((head, rest)) = pats.split_first() else {
            return k(st);
        };
        if head.matcher == KindMatcher::WideWildcard {
            return self.unordered(rest, nodes, used, st, k);
        }
        let mut r = false;
        for (i, n) in nodes.iter().enumerate() {
            if used.borrow()[i] || !head.matcher.admits(&n.kind) {
                continue;
            }
            used.borrow_mut()[i] = true;
            r |= self.node(head, n, st, &mut |s: &State<'a>| {
                self.unordered(rest, nodes, used, s, k)
            });
            used.borrow_mut()[i] = false;
        }
        if head.is_nullable() {
            r |= self.unordered(rest, nodes, used, st, k);
        }
        r
    }
}

/// Preorder nodes of the subtree rooted at `n`, stopping at nested
/// methods unless `cross` is set. `n` itself is always included.
pub(crate) fn landing_sites(n: &Node, cross: bool) -> Vec<&Node> {
    let mut out = Vec::new();
    let mut stack = vec![n];
    while let Some(x) = stack.pop() {
        out.push(x);
        for c in x.children.iter().rev() {
            if cross || !c.kind.is_executable() {
                stack.push(c);
            }
        }
    }
    out
}
