//! Random Java methods and patterns abstracted from them.

use algorec::ast::{Node, NodeKind};
use algorec::pattern::{ChildOrder, KindMatcher, Pattern, PatternTreeNode, Predicate};
use rand::seq::SliceRandom;
use rand::Rng;

const VARS: [&str; 4] = ["a", "b", "n", "t"];
const OPS: [&str; 8] = ["+", "-", "*", "%", "<", "==", ">", "/"];
const BIND: [&str; 3] = ["x", "y", "z"];

struct Src<'r, R: Rng> {
    rng: &'r mut R,
    stmts: usize,
    limit: usize,
    locals: Vec<String>,
}

impl<R: Rng> Src<'_, R> {
    fn var(&mut self) -> String {
        let n = VARS.len() + self.locals.len();
        let i = self.rng.gen_range(0..n);
        if i < VARS.len() {
            VARS[i].to_string()
        } else {
            self.locals[i - VARS.len()].clone()
        }
    }

    fn expr(&mut self, depth: u32) -> String {
        let pick = if depth == 0 {
            self.rng.gen_range(0..2)
        } else {
            self.rng.gen_range(0..6)
        };
        match pick {
            0 => self.var(),
            1 => self.rng.gen_range(0..4).to_string(),
            2 | 3 => {
                let op = *OPS.choose(self.rng).unwrap();
                format!("{} {op} {}", self.expr(depth - 1), self.expr(depth - 1))
            }
            4 => format!("arr[{}]", self.expr(depth - 1)),
            _ => format!("f({})", self.expr(depth - 1)),
        }
    }

    fn cond(&mut self) -> String {
        let op = *["<", "<=", "!=", "=="].choose(self.rng).unwrap();
        format!("{} {op} {}", self.expr(1), self.expr(1))
    }

    fn block(&mut self, indent: usize, max: usize) -> String {
        let n = self.rng.gen_range(1..=max);
        let mut out = String::new();
        for _ in 0..n {
            if self.stmts >= self.limit {
                break;
            }
            out.push_str(&self.stmt(indent));
        }
        out
    }

    fn stmt(&mut self, indent: usize) -> String {
        self.stmts += 1;
        let pad = "    ".repeat(indent);
        let nested = indent < 4 && self.stmts + 1 < self.limit;
        let pick = self.rng.gen_range(0..if nested { 10 } else { 6 });
        match pick {
            0 => {
                let name = format!("v{}", self.locals.len());
                let line = format!("{pad}int {name} = {};\n", self.expr(2));
                self.locals.push(name);
                line
            }
            1 => format!("{pad}{} = {};\n", self.var(), self.expr(2)),
            2 => format!(
                "{pad}{} {}= {};\n",
                self.var(),
                ["+", "-", "*", "/"].choose(self.rng).unwrap(),
                self.expr(1)
            ),
            3 => format!("{pad}{}++;\n", self.var()),
            4 => format!("{pad}return {};\n", self.expr(2)),
            5 => format!("{pad}g({}, {});\n", self.expr(1), self.expr(1)),
            6 | 7 => {
                let c = self.cond();
                let then = self.block(indent + 1, 2);
                if self.rng.gen_bool(0.5) {
                    let other = self.block(indent + 1, 2);
                    format!("{pad}if ({c}) {{\n{then}{pad}}} else {{\n{other}{pad}}}\n")
                } else {
                    format!("{pad}if ({c}) {{\n{then}{pad}}}\n")
                }
            }
            8 => {
                let c = self.cond();
                let body = self.block(indent + 1, 3);
                format!("{pad}while ({c}) {{\n{body}{pad}}}\n")
            }
            _ => {
                let i = format!("i{}", self.stmts);
                let bound = self.var();
                self.locals.push(i.clone());
                let body = self.block(indent + 1, 3);
                format!("{pad}for (int {i} = 0; {i} < {bound}; {i}++) {{\n{body}{pad}}}\n")
            }
        }
    }
}

/// A class holding one method with at most `limit` statements.
pub fn java_method<R: Rng>(rng: &mut R, limit: usize) -> String {
    let mut s = Src {
        rng,
        stmts: 0,
        limit,
        locals: Vec::new(),
    };
    let body = s.block(2, limit);
    format!("class C {{\n    int m(int a, int b, int n, int t, int[] arr) {{\n{body}    }}\n}}\n")
}

/// A class with `count` methods of roughly 30 lines each.
pub fn java_class<R: Rng>(rng: &mut R, name: &str, count: usize) -> String {
    let mut out = format!("class {name} {{\n");
    for k in 0..count {
        let mut s = Src {
            rng: &mut *rng,
            stmts: 0,
            limit: 16,
            locals: Vec::new(),
        };
        let mut body = String::new();
        while body.lines().count() < 26 {
            s.stmts = 0;
            body.push_str(&s.block(2, 16));
        }
        out.push_str(&format!(
            "    int m{k}(int a, int b, int n, int t, int[] arr) {{\n{body}    }}\n\n"
        ));
    }
    out.push_str("}\n");
    out
}

struct Abstractor<'r, R: Rng> {
    rng: &'r mut R,
    budget: usize,
}

const KINDS: [NodeKind; 8] = [
    NodeKind::VarRead,
    NodeKind::Literal,
    NodeKind::BinOp,
    NodeKind::Assignment,
    NodeKind::If,
    NodeKind::Block,
    NodeKind::MethodCall,
    NodeKind::WhileLoop,
];

impl<R: Rng> Abstractor<'_, R> {
    fn take(&mut self) -> bool {
        if self.budget == 0 {
            return false;
        }
        self.budget -= 1;
        true
    }

    fn node(&mut self, n: &Node) -> PatternTreeNode {
        let r = self.rng.gen_range(0..100);
        if r < 8 && self.budget >= 2 {
            self.budget -= 2;
            let inner = self.maybe_optional(n);
            return PatternTreeNode::new(KindMatcher::OneOf)
                .with_children(vec![inner, self.leaf()]);
        }
        if r < 14 && self.budget >= 2 && !n.children.is_empty() {
            self.budget -= 1;
            let c = n.children.choose(self.rng).unwrap();
            let below: Vec<&Node> = c.walk().collect();
            let target = *below.choose(self.rng).unwrap();
            let inner = self.node(target);
            return PatternTreeNode::new(KindMatcher::DepthWildcard).with_children(vec![inner]);
        }
        let matcher = match self.rng.gen_range(0..100) {
            0..=9 => KindMatcher::Any,
            10..=15 => KindMatcher::Kind(KINDS.choose(self.rng).unwrap().clone()),
            _ if n.kind == NodeKind::TypeRef && self.rng.gen_bool(0.5) => KindMatcher::AnyType,
            _ => KindMatcher::Kind(n.kind.clone()),
        };
        let mut p = PatternTreeNode::new(matcher);
        if let Some(op) = n.attr("op") {
            if self.rng.gen_bool(0.4) {
                let other = *OPS.choose(self.rng).unwrap();
                p = p.with_predicate(Predicate::one_of("op", &[op, other]));
            }
        }
        if let Some(name) = n.attr("name") {
            if self.rng.gen_bool(0.2) {
                let v = if self.rng.gen_bool(0.7) {
                    name.to_string()
                } else {
                    VARS.choose(self.rng).unwrap().to_string()
                };
                p = p.with_predicate(Predicate::equals("name", &v));
            }
        }
        if matches!(
            n.kind,
            NodeKind::VarRead
                | NodeKind::VarWrite
                | NodeKind::VarDef
                | NodeKind::Literal
                | NodeKind::MethodCall
                | NodeKind::Parameter
        ) && self.rng.gen_bool(0.4)
        {
            p = p.with_binding(BIND.choose(self.rng).unwrap());
        }
        if n.children.is_empty() || self.budget == 0 || self.rng.gen_bool(0.2) {
            return p;
        }
        if self.rng.gen_bool(0.25) {
            let mut kids: Vec<&Node> = n.children.iter().collect();
            kids.shuffle(self.rng);
            let keep = self.rng.gen_range(1..=kids.len());
            let mut children = Vec::new();
            for c in kids.into_iter().take(keep) {
                if !self.take() {
                    break;
                }
                children.push(self.maybe_optional(c));
            }
            if self.rng.gen_bool(0.2) && self.take() {
                children.push(PatternTreeNode::new(KindMatcher::WideWildcard));
            }
            return p.with_order(ChildOrder::Unordered).with_children(children);
        }
        let mut children = Vec::new();
        let mut wide = false;
        for c in &n.children {
            let roll = self.rng.gen_range(0..100);
            if roll < 15 && self.take() {
                let mut w = PatternTreeNode::new(KindMatcher::WideWildcard);
                w.greedy = self.rng.gen_bool(0.5);
                children.push(w);
                wide = true;
            } else if roll < 25 && wide {
                continue;
            } else if self.take() {
                children.push(self.maybe_optional(c));
            } else {
                break;
            }
        }
        if self.rng.gen_bool(0.1) && self.take() {
            children.push(self.leaf());
        }
        p.with_children(children)
    }

    fn maybe_optional(&mut self, n: &Node) -> PatternTreeNode {
        if self.budget >= 1 && self.rng.gen_bool(0.12) {
            self.budget -= 1;
            PatternTreeNode::new(KindMatcher::Optional).with_children(vec![self.node(n)])
        } else {
            self.node(n)
        }
    }

    fn leaf(&mut self) -> PatternTreeNode {
        let mut p = PatternTreeNode::kind(KINDS.choose(self.rng).unwrap().clone());
        if self.rng.gen_bool(0.3) {
            p = p.with_binding(BIND.choose(self.rng).unwrap());
        }
        p
    }
}

/// A pattern of at most `max_nodes` nodes modeled on a random subtree of
/// `entry`, with random loosening and mutation so that some instances fail.
pub fn pattern_for<R: Rng>(rng: &mut R, entry: &Node, max_nodes: usize) -> Pattern {
    let nodes: Vec<&Node> = entry.walk().collect();
    let start = if rng.gen_bool(0.3) {
        entry
    } else {
        nodes[rng.gen_range(0..nodes.len())]
    };
    let mut a = Abstractor {
        rng,
        budget: max_nodes - 1,
    };
    let root = a.node(start);
    assert!(root.size() <= max_nodes, "{}", root.outline());
    Pattern::new("random", root)
}

/// Whether every wide wildcard under an ordered parent is greedy, so that
/// the engine explores exactly what the oracle does.
pub fn all_greedy(p: &PatternTreeNode) -> bool {
    p.children.iter().all(|c| {
        let ok = c.matcher != KindMatcher::WideWildcard
            || c.greedy
            || p.child_order == ChildOrder::Unordered;
        ok && all_greedy(c)
    })
}
