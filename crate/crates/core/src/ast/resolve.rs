use std::collections::HashMap;

use super::{DeclRef, Node, NodeKind};

const CLASS_LIKE: [&str; 6] = [
    "class",
    "interface",
    "enum",
    "record",
    "annotation_type",
    "class_body",
];

/// Attach `decl_id` to every declaration, variable access and same-unit call.
///
/// Variables resolve through Java's lexical scopes (blocks, loop headers,
/// lambda and catch parameters, then the fields of enclosing classes). Names
/// with no visible declaration get an external id keyed by the name, so two
/// unresolved uses of the same name still compare equal. Calls without a
/// receiver (or with `this`) resolve to a method of an enclosing class with
/// the same name and arity.
pub fn resolve_references(mut root: Node) -> Node {
    let mut resolver = Resolver::default();
    resolver.visit(&mut root);
    root
}

#[derive(Default)]
struct Resolver {
    scopes: Vec<HashMap<String, String>>,
    /// Per enclosing class: (name, arity) -> method id.
    methods: Vec<HashMap<(String, usize), String>>,
}

impl Resolver {
    fn lookup(&self, name: &str) -> String {
        self.scopes
            .iter()
            .rev()
            .find_map(|s| s.get(name).cloned())
            .unwrap_or_else(|| DeclRef::external(name).0)
    }

    fn declare(&mut self, node: &mut Node) {
        let decl = DeclRef::local(node.id).0;
        node.attrs.insert("decl_id".into(), decl.clone());
        if let (Some(name), Some(scope)) = (node.name().map(str::to_string), self.scopes.last_mut())
        {
            scope.insert(name, decl);
        }
    }

    fn scoped(&mut self, f: impl FnOnce(&mut Self)) {
        self.scopes.push(HashMap::new());
        f(self);
        self.scopes.pop();
    }

    fn visit_all(&mut self, nodes: &mut [Node]) {
        for n in nodes {
            self.visit(n);
        }
    }

    fn visit(&mut self, node: &mut Node) {
        match &node.kind {
            NodeKind::Method | NodeKind::Constructor => {
                node.attrs
                    .insert("decl_id".into(), DeclRef::local(node.id).0);
                let n = 1.min(node.children.len());
                self.scoped(|r| {
                    let (body, params) = node.children.split_at_mut(n);
                    for p in params.iter_mut() {
                        r.visit(p);
                    }
                    r.visit_all(body);
                });
            }
            NodeKind::Parameter | NodeKind::VarDef => {
                self.visit_all(&mut node.children);
                self.declare(node);
            }
            NodeKind::Block => self.scoped(|r| r.visit_all(&mut node.children)),
            NodeKind::ForLoop => {
                let n = 2.min(node.children.len());
                self.scoped(|r| {
                    // [cond, body, init.., update..]: inits first so they are in scope
                    let (head, rest) = node.children.split_at_mut(n);
                    r.visit_all(rest);
                    r.visit_all(head);
                })
            }
            NodeKind::ForEachLoop => {
                let n = 1.min(node.children.len());
                let (head, rest) = node.children.split_at_mut(n);
                self.visit_all(head);
                self.scoped(|r| {
                    let (body, var) = rest.split_at_mut(1.min(rest.len()));
                    r.visit_all(var);
                    r.visit_all(body);
                });
            }
            NodeKind::VarRead | NodeKind::VarWrite => {
                let decl = match node.name() {
                    Some(name) => self.lookup(name),
                    None => DeclRef::external("?").0,
                };
                node.attrs.insert("decl_id".into(), decl);
            }
            NodeKind::MethodCall => {
                self.visit_all(&mut node.children);
                let arity: usize = node.attr("arity").and_then(|a| a.parse().ok()).unwrap_or(0);
                let local_receiver = node.children.len() == arity
                    || node
                        .children
                        .last()
                        .is_some_and(|r| r.kind == NodeKind::Other("this".into()));
                let target = node.name().and_then(|name| {
                    local_receiver
                        .then(|| {
                            self.methods
                                .iter()
                                .rev()
                                .find_map(|m| m.get(&(name.to_string(), arity)).cloned())
                        })
                        .flatten()
                });
                match target {
                    Some(id) => {
                        node.attrs.insert("decl_id".into(), id);
                    }
                    None => {
                        node.attrs.remove("decl_id");
                    }
                }
            }
            NodeKind::Other(label) if CLASS_LIKE.contains(&label.as_str()) => {
                let mut fields = HashMap::new();
                let mut methods = HashMap::new();
                for member in node.children.iter_mut() {
                    match &member.kind {
                        NodeKind::VarDef => {
                            let decl = DeclRef::local(member.id).0;
                            if let Some(name) = member.name() {
                                fields.insert(name.to_string(), decl);
                            }
                        }
                        NodeKind::Other(l) if l == "enum_constant" => {
                            let decl = DeclRef::local(member.id).0;
                            member.attrs.insert("decl_id".into(), decl.clone());
                            if let Some(name) = member.name() {
                                fields.insert(name.to_string(), decl);
                            }
                        }
                        NodeKind::Method | NodeKind::Constructor => {
                            if let (Some(name), Some(arity)) = (
                                member.name(),
                                member.attr("arity").and_then(|a| a.parse().ok()),
                            ) {
                                methods
                                    .entry((name.to_string(), arity))
                                    .or_insert_with(|| DeclRef::local(member.id).0);
                            }
                        }
                        _ => {}
                    }
                }
                self.scopes.push(fields);
                self.methods.push(methods);
                for member in node.children.iter_mut() {
                    if member.kind == NodeKind::VarDef {
                        // fields are pre-declared; only resolve initializers
                        self.visit_all(&mut member.children);
                        member
                            .attrs
                            .insert("decl_id".into(), DeclRef::local(member.id).0);
                    } else {
                        self.visit(member);
                    }
                }
                self.methods.pop();
                self.scopes.pop();
            }
            NodeKind::Other(label)
                if matches!(
                    label.as_str(),
                    "lambda" | "catch" | "try" | "switch" | "case"
                ) =>
            {
                self.scoped(|r| r.visit_all(&mut node.children))
            }
            _ => self.visit_all(&mut node.children),
        }
    }
}
