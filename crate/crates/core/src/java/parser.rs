//! Recursive-descent Java parser that lowers directly into [`Node`] trees.
//!
//! Constructs without a dedicated [`NodeKind`] become `Other(label)` nodes
//! that keep their children, so depth searches still see their contents.

use std::sync::Arc;

use super::lexer::{LitKind, Tok, Token};
use super::ParseError;
use crate::ast::{IdGen, Node, NodeKind, SourceSpan};

type PResult<T> = Result<T, ParseError>;

const PRIMITIVES: [&str; 9] = [
    "boolean", "byte", "char", "short", "int", "long", "float", "double", "void",
];

const MODIFIERS: [&str; 12] = [
    "public",
    "private",
    "protected",
    "static",
    "final",
    "abstract",
    "native",
    "synchronized",
    "transient",
    "volatile",
    "strictfp",
    "default",
];

const ASSIGN_OPS: [&str; 12] = [
    "=", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<=", ">>=", ">>>=",
];

pub struct Parser {
    toks: Vec<Token>,
    pos: usize,
    ids: IdGen,
    file: Arc<str>,
}

struct Modifiers {
    start: Option<(u32, u32)>,
    words: Vec<&'static str>,
}

impl Parser {
    pub fn new(file: Arc<str>, toks: Vec<Token>) -> Self {
        Parser {
            toks,
            pos: 0,
            ids: IdGen::new(),
            file,
        }
    }

    pub fn into_ids(self) -> IdGen {
        self.ids
    }

    // ---- token helpers ----

    fn tok(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn tok_at(&self, ahead: usize) -> &Tok {
        let i = (self.pos + ahead).min(self.toks.len() - 1);
        &self.toks[i].tok
    }

    fn is_op(&self, op: &str) -> bool {
        matches!(self.tok(), Tok::Op(o) if *o == op)
    }

    fn is_op_at(&self, ahead: usize, op: &str) -> bool {
        matches!(self.tok_at(ahead), Tok::Op(o) if *o == op)
    }

    fn is_kw(&self, kw: &str) -> bool {
        matches!(self.tok(), Tok::Keyword(k) if *k == kw)
    }

    fn is_ident_named(&self, name: &str) -> bool {
        matches!(self.tok(), Tok::Ident(n) if n == name)
    }

    fn advance(&mut self) -> &Token {
        let t = &self.toks[self.pos];
        if self.pos < self.toks.len() - 1 {
            self.pos += 1;
        }
        t
    }

    fn eat_op(&mut self, op: &str) -> bool {
        if self.is_op(op) {
            self.advance();
            true
        } else {
            false
        }
    }

    fn eat_kw(&mut self, kw: &str) -> bool {
        if self.is_kw(kw) {
            self.advance();
            true
        } else {
            false
        }
    }

    fn expect_op(&mut self, op: &str) -> PResult<()> {
        if self.eat_op(op) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{op}`")))
        }
    }

    fn ident(&mut self) -> PResult<String> {
        match self.tok().clone() {
            Tok::Ident(name) => {
                self.advance();
                Ok(name)
            }
            _ => Err(self.error("expected identifier")),
        }
    }

    fn error(&self, msg: impl Into<String>) -> ParseError {
        let t = &self.toks[self.pos];
        let found = match &t.tok {
            Tok::Ident(s) | Tok::Literal(_, s) => s.clone(),
            Tok::Keyword(k) | Tok::Op(k) => k.to_string(),
            Tok::Eof => "end of file".into(),
        };
        ParseError {
            file: self.file.to_string(),
            line: t.start.0,
            col: t.start.1,
            message: format!("{}, found `{found}`", msg.into()),
        }
    }

    fn start(&self) -> (u32, u32) {
        self.toks[self.pos].start
    }

    fn prev_end(&self) -> (u32, u32) {
        if self.pos == 0 {
            self.toks[0].start
        } else {
            self.toks[self.pos - 1].end
        }
    }

    fn span_from(&self, start: (u32, u32)) -> SourceSpan {
        let end = self.prev_end().max(start);
        SourceSpan::new(self.file.clone(), start, end)
    }

    fn node(&mut self, kind: NodeKind, start: (u32, u32)) -> Node {
        let span = self.span_from(start);
        Node::new(self.ids.fresh(), kind, span)
    }

    fn node_at(&mut self, kind: NodeKind, span: SourceSpan) -> Node {
        Node::new(self.ids.fresh(), kind, span)
    }

    fn other(&mut self, label: &str, start: (u32, u32)) -> Node {
        self.node(NodeKind::Other(label.to_string()), start)
    }

    /// Split a compound `>>`-style token when closing type arguments.
    fn eat_closing_angle(&mut self) -> PResult<()> {
        let rest = match self.tok() {
            Tok::Op(">") => {
                self.advance();
                return Ok(());
            }
            Tok::Op(">>") => ">",
            Tok::Op(">>>") => ">>",
            Tok::Op(">=") => "=",
            Tok::Op(">>=") => ">=",
            Tok::Op(">>>=") => ">>=",
            _ => return Err(self.error("expected `>`")),
        };
        let t = &mut self.toks[self.pos];
        t.tok = Tok::Op(rest);
        t.start.1 += 1;
        Ok(())
    }

    fn skip_balanced(&mut self, open: &str, close: &str) -> PResult<()> {
        self.expect_op(open)?;
        let mut depth = 1;
        while depth > 0 {
            if matches!(self.tok(), Tok::Eof) {
                return Err(self.error(format!("unbalanced `{open}`")));
            }
            if self.is_op(open) {
                depth += 1;
            } else if self.is_op(close) {
                depth -= 1;
            }
            self.advance();
        }
        Ok(())
    }

    // ---- compilation unit & declarations ----

    pub fn compilation_unit(&mut self) -> PResult<Node> {
        let start = self.start();
        let mut members = Vec::new();
        loop {
            if matches!(self.tok(), Tok::Eof) {
                break;
            }
            if self.eat_op(";") {
                continue;
            }
            if self.is_kw("import") || self.is_kw("package") {
                while !self.eat_op(";") {
                    if matches!(self.tok(), Tok::Eof) {
                        return Err(self.error("expected `;`"));
                    }
                    self.advance();
                }
                continue;
            }
            if self.is_op("@") && !self.is_kw_at(1, "interface") {
                // package annotations or type modifiers
                let mods = self.modifiers()?;
                if self.is_kw("package") {
                    continue;
                }
                let decl = self.type_decl(mods)?;
                members.push(decl);
                continue;
            }
            let mods = self.modifiers()?;
            if self.is_ident_named("module") || self.is_ident_named("open") {
                return Err(self.error("module declarations are not supported"));
            }
            members.push(self.type_decl(mods)?);
        }
        let span = if members.is_empty() {
            SourceSpan::new(self.file.clone(), start, start)
        } else {
            self.span_from(start)
        };
        Ok(self
            .node_at(NodeKind::Other("compilation_unit".into()), span)
            .with_children(members))
    }

    fn is_kw_at(&self, ahead: usize, kw: &str) -> bool {
        matches!(self.tok_at(ahead), Tok::Keyword(k) if *k == kw)
    }

    fn annotation(&mut self) -> PResult<()> {
        self.expect_op("@")?;
        self.ident()?;
        while self.is_op(".") && matches!(self.tok_at(1), Tok::Ident(_)) {
            self.advance();
            self.advance();
        }
        if self.is_op("(") {
            self.skip_balanced("(", ")")?;
        }
        Ok(())
    }

    fn modifiers(&mut self) -> PResult<Modifiers> {
        let mut mods = Modifiers {
            start: None,
            words: Vec::new(),
        };
        loop {
            if self.is_op("@") && !self.is_kw_at(1, "interface") {
                mods.start.get_or_insert(self.start());
                self.annotation()?;
            } else if let Tok::Keyword(k) = self.tok() {
                let k = *k;
                // `default:` / `default ->` belong to switch
                if MODIFIERS.contains(&k)
                    && !(k == "default" && (self.is_op_at(1, ":") || self.is_op_at(1, "->")))
                {
                    mods.start.get_or_insert(self.start());
                    mods.words.push(k);
                    self.advance();
                } else {
                    break;
                }
            } else if self.is_ident_named("sealed")
                && matches!(
                    self.tok_at(1),
                    Tok::Keyword("class" | "interface" | "abstract" | "public")
                )
            {
                mods.start.get_or_insert(self.start());
                self.advance();
            } else if self.is_ident_named("non")
                && self.is_op_at(1, "-")
                && matches!(self.tok_at(2), Tok::Ident(s) if s == "sealed")
            {
                mods.start.get_or_insert(self.start());
                self.advance();
                self.advance();
                self.advance();
            } else {
                break;
            }
        }
        Ok(mods)
    }

    fn at_type_decl(&self) -> bool {
        self.is_kw("class")
            || self.is_kw("interface")
            || self.is_kw("enum")
            || (self.is_op("@") && self.is_kw_at(1, "interface"))
            || (self.is_ident_named("record")
                && matches!(self.tok_at(1), Tok::Ident(_))
                && (self.is_op_at(2, "(") || self.is_op_at(2, "<")))
    }

    fn type_decl(&mut self, mods: Modifiers) -> PResult<Node> {
        let start = mods.start.unwrap_or_else(|| self.start());
        let label = if self.eat_kw("class") {
            "class"
        } else if self.eat_kw("interface") {
            "interface"
        } else if self.eat_kw("enum") {
            "enum"
        } else if self.is_op("@") && self.is_kw_at(1, "interface") {
            self.advance();
            self.advance();
            "annotation_type"
        } else if self.is_ident_named("record") {
            self.advance();
            "record"
        } else {
            return Err(self.error("expected type declaration"));
        };
        let name = self.ident()?;
        if self.is_op("<") {
            self.type_params()?;
        }
        let mut members = Vec::new();
        if label == "record" {
            let header_start = self.start();
            let params = self.formal_params()?;
            let header = self
                .other("record_header", header_start)
                .with_children(params);
            members.push(header);
        }
        // extends / implements / permits clauses
        loop {
            if self.eat_kw("extends") || self.eat_kw("implements") || self.eat_ident("permits") {
                self.type_text()?;
                while self.eat_op(",") {
                    self.type_text()?;
                }
            } else {
                break;
            }
        }
        members.extend(self.class_body(label == "enum", &name)?);
        let words = mods.words.join(" ");
        let mut node = self
            .other(label, start)
            .with_attr("name", name)
            .with_children(members);
        if !words.is_empty() {
            node.attrs.insert("modifiers".into(), words);
        }
        Ok(node)
    }

    fn eat_ident(&mut self, name: &str) -> bool {
        if self.is_ident_named(name) {
            self.advance();
            true
        } else {
            false
        }
    }

    fn type_params(&mut self) -> PResult<()> {
        self.expect_op("<")?;
        let mut depth = 1;
        while depth > 0 {
            match self.tok() {
                Tok::Eof => return Err(self.error("unbalanced type parameters")),
                Tok::Op("<") => {
                    depth += 1;
                    self.advance();
                }
                Tok::Op(">" | ">>" | ">>>") => {
                    self.eat_closing_angle()?;
                    depth -= 1;
                }
                _ => {
                    self.advance();
                }
            }
        }
        Ok(())
    }

    fn class_body(&mut self, is_enum: bool, class_name: &str) -> PResult<Vec<Node>> {
        self.expect_op("{")?;
        let mut members = Vec::new();
        if is_enum {
            self.enum_constants(&mut members)?;
        }
        while !self.eat_op("}") {
            if matches!(self.tok(), Tok::Eof) {
                return Err(self.error("expected `}`"));
            }
            members.extend(self.member(class_name)?);
        }
        Ok(members)
    }

    fn enum_constants(&mut self, out: &mut Vec<Node>) -> PResult<()> {
        loop {
            if self.eat_op(";") || self.is_op("}") {
                return Ok(());
            }
            let start = self.start();
            while self.is_op("@") {
                self.annotation()?;
            }
            let name = self.ident()?;
            let mut children = Vec::new();
            if self.is_op("(") {
                children = self.arguments()?;
            }
            if self.is_op("{") {
                let body_start = self.start();
                let body = self.class_body(false, &name)?;
                children.push(self.other("class_body", body_start).with_children(body));
            }
            out.push(
                self.other("enum_constant", start)
                    .with_attr("name", name)
                    .with_children(children),
            );
            if !self.eat_op(",") {
                if !self.is_op("}") {
                    self.expect_op(";")?;
                }
                return Ok(());
            }
        }
    }

    fn member(&mut self, class_name: &str) -> PResult<Vec<Node>> {
        if self.eat_op(";") {
            return Ok(vec![]);
        }
        let mods = self.modifiers()?;
        let start = mods.start.unwrap_or_else(|| self.start());
        if self.is_op("{") {
            let body = self.block()?;
            let kind = if mods.words.contains(&"static") {
                "static"
            } else {
                "instance"
            };
            let node = self
                .node(NodeKind::Method, start)
                .with_attr("name", "")
                .with_attr("arity", "0")
                .with_attr("sig", "/0")
                .with_attr("initializer", kind)
                .with_attr("return_type", "void")
                .with_attr("param_types", "")
                .with_children(vec![body]);
            return Ok(vec![node]);
        }
        if self.at_type_decl() {
            return Ok(vec![self.type_decl(mods)?]);
        }
        if self.is_op("<") {
            self.type_params()?;
        }
        // constructor: Name '(' ; compact record constructor: Name '{'
        if let Tok::Ident(name) = self.tok().clone() {
            if name == class_name && (self.is_op_at(1, "(") || self.is_op_at(1, "{")) {
                self.advance();
                let params = if self.is_op("(") {
                    self.formal_params()?
                } else {
                    vec![]
                };
                self.throws_clause()?;
                let body = self.block()?;
                return Ok(vec![self.executable(
                    NodeKind::Constructor,
                    start,
                    name,
                    "",
                    &mods,
                    body,
                    params,
                )]);
            }
        }
        let type_start = self.start();
        let ty = self.type_text()?;
        let type_span = self.span_from(type_start);
        let name = self.ident()?;
        if self.is_op("(") {
            let params = self.formal_params()?;
            let mut ret = ty;
            while self.is_op("[") {
                self.advance();
                self.expect_op("]")?;
                ret.push_str("[]");
            }
            self.throws_clause()?;
            let body = if self.is_op("{") {
                self.block()?
            } else {
                if self.eat_kw("default") {
                    // annotation element default value
                    while !self.is_op(";") {
                        if matches!(self.tok(), Tok::Eof) {
                            return Err(self.error("expected `;`"));
                        }
                        self.advance();
                    }
                }
                let s = self.start();
                self.expect_op(";")?;
                self.other("no_body", s)
            };
            return Ok(vec![self.executable(
                NodeKind::Method,
                start,
                name,
                &ret,
                &mods,
                body,
                params,
            )]);
        }
        // field declarators
        let mut fields = Vec::new();
        let mut first = Some(name);
        loop {
            let name = match first.take() {
                Some(n) => n,
                None => self.ident()?,
            };
            let mut var = self.declarator_rest(start, name, &ty, &type_span)?;
            var.attrs.insert("field".into(), "true".into());
            fields.push(var);
            if !self.eat_op(",") {
                break;
            }
        }
        self.expect_op(";")?;
        Ok(fields)
    }

    fn throws_clause(&mut self) -> PResult<()> {
        if self.eat_kw("throws") {
            self.type_text()?;
            while self.eat_op(",") {
                self.type_text()?;
            }
        }
        Ok(())
    }

    #[allow(clippy::too_many_arguments)]
    fn executable(
        &mut self,
        kind: NodeKind,
        start: (u32, u32),
        name: String,
        ret: &str,
        mods: &Modifiers,
        body: Node,
        params: Vec<Node>,
    ) -> Node {
        let arity = params.len();
        let types: Vec<&str> = params.iter().filter_map(|p| p.attr("type")).collect();
        let param_types = types.join(",");
        let mut children = vec![body];
        children.extend(params);
        self.node(kind, start)
            .with_attr("sig", format!("{name}/{arity}"))
            .with_attr("name", name)
            .with_attr("arity", arity.to_string())
            .with_attr("return_type", ret)
            .with_attr("param_types", param_types)
            .with_attr("modifiers", mods.words.join(" "))
            .with_children(children)
    }

    fn formal_params(&mut self) -> PResult<Vec<Node>> {
        self.expect_op("(")?;
        let mut params = Vec::new();
        if self.eat_op(")") {
            return Ok(params);
        }
        loop {
            let mods = self.modifiers()?;
            let start = mods.start.unwrap_or_else(|| self.start());
            let type_start = self.start();
            let mut ty = self.type_text()?;
            if self.eat_op("...") {
                ty.push_str("...");
            }
            let type_span = self.span_from(type_start);
            if self.is_kw("this") {
                // receiver parameter
                self.advance();
            } else {
                let name = self.ident()?;
                while self.is_op("[") {
                    self.advance();
                    self.expect_op("]")?;
                    ty.push_str("[]");
                }
                let tref = self.type_ref(&ty, type_span);
                params.push(
                    self.node(NodeKind::Parameter, start)
                        .with_attr("name", name)
                        .with_attr("type", ty)
                        .with_children(vec![tref]),
                );
            }
            if !self.eat_op(",") {
                break;
            }
        }
        self.expect_op(")")?;
        Ok(params)
    }

    fn type_ref(&mut self, text: &str, span: SourceSpan) -> Node {
        self.node_at(NodeKind::TypeRef, span)
            .with_attr("name", text)
    }

    /// Parse a type and return its source text (generics and dims included).
    fn type_text(&mut self) -> PResult<String> {
        while self.is_op("@") {
            self.annotation()?;
        }
        let mut text = match self.tok().clone() {
            Tok::Keyword(k) if PRIMITIVES.contains(&k) => {
                self.advance();
                k.to_string()
            }
            Tok::Ident(name) => {
                self.advance();
                let mut text = name;
                loop {
                    if self.is_op("<") {
                        text.push_str(&self.type_args()?);
                    }
                    if self.is_op(".") && matches!(self.tok_at(1), Tok::Ident(_) | Tok::Op("@")) {
                        self.advance();
                        while self.is_op("@") {
                            self.annotation()?;
                        }
                        text.push('.');
                        text.push_str(&self.ident()?);
                    } else {
                        break;
                    }
                }
                text
            }
            Tok::Op("?") => {
                self.advance();
                let mut text = "?".to_string();
                if self.eat_kw("extends") {
                    text.push_str(" extends ");
                    text.push_str(&self.type_text()?);
                } else if self.eat_kw("super") {
                    text.push_str(" super ");
                    text.push_str(&self.type_text()?);
                }
                return Ok(text);
            }
            _ => return Err(self.error("expected type")),
        };
        loop {
            while self.is_op("@") {
                self.annotation()?;
            }
            if self.is_op("[") && self.is_op_at(1, "]") {
                self.advance();
                self.advance();
                text.push_str("[]");
            } else {
                break;
            }
        }
        Ok(text)
    }

    fn type_args(&mut self) -> PResult<String> {
        self.expect_op("<")?;
        let mut text = "<".to_string();
        if self.is_op(">") {
            self.advance();
            return Ok("<>".into());
        }
        loop {
            text.push_str(&self.type_text()?);
            while self.eat_op("&") {
                text.push('&');
                text.push_str(&self.type_text()?);
            }
            if self.eat_op(",") {
                text.push(',');
            } else {
                break;
            }
        }
        self.eat_closing_angle()?;
        text.push('>');
        Ok(text)
    }

    // ---- statements ----

    pub fn block(&mut self) -> PResult<Node> {
        let start = self.start();
        self.expect_op("{")?;
        let mut stmts = Vec::new();
        while !self.eat_op("}") {
            if matches!(self.tok(), Tok::Eof) {
                return Err(self.error("expected `}`"));
            }
            stmts.extend(self.statement()?);
        }
        Ok(self.node(NodeKind::Block, start).with_children(stmts))
    }

    /// Statement bodies are always `Block`s; a bare statement gets a synthetic one.
    fn body(&mut self) -> PResult<Node> {
        if self.is_op("{") {
            return self.block();
        }
        let start = self.start();
        let stmts = self.statement()?;
        Ok(self.node(NodeKind::Block, start).with_children(stmts))
    }

    fn statement(&mut self) -> PResult<Vec<Node>> {
        let start = self.start();
        match self.tok().clone() {
            Tok::Op("{") => Ok(vec![self.block()?]),
            Tok::Op(";") => {
                self.advance();
                Ok(vec![self.other("empty", start)])
            }
            Tok::Keyword("if") => {
                self.advance();
                let cond = self.paren_expr()?;
                let then = self.body()?;
                let mut children = vec![cond, then];
                if self.eat_kw("else") {
                    children.push(self.body()?);
                }
                Ok(vec![self.node(NodeKind::If, start).with_children(children)])
            }
            Tok::Keyword("while") => {
                self.advance();
                let cond = self.paren_expr()?;
                let body = self.body()?;
                Ok(vec![self
                    .node(NodeKind::WhileLoop, start)
                    .with_children(vec![cond, body])])
            }
            Tok::Keyword("do") => {
                self.advance();
                let body = self.body()?;
                if !self.eat_kw("while") {
                    return Err(self.error("expected `while`"));
                }
                let cond = self.paren_expr()?;
                self.expect_op(";")?;
                Ok(vec![self
                    .node(NodeKind::DoWhileLoop, start)
                    .with_children(vec![cond, body])])
            }
            Tok::Keyword("for") => Ok(vec![self.for_statement()?]),
            Tok::Keyword("return") => {
                self.advance();
                let mut children = Vec::new();
                if !self.is_op(";") {
                    children.push(self.expr()?);
                }
                self.expect_op(";")?;
                Ok(vec![self
                    .node(NodeKind::Return, start)
                    .with_children(children)])
            }
            Tok::Keyword("throw") => {
                self.advance();
                let e = self.expr()?;
                self.expect_op(";")?;
                Ok(vec![self.other("throw", start).with_children(vec![e])])
            }
            Tok::Keyword(k @ ("break" | "continue")) => {
                self.advance();
                let mut node_label = None;
                if let Tok::Ident(l) = self.tok().clone() {
                    self.advance();
                    node_label = Some(l);
                }
                self.expect_op(";")?;
                let mut n = self.other(k, start);
                if let Some(l) = node_label {
                    n.attrs.insert("label".into(), l);
                }
                Ok(vec![n])
            }
            Tok::Keyword("try") => Ok(vec![self.try_statement()?]),
            Tok::Keyword("switch") => {
                let s = self.switch()?;
                self.eat_op(";");
                Ok(vec![s])
            }
            Tok::Keyword("synchronized") if self.is_op_at(1, "(") => {
                self.advance();
                let lock = self.paren_expr()?;
                let body = self.block()?;
                Ok(vec![self
                    .other("synchronized", start)
                    .with_children(vec![lock, body])])
            }
            Tok::Keyword("assert") => {
                self.advance();
                let mut children = vec![self.expr()?];
                if self.eat_op(":") {
                    children.push(self.expr()?);
                }
                self.expect_op(";")?;
                Ok(vec![self.other("assert", start).with_children(children)])
            }
            Tok::Ident(ref name) if name == "yield" && !self.yield_is_expression() => {
                self.advance();
                let e = self.expr()?;
                self.expect_op(";")?;
                Ok(vec![self.other("yield", start).with_children(vec![e])])
            }
            Tok::Ident(ref label) if self.is_op_at(1, ":") => {
                let label = label.clone();
                self.advance();
                self.advance();
                let inner = self.statement()?;
                Ok(vec![self
                    .other("labeled", start)
                    .with_attr("label", label)
                    .with_children(inner)])
            }
            _ => {
                if self.at_type_decl()
                    || ((self.is_kw("abstract") || self.is_kw("static") || self.is_kw("final"))
                        && self.local_class_ahead())
                {
                    let mods = self.modifiers()?;
                    return Ok(vec![self.type_decl(mods)?]);
                }
                if let Some(decls) = self.try_local_var_decl()? {
                    self.expect_op(";")?;
                    return Ok(decls);
                }
                let e = self.expr()?;
                self.expect_op(";")?;
                Ok(vec![e])
            }
        }
    }

    fn yield_is_expression(&self) -> bool {
        matches!(
            self.tok_at(1),
            Tok::Op("=" | "." | "(" | "[" | "++" | "--" | "+=" | "-=" | ";")
        )
    }

    fn local_class_ahead(&self) -> bool {
        let mut i = 0;
        while matches!(
            self.tok_at(i),
            Tok::Keyword("abstract" | "static" | "final" | "strictfp")
        ) {
            i += 1;
        }
        matches!(self.tok_at(i), Tok::Keyword("class" | "interface" | "enum"))
            || matches!(self.tok_at(i), Tok::Ident(s) if s == "record")
    }

    fn paren_expr(&mut self) -> PResult<Node> {
        self.expect_op("(")?;
        let e = self.expr()?;
        self.expect_op(")")?;
        Ok(e)
    }

    /// Speculatively parse `[mods] Type name [= init] {, name [= init]}`.
    fn try_local_var_decl(&mut self) -> PResult<Option<Vec<Node>>> {
        let save = self.pos;
        let mods = self.modifiers()?;
        let explicit = !mods.words.is_empty() || mods.start.is_some();
        let start = mods.start.unwrap_or_else(|| self.start());
        let type_start = self.start();
        let ty = match self.type_text() {
            Ok(t) => t,
            Err(e) => {
                if explicit {
                    return Err(e);
                }
                self.pos = save;
                return Ok(None);
            }
        };
        let type_span = self.span_from(type_start);
        let looks_like_decl = matches!(self.tok(), Tok::Ident(_))
            && matches!(self.tok_at(1), Tok::Op("=" | ";" | "," | "[" | ":" | ")"));
        if !looks_like_decl {
            if explicit {
                return Err(self.error("expected variable name"));
            }
            self.pos = save;
            return Ok(None);
        }
        let mut decls = Vec::new();
        loop {
            let name = self.ident()?;
            decls.push(self.declarator_rest(start, name, &ty, &type_span)?);
            if !self.eat_op(",") {
                break;
            }
        }
        Ok(Some(decls))
    }

    fn declarator_rest(
        &mut self,
        start: (u32, u32),
        name: String,
        ty: &str,
        type_span: &SourceSpan,
    ) -> PResult<Node> {
        let mut ty = ty.to_string();
        while self.is_op("[") {
            self.advance();
            self.expect_op("]")?;
            ty.push_str("[]");
        }
        let tref = self.type_ref(&ty, type_span.clone());
        let mut children = vec![tref];
        if self.eat_op("=") {
            children.push(self.var_init()?);
        }
        Ok(self
            .node(NodeKind::VarDef, start)
            .with_attr("name", name)
            .with_attr("type", ty)
            .with_children(children))
    }

    fn var_init(&mut self) -> PResult<Node> {
        if self.is_op("{") {
            self.array_init()
        } else {
            self.expr()
        }
    }

    fn array_init(&mut self) -> PResult<Node> {
        let start = self.start();
        self.expect_op("{")?;
        let mut items = Vec::new();
        while !self.eat_op("}") {
            items.push(self.var_init()?);
            if !self.eat_op(",") {
                self.expect_op("}")?;
                break;
            }
        }
        Ok(self.other("array_init", start).with_children(items))
    }

    fn for_statement(&mut self) -> PResult<Node> {
        let start = self.start();
        self.advance();
        self.expect_op("(")?;

        // enhanced for: [mods] Type name ':'
        let save = self.pos;
        let mods = self.modifiers()?;
        let var_start = mods.start.unwrap_or_else(|| self.start());
        let type_start = self.start();
        if let Ok(ty) = self.type_text() {
            let type_span = self.span_from(type_start);
            if matches!(self.tok(), Tok::Ident(_)) && self.is_op_at(1, ":") {
                let name = self.ident()?;
                let tref = self.type_ref(&ty, type_span);
                let var = self
                    .node(NodeKind::VarDef, var_start)
                    .with_attr("name", name)
                    .with_attr("type", ty)
                    .with_children(vec![tref]);
                self.expect_op(":")?;
                let iterable = self.expr()?;
                self.expect_op(")")?;
                let body = self.body()?;
                return Ok(self
                    .node(NodeKind::ForEachLoop, start)
                    .with_children(vec![iterable, body, var]));
            }
        }
        self.pos = save;

        let mut init = Vec::new();
        if !self.is_op(";") {
            match self.try_local_var_decl()? {
                Some(decls) => init = decls,
                None => {
                    init.push(self.expr()?);
                    while self.eat_op(",") {
                        init.push(self.expr()?);
                    }
                }
            }
        }
        self.expect_op(";")?;
        let cond = if self.is_op(";") {
            let span = self.span_from(start);
            self.node_at(NodeKind::Literal, span)
                .with_attr("text", "true")
                .with_attr("type", "boolean")
                .with_attr("synthetic", "true")
        } else {
            self.expr()?
        };
        self.expect_op(";")?;
        let mut update = Vec::new();
        if !self.is_op(")") {
            update.push(self.expr()?);
            while self.eat_op(",") {
                update.push(self.expr()?);
            }
        }
        self.expect_op(")")?;
        let body = self.body()?;
        let mut children = vec![cond, body];
        children.extend(init);
        children.extend(update);
        let mut node = self.node(NodeKind::ForLoop, start).with_children(children);
        // synthetic condition spans the whole loop header
        if node.children[0].attr("synthetic").is_some() {
            node.children[0].span = node.span.clone();
        }
        Ok(node)
    }

    fn try_statement(&mut self) -> PResult<Node> {
        let start = self.start();
        self.advance();
        let mut children = Vec::new();
        if self.is_op("(") {
            let rstart = self.start();
            self.advance();
            let mut resources = Vec::new();
            while !self.eat_op(")") {
                match self.try_local_var_decl()? {
                    Some(d) => resources.extend(d),
                    None => resources.push(self.expr()?),
                }
                if !self.eat_op(";") {
                    self.expect_op(")")?;
                    break;
                }
            }
            children.push(self.other("resources", rstart).with_children(resources));
        }
        children.push(self.block()?);
        while self.is_kw("catch") {
            let cstart = self.start();
            self.advance();
            self.expect_op("(")?;
            let mods = self.modifiers()?;
            let pstart = mods.start.unwrap_or_else(|| self.start());
            let type_start = self.start();
            let mut ty = self.type_text()?;
            while self.eat_op("|") {
                ty.push('|');
                ty.push_str(&self.type_text()?);
            }
            let type_span = self.span_from(type_start);
            let name = self.ident()?;
            let tref = self.type_ref(&ty, type_span);
            let param = self
                .node(NodeKind::Parameter, pstart)
                .with_attr("name", name)
                .with_attr("type", ty)
                .with_children(vec![tref]);
            self.expect_op(")")?;
            let body = self.block()?;
            children.push(self.other("catch", cstart).with_children(vec![param, body]));
        }
        if self.is_kw("finally") {
            let fstart = self.start();
            self.advance();
            let body = self.block()?;
            children.push(self.other("finally", fstart).with_children(vec![body]));
        }
        Ok(self.other("try", start).with_children(children))
    }

    fn switch(&mut self) -> PResult<Node> {
        let start = self.start();
        self.advance();
        let selector = self.paren_expr()?;
        self.expect_op("{")?;
        let mut children = vec![selector];
        while !self.eat_op("}") {
            let cstart = self.start();
            let mut labels = Vec::new();
            let is_default;
            if self.eat_kw("default") {
                is_default = true;
            } else if self.eat_kw("case") {
                is_default = false;
                loop {
                    labels.push(self.case_label()?);
                    if !self.eat_op(",") {
                        break;
                    }
                }
            } else {
                return Err(self.error("expected `case` or `default`"));
            }
            let lstart = cstart;
            let labels_node = self.other("labels", lstart).with_children(labels);
            let body_start = self.start();
            let body = if self.eat_op("->") {
                if self.is_op("{") {
                    self.block()?
                } else if self.is_kw("throw") {
                    let stmts = self.statement()?;
                    self.node(NodeKind::Block, body_start).with_children(stmts)
                } else {
                    let e = self.expr()?;
                    self.expect_op(";")?;
                    self.node(NodeKind::Block, body_start)
                        .with_children(vec![e])
                }
            } else {
                if !self.eat_op(":") {
                    self.expect_op("->")?;
                }
                let mut stmts = Vec::new();
                while !(self.is_kw("case") || self.is_op("}") || self.at_default_label()) {
                    if matches!(self.tok(), Tok::Eof) {
                        return Err(self.error("expected `}`"));
                    }
                    stmts.extend(self.statement()?);
                }
                let span = if stmts.is_empty() {
                    self.span_from(cstart)
                } else {
                    self.span_from(body_start)
                };
                self.node_at(NodeKind::Block, span).with_children(stmts)
            };
            let case = self
                .other("case", cstart)
                .with_attr("default", is_default.to_string())
                .with_children(vec![labels_node, body]);
            children.push(case);
        }
        Ok(self.other("switch", start).with_children(children))
    }

    fn at_default_label(&self) -> bool {
        self.is_kw("default") && (self.is_op_at(1, ":") || self.is_op_at(1, "->"))
    }

    fn case_label(&mut self) -> PResult<Node> {
        // type pattern `case Type name` / `case null, default`
        let save = self.pos;
        let start = self.start();
        if self.eat_kw("default") {
            return Ok(self.other("default", start));
        }
        if let Ok(ty) = self.type_text() {
            if matches!(self.tok(), Tok::Ident(_)) && !self.is_op_at(1, "(") {
                let type_span = self.span_from(start);
                let name = self.ident()?;
                let tref = self.type_ref(&ty, type_span);
                let var = self
                    .node(NodeKind::VarDef, start)
                    .with_attr("name", name)
                    .with_attr("type", ty)
                    .with_children(vec![tref]);
                return Ok(var);
            }
        }
        self.pos = save;
        self.ternary()
    }

    // ---- expressions ----

    pub fn expr(&mut self) -> PResult<Node> {
        if self.lambda_ahead() {
            return self.lambda();
        }
        let start = self.start();
        let lhs = self.ternary()?;
        if let Tok::Op(op) = self.tok().clone() {
            if ASSIGN_OPS.contains(&op) {
                self.advance();
                let rhs = self.expr()?;
                let target = into_write(lhs);
                return Ok(self
                    .node(NodeKind::Assignment, start)
                    .with_attr("op", op)
                    .with_children(vec![target, rhs]));
            }
        }
        Ok(lhs)
    }

    fn lambda_ahead(&self) -> bool {
        match self.tok() {
            Tok::Ident(_) => self.is_op_at(1, "->"),
            Tok::Op("(") => {
                let mut depth = 0usize;
                let mut i = 0;
                loop {
                    match self.tok_at(i) {
                        Tok::Op("(") => depth += 1,
                        Tok::Op(")") => {
                            depth -= 1;
                            if depth == 0 {
                                return self.is_op_at(i + 1, "->");
                            }
                        }
                        Tok::Eof | Tok::Op(";" | "{" | "}") => return false,
                        _ => {}
                    }
                    i += 1;
                }
            }
            _ => false,
        }
    }

    fn lambda(&mut self) -> PResult<Node> {
        let start = self.start();
        let mut params = Vec::new();
        if let Tok::Ident(name) = self.tok().clone() {
            let pstart = self.start();
            self.advance();
            params.push(
                self.node(NodeKind::Parameter, pstart)
                    .with_attr("name", name)
                    .with_attr("type", ""),
            );
        } else {
            self.expect_op("(")?;
            let inferred =
                matches!(self.tok(), Tok::Ident(_)) && matches!(self.tok_at(1), Tok::Op("," | ")"));
            if inferred {
                loop {
                    let pstart = self.start();
                    let name = self.ident()?;
                    params.push(
                        self.node(NodeKind::Parameter, pstart)
                            .with_attr("name", name)
                            .with_attr("type", ""),
                    );
                    if !self.eat_op(",") {
                        break;
                    }
                }
                self.expect_op(")")?;
            } else {
                self.pos -= 1;
                params = self.formal_params()?;
            }
        }
        self.expect_op("->")?;
        let body = if self.is_op("{") {
            self.block()?
        } else {
            self.expr()?
        };
        params.push(body);
        Ok(self.other("lambda", start).with_children(params))
    }

    fn ternary(&mut self) -> PResult<Node> {
        let start = self.start();
        let cond = self.binary(1)?;
        if self.eat_op("?") {
            let then = if self.lambda_ahead() {
                self.lambda()?
            } else {
                self.ternary()?
            };
            self.expect_op(":")?;
            let other = if self.lambda_ahead() {
                self.lambda()?
            } else {
                self.ternary()?
            };
            return Ok(self
                .other("conditional", start)
                .with_children(vec![cond, then, other]));
        }
        Ok(cond)
    }

    fn binary_prec(&self) -> Option<(u8, &'static str)> {
        let op = match self.tok() {
            Tok::Op(op) => *op,
            Tok::Keyword("instanceof") => return Some((7, "instanceof")),
            _ => return None,
        };
        let prec = match op {
            "||" => 1,
            "&&" => 2,
            "|" => 3,
            "^" => 4,
            "&" => 5,
            "==" | "!=" => 6,
            "<" | ">" | "<=" | ">=" => 7,
            "<<" | ">>" | ">>>" => 8,
            "+" | "-" => 9,
            "*" | "/" | "%" => 10,
            _ => return None,
        };
        Some((prec, op))
    }

    fn binary(&mut self, min_prec: u8) -> PResult<Node> {
        let start = self.start();
        let mut lhs = self.unary()?;
        while let Some((prec, op)) = self.binary_prec() {
            if prec < min_prec {
                break;
            }
            self.advance();
            if op == "instanceof" {
                self.eat_kw("final");
                let type_start = self.start();
                let ty = self.type_text()?;
                let type_span = self.span_from(type_start);
                if self.is_op("(") {
                    // record deconstruction pattern
                    self.skip_balanced("(", ")")?;
                    let tref = self.type_ref(&ty, type_span);
                    lhs = self
                        .other("instanceof", start)
                        .with_children(vec![lhs, tref]);
                } else if let Tok::Ident(name) = self.tok().clone() {
                    self.advance();
                    let tref = self.type_ref(&ty, type_span);
                    let var = self
                        .node(NodeKind::VarDef, type_start)
                        .with_attr("name", name)
                        .with_attr("type", ty)
                        .with_children(vec![tref]);
                    lhs = self
                        .other("instanceof", start)
                        .with_children(vec![lhs, var]);
                } else {
                    let tref = self.type_ref(&ty, type_span);
                    lhs = self
                        .node(NodeKind::BinOp, start)
                        .with_attr("op", "instanceof")
                        .with_children(vec![lhs, tref]);
                }
                continue;
            }
            let rhs = self.binary(prec + 1)?;
            lhs = self
                .node(NodeKind::BinOp, start)
                .with_attr("op", op)
                .with_children(vec![lhs, rhs]);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> PResult<Node> {
        let start = self.start();
        if let Tok::Op(op @ ("++" | "--" | "+" | "-" | "!" | "~")) = self.tok().clone() {
            self.advance();
            let operand = self.unary()?;
            let operand = if op == "++" || op == "--" {
                into_write(operand)
            } else {
                operand
            };
            return Ok(self
                .node(NodeKind::UnaryOp, start)
                .with_attr("op", op)
                .with_attr("fix", "pre")
                .with_children(vec![operand]));
        }
        if self.is_op("(") {
            if let Some(cast) = self.try_cast()? {
                return Ok(cast);
            }
        }
        self.postfix()
    }

    fn try_cast(&mut self) -> PResult<Option<Node>> {
        let save = self.pos;
        let start = self.start();
        self.advance();
        let type_start = self.start();
        let primitive = matches!(self.tok(), Tok::Keyword(k) if PRIMITIVES.contains(k));
        let ty = match self.type_text() {
            Ok(mut t) => {
                while self.eat_op("&") {
                    match self.type_text() {
                        Ok(more) => {
                            t.push('&');
                            t.push_str(&more);
                        }
                        Err(_) => {
                            self.pos = save;
                            return Ok(None);
                        }
                    }
                }
                t
            }
            Err(_) => {
                self.pos = save;
                return Ok(None);
            }
        };
        let type_span = self.span_from(type_start);
        if !self.eat_op(")") {
            self.pos = save;
            return Ok(None);
        }
        let operand_follows = match self.tok() {
            Tok::Ident(_) | Tok::Literal(..) => true,
            Tok::Keyword(k) => {
                matches!(
                    *k,
                    "this" | "new" | "super" | "true" | "false" | "null" | "switch"
                ) || PRIMITIVES.contains(k)
            }
            Tok::Op("(" | "!" | "~") => true,
            Tok::Op("+" | "-" | "++" | "--") => primitive,
            _ => false,
        };
        if !operand_follows {
            self.pos = save;
            return Ok(None);
        }
        let operand = if self.lambda_ahead() {
            self.lambda()?
        } else {
            self.unary()?
        };
        let tref = self.type_ref(&ty, type_span);
        Ok(Some(
            self.other("cast", start)
                .with_attr("type", ty)
                .with_children(vec![tref, operand]),
        ))
    }

    fn arguments(&mut self) -> PResult<Vec<Node>> {
        self.expect_op("(")?;
        let mut args = Vec::new();
        if self.eat_op(")") {
            return Ok(args);
        }
        loop {
            args.push(self.expr()?);
            if !self.eat_op(",") {
                break;
            }
        }
        self.expect_op(")")?;
        Ok(args)
    }

    fn call(&mut self, start: (u32, u32), name: String, receiver: Option<Node>) -> PResult<Node> {
        let mut children = self.arguments()?;
        let arity = children.len();
        children.extend(receiver);
        Ok(self
            .node(NodeKind::MethodCall, start)
            .with_attr("sig", format!("{name}/{arity}"))
            .with_attr("name", name)
            .with_attr("arity", arity.to_string())
            .with_children(children))
    }

    fn postfix(&mut self) -> PResult<Node> {
        let start = self.start();
        let mut e = self.primary()?;
        loop {
            if self.is_op(".") {
                self.advance();
                if self.is_op("<") {
                    self.type_args()?;
                }
                match self.tok().clone() {
                    Tok::Ident(name) => {
                        self.advance();
                        if self.is_op("(") {
                            e = self.call(start, name, Some(e))?;
                        } else {
                            e = self
                                .node(NodeKind::FieldAccess, start)
                                .with_attr("name", name)
                                .with_children(vec![e]);
                        }
                    }
                    Tok::Keyword("new") => {
                        let inner = self.creation()?;
                        let span = self.span_from(start);
                        let mut inner = inner;
                        inner.span = span;
                        inner.children.push(e);
                        e = inner;
                    }
                    Tok::Keyword(k @ ("this" | "class" | "super")) => {
                        self.advance();
                        let label = if k == "class" { "class_lit" } else { k };
                        e = self.other(label, start).with_children(vec![e]);
                    }
                    _ => return Err(self.error("expected member name")),
                }
            } else if self.is_op("[") {
                self.advance();
                let index = self.expr()?;
                self.expect_op("]")?;
                e = self
                    .node(NodeKind::ArrayAccess, start)
                    .with_children(vec![e, index]);
            } else if self.is_op("++") || self.is_op("--") {
                let op = if self.is_op("++") { "++" } else { "--" };
                self.advance();
                e = self
                    .node(NodeKind::UnaryOp, start)
                    .with_attr("op", op)
                    .with_attr("fix", "post")
                    .with_children(vec![into_write(e)]);
            } else if self.is_op("::") {
                self.advance();
                if self.is_op("<") {
                    self.type_args()?;
                }
                let name = if self.eat_kw("new") {
                    "new".to_string()
                } else {
                    self.ident()?
                };
                e = self
                    .other("method_ref", start)
                    .with_attr("name", name)
                    .with_children(vec![e]);
            } else {
                return Ok(e);
            }
        }
    }

    fn primary(&mut self) -> PResult<Node> {
        let start = self.start();
        match self.tok().clone() {
            Tok::Literal(kind, text) => {
                self.advance();
                let ty = if kind == LitKind::Int && text.ends_with(['l', 'L']) {
                    "long"
                } else {
                    kind.name()
                };
                Ok(self
                    .node(NodeKind::Literal, start)
                    .with_attr("text", text)
                    .with_attr("type", ty))
            }
            Tok::Keyword(k @ ("true" | "false")) => {
                self.advance();
                Ok(self
                    .node(NodeKind::Literal, start)
                    .with_attr("text", k)
                    .with_attr("type", "boolean"))
            }
            Tok::Keyword("null") => {
                self.advance();
                Ok(self
                    .node(NodeKind::Literal, start)
                    .with_attr("text", "null")
                    .with_attr("type", "null"))
            }
            Tok::Keyword(k @ ("this" | "super")) => {
                self.advance();
                if self.is_op("(") {
                    return self.call(start, k.to_string(), None);
                }
                Ok(self.other(k, start))
            }
            Tok::Keyword("new") => self.creation(),
            Tok::Keyword("switch") => self.switch(),
            Tok::Op("(") => {
                self.advance();
                let e = self.expr()?;
                self.expect_op(")")?;
                Ok(e)
            }
            Tok::Ident(name) => {
                self.advance();
                if self.is_op("(") {
                    return self.call(start, name, None);
                }
                // generic type method reference, e.g. `List<String>::size`
                if self.is_op("[") && self.is_op_at(1, "]") {
                    self.pos -= 1;
                    let ty = self.type_text()?;
                    return self.type_expression(start, ty);
                }
                Ok(self.node(NodeKind::VarRead, start).with_attr("name", name))
            }
            Tok::Keyword(k) if PRIMITIVES.contains(&k) => {
                let ty = self.type_text()?;
                self.type_expression(start, ty)
            }
            Tok::Op("@") => {
                self.annotation()?;
                self.primary()
            }
            _ => Err(self.error("expected expression")),
        }
    }

    /// `int.class`, `int[]::new`, `String[].class`.
    fn type_expression(&mut self, start: (u32, u32), ty: String) -> PResult<Node> {
        let span = self.span_from(start);
        let tref = self.type_ref(&ty, span);
        if self.is_op(".") && self.is_kw_at(1, "class") {
            self.advance();
            self.advance();
            return Ok(self.other("class_lit", start).with_children(vec![tref]));
        }
        if self.is_op("::") {
            return Ok(tref);
        }
        Err(self.error("expected `.class` or `::`"))
    }

    fn creation(&mut self) -> PResult<Node> {
        let start = self.start();
        self.advance(); // new
        if self.is_op("<") {
            self.type_args()?;
        }
        while self.is_op("@") {
            self.annotation()?;
        }
        let type_start = self.start();
        // element type without dims
        let mut ty = match self.tok().clone() {
            Tok::Keyword(k) if PRIMITIVES.contains(&k) => {
                self.advance();
                k.to_string()
            }
            Tok::Ident(name) => {
                self.advance();
                let mut text = name;
                loop {
                    if self.is_op("<") {
                        text.push_str(&self.type_args()?);
                    }
                    if self.is_op(".") && matches!(self.tok_at(1), Tok::Ident(_)) {
                        self.advance();
                        text.push('.');
                        text.push_str(&self.ident()?);
                    } else {
                        break;
                    }
                }
                text
            }
            _ => return Err(self.error("expected type after `new`")),
        };
        if self.is_op("[") {
            let mut dims = Vec::new();
            while self.is_op("[") {
                self.advance();
                if self.eat_op("]") {
                    ty.push_str("[]");
                } else {
                    dims.push(self.expr()?);
                    self.expect_op("]")?;
                    ty.push_str("[]");
                }
            }
            let type_span = self.span_from(type_start);
            let mut children = vec![self.type_ref(&ty, type_span)];
            children.extend(dims);
            if self.is_op("{") {
                children.push(self.array_init()?);
            }
            return Ok(self
                .other("new_array", start)
                .with_attr("type", ty)
                .with_children(children));
        }
        let type_span = self.span_from(type_start);
        let tref = self.type_ref(&ty, type_span);
        let mut children = vec![tref];
        children.extend(self.arguments()?);
        if self.is_op("{") {
            let body_start = self.start();
            let simple = ty.rsplit('.').next().unwrap_or(&ty).to_string();
            let members = self.class_body(false, &simple)?;
            children.push(self.other("class_body", body_start).with_children(members));
        }
        Ok(self
            .other("new", start)
            .with_attr("type", ty)
            .with_children(children))
    }
}

/// Turn the target of an assignment or increment into a write.
fn into_write(mut target: Node) -> Node {
    if target.kind == NodeKind::VarRead {
        target.kind = NodeKind::VarWrite;
    }
    target
}
