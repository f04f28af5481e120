//! Fluent builders for writing search patterns.
//!
//! Every builder starts out maximally permissive; configuration methods add
//! constraints. Misuse (a slot set twice, a method that does not apply to
//! the construct) is recorded on the builder and surfaces from
//! [`PatternBuilder::validate`] or from compilation, so chains stay fluent.
//!
//! ```
//! use algorec::dsl::*;
//!
//! let pattern = method().bind_to("method").body(
//!     block()
//!         .after(any_loop().condition(bin_op().ops(["<", "<="])))
//!         .after(optional(returns())),
//! );
//! assert!(pattern.validate().is_ok());
//! ```

use std::fmt;

use thiserror::Error;

use crate::ast::NodeKind;
use crate::pattern::{dsl_name, KindMatcher};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DslError {
    #[error("`{method}` is not applicable to {construct}")]
    InvalidConfig {
        construct: String,
        method: &'static str,
    },
    #[error("{construct}: slot `{slot}` is set twice")]
    DuplicateSlot {
        construct: String,
        slot: &'static str,
    },
    #[error("a block uses either `next`/`after` or `has`, not both")]
    MixedOrderMode,
    #[error("wide wildcards cannot be nested directly inside {0}")]
    NestedWildcard(String),
    #[error("binding identifiers must be nonempty")]
    EmptyBinding,
}

/// Name of a binding constraint; nonempty and case-sensitive.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BindingId(String);

impl BindingId {
    pub fn new(name: &str) -> Option<Self> {
        (!name.is_empty()).then(|| BindingId(name.to_string()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for BindingId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) enum Slot {
    Condition,
    Body,
    Then,
    Otherwise,
    Lhs,
    Rhs,
    Operand,
    Value,
    Iterable,
    Target,
    Array,
    Index,
}

impl Slot {
    fn name(self) -> &'static str {
        match self {
            Slot::Condition => "condition",
            Slot::Body => "body",
            Slot::Then => "then",
            Slot::Otherwise => "otherwise",
            Slot::Lhs => "lhs",
            Slot::Rhs => "rhs",
            Slot::Operand => "operand",
            Slot::Value => "value",
            Slot::Iterable => "iterable",
            Slot::Target => "target",
            Slot::Array => "array",
            Slot::Index => "index",
        }
    }
}

/// How a slot's pattern is placed in the compiled tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Placement {
    Direct,
    /// `anywhere_in_rhs`: wrapped in a depth wildcard.
    Anywhere,
    /// `optional_otherwise`: an optional else block containing the pattern.
    OptionalOtherwise,
}

#[derive(Debug, Clone)]
pub(crate) struct SlotValue {
    pub slot: Slot,
    pub placement: Placement,
    pub pattern: PatternBuilder,
}

#[derive(Debug, Clone)]
pub(crate) enum BlockItem {
    Next(PatternBuilder),
    Has(PatternBuilder),
    After(PatternBuilder),
    AnywhereAfter(PatternBuilder),
}

#[derive(Debug, Clone)]
pub(crate) struct ListSpec {
    pub items: Vec<PatternBuilder>,
    pub unordered: bool,
}

/// Which convenience alternative a one-of came from; configuration applied
/// to it is forwarded to every alternative.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Family {
    Loop,
    VarDefOrAss,
    AnyMod,
}

#[derive(Debug, Clone)]
pub struct PatternBuilder {
    pub(crate) construct: KindMatcher,
    pub(crate) ops: Vec<String>,
    pub(crate) text: Option<String>,
    pub(crate) name: Option<String>,
    pub(crate) slots: Vec<SlotValue>,
    pub(crate) block: Vec<BlockItem>,
    pub(crate) params: Option<ListSpec>,
    pub(crate) args: Option<ListSpec>,
    pub(crate) commutative: bool,
    pub(crate) items: Vec<PatternBuilder>,
    pub(crate) family: Option<Family>,
    pub(crate) binding: Option<BindingId>,
    pub(crate) greedy: bool,
    pub(crate) errors: Vec<DslError>,
}

impl PatternBuilder {
    fn new(construct: KindMatcher) -> Self {
        PatternBuilder {
            construct,
            ops: Vec::new(),
            text: None,
            name: None,
            slots: Vec::new(),
            block: Vec::new(),
            params: None,
            args: None,
            commutative: false,
            items: Vec::new(),
            family: None,
            binding: None,
            greedy: false,
            errors: Vec::new(),
        }
    }

    fn of(kind: NodeKind) -> Self {
        Self::new(KindMatcher::Kind(kind))
    }

    fn kind(&self) -> Option<&NodeKind> {
        match &self.construct {
            KindMatcher::Kind(k) => Some(k),
            _ => None,
        }
    }

    fn is(&self, kinds: &[NodeKind]) -> bool {
        self.kind().is_some_and(|k| kinds.contains(k))
    }

    pub fn construct_name(&self) -> String {
        match (&self.construct, self.family) {
            (_, Some(Family::Loop)) => "loop".into(),
            (_, Some(Family::VarDefOrAss)) => "varDefOrAss".into(),
            (_, Some(Family::AnyMod)) => "anyMod".into(),
            (KindMatcher::Kind(k), _) => dsl_name(k).to_string(),
            (m, _) => m.to_string(),
        }
    }

    fn invalid(mut self, method: &'static str) -> Self {
        let construct = self.construct_name();
        self.errors
            .push(DslError::InvalidConfig { construct, method });
        self
    }

    /// Forward a configuration call to every alternative of a convenience one-of.
    fn forward(mut self, f: impl Fn(PatternBuilder) -> PatternBuilder) -> Self {
        self.items = std::mem::take(&mut self.items).into_iter().map(f).collect();
        self
    }

    fn set_slot(mut self, slot: Slot, placement: Placement, pattern: PatternBuilder) -> Self {
        if self.slots.iter().any(|s| s.slot == slot) {
            let construct = self.construct_name();
            self.errors.push(DslError::DuplicateSlot {
                construct,
                slot: slot.name(),
            });
            return self;
        }
        if pattern.construct == KindMatcher::WideWildcard {
            let construct = self.construct_name();
            self.errors.push(DslError::NestedWildcard(construct));
            return self;
        }
        self.slots.push(SlotValue {
            slot,
            placement,
            pattern,
        });
        self
    }

    fn slot_for(
        self,
        method: &'static str,
        slot: Slot,
        placement: Placement,
        p: PatternBuilder,
    ) -> Self {
        if self.family.is_some() {
            return self.forward(|alt| alt.slot_for(method, slot, placement, p.clone()));
        }
        let slot = remap_slot(&self, slot);
        if !self.is(slot_kinds(slot)) {
            return self.invalid(method);
        }
        self.set_slot(slot, placement, p)
    }

    // ---- configuration ----

    /// Restrict the operator of a `bin_op`/`unary_op` to the given symbols.
    pub fn ops<I, S>(mut self, symbols: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        if !self.is(&[NodeKind::BinOp, NodeKind::UnaryOp]) {
            return self.invalid("ops");
        }
        if !self.ops.is_empty() {
            let construct = self.construct_name();
            self.errors.push(DslError::DuplicateSlot {
                construct,
                slot: "ops",
            });
            return self;
        }
        self.ops = symbols.into_iter().map(Into::into).collect();
        self
    }

    /// Loop or if condition. On a for-each loop this is the iterable.
    pub fn condition(self, p: PatternBuilder) -> Self {
        self.slot_for("condition", Slot::Condition, Placement::Direct, p)
    }

    pub fn iterable(self, p: PatternBuilder) -> Self {
        self.slot_for("iterable", Slot::Iterable, Placement::Direct, p)
    }

    pub fn body(self, p: PatternBuilder) -> Self {
        self.slot_for("body", Slot::Body, Placement::Direct, p)
    }

    pub fn then(self, p: PatternBuilder) -> Self {
        self.slot_for("then", Slot::Then, Placement::Direct, p)
    }

    pub fn otherwise(self, p: PatternBuilder) -> Self {
        self.slot_for("otherwise", Slot::Otherwise, Placement::Direct, p)
    }

    /// Accept both an explicit else block containing `p` and an if without
    /// else (the early-return shape).
    pub fn optional_otherwise(self, p: PatternBuilder) -> Self {
        self.slot_for(
            "optional_otherwise",
            Slot::Otherwise,
            Placement::OptionalOtherwise,
            p,
        )
    }

    pub fn lhs(self, p: PatternBuilder) -> Self {
        self.slot_for("lhs", Slot::Lhs, Placement::Direct, p)
    }

    pub fn rhs(self, p: PatternBuilder) -> Self {
        self.slot_for("rhs", Slot::Rhs, Placement::Direct, p)
    }

    /// `p` may sit anywhere inside the right-hand side (or initializer).
    pub fn anywhere_in_rhs(self, p: PatternBuilder) -> Self {
        self.slot_for("anywhere_in_rhs", Slot::Rhs, Placement::Anywhere, p)
    }

    pub fn operand(self, p: PatternBuilder) -> Self {
        self.slot_for("operand", Slot::Operand, Placement::Direct, p)
    }

    /// The returned expression of `returns()`.
    pub fn value(self, p: PatternBuilder) -> Self {
        self.slot_for("value", Slot::Value, Placement::Direct, p)
    }

    pub fn target(self, p: PatternBuilder) -> Self {
        self.slot_for("target", Slot::Target, Placement::Direct, p)
    }

    pub fn array(self, p: PatternBuilder) -> Self {
        self.slot_for("array", Slot::Array, Placement::Direct, p)
    }

    pub fn index(self, p: PatternBuilder) -> Self {
        self.slot_for("index", Slot::Index, Placement::Direct, p)
    }

    /// Name predicate for methods, calls, field accesses and type references.
    pub fn named(mut self, name: &str) -> Self {
        if self.family.is_some() {
            return self.invalid("named");
        }
        let ok = self.is(&[
            NodeKind::Method,
            NodeKind::Constructor,
            NodeKind::MethodCall,
            NodeKind::FieldAccess,
        ]) || self.construct == KindMatcher::AnyType;
        if !ok {
            return self.invalid("named");
        }
        if self.name.is_some() {
            let construct = self.construct_name();
            self.errors.push(DslError::DuplicateSlot {
                construct,
                slot: "name",
            });
            return self;
        }
        self.name = Some(name.into());
        self
    }

    /// Exact literal text, e.g. `literal().text("0")`.
    pub fn text(mut self, text: &str) -> Self {
        if !self.is(&[NodeKind::Literal]) {
            return self.invalid("text");
        }
        if self.text.is_some() {
            let construct = self.construct_name();
            self.errors.push(DslError::DuplicateSlot {
                construct,
                slot: "text",
            });
            return self;
        }
        self.text = Some(text.into());
        self
    }

    pub fn bind_to(mut self, id: &str) -> Self {
        if self.family.is_some() {
            let id = id.to_string();
            return self.forward(|alt| alt.bind_to(&id));
        }
        if self.construct.is_combinator() {
            return self.invalid("bind_to");
        }
        match BindingId::new(id) {
            Some(b) if self.binding.is_none() => self.binding = Some(b),
            Some(_) => {
                let construct = self.construct_name();
                self.errors.push(DslError::DuplicateSlot {
                    construct,
                    slot: "binding",
                });
            }
            None => self.errors.push(DslError::EmptyBinding),
        }
        self
    }

    pub fn greedy(mut self) -> Self {
        if self.construct != KindMatcher::WideWildcard {
            return self.invalid("greedy");
        }
        self.greedy = true;
        self
    }

    pub fn non_greedy(mut self) -> Self {
        if self.construct != KindMatcher::WideWildcard {
            return self.invalid("non_greedy");
        }
        self.greedy = false;
        self
    }

    /// Make the operands of a binary operation match in either order.
    pub fn compare_commutative(mut self) -> Self {
        if !self.is(&[NodeKind::BinOp]) {
            return self.invalid("compare_commutative");
        }
        self.commutative = true;
        self
    }

    // ---- block sequencing ----

    fn push_block(mut self, method: &'static str, item: BlockItem) -> Self {
        if !self.is(&[NodeKind::Block]) {
            return self.invalid(method);
        }
        let has = matches!(item, BlockItem::Has(_));
        let mixed = self
            .block
            .iter()
            .any(|i| matches!(i, BlockItem::Has(_)) != has);
        if mixed {
            self.errors.push(DslError::MixedOrderMode);
            return self;
        }
        let inner = match &item {
            BlockItem::After(p) | BlockItem::AnywhereAfter(p) | BlockItem::Has(p) => Some(p),
            BlockItem::Next(_) => None,
        };
        if inner.is_some_and(|p| p.construct == KindMatcher::WideWildcard) {
            self.errors.push(DslError::NestedWildcard(method.into()));
            return self;
        }
        self.block.push(item);
        self
    }

    /// Append a statement that must directly follow the previous one.
    pub fn next(self, p: PatternBuilder) -> Self {
        self.push_block("next", BlockItem::Next(p))
    }

    /// Append a statement that may appear anywhere among the block's statements.
    pub fn has(self, p: PatternBuilder) -> Self {
        self.push_block("has", BlockItem::Has(p))
    }

    /// Append a statement somewhere after the previously specified one.
    pub fn after(self, p: PatternBuilder) -> Self {
        self.push_block("after", BlockItem::After(p))
    }

    /// Like [`after`](Self::after), but `p` may also be nested inside a later statement.
    pub fn anywhere_after(self, p: PatternBuilder) -> Self {
        self.push_block("anywhere_after", BlockItem::AnywhereAfter(p))
    }

    // ---- parameter and argument lists ----

    fn list(
        mut self,
        method: &'static str,
        allowed: &[NodeKind],
        items: Vec<PatternBuilder>,
        unordered: bool,
        args: bool,
    ) -> Self {
        if !self.is(allowed) {
            return self.invalid(method);
        }
        if items
            .iter()
            .any(|p| p.construct == KindMatcher::WideWildcard)
        {
            self.errors.push(DslError::NestedWildcard(method.into()));
            return self;
        }
        let target = if args {
            &mut self.args
        } else {
            &mut self.params
        };
        if target.is_some() {
            let construct = self.construct_name();
            self.errors.push(DslError::DuplicateSlot {
                construct,
                slot: if args { "args" } else { "parameters" },
            });
            return self;
        }
        *target = Some(ListSpec { items, unordered });
        self
    }

    /// Exactly these parameters, in this order.
    pub fn parameters(self, ps: Vec<PatternBuilder>) -> Self {
        self.list(
            "parameters",
            &[NodeKind::Method, NodeKind::Constructor],
            ps,
            false,
            false,
        )
    }

    /// These parameters in any order; further parameters are allowed.
    pub fn has_parameters(self, ps: Vec<PatternBuilder>) -> Self {
        self.list(
            "has_parameters",
            &[NodeKind::Method, NodeKind::Constructor],
            ps,
            true,
            false,
        )
    }

    /// Exactly these arguments, in this order.
    pub fn args(self, ps: Vec<PatternBuilder>) -> Self {
        self.list("args", &[NodeKind::MethodCall], ps, false, true)
    }

    /// These arguments in any position; further arguments are allowed.
    pub fn has_args(self, ps: Vec<PatternBuilder>) -> Self {
        self.list("has_args", &[NodeKind::MethodCall], ps, true, true)
    }

    // ---- validation ----

    /// First recorded construction error in this builder or any nested one.
    pub fn validate(&self) -> Result<(), DslError> {
        self.first_error(&mut Vec::new())
            .map_or(Ok(()), |(_, e)| Err(e))
    }

    pub(crate) fn first_error(&self, path: &mut Vec<String>) -> Option<(String, DslError)> {
        path.push(self.construct_name());
        let found = if let Some(e) = self.errors.first() {
            Some((path.join("/"), e.clone()))
        } else {
            self.nested().find_map(|(label, child)| {
                path.push(label);
                let r = child.first_error(path);
                path.pop();
                r
            })
        };
        path.pop();
        found
    }

    /// Every nested builder with a short label for error paths.
    pub(crate) fn nested(&self) -> impl Iterator<Item = (String, &PatternBuilder)> {
        let slots = self
            .slots
            .iter()
            .map(|s| (s.slot.name().to_string(), &s.pattern));
        let block = self.block.iter().enumerate().map(|(i, item)| {
            let p = match item {
                BlockItem::Next(p)
                | BlockItem::Has(p)
                | BlockItem::After(p)
                | BlockItem::AnywhereAfter(p) => p,
            };
            (format!("[{i}]"), p)
        });
        let params = self
            .params
            .iter()
            .flat_map(|l| l.items.iter().enumerate())
            .map(|(i, p)| (format!("param[{i}]"), p));
        let args = self
            .args
            .iter()
            .flat_map(|l| l.items.iter().enumerate())
            .map(|(i, p)| (format!("arg[{i}]"), p));
        let items = self
            .items
            .iter()
            .enumerate()
            .map(|(i, p)| (format!("[{i}]"), p));
        slots.chain(block).chain(params).chain(args).chain(items)
    }
}

fn slot_kinds(slot: Slot) -> &'static [NodeKind] {
    use NodeKind::*;
    match slot {
        Slot::Condition => &[ForLoop, WhileLoop, DoWhileLoop, If],
        Slot::Iterable => &[ForEachLoop],
        Slot::Body => &[
            Method,
            Constructor,
            ForLoop,
            WhileLoop,
            DoWhileLoop,
            ForEachLoop,
        ],
        Slot::Then | Slot::Otherwise => &[If],
        Slot::Lhs => &[BinOp, Assignment],
        Slot::Rhs => &[BinOp, Assignment, VarDef],
        Slot::Operand => &[UnaryOp],
        Slot::Value => &[Return],
        Slot::Target => &[FieldAccess],
        Slot::Array | Slot::Index => &[ArrayAccess],
    }
}

/// Map a slot onto the equivalent slot of a construct that names it differently.
fn remap_slot(alt: &PatternBuilder, slot: Slot) -> Slot {
    match (alt.kind(), slot) {
        (Some(NodeKind::ForEachLoop), Slot::Condition) => Slot::Iterable,
        (Some(NodeKind::UnaryOp), Slot::Lhs) => Slot::Operand,
        _ => slot,
    }
}

// ---- core constructors ----

pub fn method() -> PatternBuilder {
    PatternBuilder::of(NodeKind::Method)
}

pub fn constructor() -> PatternBuilder {
    PatternBuilder::of(NodeKind::Constructor)
}

pub fn parameter() -> PatternBuilder {
    PatternBuilder::of(NodeKind::Parameter)
}

pub fn block() -> PatternBuilder {
    PatternBuilder::of(NodeKind::Block)
}

pub fn for_loop() -> PatternBuilder {
    PatternBuilder::of(NodeKind::ForLoop)
}

pub fn while_loop() -> PatternBuilder {
    PatternBuilder::of(NodeKind::WhileLoop)
}

pub fn do_while_loop() -> PatternBuilder {
    PatternBuilder::of(NodeKind::DoWhileLoop)
}

pub fn for_each_loop() -> PatternBuilder {
    PatternBuilder::of(NodeKind::ForEachLoop)
}

/// If-then-else.
pub fn ite() -> PatternBuilder {
    PatternBuilder::of(NodeKind::If)
}

pub fn bin_op() -> PatternBuilder {
    PatternBuilder::of(NodeKind::BinOp)
}

pub fn unary_op() -> PatternBuilder {
    PatternBuilder::of(NodeKind::UnaryOp)
}

pub fn assignment() -> PatternBuilder {
    PatternBuilder::of(NodeKind::Assignment)
}

pub fn var_def() -> PatternBuilder {
    PatternBuilder::of(NodeKind::VarDef)
}

pub fn var_read() -> PatternBuilder {
    PatternBuilder::of(NodeKind::VarRead)
}

pub fn var_write() -> PatternBuilder {
    PatternBuilder::of(NodeKind::VarWrite)
}

pub fn method_call() -> PatternBuilder {
    PatternBuilder::of(NodeKind::MethodCall)
}

pub fn returns() -> PatternBuilder {
    PatternBuilder::of(NodeKind::Return)
}

pub fn literal() -> PatternBuilder {
    PatternBuilder::of(NodeKind::Literal)
}

pub fn field_access() -> PatternBuilder {
    PatternBuilder::of(NodeKind::FieldAccess)
}

pub fn array_access() -> PatternBuilder {
    PatternBuilder::of(NodeKind::ArrayAccess)
}

/// Any single node, including constructs without a dedicated kind.
pub fn any() -> PatternBuilder {
    PatternBuilder::new(KindMatcher::Any)
}

/// Any type reference.
pub fn any_type() -> PatternBuilder {
    PatternBuilder::new(KindMatcher::AnyType)
}

/// Zero or more sibling nodes.
pub fn wide_wildcard() -> PatternBuilder {
    PatternBuilder::new(KindMatcher::WideWildcard)
}

/// `p` at the current node or anywhere below it.
pub fn depth_wildcard(p: PatternBuilder) -> PatternBuilder {
    combinator(KindMatcher::DepthWildcard, "depthWildcard", vec![p])
}

/// At least one of the alternatives.
pub fn one_of(alternatives: Vec<PatternBuilder>) -> PatternBuilder {
    combinator(KindMatcher::OneOf, "oneOf", alternatives)
}

/// `p` may be present but is not required.
pub fn optional(p: PatternBuilder) -> PatternBuilder {
    combinator(KindMatcher::Optional, "optional", vec![p])
}

fn combinator(kind: KindMatcher, label: &str, items: Vec<PatternBuilder>) -> PatternBuilder {
    let mut b = PatternBuilder::new(kind);
    if items
        .iter()
        .any(|p| p.construct == KindMatcher::WideWildcard)
    {
        b.errors.push(DslError::NestedWildcard(label.into()));
    }
    b.items = items;
    b
}

// ---- convenience alternatives ----

/// Any of the four Java loop kinds. `condition` and `body` apply to each.
pub fn any_loop() -> PatternBuilder {
    family(
        Family::Loop,
        vec![for_loop(), while_loop(), do_while_loop(), for_each_loop()],
    )
}

/// A variable definition or an assignment. `rhs` applies to both.
pub fn var_def_or_ass() -> PatternBuilder {
    family(Family::VarDefOrAss, vec![var_def(), assignment()])
}

/// Any typical modification of a variable: an assignment or a pre/post
/// increment or decrement. `lhs` names the modified variable.
pub fn any_mod() -> PatternBuilder {
    family(
        Family::AnyMod,
        vec![assignment(), unary_op().ops(["++", "--"])],
    )
}

fn family(family: Family, items: Vec<PatternBuilder>) -> PatternBuilder {
    let mut b = one_of(items);
    b.family = Some(family);
    b
}
