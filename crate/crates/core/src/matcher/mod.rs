//! Matching compiled patterns against syntax trees.
//!
//! Each entry point (method, constructor or initializer) is searched
//! independently. Every successful path through the search yields a raw
//! [`MatchState`]; raw states whose pattern root covers the same node are
//! unified into one [`MatchResult`].

mod engine;

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::ast::{Node, NodeId, SourceSpan};
use crate::java::CompilationUnit;
use crate::pattern::{PatId, Pattern, PatternTreeNode};
use engine::{landing_sites, Engine, State};

pub const DEFAULT_STATE_BUDGET: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MatchOptions {
    /// Maximum number of states derived per entry point.
    pub budget: u64,
}

impl Default for MatchOptions {
    fn default() -> Self {
        MatchOptions {
            budget: DEFAULT_STATE_BUDGET,
        }
    }
}

/// What a binding identifier is bound to. Two sites agree when their keys
/// are equal: methods and calls compare by signature, variables by
/// declaration, literals by text and anything else by node identity.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct BoundValue {
    pub key: String,
    pub display: String,
}

impl BoundValue {
    pub fn of(node: &Node) -> Self {
        let display = node
            .name()
            .or_else(|| node.attr("text"))
            .unwrap_or_else(|| node.kind.name())
            .to_string();
        let key = if node.kind.is_executable() || node.kind == crate::ast::NodeKind::MethodCall {
            format!("sig:{}", node.attr("sig").unwrap_or(&display))
        } else if let Some(decl) = node.attr("decl_id") {
            format!("decl:{decl}")
        } else if let Some(text) = node.attr("text") {
            format!("lit:{text}")
        } else {
            format!("node:{}", node.id)
        };
        BoundValue { key, display }
    }
}

/// One successful path through the search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchState {
    /// Number of node matches that produced this state.
    pub depth: usize,
    /// Pattern node → syntax node, sorted by pattern id.
    pub mapping: Vec<(PatId, NodeId)>,
    pub bindings: BTreeMap<String, BoundValue>,
}

impl MatchState {
    pub fn ast_node(&self, pat: PatId) -> Option<NodeId> {
        self.mapping
            .iter()
            .find(|(p, _)| *p == pat)
            .map(|(_, n)| *n)
    }

    pub fn pattern_node(&self, node: NodeId) -> Option<PatId> {
        self.mapping
            .iter()
            .find(|(_, n)| *n == node)
            .map(|(p, _)| *p)
    }

    /// Every binding identifier the pattern requires has a value.
    pub fn is_valid(&self, pattern: &Pattern) -> bool {
        pattern
            .required_bindings()
            .iter()
            .all(|n| self.bindings.contains_key(*n))
    }

    fn snapshot(st: &State<'_>) -> Self {
        MatchState {
            depth: st.steps,
            mapping: st.mapping(),
            bindings: st
                .bindings()
                .map(|(n, v)| (n.to_string(), v.clone()))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EntryRef {
    pub file: Arc<str>,
    pub name: String,
    pub sig: String,
    pub node: NodeId,
    pub span: SourceSpan,
}

impl EntryRef {
    pub fn of(entry: &Node) -> Self {
        let name = match entry.name() {
            Some("") | None => format!("<{}>", entry.attr("initializer").unwrap_or("init")),
            Some(n) => n.to_string(),
        };
        EntryRef {
            file: entry.span.file.clone(),
            sig: entry.attr("sig").unwrap_or("").to_string(),
            name,
            node: entry.id,
            span: entry.span.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatchResult {
    pub pattern: String,
    pub pattern_version: u32,
    pub entry: EntryRef,
    /// Span of the syntax node matched by the pattern root.
    pub span: SourceSpan,
    pub node: NodeId,
    /// Every value each identifier took across the unified states.
    pub bindings: BTreeMap<String, Vec<BoundValue>>,
    #[serde(skip)]
    pub states: Vec<MatchState>,
}

impl MatchResult {
    pub fn unified_states(&self) -> usize {
        self.states.len()
    }

    /// `name=value` pairs, alternatives joined with `|`.
    pub fn bindings_display(&self) -> String {
        self.bindings
            .iter()
            .map(|(k, vs)| {
                let alts: Vec<_> = vs.iter().map(|v| v.display.as_str()).collect();
                format!("{k}={}", alts.join("|"))
            })
            .collect::<Vec<_>>()
            .join(", ")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[error("{}:{}: state budget of {budget} exceeded while matching `{}` in `{}`", entry.file, entry.span.start_line, pattern, entry.name)]
pub struct StateBudgetExceeded {
    pub pattern: String,
    pub entry: EntryRef,
    pub budget: u64,
}

#[derive(Debug, Clone)]
pub struct EntryOutcome {
    pub results: Vec<MatchResult>,
    /// States derived while searching this entry.
    pub states: u64,
    pub budget_exceeded: Option<StateBudgetExceeded>,
}

/// Search one entry point. When the budget runs out the entry reports no
/// results and carries a diagnostic instead.
pub fn match_entry(pattern: &Pattern, entry: &Node, opts: &MatchOptions) -> EntryOutcome {
    let engine = Engine::new(pattern.cross_executables, opts.budget);
    let candidates = if pattern.is_method_rooted() {
        vec![entry]
    } else {
        landing_sites(entry, false)
    };
    let roots = std::slice::from_ref(&pattern.root);
    let required = pattern.required_bindings();
    let mut raw: Vec<(NodeId, MatchState)> = Vec::new();
    for cand in candidates {
        let mut sink = |s: &State<'_>| {
            if !required.iter().all(|n| s.binding(n).is_some()) {
                return false;
            }
            let snap = MatchState::snapshot(s);
            let covered = snap.mapping.first().map_or(cand.id, |(_, n)| *n);
            raw.push((covered, snap));
            true
        };
        engine.seq(
            roots,
            std::slice::from_ref(cand),
            true,
            &State::default(),
            &mut sink,
        );
        if engine.exceeded.get() {
            break;
        }
    }
    let states = engine.states.get();
    if engine.exceeded.get() {
        return EntryOutcome {
            results: Vec::new(),
            states,
            budget_exceeded: Some(StateBudgetExceeded {
                pattern: pattern.name.clone(),
                entry: EntryRef::of(entry),
                budget: opts.budget,
            }),
        };
    }
    EntryOutcome {
        results: unify(pattern, entry, raw),
        states,
        budget_exceeded: None,
    }
}

fn unify(pattern: &Pattern, entry: &Node, raw: Vec<(NodeId, MatchState)>) -> Vec<MatchResult> {
    let mut groups: BTreeMap<NodeId, Vec<MatchState>> = BTreeMap::new();
    for (covered, st) in raw {
        groups.entry(covered).or_default().push(st);
    }
    let entry_ref = EntryRef::of(entry);
    let mut results: Vec<MatchResult> = groups
        .into_iter()
        .map(|(id, states)| {
            let node = entry.find(id).expect("mapped nodes lie inside the entry");
            let mut bindings: BTreeMap<String, Vec<BoundValue>> = BTreeMap::new();
            for st in &states {
                for (k, v) in &st.bindings {
                    let alts = bindings.entry(k.clone()).or_default();
                    if !alts.iter().any(|a| a.key == v.key) {
                        alts.push(v.clone());
                    }
                }
            }
            MatchResult {
                pattern: pattern.name.clone(),
                pattern_version: pattern.version,
                entry: entry_ref.clone(),
                span: node.span.clone(),
                node: id,
                bindings,
                states,
            }
        })
        .collect();
    results.sort_by(|a, b| {
        a.span
            .sort_key()
            .cmp(&b.span.sort_key())
            .then(a.node.cmp(&b.node))
    });
    results
}

/// All states produced by matching pattern node `pat` at `node`, starting
/// from `state`. Wide wildcards inside `pat` keep their first completion.
pub fn step(
    pattern: &Pattern,
    pat: &PatternTreeNode,
    state: &MatchState,
    node: &Node,
) -> Vec<MatchState> {
    let engine = Engine::new(pattern.cross_executables, u64::MAX);
    let start = State::from_parts(
        state.depth,
        &state.mapping,
        state.bindings.iter().map(|(k, v)| (k.as_str(), v.clone())),
    );
    let mut out = Vec::new();
    engine.node(pat, node, &start, &mut |s: &State<'_>| {
        out.push(MatchState::snapshot(s));
        true
    });
    out
}

#[derive(Debug, Clone, Default)]
pub struct CorpusMatch {
    pub results: Vec<MatchResult>,
    pub diagnostics: Vec<StateBudgetExceeded>,
    /// Total states derived across all entries.
    pub total_states: u64,
    pub entries: usize,
}

pub fn match_corpus(
    pattern: &Pattern,
    units: &[CompilationUnit],
    opts: &MatchOptions,
) -> CorpusMatch {
    let entries: Vec<&Node> = units.iter().flat_map(|u| u.entry_points()).collect();
    #[cfg(feature = "parallel")]
    let outcomes: Vec<EntryOutcome> = {
        use rayon::prelude::*;
        entries
            .par_iter()
            .map(|e| match_entry(pattern, e, opts))
            .collect()
    };
    #[cfg(not(feature = "parallel"))]
    let outcomes: Vec<EntryOutcome> = entries
        .iter()
        .map(|e| match_entry(pattern, e, opts))
        .collect();

    let mut out = CorpusMatch {
        entries: entries.len(),
        ..CorpusMatch::default()
    };
    for o in outcomes {
        out.total_states += o.states;
        out.results.extend(o.results);
        out.diagnostics.extend(o.budget_exceeded);
    }
    out.results.sort_by(|a, b| {
        a.span
            .sort_key()
            .cmp(&b.span.sort_key())
            .then(a.node.cmp(&b.node))
    });
    out
}
