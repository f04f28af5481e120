//! Whole-suite checks shared by the property tests and the acceptance target.

use std::collections::{BTreeMap, BTreeSet};

use algorec::ast::{Node, NodeId};
use algorec::java::{parse_source, CompilationUnit};
use algorec::matcher::{match_corpus, match_entry, MatchOptions};
use algorec::pattern::{ChildOrder, KindMatcher, Pattern, PatternTreeNode};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use super::{gen, oracle, validator};

pub type StateKey = (NodeId, Vec<(u32, NodeId)>, BTreeMap<String, String>);

/// Compare the engine with the oracle on one entry. Returns whether the
/// entry matched and whether raw states and counts were compared too.
pub fn compare_with_oracle(pattern: &Pattern, entry: &Node) -> Result<(bool, bool), String> {
    let engine = match_entry(pattern, entry, &MatchOptions { budget: u64::MAX });
    let reference = oracle::run(pattern, entry);
    let matched = !engine.results.is_empty();
    if matched != reference.matched() {
        return Err(format!(
            "verdict: engine {matched}, oracle {}",
            reference.matched()
        ));
    }
    let show = |s: &algorec::ast::SourceSpan| {
        format!(
            "{}:{}-{}:{}",
            s.start_line, s.start_col, s.end_line, s.end_col
        )
    };
    let engine_covered: BTreeSet<NodeId> = engine.results.iter().map(|r| r.node).collect();
    let mut engine_spans: Vec<String> = engine.results.iter().map(|r| show(&r.span)).collect();
    let mut oracle_spans: Vec<String> = reference
        .covered()
        .iter()
        .map(|id| {
            show(
                &entry
                    .find(*id)
                    .expect("covered node lies in the entry")
                    .span,
            )
        })
        .collect();
    engine_spans.sort();
    oracle_spans.sort();
    if engine_covered != reference.covered() || engine_spans != oracle_spans {
        return Err(format!(
            "spans: engine {engine_spans:?}, oracle {oracle_spans:?}"
        ));
    }
    if !gen::all_greedy(&pattern.root) {
        return Ok((matched, false));
    }
    let mut ours: Vec<StateKey> = engine
        .results
        .iter()
        .flat_map(|r| {
            r.states.iter().map(move |s| {
                let binds = s
                    .bindings
                    .iter()
                    .map(|(k, v)| (k.clone(), v.key.clone()))
                    .collect();
                (r.node, s.mapping.clone(), binds)
            })
        })
        .collect();
    let mut theirs: Vec<StateKey> = reference
        .states
        .iter()
        .map(|(c, s)| (*c, s.sorted(), s.binds.clone()))
        .collect();
    ours.sort();
    theirs.sort();
    if ours != theirs {
        let diff: Vec<_> = ours
            .iter()
            .zip(&theirs)
            .filter(|(a, b)| a != b)
            .take(2)
            .collect();
        return Err(format!(
            "raw states: engine {}, oracle {}: {diff:?}",
            ours.len(),
            theirs.len()
        ));
    }
    if engine.states != reference.explored {
        return Err(format!(
            "derived states: engine {}, oracle {}",
            engine.states, reference.explored
        ));
    }
    Ok((matched, true))
}

#[derive(Debug, Default)]
pub struct OracleSummary {
    pub instances: usize,
    pub matched: usize,
    pub full: usize,
    pub failures: Vec<String>,
}

/// Random instances: methods of at most 12 statements, patterns of at most
/// 10 nodes, one instance per seed.
pub fn oracle_equivalence(seeds: std::ops::Range<u64>) -> OracleSummary {
    let mut sum = OracleSummary::default();
    for seed in seeds {
        let mut rng = StdRng::seed_from_u64(seed);
        let src = gen::java_method(&mut rng, 12);
        let unit = match parse_source("Random.java", &src) {
            Ok(u) => u,
            Err(e) => {
                sum.failures.push(format!(
                    "seed {seed}: generated source does not parse: {e}\n{src}"
                ));
                continue;
            }
        };
        let entry = unit.entry_points()[0];
        let pattern = gen::pattern_for(&mut rng, entry, 10);
        sum.instances += 1;
        match compare_with_oracle(&pattern, entry) {
            Ok((m, full)) => {
                sum.matched += m as usize;
                sum.full += full as usize;
            }
            Err(e) => sum
                .failures
                .push(format!("seed {seed}: {e}\n{}{src}", pattern.root.outline())),
        }
    }
    sum
}

/// Validator violations for every catalog result over `corpus`, with the
/// number of results checked.
pub fn soundness(patterns: &[&Pattern], corpus: &[CompilationUnit]) -> (usize, Vec<String>) {
    let opts = MatchOptions::default();
    let mut checked = 0;
    let mut errs = Vec::new();
    for unit in corpus {
        for entry in unit.entry_points() {
            for p in patterns {
                let out = match_entry(p, entry, &opts);
                checked += out.results.len();
                errs.extend(validator::check(p, entry, &out.results));
            }
        }
    }
    (checked, errs)
}

/// Entries matched by `pattern` over `corpus`; `None` when some entry ran
/// out of budget.
pub fn matched_entries(
    pattern: &Pattern,
    corpus: &[CompilationUnit],
) -> Option<BTreeSet<(String, u32)>> {
    let out = match_corpus(pattern, corpus, &MatchOptions::default());
    out.diagnostics.is_empty().then(|| {
        out.results
            .iter()
            .map(|r| (r.entry.file.to_string(), r.entry.span.start_line))
            .collect()
    })
}

fn random_leaf<R: Rng>(rng: &mut R) -> PatternTreeNode {
    use algorec::ast::NodeKind::*;
    let kind = [
        VarRead, Literal, MethodCall, Return, Assignment, If, BinOp, WhileLoop,
    ]
    .choose(rng)
    .unwrap()
    .clone();
    let mut p = PatternTreeNode::kind(kind);
    if rng.gen_bool(0.3) {
        p = p.with_binding(["method", "x", "num"].choose(rng).unwrap());
    }
    p
}

fn nth_mut(root: &mut PatternTreeNode, n: usize) -> &mut PatternTreeNode {
    fn go<'a>(p: &'a mut PatternTreeNode, n: &mut usize) -> Option<&'a mut PatternTreeNode> {
        if *n == 0 {
            return Some(p);
        }
        *n -= 1;
        for c in &mut p.children {
            if let Some(x) = go(c, n) {
                return Some(x);
            }
        }
        None
    }
    let mut n = n;
    go(root, &mut n).expect("index within the tree")
}

/// Insert `optional(leaf)` into a random nonempty child list of a concrete node.
pub fn insert_optional<R: Rng>(rng: &mut R, pattern: &Pattern) -> Pattern {
    let mut root = pattern.root.clone();
    let hosts: Vec<usize> = root
        .walk()
        .iter()
        .enumerate()
        .filter(|(_, p)| !p.matcher.is_combinator() && !p.children.is_empty())
        .map(|(i, _)| i)
        .collect();
    let host = nth_mut(&mut root, *hosts.choose(rng).unwrap());
    let at = rng.gen_range(0..=host.children.len());
    let opt = PatternTreeNode::new(KindMatcher::Optional).with_children(vec![random_leaf(rng)]);
    host.children.insert(at, opt);
    Pattern::new(&pattern.name, root)
}

/// Wrap a random node in a new `oneOf`, or add an alternative to an existing one.
pub fn extend_one_of<R: Rng>(rng: &mut R, pattern: &Pattern) -> Pattern {
    let mut root = pattern.root.clone();
    let slots: Vec<(usize, bool)> = root
        .walk()
        .iter()
        .enumerate()
        .filter(|(_, p)| p.matcher != KindMatcher::WideWildcard)
        .map(|(i, p)| (i, p.matcher == KindMatcher::OneOf))
        .collect();
    let (i, is_one_of) = *slots.choose(rng).unwrap();
    let target = nth_mut(&mut root, i);
    let extra = random_leaf(rng);
    if is_one_of && rng.gen_bool(0.5) {
        target.children.push(extra);
    } else {
        let old = std::mem::replace(target, PatternTreeNode::new(KindMatcher::OneOf));
        target.children = if rng.gen_bool(0.5) {
            vec![old, extra]
        } else {
            vec![extra, old]
        };
    }
    Pattern::new(&pattern.name, root)
}

/// Shuffle the children of every unordered node.
pub fn shuffle_unordered<R: Rng>(rng: &mut R, p: &mut PatternTreeNode) {
    if p.child_order == ChildOrder::Unordered {
        p.children.shuffle(rng);
    }
    for c in &mut p.children {
        shuffle_unordered(rng, c);
    }
}

/// Mutations that broke monotonicity, out of `rounds` per catalog pattern
/// and mutation kind.
pub fn monotonicity(corpus: &[CompilationUnit], rounds: u64) -> (usize, Vec<String>) {
    let catalog = super::catalog();
    let mut tried = 0;
    let mut errs = Vec::new();
    for entry in &catalog {
        let base = matched_entries(&entry.pattern, corpus).expect("catalog stays within budget");
        for seed in 0..rounds {
            let mut rng = StdRng::seed_from_u64(seed);
            for (label, mutated) in [
                (
                    "optional insertion",
                    insert_optional(&mut rng, &entry.pattern),
                ),
                ("oneOf extension", extend_one_of(&mut rng, &entry.pattern)),
            ] {
                let Some(after) = matched_entries(&mutated, corpus) else {
                    continue;
                };
                tried += 1;
                let lost: Vec<_> = base.difference(&after).collect();
                if !lost.is_empty() {
                    errs.push(format!(
                        "{} seed {seed} {label} lost {lost:?}\n{}",
                        entry.name,
                        mutated.root.outline()
                    ));
                }
            }
        }
    }
    (tried, errs)
}
