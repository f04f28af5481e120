//! Convenience builder forms next to their core expansions.
//!
//! The catalog patterns are restated here with core constructors only, and
//! every convenience method has a property comparing it with its expansion
//! on random operands.

use algorec::ast::NodeKind;
use algorec::dsl::*;
use algorec::pattern::{compile, ChildOrder, PatternTreeNode, Predicate};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

fn w() -> PatternBuilder {
    wide_wildcard()
}

/// `[*, p1, *, p2, …, *]`, the expansion of a chain of `after` calls.
fn spaced(items: Vec<PatternBuilder>) -> PatternBuilder {
    let mut b = block().next(w());
    for p in items {
        b = b.next(p).next(w());
    }
    b
}

fn loops(cond: Option<PatternBuilder>, body: Option<PatternBuilder>) -> PatternBuilder {
    let configure = |mut b: PatternBuilder, for_each: bool| {
        if let Some(c) = &cond {
            b = if for_each {
                b.iterable(c.clone())
            } else {
                b.condition(c.clone())
            };
        }
        if let Some(x) = &body {
            b = b.body(x.clone());
        }
        b
    };
    one_of(vec![
        configure(for_loop(), false),
        configure(while_loop(), false),
        configure(do_while_loop(), false),
        configure(for_each_loop(), true),
    ])
}

fn dw(p: PatternBuilder) -> PatternBuilder {
    depth_wildcard(p)
}

fn prime_factors() -> PatternBuilder {
    let divides = || {
        dw(bin_op()
            .ops(["%", "/"])
            .lhs(var_read().bind_to("num"))
            .rhs(var_read().bind_to("index")))
    };
    let reduce = || {
        spaced(vec![dw(assignment()
            .lhs(var_write().bind_to("num"))
            .rhs(dw(var_read().bind_to("index"))))])
    };
    let inner = one_of(vec![
        loops(Some(divides()), Some(reduce())),
        ite().condition(divides()).then(reduce()),
    ]);
    method().bind_to("method").body(spaced(vec![
        loops(Some(bin_op().ops(["<", "<="])), Some(block().next(inner))),
        optional(returns()),
    ]))
}

fn gcd() -> PatternBuilder {
    let remainder = || {
        bin_op()
            .ops(["%"])
            .lhs(var_read().bind_to("a"))
            .rhs(var_read().bind_to("b"))
    };
    let difference = assignment().lhs(var_write().bind_to("a")).rhs(
        bin_op()
            .ops(["-"])
            .lhs(var_read().bind_to("a"))
            .rhs(var_read().bind_to("b")),
    );
    let update = one_of(vec![
        one_of(vec![
            var_def().rhs(dw(remainder())),
            assignment().rhs(dw(remainder())),
        ]),
        difference,
    ]);
    let iterative = spaced(vec![
        loops(
            Some(dw(var_read().bind_to("b"))),
            Some(spaced(vec![dw(update)])),
        ),
        returns(),
    ]);
    let recursive = spaced(vec![dw(method_call()
        .bind_to("method")
        .has_args(vec![var_read().bind_to("b"), remainder()]))]);
    method()
        .bind_to("method")
        .body(one_of(vec![iterative, recursive]))
}

fn fibonacci() -> PatternBuilder {
    let two_calls = || {
        bin_op()
            .ops(["+"])
            .lhs(method_call().bind_to("method"))
            .rhs(method_call().bind_to("method"))
    };
    let base_case = || {
        ite()
            .condition(bin_op().ops(["<", "<=", "==", "||"]))
            .then(spaced(vec![returns()]))
    };
    method().bind_to("method").body(one_of(vec![
        spaced(vec![base_case(), dw(two_calls())]),
        spaced(vec![dw(
            base_case().otherwise(spaced(vec![dw(two_calls())]))
        )]),
    ]))
}

fn palindrome() -> PatternBuilder {
    let char_at = || one_of(vec![method_call().named("charAt"), array_access()]);
    let compare = || bin_op().ops(["!=", "=="]).lhs(char_at()).rhs(char_at());
    method().bind_to("method").body(one_of(vec![
        spaced(vec![dw(loops(None, Some(spaced(vec![dw(compare())]))))]),
        spaced(vec![dw(compare()), dw(method_call().bind_to("method"))]),
        spaced(vec![dw(bin_op()
            .ops(["&&"])
            .lhs(compare())
            .rhs(method_call().bind_to("method")))]),
        spaced(vec![
            dw(method_call().named("reverse")),
            dw(method_call().named("equals")),
        ]),
    ]))
}

fn bubble_sort() -> PatternBuilder {
    let elem = || array_access().array(var_read().bind_to("array"));
    let swap = one_of(vec![
        spaced(vec![
            one_of(vec![var_def().rhs(elem()), assignment().rhs(elem())]),
            assignment().lhs(elem()).rhs(elem()),
            assignment().lhs(elem()),
        ]),
        spaced(vec![dw(method_call().named("swap"))]),
    ]);
    let compare_and_swap = ite()
        .condition(bin_op().ops([">", "<", ">=", "<="]).lhs(elem()).rhs(elem()))
        .then(swap);
    let inner = loops(None, Some(spaced(vec![dw(compare_and_swap)])));
    method()
        .bind_to("method")
        .body(spaced(vec![dw(loops(None, Some(spaced(vec![dw(inner)]))))]))
}

fn binary_search() -> PatternBuilder {
    let halving = || bin_op().ops(["/", ">>", ">>>"]);
    let midpoint = || {
        one_of(vec![
            var_def().bind_to("mid").rhs(dw(halving())),
            assignment()
                .lhs(var_write().bind_to("mid"))
                .rhs(dw(halving())),
        ])
    };
    let from_mid = || {
        one_of(vec![
            bin_op()
                .ops(["+", "-"])
                .lhs(var_read().bind_to("mid"))
                .rhs(literal()),
            var_read().bind_to("mid"),
        ])
    };
    let narrow = one_of(vec![
        ite().then(spaced(vec![dw(assignment().rhs(from_mid()))])),
        ite().otherwise(spaced(vec![dw(assignment().rhs(from_mid()))])),
    ]);
    let bounds = bin_op()
        .ops(["<", "<="])
        .lhs(var_read().bind_to("low"))
        .rhs(var_read().bind_to("high"));
    let iterative = block()
        .has(dw(var_def().bind_to("low")))
        .has(dw(var_def().bind_to("high")))
        .has(dw(loops(
            Some(bounds),
            Some(spaced(vec![dw(midpoint()), dw(narrow)])),
        )));
    let recursive = spaced(vec![
        dw(midpoint()),
        dw(method_call().bind_to("method").has_args(vec![from_mid()])),
    ]);
    method()
        .bind_to("method")
        .body(one_of(vec![iterative, recursive]))
}

/// Core-only restatement of each catalog pattern, by catalog name.
pub fn core_catalog() -> Vec<(&'static str, PatternBuilder)> {
    vec![
        ("prime-factors", prime_factors()),
        ("gcd", gcd()),
        ("fibonacci", fibonacci()),
        ("palindrome", palindrome()),
        ("bubble-sort", bubble_sort()),
        ("binary-search", binary_search()),
    ]
}

fn tree(b: &PatternBuilder) -> PatternTreeNode {
    compile(b).unwrap_or_else(|e| panic!("{e}")).0
}

/// Catalog patterns whose compiled tree differs from the core restatement.
pub fn catalog_mismatches() -> Vec<String> {
    let catalog = algorec::catalog::load_catalog().unwrap();
    let core = core_catalog();
    let mut out = Vec::new();
    if catalog.len() != core.len() {
        out.push(format!(
            "catalog has {} patterns, restated {}",
            catalog.len(),
            core.len()
        ));
    }
    for entry in &catalog {
        match core.iter().find(|(n, _)| *n == entry.name) {
            Some((_, b)) if tree(b).structural_eq(&entry.pattern.root) => {}
            Some(_) => out.push(format!("{} differs from its core expansion", entry.name)),
            None => out.push(format!("{} has no core restatement", entry.name)),
        }
    }
    out
}

fn operand() -> impl Strategy<Value = PatternBuilder> {
    let leaf = prop_oneof![
        Just(var_read()),
        prop::sample::select(vec!["x", "y", "i"]).prop_map(|b| var_read().bind_to(b)),
        Just(literal()),
        prop::sample::select(vec!["0", "1"]).prop_map(|t| literal().text(t)),
        prop::sample::select(vec!["f", "swap"]).prop_map(|n| method_call().named(n)),
        Just(algorec::dsl::any()),
        prop::sample::select(vec!["%", "/", "<"]).prop_map(|o| bin_op().ops([o])),
    ];
    leaf.prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            (
                inner.clone(),
                inner.clone(),
                prop::sample::select(vec!["+", "-", "=="])
            )
                .prop_map(|(l, r, o)| bin_op().ops([o]).lhs(l).rhs(r)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| assignment().lhs(l).rhs(r)),
            (inner.clone(), inner.clone())
                .prop_map(|(c, t)| ite().condition(c).then(block().next(t))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| one_of(vec![a, b])),
            inner.clone().prop_map(depth_wildcard),
            inner.clone().prop_map(|p| returns().value(p)),
            (inner.clone(), inner).prop_map(|(a, b)| block().next(a).next(b)),
        ]
    })
}

fn same(convenience: &PatternBuilder, expansion: &PatternTreeNode) -> Result<(), TestCaseError> {
    prop_assert!(
        convenience.validate().is_ok(),
        "{:?}",
        convenience.validate()
    );
    let got = tree(convenience);
    prop_assert!(
        got.structural_eq(expansion),
        "compiled:\n{}expected:\n{}",
        got.outline(),
        expansion.outline()
    );
    Ok(())
}

type Check = fn(&mut TestRunner) -> Result<(), String>;

fn run<S: Strategy>(
    runner: &mut TestRunner,
    s: S,
    f: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    runner.run(&s, f).map_err(|e| e.to_string())
}

fn after(r: &mut TestRunner) -> Result<(), String> {
    run(r, prop::collection::vec(operand(), 1..4), |ps| {
        let conv = ps.iter().cloned().fold(block(), |b, p| b.after(p));
        same(&conv, &tree(&spaced(ps)))
    })
}

fn anywhere_after(r: &mut TestRunner) -> Result<(), String> {
    run(r, prop::collection::vec(operand(), 1..4), |ps| {
        let conv = ps.iter().cloned().fold(block(), |b, p| b.anywhere_after(p));
        same(&conv, &tree(&spaced(ps.into_iter().map(dw).collect())))
    })
}

fn anywhere_in_rhs(r: &mut TestRunner) -> Result<(), String> {
    run(r, (operand(), operand(), prop::bool::ANY), |(l, p, def)| {
        let (conv, core) = if def {
            (var_def().anywhere_in_rhs(p.clone()), var_def().rhs(dw(p)))
        } else {
            (
                assignment().lhs(l.clone()).anywhere_in_rhs(p.clone()),
                assignment().lhs(l).rhs(dw(p)),
            )
        };
        same(&conv, &tree(&core))
    })
}

fn any_loop_family(r: &mut TestRunner) -> Result<(), String> {
    run(
        r,
        (prop::option::of(operand()), prop::option::of(operand())),
        |(c, b)| {
            let mut conv = any_loop();
            if let Some(c) = &c {
                conv = conv.condition(c.clone());
            }
            if let Some(b) = &b {
                conv = conv.body(b.clone());
            }
            same(&conv, &tree(&loops(c, b)))
        },
    )
}

fn var_def_or_ass_family(r: &mut TestRunner) -> Result<(), String> {
    run(
        r,
        (operand(), prop::bool::ANY, prop::bool::ANY),
        |(p, deep, bound)| {
            let rhs = |b: PatternBuilder| {
                if deep {
                    b.anywhere_in_rhs(p.clone())
                } else {
                    b.rhs(p.clone())
                }
            };
            let bind = |b: PatternBuilder| if bound { b.bind_to("v") } else { b };
            let conv = rhs(bind(var_def_or_ass()));
            let core = one_of(vec![rhs(bind(var_def())), rhs(bind(assignment()))]);
            same(&conv, &tree(&core))
        },
    )
}

fn any_mod_family(r: &mut TestRunner) -> Result<(), String> {
    run(r, prop::option::of(operand()), |p| {
        let (conv, core) = match p {
            Some(p) => (
                any_mod().lhs(p.clone()),
                one_of(vec![
                    assignment().lhs(p.clone()),
                    unary_op().ops(["++", "--"]).operand(p),
                ]),
            ),
            None => (
                any_mod(),
                one_of(vec![assignment(), unary_op().ops(["++", "--"])]),
            ),
        };
        same(&conv, &tree(&core))
    })
}

fn has_parameters(r: &mut TestRunner) -> Result<(), String> {
    let param = prop_oneof![
        Just(parameter()),
        prop::sample::select(vec!["a", "b"]).prop_map(|n| parameter().bind_to(n)),
        Just(algorec::dsl::any()),
    ];
    run(
        r,
        (
            prop::collection::vec(param, 0..4),
            prop::option::of(operand()),
        ),
        |(ps, body)| {
            let mut conv = method().bind_to("m");
            let mut children = vec![body.as_ref().map_or_else(
                || PatternTreeNode::new(algorec::pattern::KindMatcher::Any),
                tree,
            )];
            if let Some(b) = &body {
                conv = conv.body(b.clone());
            }
            children.extend(ps.iter().map(tree));
            let conv = conv.has_parameters(ps);
            let core = PatternTreeNode::kind(NodeKind::Method)
                .with_binding("m")
                .with_order(ChildOrder::Unordered)
                .with_children(children);
            same(&conv, &core)
        },
    )
}

fn compare_commutative(r: &mut TestRunner) -> Result<(), String> {
    run(
        r,
        (operand(), operand(), prop::sample::select(vec!["==", "!="])),
        |(l, rt, op)| {
            let conv = bin_op()
                .ops([op])
                .lhs(l.clone())
                .rhs(rt.clone())
                .compare_commutative();
            let core = PatternTreeNode::kind(NodeKind::BinOp)
                .with_predicate(Predicate::one_of("op", &[op]))
                .with_order(ChildOrder::Unordered)
                .with_children(vec![tree(&l), tree(&rt)]);
            same(&conv, &core)
        },
    )
}

fn optional_otherwise(r: &mut TestRunner) -> Result<(), String> {
    run(r, (operand(), operand(), operand()), |(c, t, p)| {
        let conv = ite()
            .condition(c.clone())
            .then(t.clone())
            .optional_otherwise(p.clone());
        let core = ite()
            .condition(c)
            .then(t)
            .otherwise(optional(spaced(vec![p])));
        same(&conv, &tree(&core))
    })
}

/// Every convenience method with its property.
pub const CONVENIENCES: [(&str, Check); 9] = [
    ("after", after),
    ("anywhereAfter", anywhere_after),
    ("anywhereInRhs", anywhere_in_rhs),
    ("loop", any_loop_family),
    ("varDefOrAss", var_def_or_ass_family),
    ("anyMod", any_mod_family),
    ("hasParameters", has_parameters),
    ("compareCommutative", compare_commutative),
    ("optionalOtherwise", optional_otherwise),
];

/// Run every convenience property for `cases` cases each.
pub fn convenience_failures(cases: u32) -> Vec<String> {
    CONVENIENCES
        .iter()
        .filter_map(|(name, check)| {
            let mut runner = TestRunner::new(Config {
                cases,
                failure_persistence: None,
                ..Config::default()
            });
            check(&mut runner).err().map(|e| format!("{name}: {e}"))
        })
        .collect()
}
