use crate::dsl::*;

pub fn prime_factors() -> PatternBuilder {
    let divides = || {
        depth_wildcard(
            bin_op()
                .ops(["%", "/"])
                .lhs(var_read().bind_to("num"))
                .rhs(var_read().bind_to("index")),
        )
    };
    let reduce = || {
        block().anywhere_after(
            assignment()
                .lhs(var_write().bind_to("num"))
                .anywhere_in_rhs(var_read().bind_to("index")),
        )
    };
    method().bind_to("method").body(
        block()
            .after(
                any_loop()
                    .condition(bin_op().ops(["<", "<="]))
                    .body(block().next(one_of(vec![
                        any_loop().condition(divides()).body(reduce()),
                        ite().condition(divides()).then(reduce()),
                    ]))),
            )
            .after(optional(returns())),
    )
}

pub fn gcd() -> PatternBuilder {
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
    let iterative = block()
        .after(
            any_loop()
                .condition(depth_wildcard(var_read().bind_to("b")))
                .body(block().anywhere_after(one_of(vec![
                    var_def_or_ass().anywhere_in_rhs(remainder()),
                    difference,
                ]))),
        )
        .after(returns());
    let recursive = block().anywhere_after(
        method_call()
            .bind_to("method")
            .has_args(vec![var_read().bind_to("b"), remainder()]),
    );
    method()
        .bind_to("method")
        .body(one_of(vec![iterative, recursive]))
}

pub fn fibonacci() -> PatternBuilder {
    let two_calls = || {
        bin_op()
            .ops(["+"])
            .lhs(method_call().bind_to("method"))
            .rhs(method_call().bind_to("method"))
    };
    let base_case = || {
        ite()
            .condition(bin_op().ops(["<", "<=", "==", "||"]))
            .then(block().after(returns()))
    };
    method().bind_to("method").body(one_of(vec![
        block().after(base_case()).anywhere_after(two_calls()),
        block().anywhere_after(base_case().otherwise(block().anywhere_after(two_calls()))),
    ]))
}

pub fn palindrome() -> PatternBuilder {
    let char_at = || one_of(vec![method_call().named("charAt"), array_access()]);
    let compare = || bin_op().ops(["!=", "=="]).lhs(char_at()).rhs(char_at());
    method().bind_to("method").body(one_of(vec![
        block().anywhere_after(any_loop().body(block().anywhere_after(compare()))),
        block()
            .anywhere_after(compare())
            .anywhere_after(method_call().bind_to("method")),
        block().anywhere_after(
            bin_op()
                .ops(["&&"])
                .lhs(compare())
                .rhs(method_call().bind_to("method")),
        ),
        block()
            .anywhere_after(method_call().named("reverse"))
            .anywhere_after(method_call().named("equals")),
    ]))
}

pub fn bubble_sort() -> PatternBuilder {
    let elem = || array_access().array(var_read().bind_to("array"));
    let swap = one_of(vec![
        block()
            .after(var_def_or_ass().rhs(elem()))
            .after(assignment().lhs(elem()).rhs(elem()))
            .after(assignment().lhs(elem())),
        block().anywhere_after(method_call().named("swap")),
    ]);
    let compare_and_swap = ite()
        .condition(bin_op().ops([">", "<", ">=", "<="]).lhs(elem()).rhs(elem()))
        .then(swap);
    method().bind_to("method").body(block().anywhere_after(
        any_loop().body(
            block().anywhere_after(any_loop().body(block().anywhere_after(compare_and_swap))),
        ),
    ))
}

pub fn binary_search() -> PatternBuilder {
    let halving = || bin_op().ops(["/", ">>", ">>>"]);
    let midpoint = || {
        one_of(vec![
            var_def().bind_to("mid").anywhere_in_rhs(halving()),
            assignment()
                .lhs(var_write().bind_to("mid"))
                .anywhere_in_rhs(halving()),
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
        ite().then(block().anywhere_after(assignment().rhs(from_mid()))),
        ite().otherwise(block().anywhere_after(assignment().rhs(from_mid()))),
    ]);
    let iterative = block()
        .has(depth_wildcard(var_def().bind_to("low")))
        .has(depth_wildcard(var_def().bind_to("high")))
        .has(depth_wildcard(
            any_loop()
                .condition(
                    bin_op()
                        .ops(["<", "<="])
                        .lhs(var_read().bind_to("low"))
                        .rhs(var_read().bind_to("high")),
                )
                .body(block().anywhere_after(midpoint()).anywhere_after(narrow)),
        ));
    let recursive = block()
        .anywhere_after(midpoint())
        .anywhere_after(method_call().bind_to("method").has_args(vec![from_mid()]));
    method()
        .bind_to("method")
        .body(one_of(vec![iterative, recursive]))
}
