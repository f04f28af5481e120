mod common;

use common::desugar::{catalog_mismatches, convenience_failures, CONVENIENCES};
use proptest::test_runner::{Config, TestRunner};

#[test]
fn catalog_equals_its_core_restatement() {
    let errs = catalog_mismatches();
    assert!(errs.is_empty(), "{errs:#?}");
}

#[test]
fn every_convenience_equals_its_expansion() {
    assert_eq!(CONVENIENCES.len(), 9);
    let errs = convenience_failures(256);
    assert!(errs.is_empty(), "{errs:#?}");
}

#[test]
fn a_wrong_expansion_is_detected() {
    // after() without the trailing wildcard is not its expansion
    use algorec::dsl::*;
    use algorec::pattern::compile;
    let conv = compile(&block().after(returns())).unwrap().0;
    let wrong = compile(&block().next(wide_wildcard()).next(returns()))
        .unwrap()
        .0;
    assert!(!conv.structural_eq(&wrong));
    let mut runner = TestRunner::new(Config::with_cases(1));
    assert!((CONVENIENCES[0].1)(&mut runner).is_ok());
}
