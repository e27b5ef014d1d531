use super::*;
use crate::lie::DEFAULT_BUDGET;

fn assert_passes(suite: &str, scopes: &[(u32, usize)]) {
    let rep = run_suite(suite, scopes, DEFAULT_BUDGET).unwrap();
    for law in &rep.laws {
        assert!(law.passes(), "{}: {:?}", law.law, &law.counterexamples[..law.counterexamples.len().min(5)]);
        assert!(law.instances > 0 || !law.skipped.is_empty(), "{} checked nothing", law.law);
    }
}

#[test]
fn structure_small() {
    assert_passes("structure", &[(2, 2), (3, 2)]);
}

#[test]
fn frattini_small() {
    assert_passes("frattini", &[(2, 2), (3, 2)]);
}

#[test]
fn unknown_suite() {
    assert!(matches!(run_suite("nope", &[(2, 1)], DEFAULT_BUDGET), Err(Error::InvalidParams(_))));
}

#[test]
fn scope_flags_sampling() {
    assert!(exhaustive_at(2, 3));
    assert!(exhaustive_at(3, 3));
    assert!(!exhaustive_at(2, 4));
}
