use reslie::catalog::{build, restricted_entries, Built};
use reslie::envelopes::{certify, minimal_p_envelope};
use reslie::ff::{Elem, Field, Subspace};
use reslie::json::{parse_algebra, restricted_file, to_pretty, Loaded};
use reslie::restricted::RestrictedAlgebra;
use reslie::schunck::{residual, ClassDescriptor, no_lambda_files};

fn restricted(key: &str, p: u32) -> RestrictedAlgebra {
    match build(key, p).unwrap() {
        Built::Restricted(r) => r,
        _ => panic!("{key} has no p-operation"),
    }
}

/// Every subspace of `F^n`, for tiny `n`, as spans of element tuples.
fn all_subspaces(f: &Field, n: usize) -> Vec<Subspace> {
    let elems: Vec<Vec<Elem>> = Subspace::full(n).elements(f).collect();
    let mut out: Vec<Subspace> = vec![Subspace::zero(n)];
    let mut frontier = out.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for s in &frontier {
            for x in &elems {
                let mut t = s.clone();
                if t.insert(f, x) && !out.contains(&t) {
                    out.push(t.clone());
                    next.push(t);
                }
            }
        }
        frontier = next;
    }
    out
}

fn closed_ideal(r: &RestrictedAlgebra, k: &Subspace) -> bool {
    let f = r.field();
    let l = r.algebra();
    let whole: Vec<Vec<Elem>> = l.whole().elements(f).collect();
    k.elements(f)
        .all(|x| k.contains(f, &r.evaluate_p(&x)) && whole.iter().all(|y| k.contains(f, &l.bracket(y, &x))))
}

#[test]
fn derived_algebra_of_der_is_not_p_closed() {
    for p in [2, 3, 5] {
        let r = restricted("der", p);
        let f = r.field();
        let l = r.algebra();
        let basis = l.whole().basis().to_vec();
        let brackets: Vec<Vec<Elem>> =
            basis.iter().flat_map(|x| basis.iter().map(|y| l.bracket(x, y))).collect();
        let d = Subspace::span(f, l.dim(), &brackets);
        assert_eq!(d, l.derived_algebra());
        assert!(d.elements(f).any(|x| !d.contains(f, &r.evaluate_p(&x))), "p = {p}");
    }
}

#[test]
fn abelian_residual_is_least_closed_ideal_over_derived() {
    for p in [2, 3] {
        let r = restricted("der", p);
        let f = r.field();
        let l = r.algebra();
        let derived = l.derived_algebra();
        let want = all_subspaces(f, l.dim())
            .into_iter()
            .filter(|k| k.contains_space(f, &derived) && closed_ideal(&r, k))
            .min_by_key(Subspace::dim)
            .unwrap();
        let pa = ClassDescriptor::parse("pA", &no_lambda_files).unwrap();
        assert_eq!(residual(&r, &pa).unwrap(), want, "p = {p}");
    }
}

#[test]
fn nocomp_ideal_has_no_closed_complement() {
    for p in [2, 3] {
        let r = restricted("nocomp", p);
        let f = r.field();
        let a = Subspace::span(f, 2, &[vec![1, 0]]);
        let complements: Vec<Subspace> = all_subspaces(f, 2)
            .into_iter()
            .filter(|m| m.dim() == 1 && m.intersection(f, &a).is_zero())
            .collect();
        assert_eq!(complements.len(), p as usize);
        for m in &complements {
            let x = m.basis()[0].clone();
            assert!(!m.contains(f, &r.evaluate_p(&x)));
        }
    }
}

#[test]
fn centreless_restrictable_algebra_is_its_own_envelope() {
    for p in [2, 3] {
        let qs = restricted("Qstar", p);
        assert!(qs.algebra().center().is_zero());
        let env = minimal_p_envelope(qs.algebra()).unwrap();
        certify(&env).unwrap();
        assert_eq!(env.target.dim(), qs.dim());
    }
}

#[test]
fn catalog_algebras_survive_json() {
    for p in [2, 3] {
        for (key, r) in restricted_entries(p).unwrap() {
            let text = to_pretty(&restricted_file(&r));
            let Loaded::Restricted(back) = parse_algebra(&text).unwrap() else { panic!("{key}") };
            assert_eq!(back.algebra(), r.algebra(), "{key}");
            assert_eq!(back.images(), r.images(), "{key}");
        }
    }
}
