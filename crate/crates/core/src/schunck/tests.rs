use super::*;
use crate::ff::{Field, Subspace};
use crate::lie::{LieAlgebra, DEFAULT_BUDGET};
use crate::restricted::{enumerate_p_operations, jacobson_construct, RestrictedAlgebra};

const B: u128 = DEFAULT_BUDGET as u128;

fn der(p: u32) -> RestrictedAlgebra {
    let f = Field::prime(p).unwrap();
    let l = LieAlgebra::new(&f, 3, &[(0, 1, vec![0, 1, 0])]).unwrap();
    jacobson_construct(&l, vec![vec![1, 0, 0], vec![0, 0, 1], vec![0, 0, 0]]).unwrap()
}

fn small_sample(p: u32) -> Vec<RestrictedAlgebra> {
    let f = Field::prime(p).unwrap();
    let algebras = vec![
        LieAlgebra::abelian(&f, 1),
        LieAlgebra::abelian(&f, 2),
        LieAlgebra::new(&f, 2, &[(0, 1, vec![0, 1])]).unwrap(),
        LieAlgebra::new(&f, 3, &[(0, 1, vec![0, 0, 1])]).unwrap(),
        LieAlgebra::new(&f, 3, &[(0, 1, vec![0, 1, 0])]).unwrap(),
        LieAlgebra::new(&f, 3, &[(0, 1, vec![0, 1, 0]), (0, 2, vec![0, 0, 1])]).unwrap(),
    ];
    algebras
        .iter()
        .flat_map(|l| enumerate_p_operations(l, B).unwrap())
        .collect()
}

fn span(p: u32, n: usize, vecs: &[Vec<u32>]) -> Subspace {
    Subspace::span(&Field::prime(p).unwrap(), n, vecs)
}

#[test]
fn der_residuals_and_nilradical() {
    for p in [2, 3] {
        let r = der(p);
        let bc = span(p, 3, &[vec![0, 1, 0], vec![0, 0, 1]]);
        assert_eq!(residual(&r, &ClassDescriptor::abelian()).unwrap(), bc);
        assert_eq!(residual(&r, &ClassDescriptor::nilpotent()).unwrap(), bc);
        assert_eq!(nilradical(r.algebra()), bc);
        assert_eq!(nilradical_restricted(&r), bc);
        assert!(ClassDescriptor::completely_soluble().contains(&r).unwrap());
    }
}

#[test]
fn der_nilpotent_projector_is_cartan() {
    for p in [2, 3] {
        let r = der(p);
        let c = ClassDescriptor::nilpotent();
        let pr = projector(&r, &c, B).unwrap();
        assert!(pr.validated);
        assert_eq!(pr.subspace, span(p, 3, &[vec![1, 0, 0], vec![0, 0, 1]]));
        let all = all_projectors(&r, &c, B).unwrap();
        assert!(all.contains(&pr.subspace));
        for u in &all {
            assert!(is_covering(&r, u, &c, B).unwrap());
        }
        // a member subalgebra that is not maximal fails covering
        assert!(!is_covering(&r, &span(p, 3, &[vec![0, 0, 1]]), &c, B).unwrap());
    }
}

#[test]
fn abelian_projectors_can_be_missing() {
    let f = Field::prime(2).unwrap();
    let h = LieAlgebra::new(&f, 3, &[(0, 1, vec![0, 0, 1])]).unwrap();
    let r = jacobson_construct(&h, vec![vec![0; 3]; 3]).unwrap();
    assert!(all_projectors(&r, &ClassDescriptor::abelian(), B).unwrap().is_empty());
    assert!(projector_recursive(&r, &ClassDescriptor::abelian(), B).is_err());
    let pn = projector(&r, &ClassDescriptor::nilpotent(), B).unwrap();
    assert!(pn.subspace.is_full());
}

#[test]
fn skeleton_route_agrees_with_direct_predicates() {
    let classes = [
        ClassDescriptor::nilpotent(),
        ClassDescriptor::supersoluble(),
        ClassDescriptor::completely_soluble(),
        ClassDescriptor::ev_base(),
        ClassDescriptor::nil_length(2).unwrap(),
        ClassDescriptor::ploc(ClassDescriptor::abelian()).unwrap(),
    ];
    for p in [2, 3] {
        for r in small_sample(p) {
            for c in &classes {
                let sk = c.skeleton_route(&r).unwrap().member;
                let (d, _) = c.direct(&r).unwrap();
                assert_eq!(sk, d, "{} on {:?}", c.name(), r);
            }
        }
    }
}

#[test]
fn lifted_ordinary_classes_match_restricted_ones() {
    let pairs = [
        (ClassDescriptor::res(Ordinary::Nilpotent), ClassDescriptor::nilpotent()),
        (ClassDescriptor::res(Ordinary::Supersoluble), ClassDescriptor::supersoluble()),
        (ClassDescriptor::res(Ordinary::CompletelySoluble), ClassDescriptor::completely_soluble()),
    ];
    for p in [2, 3] {
        for r in small_sample(p) {
            for (a, b) in &pairs {
                assert_eq!(a.contains(&r).unwrap(), b.contains(&r).unwrap(), "{} on {:?}", a.name(), r);
            }
        }
    }
}

#[test]
fn atoms_belong_to_every_builtin_class() {
    let f = Field::prime(3).unwrap();
    let l = LieAlgebra::abelian(&f, 1);
    let classes = [
        "pS", "pN", "pA", "pU", "pC", "pN^2", "pN_2", "pEv:base", "M", "ploc:M", "join:pA,pU", "meet:pN,pC",
        "lift:U", "lift:ord(pN)",
    ];
    for r in enumerate_p_operations(&l, B).unwrap() {
        for s in classes {
            let c = ClassDescriptor::parse(s, &no_lambda_files).unwrap();
            assert!(c.contains(&r).unwrap(), "{s}");
        }
    }
}

#[test]
fn parse_rejects_bad_classes() {
    assert!(ClassDescriptor::parse("pQ", &no_lambda_files).is_err());
    assert!(ClassDescriptor::parse("res:pA*pN", &no_lambda_files).is_err());
    assert!(ClassDescriptor::parse("pEv:file.json", &no_lambda_files).is_err());
    let c = ClassDescriptor::parse("join:(ploc:(pN_2)),(meet:pU,pC)", &no_lambda_files).unwrap();
    assert!(c.flags().schunck && !c.flags().formation);
}

#[test]
fn central_null_factor_is_central() {
    let r = der(3);
    let cs = r.p_chief_series();
    let last = cs.factors.last().unwrap();
    let rep = classify_chief_factor(&r, &last.upper, &last.lower, &ClassDescriptor::nilpotent()).unwrap();
    assert!(rep.f_central);
    // <b,c>/<c> is acted on by a with eigenvalue 1: eccentric for pN
    let mid = &cs.factors[1];
    let rep = classify_chief_factor(&r, &mid.upper, &mid.lower, &ClassDescriptor::nilpotent()).unwrap();
    assert!(!rep.f_central);
}

#[test]
fn decomposition_splits_eigenvalue_parts() {
    use crate::ff::Matrix;
    use crate::lie::Representation;
    let r = der(3);
    let v = Representation::adjoint(r.algebra());
    // <a, c> is self-normalizing, hence not subnormal
    let s = span(3, 3, &[vec![1, 0, 0], vec![0, 0, 1]]);
    assert!(hypercentral_decomposition(&r, &s, &v, &ClassDescriptor::nilpotent()).is_err());
    let s = span(3, 3, &[vec![0, 1, 0], vec![0, 0, 1]]);
    let d = hypercentral_decomposition(&r, &s, &v, &ClassDescriptor::nilpotent()).unwrap();
    assert!(d.v0.is_full() && d.v1.is_zero());

    let f = Field::prime(3).unwrap();
    let x = jacobson_construct(&LieAlgebra::abelian(&f, 1), vec![vec![1]]).unwrap();
    let rep = Representation::new(x.algebra(), 2, vec![Matrix::from_rows(2, &[vec![1, 0], vec![0, 0]])]).unwrap();
    let d = hypercentral_decomposition(&x, &x.algebra().whole(), &rep, &ClassDescriptor::nilpotent()).unwrap();
    assert_eq!(d.v0, span(3, 2, &[vec![0, 1]]));
    assert_eq!(d.v1, span(3, 2, &[vec![1, 0]]));
}
