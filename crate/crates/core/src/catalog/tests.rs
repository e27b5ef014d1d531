use super::*;
use crate::lie::DEFAULT_BUDGET;

fn run(key: &str, p: u32) {
    let e = entry(key, p).unwrap();
    for o in check_facts(&e, DEFAULT_BUDGET).unwrap() {
        assert!(o.passed, "{key} at p = {p}: {:?} ({})", o.fact, o.detail);
    }
}

#[test]
fn facts_hold_at_two() {
    for k in KEYS {
        if *k != "T" {
            run(k, 2);
        }
    }
}

#[test]
fn facts_hold_at_three() {
    for k in KEYS {
        run(k, 3);
    }
}

#[test]
fn t_shape() {
    let Built::Restricted(t) = build("T", 3).unwrap() else { panic!() };
    assert_eq!(t.dim(), 14);
    assert_eq!(t.algebra().labels()[0], "k0v0");
    assert_eq!(t.algebra().labels()[13], "y");
    assert!(t.is_null_on(&Subspace::coordinate(14, &(0..9).collect::<Vec<_>>())));
}

#[test]
fn unreduced_t_is_not_primitive() {
    // K ⊗ V split by all of N ⊕ S*: c − z acts as zero
    let f = Field::prime(3).unwrap();
    let acting = n_algebra(&f).unwrap().direct_sum(&s_star(&f).unwrap()).unwrap();
    let zero = Matrix::zero(3, 3);
    let mut ka = k_actions(&f);
    ka.extend(vec![zero.clone(); 3]);
    let mut va = vec![zero; 3];
    va.extend(v_actions(&f));
    let k = Representation::new(acting.algebra(), 3, ka).unwrap();
    let v = Representation::new(acting.algebra(), 3, va).unwrap();
    let kv = k.tensor(&v).unwrap();
    let mut cz = vec![0; 6];
    cz[2] = 1;
    cz[5] = f.neg(1);
    assert!(kv.act(&cz).is_zero());
    let t = acting.restricted_split_extension(&kv, None).unwrap();
    assert_eq!(t.dim(), 15);
    assert!(t.is_primitive().is_none());
}

#[test]
fn unknown_key() {
    assert!(matches!(build("nope", 2), Err(Error::UnknownKey(_))));
}

#[test]
fn enumeration_counts() {
    let s = enumerate_small(2, 2).unwrap();
    // dim 1, abelian dim 2, xy = y
    assert_eq!(s.len(), 3);
    let ops: usize = s.iter().map(|a| a.p_operations.as_ref().map_or(0, |v| v.len())).sum();
    assert_eq!(ops, 2 + 16 + 1);
    let again = enumerate_small(2, 2).unwrap();
    assert!(s.iter().zip(&again).all(|(a, b)| a.algebra.same_structure(&b.algebra)));
}

#[test]
fn enumeration_dim_three_over_two() {
    let s = enumerate_small(2, 3).unwrap();
    let three: Vec<_> = s.iter().filter(|a| a.algebra.dim() == 3).collect();
    // pairwise non-isomorphic
    for (i, a) in three.iter().enumerate() {
        for b in &three[i + 1..] {
            assert!(!iso::are_isomorphic(&a.algebra, &b.algebra).unwrap());
        }
    }
    assert!(three.iter().any(|a| !a.algebra.is_soluble()));
}

#[test]
fn sampled_regime_is_seeded() {
    let a = sampled(&Field::prime(2).unwrap(), 4).unwrap();
    let b = sampled(&Field::prime(2).unwrap(), 4).unwrap();
    assert_eq!(a.len(), SAMPLED_COUNT);
    assert!(a.iter().zip(&b).all(|(x, y)| x.same_structure(y)));
}
