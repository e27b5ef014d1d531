//! Element-scan checks used to judge the library's answers. They share no
//! code with the basis-level algorithms they are compared against.

use crate::ff::{Elem, Field, Subspace};
use crate::lie::LieAlgebra;
use crate::restricted::RestrictedAlgebra;

pub fn span(f: &Field, n: usize, vecs: &[Vec<Elem>]) -> Subspace {
    Subspace::span(f, n, vecs)
}

/// `[s, t] ⊆ u` on basis pairs.
pub fn bracket_within(l: &LieAlgebra, s: &Subspace, t: &Subspace, u: &Subspace) -> bool {
    let f = l.field();
    s.basis()
        .iter()
        .all(|x| t.basis().iter().all(|y| u.contains(f, &l.bracket(x, y))))
}

/// Every element of `a` has its p-th power in `b`.
pub fn powers_within(r: &RestrictedAlgebra, a: &Subspace, b: &Subspace) -> bool {
    let f = r.field();
    a.elements(f).all(|x| b.contains(f, &r.evaluate_p(&x)))
}

pub fn is_p_subalgebra(r: &RestrictedAlgebra, s: &Subspace) -> bool {
    bracket_within(r.algebra(), s, s, s) && powers_within(r, s, s)
}

pub fn is_p_ideal(r: &RestrictedAlgebra, s: &Subspace) -> bool {
    bracket_within(r.algebra(), &r.algebra().whole(), s, s) && powers_within(r, s, s)
}

pub fn is_abelian(l: &LieAlgebra, s: &Subspace) -> bool {
    bracket_within(l, s, s, &Subspace::zero(l.dim()))
}

/// Smallest subspace containing `b` and `x` closed under the p-map.
fn power_hull(r: &RestrictedAlgebra, b: &Subspace, x: &[Elem]) -> Subspace {
    let f = r.field();
    let mut s = b.clone();
    let mut cur = x.to_vec();
    while s.insert(f, &cur) {
        cur = r.evaluate_p(&cur);
    }
    // elements of b + <x, x^[p], ...> still need closing
    loop {
        let before = s.dim();
        for y in s.elements(f).collect::<Vec<_>>() {
            s.insert(f, &r.evaluate_p(&y));
        }
        if s.dim() == before {
            return s;
        }
    }
}

/// `a/b` (abelian) has no [p]-subalgebra strictly between `b` and `a`.
pub fn is_atom_factor(r: &RestrictedAlgebra, a: &Subspace, b: &Subspace) -> bool {
    let f = r.field();
    a.elements(f)
        .filter(|x| !b.contains(f, x))
        .all(|x| power_hull(r, b, &x) == *a)
}

/// Subspace generated by `s` under brackets with itself and the p-map,
/// by element scan.
pub fn p_hull(r: &RestrictedAlgebra, s: &Subspace) -> Subspace {
    let f = r.field();
    let l = r.algebra();
    let mut h = s.clone();
    loop {
        let before = h.dim();
        let elems: Vec<_> = h.elements(f).collect();
        for x in &elems {
            h.insert(f, &r.evaluate_p(x));
            for y in h.basis().to_vec() {
                h.insert(f, &l.bracket(x, &y));
            }
        }
        if h.dim() == before {
            return h;
        }
    }
}

/// `{x : [x, s] ⊆ s}` by scanning elements.
pub fn normalizer(l: &LieAlgebra, s: &Subspace) -> Subspace {
    let f = l.field();
    let keep: Vec<Vec<Elem>> = l
        .whole()
        .elements(f)
        .filter(|x| s.basis().iter().all(|y| s.contains(f, &l.bracket(x, y))))
        .collect();
    span(f, l.dim(), &keep)
}

/// Fitting null component of `ad(a)`.
pub fn engel(l: &LieAlgebra, a: &[Elem]) -> Subspace {
    let f = l.field();
    l.ad(a).pow(f, l.dim().max(1) as u64).kernel(f)
}

/// `a/b` is nilpotent: the series `C ↦ [a, C] + b` from `a` reaches `b`.
pub fn nilpotent_mod(l: &LieAlgebra, a: &Subspace, b: &Subspace) -> bool {
    let f = l.field();
    let mut c = a.clone();
    loop {
        let mut next = b.clone();
        for x in a.basis() {
            for y in c.basis() {
                next.insert(f, &l.bracket(x, y));
            }
        }
        if next == c {
            return c == *b;
        }
        c = next;
    }
}

pub fn is_nilpotent(l: &LieAlgebra) -> bool {
    nilpotent_mod(l, &l.whole(), &Subspace::zero(l.dim()))
}

/// Elements of `list` that are proper and maximal among the proper ones.
pub fn maximal_proper(f: &Field, list: &[Subspace]) -> Vec<Subspace> {
    let proper: Vec<&Subspace> = list.iter().filter(|s| !s.is_full()).collect();
    proper
        .iter()
        .filter(|s| !proper.iter().any(|t| t.dim() > s.dim() && t.contains_space(f, s)))
        .map(|s| (*s).clone())
        .collect()
}

pub fn intersect(f: &Field, n: usize, list: &[Subspace]) -> Subspace {
    list.iter().fold(Subspace::full(n), |acc, s| acc.intersection(f, s))
}

/// Image of `u` under `1 + ad(a)`.
pub fn alpha_image(l: &LieAlgebra, a: &[Elem], u: &Subspace) -> Subspace {
    let f = l.field();
    let imgs: Vec<Vec<Elem>> = u.basis().iter().map(|x| f.vadd(x, &l.bracket(a, x))).collect();
    span(f, l.dim(), &imgs)
}

pub fn complements(f: &Field, a: &Subspace, list: &[Subspace]) -> Vec<Subspace> {
    list.iter()
        .filter(|m| m.intersection(f, a).is_zero() && m.sum(f, a).is_full())
        .cloned()
        .collect()
}

/// A short human-readable description: nonzero brackets and p-images.
pub fn describe(r: &RestrictedAlgebra) -> String {
    let l = r.algebra();
    let mut parts = Vec::new();
    for (i, j, v) in l.brackets() {
        parts.push(format!("[{},{}]={}", l.labels()[i], l.labels()[j], l.format_vector(&v)));
    }
    for (i, v) in r.images().iter().enumerate() {
        if v.iter().any(|&c| c != 0) {
            parts.push(format!("{}^[p]={}", l.labels()[i], l.format_vector(v)));
        }
    }
    format!("GF({}) dim {} {{{}}}", r.field().order(), r.dim(), parts.join("; "))
}

pub fn describe_ordinary(l: &LieAlgebra) -> String {
    let parts: Vec<String> = l
        .brackets()
        .into_iter()
        .map(|(i, j, v)| format!("[{},{}]={}", l.labels()[i], l.labels()[j], l.format_vector(&v)))
        .collect();
    format!("GF({}) dim {} {{{}}}", l.field().order(), l.dim(), parts.join("; "))
}
