use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::ff::{Elem, Matrix, Poly, Subspace};

use super::algebra::{LieAlgebra, SeriesKind};

/// Cap on search nodes for isomorphism backtracking.
pub const ISO_BUDGET: u64 = 5_000_000;

/// Partial homomorphism defined on the subalgebra generated so far.
#[derive(Clone)]
struct Partial {
    dom: Subspace,
    // pairs (x, φ(x)) whose x span dom
    pairs: Vec<(Vec<Elem>, Vec<Elem>)>,
}

impl Partial {
    fn image_of(&self, l1: &LieAlgebra, x: &[Elem]) -> Vec<Elem> {
        // express x in terms of the stored pair vectors
        let f = l1.field();
        let n2 = self.pairs.first().map(|p| p.1.len()).unwrap_or(0);
        let mut rest = x.to_vec();
        let mut img = vec![0; n2];
        // pairs are kept in echelon order on their pivot columns
        for (v, w) in &self.pairs {
            let piv = v.iter().position(|&c| c != 0).unwrap();
            let c = f.div(rest[piv], v[piv]);
            if c != 0 {
                f.axpy(&mut rest, f.neg(c), v);
                f.axpy(&mut img, c, w);
            }
        }
        debug_assert!(rest.iter().all(|&c| c == 0));
        img
    }

    /// Adds `(x, y)`; returns false on a linear inconsistency.
    fn add(&mut self, l1: &LieAlgebra, x: Vec<Elem>, y: Vec<Elem>) -> Option<bool> {
        let f = l1.field();
        let mut rest = x.clone();
        let mut img = y.clone();
        for (v, w) in &self.pairs {
            let piv = v.iter().position(|&c| c != 0).unwrap();
            let c = f.div(rest[piv], v[piv]);
            if c != 0 {
                f.axpy(&mut rest, f.neg(c), v);
                f.axpy(&mut img, f.neg(c), w);
            }
        }
        match rest.iter().position(|&c| c != 0) {
            None => {
                if img.iter().all(|&c| c == 0) {
                    Some(false)
                } else {
                    None
                }
            }
            Some(_) => {
                self.dom.insert(f, &x);
                // keep pairs reduced so every pivot is unique
                let piv = rest.iter().position(|&c| c != 0).unwrap();
                let pos = self
                    .pairs
                    .iter()
                    .position(|(v, _)| v.iter().position(|&c| c != 0).unwrap() > piv)
                    .unwrap_or(self.pairs.len());
                self.pairs.insert(pos, (rest, img));
                self.reechelon(f);
                Some(true)
            }
        }
    }

    fn reechelon(&mut self, f: &crate::ff::Field) {
        // eliminate each pivot from the other pairs in turn
        let k = self.pairs.len();
        for i in 0..k {
            let piv = self.pairs[i].0.iter().position(|&c| c != 0).unwrap();
            for j in 0..k {
                if i == j {
                    continue;
                }
                let c = f.div(self.pairs[j].0[piv], self.pairs[i].0[piv]);
                if c != 0 {
                    let (vi, wi) = self.pairs[i].clone();
                    f.axpy(&mut self.pairs[j].0, f.neg(c), &vi);
                    f.axpy(&mut self.pairs[j].1, f.neg(c), &wi);
                }
            }
        }
        self.pairs.sort_by_key(|(v, _)| v.iter().position(|&c| c != 0).unwrap());
    }

    /// Closes under brackets; None when the map fails to be a homomorphism.
    fn close(&mut self, l1: &LieAlgebra, l2: &LieAlgebra) -> Option<()> {
        loop {
            let snap = self.pairs.clone();
            let mut grew = false;
            for i in 0..snap.len() {
                for j in i + 1..snap.len() {
                    let bx = l1.bracket(&snap[i].0, &snap[j].0);
                    let by = l2.bracket(&snap[i].1, &snap[j].1);
                    if self.add(l1, bx, by)? {
                        grew = true;
                    }
                }
            }
            if !grew {
                return Some(());
            }
        }
    }
}

fn invariants(l: &LieAlgebra) -> Vec<usize> {
    let mut v = vec![l.dim(), l.center().dim()];
    v.extend(l.series(SeriesKind::Derived).terms.iter().map(|t| t.dim()));
    v.push(usize::MAX);
    v.extend(l.series(SeriesKind::LowerCentral).terms.iter().map(|t| t.dim()));
    v
}

/// An isomorphism `L1 → L2` (columns are images of basis vectors) passing
/// `accept`, found by backtracking over images of a generating set.
pub fn find_isomorphism(
    l1: &LieAlgebra,
    l2: &LieAlgebra,
    accept: &dyn Fn(&Matrix) -> bool,
    budget: u64,
) -> Result<Option<Matrix>> {
    if l1.field() != l2.field() {
        return Err(Error::FieldMismatch);
    }
    if invariants(l1) != invariants(l2) {
        return Ok(None);
    }
    let f = l1.field();
    let n = l1.dim();
    if n == 0 {
        return Ok(if accept(&Matrix::zero(0, 0)) { Some(Matrix::zero(0, 0)) } else { None });
    }
    // greedy generating set, largest closure first
    let mut gens: Vec<Vec<Elem>> = Vec::new();
    let mut span = Subspace::zero(n);
    while !span.is_full() {
        let best = (0..n)
            .map(|i| l1.basis_vector(i))
            .filter(|v| !span.contains(f, v))
            .max_by_key(|v| {
                let mut s = span.clone();
                s.insert(f, v);
                (l1.subalgebra_closure(&s).dim(), std::cmp::Reverse(v.iter().position(|&c| c != 0)))
            })
            .unwrap();
        span.insert(f, &best);
        span = l1.subalgebra_closure(&span);
        gens.push(best);
    }
    let mut buckets: HashMap<Poly, Vec<Vec<Elem>>> = HashMap::new();
    for v in Subspace::full(n).elements(f) {
        if v.iter().all(|&c| c == 0) {
            continue;
        }
        buckets.entry(l2.ad(&v).char_poly(f)).or_default().push(v);
    }
    let cands: Vec<Vec<Vec<Elem>>> = gens
        .iter()
        .map(|g| buckets.get(&l1.ad(g).char_poly(f)).cloned().unwrap_or_default())
        .collect();
    let start = Partial {
        dom: Subspace::zero(n),
        pairs: Vec::new(),
    };
    let mut nodes = 0u64;
    search(l1, l2, &gens, &cands, 0, start, accept, &mut nodes, budget)
}

#[allow(clippy::too_many_arguments)]
fn search(
    l1: &LieAlgebra,
    l2: &LieAlgebra,
    gens: &[Vec<Elem>],
    cands: &[Vec<Vec<Elem>>],
    k: usize,
    cur: Partial,
    accept: &dyn Fn(&Matrix) -> bool,
    nodes: &mut u64,
    budget: u64,
) -> Result<Option<Matrix>> {
    let f = l1.field();
    let n = l1.dim();
    if k == gens.len() {
        let cols: Vec<Vec<Elem>> = (0..n).map(|i| cur.image_of(l1, &l1.basis_vector(i))).collect();
        let m = Matrix::from_cols(l2.dim(), &cols);
        if m.rank(f) == n && l1.is_homomorphism(l2, &m) && accept(&m) {
            return Ok(Some(m));
        }
        return Ok(None);
    }
    for y in &cands[k] {
        *nodes += 1;
        if *nodes > budget {
            return Err(Error::Capacity(format!("isomorphism search exceeded {budget} nodes")));
        }
        let mut next = cur.clone();
        match next.add(l1, gens[k].clone(), y.clone()) {
            Some(true) => {}
            _ => continue,
        }
        if next.close(l1, l2).is_none() {
            continue;
        }
        // images must stay independent
        let img = Subspace::span(f, l2.dim(), &next.pairs.iter().map(|p| p.1.clone()).collect::<Vec<_>>());
        if img.dim() != next.pairs.len() {
            continue;
        }
        if let Some(m) = search(l1, l2, gens, cands, k + 1, next, accept, nodes, budget)? {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

pub fn are_isomorphic(l1: &LieAlgebra, l2: &LieAlgebra) -> Result<bool> {
    Ok(find_isomorphism(l1, l2, &|_| true, ISO_BUDGET)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::Field;

    #[test]
    fn relabelled_algebra_is_isomorphic() {
        let f = Field::prime(3).unwrap();
        let a = LieAlgebra::new(&f, 3, &[(0, 1, vec![0, 1, 0])]).unwrap();
        // same algebra with basis order (c, b, a): [a,b]=b becomes [e2,e1]=e1
        let b = LieAlgebra::new(&f, 3, &[(1, 2, vec![0, 2, 0])]).unwrap();
        let m = find_isomorphism(&a, &b, &|_| true, ISO_BUDGET).unwrap().unwrap();
        assert!(a.is_homomorphism(&b, &m));
        let h = LieAlgebra::new(&f, 3, &[(0, 1, vec![0, 0, 1])]).unwrap();
        assert!(!are_isomorphic(&a, &h).unwrap());
    }

    #[test]
    fn scaled_brackets_are_isomorphic() {
        let f = Field::prime(5).unwrap();
        let a = LieAlgebra::new(&f, 2, &[(0, 1, vec![0, 1])]).unwrap();
        let b = LieAlgebra::new(&f, 2, &[(0, 1, vec![3, 2])]).unwrap();
        assert!(are_isomorphic(&a, &b).unwrap());
    }
}
