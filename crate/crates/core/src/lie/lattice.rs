use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::ff::{Field, Subspace};

use super::algebra::{Closure, LieAlgebra, SeriesKind};

/// Default cap on closure evaluations during enumeration.
pub const DEFAULT_BUDGET: u128 = 10_000_000;

/// Every subspace fixed by `close` that contains `bottom`, sorted.
///
/// Walks upward from `close(bottom)`, adjoining one projective point of a
/// complement at a time.
pub fn closed_sets(
    f: &Field,
    bottom: &Subspace,
    close: &dyn Fn(&Subspace) -> Subspace,
    budget: u128,
) -> Result<Vec<Subspace>> {
    let start = close(bottom);
    let mut seen: BTreeSet<Subspace> = BTreeSet::new();
    seen.insert(start.clone());
    let mut queue = VecDeque::from([start]);
    let mut work: u128 = 0;
    while let Some(s) = queue.pop_front() {
        if s.is_full() {
            continue;
        }
        let comp = Subspace::coordinate(s.ambient(), &s.non_pivots());
        work += comp.point_count(f);
        if work > budget {
            return Err(Error::Capacity(format!("enumeration exceeded budget {budget}")));
        }
        for v in comp.points(f) {
            let mut t = s.clone();
            t.insert(f, &v);
            let t = close(&t);
            if seen.insert(t.clone()) {
                queue.push_back(t);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// Minimal nonzero fixed points of `close` among closures of points of `w`.
///
/// Correct whenever every minimal closed set lies in `w`.
pub fn minimal_closed(f: &Field, w: &Subspace, close: &dyn Fn(&Subspace) -> Subspace) -> Vec<Subspace> {
    let mut found: BTreeSet<Subspace> = BTreeSet::new();
    for v in w.points(f) {
        if found.iter().any(|c| c.dim() == 1 && c.contains(f, &v)) {
            continue;
        }
        found.insert(close(&Subspace::span(f, w.ambient(), &[v])));
    }
    let all: Vec<Subspace> = found.into_iter().collect();
    all.iter()
        .filter(|c| !all.iter().any(|d| d.dim() < c.dim() && c.contains_space(f, d)))
        .cloned()
        .collect()
}

/// Proper members not contained in a larger proper member.
pub fn maximal_proper(f: &Field, list: &[Subspace]) -> Vec<Subspace> {
    let proper: Vec<&Subspace> = list.iter().filter(|s| !s.is_full()).collect();
    proper
        .iter()
        .filter(|s| !proper.iter().any(|t| t.dim() > s.dim() && t.contains_space(f, s)))
        .map(|s| (*s).clone())
        .collect()
}

pub fn intersect_all(f: &Field, n: usize, list: &[Subspace]) -> Subspace {
    list.iter().fold(Subspace::full(n), |acc, s| acc.intersection(f, s))
}

impl LieAlgebra {
    /// A subspace containing every minimal ideal.
    ///
    /// A minimal ideal is central or equals `[L, A]`, hence lies in the
    /// centre plus the lower central residual; for soluble `L` it also
    /// centralizes the last nonzero derived term.
    pub fn minimal_ideal_region(&self) -> Subspace {
        let f = self.field();
        let base = self.center().sum(f, &self.nilpotent_residual_ordinary());
        let d = self.series(SeriesKind::Derived);
        if d.reaches_zero && d.terms.len() >= 2 {
            let last = &d.terms[d.terms.len() - 2];
            base.intersection(f, &self.centralizer(last))
        } else {
            base
        }
    }

    pub fn minimal_ideals(&self) -> Vec<Subspace> {
        minimal_closed(self.field(), &self.minimal_ideal_region(), &|s| self.ideal_closure(s))
    }

    /// Every ideal, sorted, via preimages of ideals of quotients by minimal ideals.
    pub fn ideals(&self) -> Vec<Subspace> {
        let mut out = BTreeSet::new();
        out.insert(Subspace::zero(self.dim()));
        if self.dim() > 0 {
            for a in self.minimal_ideals() {
                let q = self.quotient_unchecked(&a);
                for j in q.algebra.ideals() {
                    out.insert(q.lift(&j));
                }
            }
        }
        out.into_iter().collect()
    }

    pub fn subalgebras(&self, budget: u128) -> Result<Vec<Subspace>> {
        closed_sets(
            self.field(),
            &Subspace::zero(self.dim()),
            &|s| self.closure(s, Closure::Subalgebra),
            budget,
        )
    }

    pub fn maximal_subalgebras(&self, budget: u128) -> Result<Vec<Subspace>> {
        Ok(maximal_proper(self.field(), &self.subalgebras(budget)?))
    }

    /// Intersection of the maximal subalgebras.
    pub fn frattini(&self, budget: u128) -> Result<Subspace> {
        let m = self.maximal_subalgebras(budget)?;
        Ok(intersect_all(self.field(), self.dim(), &m))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::Field;

    fn der(p: u32) -> LieAlgebra {
        let f = Field::prime(p).unwrap();
        LieAlgebra::new(&f, 3, &[(0, 1, vec![0, 1, 0])]).unwrap()
    }

    fn heisenberg(p: u32) -> LieAlgebra {
        let f = Field::prime(p).unwrap();
        LieAlgebra::new(&f, 3, &[(0, 1, vec![0, 0, 1])]).unwrap()
    }

    // oracle: test every subspace for closure under brackets
    fn scan_subalgebras(l: &LieAlgebra) -> Vec<Subspace> {
        let f = l.field();
        let all = closed_sets(f, &Subspace::zero(l.dim()), &|s| s.clone(), u128::MAX).unwrap();
        all.into_iter().filter(|s| l.is_subalgebra(s)).collect()
    }

    #[test]
    fn abelian_plane_has_five_subalgebras() {
        let f = Field::prime(2).unwrap();
        let l = LieAlgebra::abelian(&f, 2);
        assert_eq!(l.subalgebras(DEFAULT_BUDGET).unwrap().len(), 5);
        assert!(l.frattini(DEFAULT_BUDGET).unwrap().is_zero());
        assert_eq!(l.ideals().len(), 5);
    }

    #[test]
    fn line_has_two_subalgebras() {
        let f = Field::prime(3).unwrap();
        assert_eq!(LieAlgebra::abelian(&f, 1).subalgebras(DEFAULT_BUDGET).unwrap().len(), 2);
    }

    #[test]
    fn enumeration_matches_subspace_scan() {
        for l in [der(2), der(3), heisenberg(2), heisenberg(3)] {
            assert_eq!(l.subalgebras(DEFAULT_BUDGET).unwrap(), scan_subalgebras(&l));
            let ideals: Vec<Subspace> = scan_subalgebras(&l).into_iter().filter(|s| l.is_ideal(s)).collect();
            assert_eq!(l.ideals(), ideals);
        }
    }

    #[test]
    fn der_maximal_subalgebras() {
        let l = der(3);
        let f = l.field().clone();
        let m = l.maximal_subalgebras(DEFAULT_BUDGET).unwrap();
        let ac = Subspace::span(&f, 3, &[vec![1, 0, 0], vec![0, 0, 1]]);
        let bc = Subspace::span(&f, 3, &[vec![0, 1, 0], vec![0, 0, 1]]);
        assert!(m.contains(&ac));
        assert!(m.contains(&bc));
    }

    #[test]
    fn heisenberg_minimal_ideal_is_centre() {
        let l = heisenberg(3);
        assert_eq!(l.minimal_ideals(), vec![l.center()]);
        assert_eq!(l.center().basis(), &[vec![0, 0, 1]]);
        assert_eq!(l.frattini(DEFAULT_BUDGET).unwrap(), l.center());
    }

    #[test]
    fn budget_is_enforced() {
        let f = Field::prime(2).unwrap();
        let l = LieAlgebra::abelian(&f, 6);
        assert!(matches!(l.subalgebras(10), Err(Error::Capacity(_))));
    }
}
