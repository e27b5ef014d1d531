use serde::Serialize;

use crate::error::{Error, Result};
use crate::ff::{Elem, Matrix, Subspace};
use crate::lie::lattice::{closed_sets, intersect_all, maximal_proper, minimal_closed};
use crate::lie::{Closure, LieAlgebra, Representation};

use super::pop::{evaluate_with, jacobson_construct, RestrictedAlgebra};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FactorKind {
    /// `A^[p] ⊆ B`.
    Null,
    /// `[L, A] ⊆ B` and `A/B` has no proper nonzero [p]-subalgebra.
    CentralAtom,
    /// Neither; only possible for non-soluble algebras.
    Other,
}

#[derive(Clone, Debug)]
pub struct ChiefFactor {
    pub upper: Subspace,
    pub lower: Subspace,
    pub kind: FactorKind,
    pub central: bool,
    pub abelian: bool,
    pub dim: usize,
}

#[derive(Clone, Debug)]
pub struct ChiefSeries {
    /// Descending from `L` to `0`.
    pub terms: Vec<Subspace>,
    /// `factors[i]` is `terms[i] / terms[i + 1]`.
    pub factors: Vec<ChiefFactor>,
}

/// Restricted quotient together with the underlying quotient data.
#[derive(Clone, Debug)]
pub struct PQuotient {
    pub algebra: RestrictedAlgebra,
    pub quotient: crate::lie::Quotient,
}

impl PQuotient {
    pub fn project(&self, v: &[Elem]) -> Vec<Elem> {
        self.quotient.project(v)
    }
    pub fn section(&self, c: &[Elem]) -> Vec<Elem> {
        self.quotient.section(c)
    }
    pub fn lift(&self, s: &Subspace) -> Subspace {
        self.quotient.lift(s)
    }
    pub fn project_space(&self, s: &Subspace) -> Subspace {
        self.quotient.project_space(s)
    }
}

impl RestrictedAlgebra {
    /// Smallest [p]-subalgebra or [p]-ideal containing `u`.
    pub fn p_closure(&self, u: &Subspace, mode: Closure) -> Subspace {
        let f = self.field();
        let mut cur = self.algebra().closure(u, mode);
        loop {
            let mut grew = false;
            for v in cur.basis().to_vec() {
                if cur.insert(f, &self.evaluate_p(&v)) {
                    grew = true;
                }
            }
            if !grew {
                return cur;
            }
            cur = self.algebra().closure(&cur, mode);
        }
    }

    /// Basis-image test, valid once `u` is closed in the underlying algebra.
    pub fn p_closed_check(&self, u: &Subspace, mode: Closure) -> bool {
        let l = self.algebra();
        let closed = match mode {
            Closure::Subalgebra => l.is_subalgebra(u),
            Closure::Ideal => l.is_ideal(u),
        };
        closed && self.images_in(u)
    }

    fn images_in(&self, u: &Subspace) -> bool {
        let f = self.field();
        u.basis().iter().all(|v| u.contains(f, &self.evaluate_p(v)))
    }

    pub fn is_p_ideal(&self, u: &Subspace) -> bool {
        self.p_closed_check(u, Closure::Ideal)
    }
    pub fn is_p_subalgebra(&self, u: &Subspace) -> bool {
        self.p_closed_check(u, Closure::Subalgebra)
    }

    pub fn p_ideals(&self) -> Vec<Subspace> {
        self.algebra()
            .ideals()
            .into_iter()
            .filter(|s| self.images_in(s))
            .collect()
    }

    pub fn minimal_p_ideals(&self) -> Vec<Subspace> {
        let l = self.algebra();
        // a soluble minimal [p]-ideal is a null minimal ideal or central
        let w = if l.is_soluble() { l.minimal_ideal_region() } else { l.whole() };
        minimal_closed(self.field(), &w, &|s| self.p_closure(s, Closure::Ideal))
    }

    pub fn p_subalgebras(&self, budget: u128) -> Result<Vec<Subspace>> {
        closed_sets(
            self.field(),
            &Subspace::zero(self.dim()),
            &|s| self.p_closure(s, Closure::Subalgebra),
            budget,
        )
    }

    pub fn maximal_p_subalgebras(&self, budget: u128) -> Result<Vec<Subspace>> {
        Ok(maximal_proper(self.field(), &self.p_subalgebras(budget)?))
    }

    /// Intersection of the maximal [p]-subalgebras.
    pub fn p_frattini(&self, budget: u128) -> Result<Subspace> {
        let m = self.maximal_p_subalgebras(budget)?;
        Ok(intersect_all(self.field(), self.dim(), &m))
    }

    pub fn p_quotient(&self, k: &Subspace) -> Result<PQuotient> {
        if !self.is_p_ideal(k) {
            return Err(Error::NotClosed("a [p]-ideal"));
        }
        Ok(self.p_quotient_unchecked(k))
    }

    pub(crate) fn p_quotient_unchecked(&self, k: &Subspace) -> PQuotient {
        let q = self.algebra().quotient_unchecked(k);
        let images = q
            .columns
            .iter()
            .map(|&c| q.project(&self.images()[c]))
            .collect();
        let algebra = jacobson_construct(&q.algebra, images).expect("induced p-operation");
        PQuotient { algebra, quotient: q }
    }

    /// The [p]-subalgebra `u` in the coordinates of its stored basis.
    pub fn restrict(&self, u: &Subspace) -> Result<RestrictedAlgebra> {
        if !self.is_p_subalgebra(u) {
            return Err(Error::NotClosed("a [p]-subalgebra"));
        }
        let sub = self.algebra().restrict(u)?;
        let images = u.basis().iter().map(|v| u.coords(&self.evaluate_p(v))).collect();
        jacobson_construct(&sub, images)
    }

    /// Chief series choosing the least minimal [p]-ideal of each quotient.
    pub fn p_chief_series(&self) -> ChiefSeries {
        let f = self.field();
        let l = self.algebra();
        let mut asc = vec![Subspace::zero(self.dim())];
        loop {
            let cur = asc.last().unwrap().clone();
            if cur.is_full() {
                break;
            }
            let q = self.p_quotient_unchecked(&cur);
            let m = q.algebra.minimal_p_ideals().into_iter().next().expect("nonzero quotient");
            asc.push(q.lift(&m));
        }
        let terms: Vec<Subspace> = asc.into_iter().rev().collect();
        let factors = terms
            .windows(2)
            .map(|w| {
                let (a, b) = (&w[0], &w[1]);
                let central = l.product(&l.whole(), a).basis().iter().all(|v| b.contains(f, v));
                let abelian = l.product(a, a).basis().iter().all(|v| b.contains(f, v));
                let null = abelian && a.basis().iter().all(|v| b.contains(f, &self.evaluate_p(v)));
                let kind = if null {
                    FactorKind::Null
                } else if central && abelian && self.factor_is_atom(a, b) {
                    FactorKind::CentralAtom
                } else {
                    FactorKind::Other
                };
                ChiefFactor {
                    upper: a.clone(),
                    lower: b.clone(),
                    kind,
                    central,
                    abelian,
                    dim: a.dim() - b.dim(),
                }
            })
            .collect();
        ChiefSeries { terms, factors }
    }

    /// Whether `a/b` has no [p]-subalgebra strictly between.
    pub fn factor_is_atom(&self, a: &Subspace, b: &Subspace) -> bool {
        let f = self.field();
        let reduced: Vec<Vec<Elem>> = a.basis().iter().map(|v| b.reduce(f, v)).collect();
        let slice = Subspace::span(f, self.dim(), &reduced);
        slice.points(f).all(|v| {
            let mut s = b.clone();
            s.insert(f, &v);
            self.p_closure(&s, Closure::Subalgebra) == *a
        })
    }

    /// `(L, [p])` as an atom: abelian, nonzero, no proper nonzero [p]-subalgebra.
    pub fn is_atom(&self) -> bool {
        self.dim() > 0
            && self.algebra().is_abelian()
            && self.factor_is_atom(&self.algebra().whole(), &Subspace::zero(self.dim()))
    }

    /// The socle when some minimal [p]-ideal is its own centralizer.
    pub fn is_primitive(&self) -> Option<Subspace> {
        if !self.is_soluble() || self.dim() == 0 {
            return None;
        }
        let l = self.algebra();
        self.minimal_p_ideals().into_iter().find(|a| l.centralizer(a) == *a)
    }

    /// A p-operation for which the abelian ideal `a` is null; other basis
    /// vectors keep their images.
    pub fn null_on_ideal_pop(&self, a: &Subspace) -> Result<RestrictedAlgebra> {
        let l = self.algebra();
        if !l.is_ideal(a) || !l.is_abelian_subspace(a) {
            return Err(Error::NotClosed("an abelian ideal"));
        }
        let f = self.field();
        let n = self.dim();
        let np = a.non_pivots();
        let mut basis: Vec<Vec<Elem>> = a.basis().to_vec();
        let mut imgs: Vec<Vec<Elem>> = vec![vec![0; n]; a.dim()];
        for &j in &np {
            basis.push(l.basis_vector(j));
            imgs.push(self.images()[j].clone());
        }
        let images = (0..n)
            .map(|i| {
                // coordinates of e_i in the adapted basis
                let mut c = vec![0; n];
                if let Some(k) = a.pivots().iter().position(|&q| q == i) {
                    c[k] = 1;
                    for (t, &j) in np.iter().enumerate() {
                        c[a.dim() + t] = f.neg(a.basis()[k][j]);
                    }
                } else {
                    let t = np.iter().position(|&j| j == i).unwrap();
                    c[a.dim() + t] = 1;
                }
                evaluate_with(l, &basis, &imgs, &c)
            })
            .collect();
        jacobson_construct(l, images)
    }

    /// Ideal closure of `s` inside the subalgebra `t`.
    fn ideal_closure_in(&self, t: &Subspace, s: &Subspace) -> Subspace {
        let f = self.field();
        let l = self.algebra();
        let ads: Vec<Matrix> = t.basis().iter().map(|x| l.ad(x)).collect();
        let mut out = s.clone();
        let mut queue: Vec<Vec<Elem>> = s.basis().to_vec();
        while let Some(v) = queue.pop() {
            for m in &ads {
                let w = m.apply(f, &v);
                if out.insert(f, &w) {
                    queue.push(w);
                }
            }
        }
        out
    }

    /// `T_0 = L`, `T_{i+1}` the [p]-ideal closure of `s` in `T_i`; the chain
    /// when it reaches `s`.
    pub fn is_p_subnormal(&self, s: &Subspace) -> Option<Vec<Subspace>> {
        let f = self.field();
        let mut chain = vec![self.algebra().whole()];
        loop {
            let t = chain.last().unwrap().clone();
            if t == *s {
                return Some(chain);
            }
            let mut next = self.ideal_closure_in(&t, s);
            loop {
                let mut grew = false;
                for v in next.basis().to_vec() {
                    if next.insert(f, &self.evaluate_p(&v)) {
                        grew = true;
                    }
                }
                if !grew {
                    break;
                }
                next = self.ideal_closure_in(&t, &next);
            }
            if next == t {
                return None;
            }
            chain.push(next);
        }
    }

    /// Whether `ρ(e_i^[p]) = ρ(e_i)^p` for every basis vector.
    pub fn is_p_module(&self, rep: &Representation) -> bool {
        let f = self.field();
        rep.algebra().same_structure(self.algebra())
            && (0..self.dim()).all(|i| rep.act(&self.images()[i]) == rep.action(i).pow(f, f.p() as u64))
    }

    /// `V ⊕ L` with [p] extending the one on `L` and given by `module_pop`
    /// (default zero) on `V`.
    pub fn restricted_split_extension(
        &self,
        rep: &Representation,
        module_pop: Option<&[Vec<Elem>]>,
    ) -> Result<RestrictedAlgebra> {
        if !self.is_p_module(rep) {
            return Err(Error::Representation("not a p-module".into()));
        }
        let f = self.field();
        let e = self.algebra().split_extension(rep)?;
        let dv = rep.dim();
        let n = e.dim();
        let inv = rep.invariants();
        let mut images = Vec::with_capacity(n);
        for k in 0..dv {
            let mut v = vec![0; n];
            if let Some(mp) = module_pop {
                if mp.len() != dv || !inv.contains(f, &mp[k]) {
                    return Err(Error::Precondition("p-images on the module must be invariants".into()));
                }
                v[..dv].copy_from_slice(&mp[k]);
            }
            images.push(v);
        }
        for b in self.images() {
            let mut v = vec![0; n];
            v[dv..].copy_from_slice(b);
            images.push(v);
        }
        jacobson_construct(&e, images)
    }

    pub fn direct_sum(&self, o: &RestrictedAlgebra) -> Result<RestrictedAlgebra> {
        let l = self.algebra().direct_sum(o.algebra())?;
        let (n1, n) = (self.dim(), l.dim());
        let mut images = Vec::with_capacity(n);
        for b in self.images() {
            let mut v = vec![0; n];
            v[..n1].copy_from_slice(b);
            images.push(v);
        }
        for b in o.images() {
            let mut v = vec![0; n];
            v[n1..].copy_from_slice(b);
            images.push(v);
        }
        jacobson_construct(&l, images)
    }

    /// Whether every [p]-chief factor is abelian and null or a central atom.
    pub fn chief_factors_classified(&self) -> bool {
        self.p_chief_series()
            .factors
            .iter()
            .all(|c| c.abelian && c.kind != FactorKind::Other)
    }
}

/// Action of `L / C` on a factor `a/b` as a module for the quotient `q`.
pub fn factor_module(l: &LieAlgebra, q: &crate::lie::Quotient, a: &Subspace, b: &Subspace) -> Result<Representation> {
    let f = l.field();
    let reduced: Vec<Vec<Elem>> = a.basis().iter().map(|v| b.reduce(f, v)).collect();
    let slice = Subspace::span(f, l.dim(), &reduced);
    let k = slice.dim();
    let action = (0..q.algebra.dim())
        .map(|i| {
            let x = q.section(&q.algebra.basis_vector(i));
            let cols: Vec<Vec<Elem>> = slice
                .basis()
                .iter()
                .map(|w| slice.coords(&b.reduce(f, &l.bracket(&x, w))))
                .collect();
            Matrix::from_cols(k, &cols)
        })
        .collect();
    Representation::new(&q.algebra, k, action)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::Field;
    use crate::lie::DEFAULT_BUDGET;
    use crate::restricted::pop::enumerate_p_operations;

    fn der(p: u32) -> RestrictedAlgebra {
        let f = Field::prime(p).unwrap();
        let l = LieAlgebra::new(&f, 3, &[(0, 1, vec![0, 1, 0])]).unwrap();
        jacobson_construct(&l, vec![vec![1, 0, 0], vec![0, 0, 1], vec![0, 0, 0]]).unwrap()
    }

    fn nilder(p: u32) -> RestrictedAlgebra {
        let f = Field::prime(p).unwrap();
        let l = LieAlgebra::new(&f, 4, &[(0, 1, vec![0, 0, 1, 0])]).unwrap();
        jacobson_construct(&l, vec![vec![0; 4], vec![0; 4], vec![0, 0, 0, 1], vec![0; 4]]).unwrap()
    }

    fn sp(f: &Field, n: usize, v: &[&[Elem]]) -> Subspace {
        Subspace::span(f, n, &v.iter().map(|x| x.to_vec()).collect::<Vec<_>>())
    }

    #[test]
    fn der_derived_algebra_not_p_closed() {
        let r = der(3);
        let f = r.field().clone();
        let b = sp(&f, 3, &[&[0, 1, 0]]);
        assert_eq!(r.algebra().derived_algebra(), b);
        assert!(!r.is_p_ideal(&b));
        assert_eq!(r.p_closure(&b, Closure::Ideal), sp(&f, 3, &[&[0, 1, 0], &[0, 0, 1]]));
    }

    #[test]
    fn der_chief_series() {
        let r = der(3);
        let f = r.field().clone();
        let s = r.p_chief_series();
        assert_eq!(
            s.terms,
            vec![
                Subspace::full(3),
                sp(&f, 3, &[&[0, 1, 0], &[0, 0, 1]]),
                sp(&f, 3, &[&[0, 0, 1]]),
                Subspace::zero(3)
            ]
        );
        let kinds: Vec<FactorKind> = s.factors.iter().map(|c| c.kind).collect();
        assert_eq!(kinds, vec![FactorKind::CentralAtom, FactorKind::Null, FactorKind::Null]);
    }

    #[test]
    fn psi_exceeds_phi_on_der_and_nilder() {
        for r in [der(3), nilder(3), der(2), nilder(2)] {
            let f = r.field().clone();
            let phi = r.algebra().frattini(DEFAULT_BUDGET).unwrap();
            let psi = r.p_frattini(DEFAULT_BUDGET).unwrap();
            assert!(psi.contains_space(&f, &phi) && psi.dim() > phi.dim());
        }
    }

    #[test]
    fn primitivity() {
        let f = Field::prime(3).unwrap();
        let atom = jacobson_construct(&LieAlgebra::abelian(&f, 1), vec![vec![1]]).unwrap();
        assert_eq!(atom.is_primitive(), Some(Subspace::full(1)));
        assert!(atom.is_atom());
        assert!(nilder(3).is_primitive().is_none());
        // xy = y is primitive with socle <y>
        let l = LieAlgebra::new(&f, 2, &[(0, 1, vec![0, 1])]).unwrap();
        let r = jacobson_construct(&l, vec![vec![1, 0], vec![0, 0]]).unwrap();
        assert_eq!(r.is_primitive(), Some(sp(&f, 2, &[&[0, 1]])));
    }

    #[test]
    fn two_dimensional_atom_over_gf2() {
        let f = Field::prime(2).unwrap();
        let l = LieAlgebra::abelian(&f, 2);
        // p-map with irreducible matrix t^2 + t + 1
        let r = jacobson_construct(&l, vec![vec![0, 1], vec![1, 1]]).unwrap();
        assert!(r.is_atom());
        assert_eq!(r.minimal_p_ideals(), vec![Subspace::full(2)]);
    }

    #[test]
    fn subnormality() {
        let r = der(3);
        let f = r.field().clone();
        let ac = sp(&f, 3, &[&[1, 0, 0], &[0, 0, 1]]);
        assert!(r.is_p_subnormal(&ac).is_none());
        let bc = sp(&f, 3, &[&[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(r.is_p_subnormal(&bc).unwrap().len(), 2);
        assert_eq!(r.is_p_subnormal(&Subspace::full(3)).unwrap().len(), 1);
    }

    #[test]
    fn null_on_ideal_and_quotient() {
        let r = der(3);
        let f = r.field().clone();
        let bc = sp(&f, 3, &[&[0, 1, 0], &[0, 0, 1]]);
        let r2 = r.null_on_ideal_pop(&bc).unwrap();
        assert!(r2.is_null_on(&bc));
        assert_eq!(r2.images()[0], vec![1, 0, 0]);
        let q = r.p_quotient(&bc).unwrap();
        assert_eq!(q.algebra.dim(), 1);
        assert_eq!(q.algebra.images(), &[vec![1]]);
        let whole = LieAlgebra::abelian(&f, 2);
        for s in enumerate_p_operations(&whole, 1000).unwrap() {
            assert!(s.null_on_ideal_pop(&Subspace::full(2)).unwrap().is_null());
        }
    }

    #[test]
    fn trivial_module_is_p_module() {
        let f = Field::prime(2).unwrap();
        let r = jacobson_construct(&LieAlgebra::abelian(&f, 1), vec![vec![0]]).unwrap();
        let t = Representation::trivial(r.algebra(), 2);
        assert!(r.is_p_module(&t));
        let e = r.restricted_split_extension(&t, None).unwrap();
        assert!(e.is_null());
    }
}
