use std::collections::HashMap;

use crate::cohomology::all_complements;
use crate::error::{Error, Result};
use crate::ff::Subspace;
use crate::restricted::RestrictedAlgebra;

use super::class::ClassDescriptor;

/// Smallest [p]-ideal whose quotient lies in the formation `f`.
pub fn residual(r: &RestrictedAlgebra, f: &ClassDescriptor) -> Result<Subspace> {
    if !f.residual_support() {
        return Err(Error::ClassKind(f.name().to_string(), "residuals"));
    }
    let fld = r.field();
    let mut res = r.algebra().whole();
    for k in r.p_ideals() {
        if k.contains_space(fld, &res) {
            continue;
        }
        if f.contains(&r.p_quotient(&k)?.algebra)? {
            res = res.intersection(fld, &k);
        }
    }
    Ok(res)
}

/// `u` (coordinates in `v`'s basis) mapped back into `L`.
fn from_coords(fld: &crate::ff::Field, n: usize, v: &Subspace, u: &Subspace) -> Subspace {
    let vecs: Vec<_> = u.basis().iter().map(|c| v.from_coords(fld, c)).collect();
    Subspace::span(fld, n, &vecs)
}

fn to_coords(fld: &crate::ff::Field, v: &Subspace, u: &Subspace) -> Subspace {
    let vecs: Vec<_> = u.basis().iter().map(|x| v.coords(x)).collect();
    Subspace::span(fld, v.dim(), &vecs)
}

/// Projector of a Schunck class by descent through minimal [p]-ideals,
/// taking the least choice at each branch.
pub fn projector_recursive(r: &RestrictedAlgebra, c: &ClassDescriptor, budget: u128) -> Result<Subspace> {
    if !c.flags().schunck {
        return Err(Error::ClassKind(c.name().to_string(), "recursive projectors"));
    }
    if !r.is_soluble() {
        return Err(Error::Precondition("projectors need a soluble algebra".into()));
    }
    let fld = r.field();
    let n = r.dim();
    if c.contains(r)? {
        return Ok(r.algebra().whole());
    }
    let a = r
        .minimal_p_ideals()
        .into_iter()
        .next()
        .ok_or_else(|| Error::Inconsistency("zero algebra outside the class".into()))?;
    let q = r.p_quotient(&a)?;
    let u = q.lift(&projector_recursive(&q.algebra, c, budget)?);
    if !u.is_full() {
        let sub = r.restrict(&u)?;
        let inner = projector_recursive(&sub, c, budget)?;
        return Ok(from_coords(fld, n, &u, &inner));
    }
    // L/A in the class, L outside: a [p]-complement of A
    let comps = all_complements(r.algebra(), &a, budget)?;
    comps
        .into_iter()
        .filter(|m| r.is_p_subalgebra(m))
        .min()
        .ok_or_else(|| Error::Inconsistency("minimal [p]-ideal has no [p]-complement".into()))
}

/// Membership table over pairs (V, K) with V a [p]-subalgebra containing the
/// [p]-ideal K of `L`, filled on demand.
pub struct ProjectorLattice<'a> {
    r: &'a RestrictedAlgebra,
    c: &'a ClassDescriptor,
    subs: Vec<Subspace>,
    index: HashMap<Subspace, usize>,
    ideals: Vec<Subspace>,
    mem: HashMap<(usize, usize), bool>,
}

impl<'a> ProjectorLattice<'a> {
    pub fn new(r: &'a RestrictedAlgebra, c: &'a ClassDescriptor, budget: u128) -> Result<ProjectorLattice<'a>> {
        let mut subs = r.p_subalgebras(budget)?;
        subs.sort();
        let index = subs.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        Ok(ProjectorLattice { r, c, subs, index, ideals: r.p_ideals(), mem: HashMap::new() })
    }

    pub fn subalgebras(&self) -> &[Subspace] {
        &self.subs
    }

    /// Whether `V/K` lies in the class.
    fn member(&mut self, v: usize, k: usize) -> Result<bool> {
        if let Some(&b) = self.mem.get(&(v, k)) {
            return Ok(b);
        }
        let fld = self.r.field();
        let vs = &self.subs[v];
        let rv = self.r.restrict(vs)?;
        let kk = to_coords(fld, vs, &self.ideals[k]);
        let b = self.c.contains(&rv.p_quotient(&kk)?.algebra)?;
        self.mem.insert((v, k), b);
        Ok(b)
    }

    /// `(U + K)/K` is class-maximal in `L/K` for every [p]-ideal `K`.
    pub fn is_projector(&mut self, u: &Subspace) -> Result<bool> {
        let fld = self.r.field().clone();
        for k in 0..self.ideals.len() {
            let w = u.sum(&fld, &self.ideals[k]);
            let Some(&wi) = self.index.get(&w) else {
                return Err(Error::Inconsistency("U + K is not a [p]-subalgebra".into()));
            };
            if !self.member(wi, k)? {
                return Ok(false);
            }
            for vi in 0..self.subs.len() {
                if vi == wi || !self.subs[vi].contains_space(&fld, &w) {
                    continue;
                }
                if self.member(vi, k)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn all_projectors(&mut self) -> Result<Vec<Subspace>> {
        let mut out = Vec::new();
        for i in 0..self.subs.len() {
            let u = self.subs[i].clone();
            if self.is_projector(&u)? {
                out.push(u);
            }
        }
        Ok(out)
    }
}

/// Every projector, by checking the definition on the [p]-subalgebra lattice.
pub fn all_projectors(r: &RestrictedAlgebra, c: &ClassDescriptor, budget: u128) -> Result<Vec<Subspace>> {
    ProjectorLattice::new(r, c, budget)?.all_projectors()
}

/// A projector with a flag telling whether it was checked against the
/// definition on the full [p]-subalgebra lattice.
#[derive(Clone, Debug)]
pub struct Projector {
    pub subspace: Subspace,
    pub validated: bool,
}

/// Recursive projector, validated by the definition when the lattice fits
/// in `budget`. A failed validation is an error. Classes that are not
/// Schunck classes are searched on the lattice; they may have none.
pub fn projector(r: &RestrictedAlgebra, c: &ClassDescriptor, budget: u128) -> Result<Projector> {
    if !c.flags().schunck {
        let all = ProjectorLattice::new(r, c, budget)?.all_projectors()?;
        return match all.into_iter().next() {
            Some(u) => Ok(Projector { subspace: u, validated: true }),
            None => Err(Error::Precondition(format!("no {}-projector exists", c.name()))),
        };
    }
    let u = projector_recursive(r, c, budget)?;
    match ProjectorLattice::new(r, c, budget) {
        Ok(mut lat) => {
            if !lat.is_projector(&u)? {
                return Err(Error::Inconsistency(format!(
                    "recursive projector {} fails the definition",
                    r.algebra().format_subspace(&u)
                )));
            }
            Ok(Projector { subspace: u, validated: true })
        }
        Err(Error::Capacity(_)) => Ok(Projector { subspace: u, validated: false }),
        Err(e) => Err(e),
    }
}

/// `U + K = V` for every [p]-subalgebra `V ⊇ U` and [p]-ideal `K` of `V`
/// with `V/K` in the class.
pub fn is_covering(r: &RestrictedAlgebra, u: &Subspace, c: &ClassDescriptor, budget: u128) -> Result<bool> {
    let fld = r.field();
    if !r.is_p_subalgebra(u) {
        return Err(Error::NotClosed("a [p]-subalgebra"));
    }
    for v in r.p_subalgebras(budget)? {
        if !v.contains_space(fld, u) {
            continue;
        }
        let rv = r.restrict(&v)?;
        let uc = to_coords(fld, &v, u);
        for k in rv.p_ideals() {
            if uc.sum(fld, &k).is_full() {
                continue;
            }
            if c.contains(&rv.p_quotient(&k)?.algebra)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
