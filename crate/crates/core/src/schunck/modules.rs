use crate::error::{Error, Result};
use crate::ff::{Elem, Matrix, Subspace};
use crate::lie::Representation;
use crate::restricted::{factor_module, RestrictedAlgebra};

use super::class::ClassDescriptor;
use super::radical::factor_centralizer;

#[derive(Clone, Debug)]
pub struct ChiefFactorReport {
    pub upper: Subspace,
    pub lower: Subspace,
    pub centralizer: Subspace,
    /// The split extension of the factor by `L / C_L(A/B)` lies in the class.
    pub f_central: bool,
}

/// The restricted split extension of `A/B` by `L / C_L(A/B)`, with the
/// p-map induced on `A/B`.
pub fn factor_split_extension(r: &RestrictedAlgebra, a: &Subspace, b: &Subspace) -> Result<(Subspace, RestrictedAlgebra)> {
    let l = r.algebra();
    let f = r.field();
    let c = factor_centralizer(l, a, b);
    let q = r.p_quotient(&c)?;
    let rep = factor_module(l, &q.quotient, a, b)?;
    let reduced: Vec<Vec<Elem>> = a.basis().iter().map(|v| b.reduce(f, v)).collect();
    let slice = Subspace::span(f, l.dim(), &reduced);
    let pop: Vec<Vec<Elem>> = slice
        .basis()
        .iter()
        .map(|w| slice.coords(&b.reduce(f, &r.evaluate_p(w))))
        .collect();
    let ext = q.algebra.restricted_split_extension(&rep, Some(&pop))?;
    Ok((c, ext))
}

pub fn classify_chief_factor(
    r: &RestrictedAlgebra,
    a: &Subspace,
    b: &Subspace,
    class: &ClassDescriptor,
) -> Result<ChiefFactorReport> {
    let (centralizer, ext) = factor_split_extension(r, a, b)?;
    Ok(ChiefFactorReport {
        upper: a.clone(),
        lower: b.clone(),
        centralizer,
        f_central: class.contains(&ext)?,
    })
}

/// For an irreducible p-module `x` of `s`: the split extension of `x`
/// (null p-map) by `s / ker` lies in the class.
pub fn is_module_central(s: &RestrictedAlgebra, x: &Representation, class: &ClassDescriptor) -> Result<bool> {
    let f = s.field();
    let n = s.dim();
    let cols: Vec<Vec<Elem>> = x.actions().iter().map(|m| m.flatten()).collect();
    let ker = if n == 0 {
        Subspace::zero(0)
    } else {
        Matrix::from_cols(x.dim() * x.dim(), &cols).kernel(f)
    };
    let q = s.p_quotient(&ker)?;
    let action = (0..q.algebra.dim())
        .map(|i| x.act(&q.section(&q.algebra.algebra().basis_vector(i))))
        .collect();
    let rep = Representation::new(q.algebra.algebra(), x.dim(), action)?;
    let ext = q.algebra.restricted_split_extension(&rep, None)?;
    class.contains(&ext)
}

/// Per-factor centrality of a composition series.
pub fn factor_centrality(s: &RestrictedAlgebra, v: &Representation, class: &ClassDescriptor) -> Result<Vec<bool>> {
    v.composition_factors()
        .iter()
        .map(|x| is_module_central(s, x, class))
        .collect()
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub v0: Subspace,
    pub v1: Subspace,
}

/// Largest submodule all of whose composition factors satisfy `pred`,
/// grown one irreducible layer at a time.
fn largest_with(v: &Representation, pred: &mut dyn FnMut(&Representation) -> Result<bool>) -> Result<Subspace> {
    let f = v.field();
    let n = v.dim();
    let full = Subspace::full(n);
    let mut w = Subspace::zero(n);
    'grow: loop {
        if w.is_full() {
            return Ok(w);
        }
        let q = v.subquotient(&full, &w)?;
        let reduced: Vec<Vec<Elem>> = full.basis().iter().map(|x| w.reduce(f, x)).collect();
        let slice = Subspace::span(f, n, &reduced);
        for m in q.minimal_submodules() {
            let factor = q.subquotient(&m, &Subspace::zero(q.dim()))?;
            if pred(&factor)? {
                for c in m.basis() {
                    w.insert(f, &slice.from_coords(f, c));
                }
                continue 'grow;
            }
        }
        return Ok(w);
    }
}

/// `V = V0 ⊕ V1` with `V0` the sum of the `S`-submodules whose composition
/// factors are all central and `V1` those all eccentric.
pub fn hypercentral_decomposition(
    r: &RestrictedAlgebra,
    s: &Subspace,
    rep: &Representation,
    class: &ClassDescriptor,
) -> Result<Decomposition> {
    let f = r.field();
    if !r.is_p_module(rep) {
        return Err(Error::Representation("not a p-module".into()));
    }
    if r.is_p_subnormal(s).is_none() {
        return Err(Error::Precondition("S is not [p]-subnormal".into()));
    }
    let rs = r.restrict(s)?;
    if !class.contains(&rs)? {
        return Err(Error::Precondition("S is outside the class".into()));
    }
    let vs = rep.restrict(s)?;
    let v0 = largest_with(&vs, &mut |x| is_module_central(&rs, x, class))?;
    let v1 = largest_with(&vs, &mut |x| is_module_central(&rs, x, class).map(|b| !b))?;
    let direct = v0.intersection(f, &v1).is_zero() && v0.sum(f, &v1).is_full();
    if !direct || !rep.is_submodule(&v0) || !rep.is_submodule(&v1) {
        return Err(Error::Precondition(format!(
            "decomposition hypothesis violated: dim V0 = {}, dim V1 = {}, dim V = {}",
            v0.dim(),
            v1.dim(),
            rep.dim()
        )));
    }
    Ok(Decomposition { v0, v1 })
}
