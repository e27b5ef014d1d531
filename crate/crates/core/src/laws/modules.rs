use crate::error::Result;
use crate::ff::Subspace;
use crate::lie::Representation;
use crate::restricted::{factor_module, RestrictedAlgebra};
use crate::schunck::{factor_centrality, hypercentral_decomposition, ClassDescriptor};

use super::oracle::{self, describe};
use super::projectors::class;
use super::{LawReport, Sample};

/// Largest module dimension used.
pub const MODULE_DIM: usize = 6;
/// Largest catalog algebra whose [p]-subalgebras are scanned.
pub const ALGEBRA_DIM: usize = 6;

const SATURATED: &[&str] = &["pN", "pU", "pC", "pEv:base"];

/// Trivial and adjoint modules, the [p]-chief factors and the composition
/// factors of the adjoint module, up to `MODULE_DIM`.
fn module_pool(r: &RestrictedAlgebra) -> Result<Vec<(String, Representation)>> {
    let l = r.algebra();
    let n = r.dim();
    let mut pool = vec![("trivial".to_string(), Representation::trivial(l, 1))];
    let adj = Representation::adjoint(l);
    if n <= MODULE_DIM {
        pool.push(("adjoint".to_string(), adj.clone()));
    }
    for (i, x) in adj.composition_factors().into_iter().enumerate() {
        pool.push((format!("adjoint factor {i}"), x));
    }
    let whole = l.quotient(&Subspace::zero(n))?;
    for (i, c) in r.p_chief_series().factors.iter().enumerate() {
        pool.push((format!("chief factor {i}"), factor_module(l, &whole, &c.upper, &c.lower)?));
    }
    pool.retain(|(_, m)| m.dim() <= MODULE_DIM && r.is_p_module(m));
    Ok(pool)
}

fn hypercentral(r: &RestrictedAlgebra, v: &Representation, c: &ClassDescriptor) -> Result<bool> {
    Ok(factor_centrality(r, v, c)?.into_iter().all(|b| b))
}

/// Centrality of the composition factors of the submodule `w` of `v`,
/// restricted to `s`.
fn part_centrality(
    r: &RestrictedAlgebra,
    s: &Subspace,
    v: &Representation,
    w: &Subspace,
    c: &ClassDescriptor,
) -> Result<Vec<bool>> {
    if w.is_zero() {
        return Ok(vec![]);
    }
    let sub = v.subquotient(w, &Subspace::zero(v.dim()))?.restrict(s)?;
    factor_centrality(&r.restrict(s)?, &sub, c)
}

pub fn run(s: &Sample, budget: u128) -> Result<Vec<LawReport>> {
    let mut tens = LawReport::new(
        "hypercentral-tensor-hom",
        "tensor products and Hom spaces of F-hypercentral [p]-modules are F-hypercentral",
    );
    let mut compon = LawReport::new(
        "hypercentral-decomposition",
        "for S [p]-subnormal in F, every [p]-module is V0 + V1 (direct, L-submodules) with V0 S-hypercentral and V1 S-hypereccentric",
    );
    let mut prep = LawReport::new(
        "irreducible-modules-hypercentral",
        "if z^[p] = 0 on the centre and S != 0 is [p]-subnormal in F, every irreducible [p]-module is S F-hypercentral",
    );

    for (key, r) in s.catalog_within(ALGEBRA_DIM) {
        if !r.is_soluble() {
            continue;
        }
        let l = r.algebra();
        let f = r.field();
        let d = || format!("{key} {}", describe(r));
        let pool = module_pool(r)?;
        let Some(psubs) = compon.attempt(r.p_subalgebras(budget), d) else { continue };
        let subnormal: Vec<&Subspace> = psubs.iter().filter(|t| !t.is_zero() && r.is_p_subnormal(t).is_some()).collect();
        let centre = l.center();
        let null_centre = oracle::powers_within(r, &centre, &Subspace::zero(r.dim()));

        for name in SATURATED {
            let c = class(name);
            let central: Vec<bool> = pool.iter().map(|(_, v)| hypercentral(r, v, &c)).collect::<Result<_>>()?;
            for (i, (ni, v)) in pool.iter().enumerate() {
                for (j, (nj, w)) in pool.iter().enumerate() {
                    if !central[i] || !central[j] || v.dim() * w.dim() > MODULE_DIM {
                        continue;
                    }
                    for (what, m) in [("tensor", v.tensor(w)?), ("hom", v.hom(w)?)] {
                        let ok = r.is_p_module(&m) && hypercentral(r, &m, &c)?;
                        tens.check(ok, || format!("{}: {name}: {what} of {ni} and {nj}", d()));
                    }
                }
            }

            for t in &subnormal {
                if !c.contains(&r.restrict(t)?)? {
                    continue;
                }
                for (nv, v) in &pool {
                    let what = || format!("{}: {name}: S = {}, {nv}", d(), l.format_subspace(t));
                    let Some(dec) = compon.attempt(hypercentral_decomposition(r, t, v, &c), what) else { continue };
                    let direct = dec.v0.intersection(f, &dec.v1).is_zero() && dec.v0.sum(f, &dec.v1).is_full();
                    let modules = v.is_submodule(&dec.v0) && v.is_submodule(&dec.v1);
                    let c0 = part_centrality(r, t, v, &dec.v0, &c)?;
                    let c1 = part_centrality(r, t, v, &dec.v1, &c)?;
                    let ok = direct && modules && c0.iter().all(|&b| b) && c1.iter().all(|&b| !b);
                    compon.check(ok, || format!("{}: dim V0 = {}, dim V1 = {}", what(), dec.v0.dim(), dec.v1.dim()));

                    if null_centre && v.is_irreducible() {
                        let cent = part_centrality(r, t, v, &Subspace::full(v.dim()), &c)?;
                        prep.check(cent.iter().all(|&b| b), what);
                    }
                }
            }
        }
    }
    Ok(vec![tens, compon, prep])
}
