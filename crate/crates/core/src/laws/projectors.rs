use std::collections::BTreeMap;

use crate::cohomology::{all_complements, conjugating_element};
use crate::error::Result;
use crate::ff::Subspace;
use crate::restricted::RestrictedAlgebra;
use crate::schunck::{no_lambda_files, projector, ClassDescriptor, ProjectorLattice};

use super::oracle::{self, describe, describe_ordinary};
use super::{LawReport, Sample, LATTICE_DIM};

pub const CLASSES: &[&str] = &["pN", "pA", "pU", "pC", "pEv:base"];

pub(super) fn class(name: &str) -> ClassDescriptor {
    ClassDescriptor::parse(name, &no_lambda_files).expect("built-in class names parse")
}

fn coords(f: &crate::ff::Field, v: &Subspace, u: &Subspace) -> Subspace {
    let vecs: Vec<_> = u.basis().iter().map(|x| v.coords(x)).collect();
    Subspace::span(f, v.dim(), &vecs)
}

/// Covering subalgebras by the definition: `U` is in the class and for
/// every [p]-subalgebra `V ⊇ U` and every [p]-ideal `K` of `V` with `V/K`
/// in the class, `U + K = V`. [p]-ideals of `V` are read off the subalgebra list.
pub(super) fn covering_set(r: &RestrictedAlgebra, c: &ClassDescriptor, psubs: &[Subspace]) -> Result<Vec<Subspace>> {
    let f = r.field();
    let l = r.algebra();
    // (V, K) -> V/K in the class
    let mut quotient_in: BTreeMap<(usize, usize), bool> = BTreeMap::new();
    let mut out = Vec::new();
    for u in psubs {
        if !c.contains(&r.restrict(u)?)? {
            continue;
        }
        let mut covers = true;
        'outer: for (vi, v) in psubs.iter().enumerate() {
            if !v.contains_space(f, u) {
                continue;
            }
            for (ki, k) in psubs.iter().enumerate() {
                if !v.contains_space(f, k) || !oracle::bracket_within(l, v, k, k) {
                    continue;
                }
                if u.sum(f, k) == *v {
                    continue;
                }
                let member = match quotient_in.get(&(vi, ki)) {
                    Some(&b) => b,
                    None => {
                        let rv = r.restrict(v)?;
                        let b = c.contains(&rv.p_quotient(&coords(f, v, k))?.algebra)?;
                        quotient_in.insert((vi, ki), b);
                        b
                    }
                };
                if member {
                    covers = false;
                    break 'outer;
                }
            }
        }
        if covers {
            out.push(u.clone());
        }
    }
    Ok(out)
}

fn sorted(mut v: Vec<Subspace>) -> Vec<Subspace> {
    v.sort();
    v
}

struct Laws {
    exists: LawReport,
    primcov: LawReport,
    conj: LawReport,
}

fn check_algebra(
    laws: &mut Laws,
    r: &RestrictedAlgebra,
    name: &str,
    c: &ClassDescriptor,
    tag: &str,
    budget: u128,
) -> Result<()> {
    let l = r.algebra();
    let f = r.field();
    let d = || format!("{tag} {}", describe(r)).trim_start().to_string();
    let Some(psubs) = laws.exists.attempt(r.p_subalgebras(budget), d) else { return Ok(()) };
    let cov = covering_set(r, c, &psubs)?;
    let Some(mut lat) = laws.exists.attempt(ProjectorLattice::new(r, c, budget), d) else { return Ok(()) };
    let projs = lat.all_projectors()?;

    match projector(r, c, budget) {
        Ok(p) => {
            let ok = p.validated && projs.contains(&p.subspace) && cov.contains(&p.subspace);
            laws.exists.check(ok, || {
                format!("{}: {name}-projector {} (covering by scan: {})", d(), l.format_subspace(&p.subspace), cov.contains(&p.subspace))
            });
        }
        Err(e) => {
            let e = format!("{e}; projectors by definition: {}", projs.len());
            laws.exists.check(false, || format!("{}: {name}: {e}", d()));
        }
    }
    // every projector found by the definition covers
    for u in &projs {
        laws.exists.check(cov.contains(u), || format!("{}: {name}-projector {} does not cover", d(), l.format_subspace(u)));
    }

    if let Some(soc) = r.is_primitive() {
        let q = r.p_quotient(&soc)?;
        if !c.contains(r)? && c.contains(&q.algebra)? {
            let Some(comps) = laws.primcov.attempt(all_complements(l, &soc, budget), d) else { return Ok(()) };
            let comps = sorted(comps);
            let ok = sorted(projs.clone()) == comps && sorted(cov.clone()) == comps;
            laws.primcov.check(ok, || {
                format!("{}: {name}: {} projectors, {} covering, {} complements", d(), projs.len(), cov.len(), comps.len())
            });
        }
    }

    for a in r.p_ideals() {
        if !oracle::is_abelian(l, &a) || !c.contains(&r.p_quotient(&a)?.algebra)? {
            continue;
        }
        let Some(u1) = cov.first() else { continue };
        for u2 in &cov {
            let found = conjugating_element(l, &a, u1, u2);
            let ok = matches!(&found, Some(x) if a.contains(f, x) && oracle::alpha_image(l, x, u1) == *u2);
            laws.conj.check(ok, || {
                format!("{}: {name}: {} and {} over {}", d(), l.format_subspace(u1), l.format_subspace(u2), l.format_subspace(&a))
            });
        }
    }
    Ok(())
}

pub fn run(s: &Sample, budget: u128) -> Result<Vec<LawReport>> {
    let mut out = Vec::new();
    let mut primcov = LawReport::new(
        "primitive-covering-are-socle-complements",
        "for primitive L outside the class with L/soc in it, covering subalgebras = projectors = complements of the socle",
    );
    let mut conj = LawReport::new(
        "covering-subalgebras-conjugate",
        "over an abelian [p]-ideal A with L/A in the class, covering subalgebras are conjugate under 1 + ad(a), a in A",
    );
    for name in CLASSES {
        let c = class(name);
        let mut laws = Laws {
            exists: LawReport::new(
                &format!("projector-covers[{name}]"),
                "the recursive projector exists, satisfies the definition and is a covering subalgebra",
            ),
            primcov,
            conj,
        };
        for r in &s.restricted {
            check_algebra(&mut laws, r, name, &c, "", budget)?;
        }
        for (key, r) in s.catalog_within(LATTICE_DIM) {
            if r.is_soluble() {
                check_algebra(&mut laws, r, name, &c, key, budget)?;
            }
        }
        primcov = laws.primcov;
        conj = laws.conj;
        out.push(laws.exists);
    }
    out.push(primcov);
    out.push(conj);

    let mut anyop = LawReport::new(
        "membership-independent-of-p-operation",
        "membership of a class containing all atoms does not depend on the p-operation",
    );
    let classes: Vec<ClassDescriptor> = CLASSES.iter().map(|n| class(n)).collect();
    for sm in &s.small {
        let Some(ops) = &sm.p_operations else { continue };
        if !sm.algebra.is_soluble() {
            continue;
        }
        for (name, c) in CLASSES.iter().zip(&classes) {
            let verdicts = ops.iter().map(|r| c.contains(r)).collect::<Result<Vec<bool>>>()?;
            let ok = verdicts.iter().all(|&v| v == verdicts[0]);
            anyop.check(ok, || {
                let yes = verdicts.iter().filter(|&&v| v).count();
                format!("{} {name}: {yes} of {} p-operations are members", describe_ordinary(&sm.algebra), ops.len())
            });
        }
    }
    out.push(anyop);
    Ok(out)
}
