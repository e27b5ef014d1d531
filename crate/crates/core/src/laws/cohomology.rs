use crate::cohomology::{all_complements, cohomology_dim, conjugating_element};
use crate::error::Result;
use crate::ff::Subspace;
use crate::lie::Representation;
use crate::restricted::{factor_module, RestrictedAlgebra};

use super::oracle::{self, describe};
use super::projectors::{class, covering_set, CLASSES};
use super::{LawReport, Sample, LATTICE_DIM};

/// `A` as a module for `L/A`.
fn socle_module(r: &RestrictedAlgebra, a: &Subspace) -> Result<Representation> {
    let q = r.p_quotient(a)?;
    factor_module(r.algebra(), &q.quotient, a, &Subspace::zero(r.dim()))
}

/// Complements of `a` found among all subalgebras, and the count a split
/// extension with vanishing H^1 must have: `|F|^(dim A - dim A^L)`.
fn brute_complements(r: &RestrictedAlgebra, a: &Subspace, budget: u128) -> Result<(Vec<Subspace>, u128)> {
    let l = r.algebra();
    let f = r.field();
    let mut comps = oracle::complements(f, a, &l.subalgebras(budget)?);
    comps.sort();
    let fixed = a
        .elements(f)
        .filter(|x| l.whole().basis().iter().all(|y| l.bracket(y, x).iter().all(|&c| c == 0)))
        .count();
    let orbit = (f.order() as u128).pow(a.dim() as u32) / fixed as u128;
    Ok((comps, orbit))
}

pub fn run(s: &Sample, budget: u128) -> Result<Vec<LawReport>> {
    let mut vanish = LawReport::new(
        "primitive-cohomology-vanishes",
        "for primitive L with socle A, H^n(L/A, A) = 0 for n <= 2 (n = 1, 2 when L = A)",
    );
    let mut split = LawReport::new(
        "primitive-complements-conjugate",
        "the socle of a primitive algebra has complements, all maximal [p]-subalgebras and conjugate under 1 + ad(a)",
    );
    let mut h1 = LawReport::new(
        "covering-complements-h1",
        "A minimal, L/A in the class, L outside it, covering subalgebras exist: they are the complements of A and H^1(L/A, A) = 0",
    );
    let classes: Vec<_> = CLASSES.iter().map(|n| (*n, class(n))).collect();
    let algebras = s
        .restricted
        .iter()
        .map(|r| (String::new(), r))
        .chain(s.catalog_within(LATTICE_DIM).filter(|(_, r)| r.is_soluble()).map(|(k, r)| (k.clone(), r)));

    for (tag, r) in algebras {
        let l = r.algebra();
        let f = r.field();
        let d = || format!("{tag} {}", describe(r)).trim_start().to_string();
        if let Some(a) = r.is_primitive() {
            let rep = socle_module(r, &a)?;
            let lowest = if a.is_full() { 1 } else { 0 };
            for n in lowest..=2 {
                if let Some(h) = vanish.attempt(cohomology_dim(&rep, n), d) {
                    vanish.check(h == 0, || format!("{}: dim H^{n} = {h}", d()));
                }
            }
            if let Some((comps, orbit)) = split.attempt(brute_complements(r, &a, budget), d) {
                let lib = split.attempt(all_complements(l, &a, budget), d);
                let psubs = r.p_subalgebras(budget).ok();
                let mut ok = !comps.is_empty() && lib.as_ref() == Some(&comps) && comps.len() as u128 == orbit;
                for m in &comps {
                    ok &= oracle::is_p_subalgebra(r, m);
                    if let Some(ps) = &psubs {
                        ok &= !ps.iter().any(|t| !t.is_full() && t.dim() > m.dim() && t.contains_space(f, m));
                    }
                    let x = conjugating_element(l, &a, &comps[0], m);
                    ok &= matches!(&x, Some(x) if a.contains(f, x) && oracle::alpha_image(l, x, &comps[0]) == *m);
                }
                split.check(ok, || format!("{}: {} complements, expected {orbit}", d(), comps.len()));
            }
        }

        let Some(psubs) = h1.attempt(r.p_subalgebras(budget), d) else { continue };
        for (name, c) in &classes {
            if c.contains(r)? {
                continue;
            }
            let mut cov = None;
            for a in r.minimal_p_ideals() {
                if !c.contains(&r.p_quotient(&a)?.algebra)? {
                    continue;
                }
                if cov.is_none() {
                    cov = Some(covering_set(r, c, &psubs)?);
                }
                let cov = cov.as_ref().unwrap();
                if cov.is_empty() {
                    continue;
                }
                let Some((comps, orbit)) = h1.attempt(brute_complements(r, &a, budget), d) else { continue };
                let h = cohomology_dim(&socle_module(r, &a)?, 1)?;
                let mut sorted_cov = cov.clone();
                sorted_cov.sort();
                h1.check(sorted_cov == comps && h == 0 && comps.len() as u128 == orbit, || {
                    format!("{}: {name} over {}: {} covering, {} complements, dim H^1 = {h}", d(), l.format_subspace(&a), cov.len(), comps.len())
                });
            }
        }
    }
    Ok(vec![vanish, split, h1])
}
