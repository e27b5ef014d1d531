use crate::error::Result;
use crate::ff::Subspace;

use super::oracle::{self, describe};
use super::projectors::{class, covering_set};
use super::{LawReport, Sample};

pub fn run(s: &Sample, budget: u128) -> Result<Vec<LawReport>> {
    let mut law = LawReport::new(
        "covering-normalizer-supplements",
        "for a [p]-ideal K and a covering subalgebra S of K (classes pN, pU), L = K + N_L(S)",
    );
    let classes = [("pN", class("pN")), ("pU", class("pU"))];
    let algebras = s
        .restricted
        .iter()
        .map(|r| (String::new(), r))
        .chain(s.catalog_within(5).filter(|(_, r)| r.is_soluble()).map(|(k, r)| (k.clone(), r)));
    for (tag, r) in algebras {
        let l = r.algebra();
        let f = r.field();
        let n = r.dim();
        let d = || format!("{tag} {}", describe(r)).trim_start().to_string();
        for k in r.p_ideals() {
            if k.is_zero() {
                continue;
            }
            let rk = r.restrict(&k)?;
            let Some(psubs) = law.attempt(rk.p_subalgebras(budget), d) else { continue };
            for (name, c) in &classes {
                for sk in covering_set(&rk, c, &psubs)? {
                    let sl = Subspace::span(f, n, &sk.basis().iter().map(|x| k.from_coords(f, x)).collect::<Vec<_>>());
                    let norm = oracle::normalizer(l, &sl);
                    let ok = k.sum(f, &norm).is_full() && l.normalizer(&sl) == norm;
                    law.check(ok, || {
                        format!("{}: {name}: K = {}, S = {}, N = {}", d(), l.format_subspace(&k), l.format_subspace(&sl), l.format_subspace(&norm))
                    });
                }
            }
        }
    }
    Ok(vec![law])
}
