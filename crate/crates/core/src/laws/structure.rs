use crate::cohomology::all_complements;
use crate::error::Result;
use crate::ff::Subspace;
use crate::restricted::{is_restrictable, is_restrictable_by_scan, FactorKind, RestrictedAlgebra};
use crate::schunck::is_ordinary_primitive;

use super::oracle::{self, describe, describe_ordinary};
use super::{LawReport, Sample};

/// Every factor of the library's chief series is non-null by element scan.
fn all_factors_non_null(r: &RestrictedAlgebra) -> bool {
    r.p_chief_series()
        .factors
        .iter()
        .all(|c| !oracle::powers_within(r, &c.upper, &c.lower))
}

pub fn run(s: &Sample, budget: u128) -> Result<Vec<LawReport>> {
    let mut chab = LawReport::new(
        "abelian-p-ideal",
        "a nonzero soluble restricted algebra has a nonzero abelian [p]-ideal",
    );
    let mut chief = LawReport::new(
        "chief-factor-shape",
        "every [p]-chief factor A/B is abelian, and either null (A^[p] in B) or a central atom",
    );
    let mut compl = LawReport::new(
        "complement-of-noncentral-minimal-ideal",
        "a subalgebra complementing an abelian non-central minimal [p]-ideal is a maximal [p]-subalgebra",
    );
    let mut ab = LawReport::new(
        "non-null-factors-force-abelian",
        "if every [p]-chief factor is non-null the algebra is abelian",
    );
    let mut nonnull = LawReport::new(
        "null-ideal-complemented",
        "a null minimal [p]-ideal A with every chief factor of L/A non-null has a complementing maximal [p]-subalgebra",
    );
    let mut ordprim = LawReport::new(
        "ordinary-primitive-kernel",
        "if L/K is a non-abelian primitive quotient of the underlying algebra then K is a [p]-ideal",
    );
    let mut abpdid = LawReport::new(
        "abelian-ideal-made-null",
        "for every abelian ideal A some p-operation makes A a null [p]-ideal",
    );
    let mut restr_q = LawReport::new(
        "quotients-restrictable",
        "every quotient of a soluble restrictable algebra is restrictable",
    );

    for r in &s.restricted {
        let l = r.algebra();
        let f = r.field();
        let n = r.dim();
        let zero = Subspace::zero(n);
        let whole = l.whole();
        let d = || describe(r);

        let found = r
            .p_ideals()
            .into_iter()
            .any(|k| !k.is_zero() && oracle::is_abelian(l, &k) && oracle::is_p_ideal(r, &k));
        chab.check(found, d);

        let series = r.p_chief_series();
        let mut ok = series.terms.first() == Some(&whole) && series.terms.last() == Some(&zero);
        let ideals = r.p_ideals();
        for c in &series.factors {
            let (a, b) = (&c.upper, &c.lower);
            let tight = oracle::is_p_ideal(r, a)
                && !ideals
                    .iter()
                    .any(|k| k.dim() > b.dim() && k.dim() < a.dim() && k.contains_space(f, b) && a.contains_space(f, k));
            let abelian = oracle::bracket_within(l, a, a, b);
            let null = oracle::powers_within(r, a, b);
            let central_atom = oracle::bracket_within(l, &whole, a, b) && oracle::is_atom_factor(r, a, b);
            let labelled = (c.kind == FactorKind::Null) == null;
            ok &= tight && abelian && (null || central_atom) && labelled;
        }
        chief.check(ok, d);

        for a in r.minimal_p_ideals() {
            if !oracle::is_abelian(l, &a) || oracle::bracket_within(l, &whole, &a, &zero) {
                continue;
            }
            let Some(comps) = compl.attempt(all_complements(l, &a, budget), d) else { continue };
            let Some(subs) = compl.attempt(r.p_subalgebras(budget), d) else { continue };
            for m in comps {
                let maximal = oracle::is_p_subalgebra(r, &m)
                    && !subs.iter().any(|t| !t.is_full() && t.dim() > m.dim() && t.contains_space(f, &m));
                compl.check(maximal, || format!("{}: complement {}", d(), l.format_subspace(&m)));
            }
        }

        if all_factors_non_null(r) {
            ab.check(oracle::is_abelian(l, &whole), d);
        }

        for a in r.minimal_p_ideals() {
            if !oracle::powers_within(r, &a, &zero) {
                continue;
            }
            let Some(q) = nonnull.attempt(r.p_quotient(&a), d) else { continue };
            if !all_factors_non_null(&q.algebra) {
                continue;
            }
            let Some(subs) = nonnull.attempt(r.p_subalgebras(budget), d) else { continue };
            let found = oracle::complements(f, &a, &oracle::maximal_proper(f, &subs))
                .iter()
                .any(|m| oracle::is_p_subalgebra(r, m));
            nonnull.check(found, || format!("{}: null ideal {}", d(), l.format_subspace(&a)));
        }

        for k in l.ideals() {
            let Some(q) = ordprim.attempt(l.quotient(&k), d) else { continue };
            if q.algebra.is_abelian() || is_ordinary_primitive(&q.algebra).is_none() {
                continue;
            }
            ordprim.check(oracle::is_p_ideal(r, &k), || format!("{}: kernel {}", d(), l.format_subspace(&k)));
        }
    }

    for sm in &s.small {
        let l = &sm.algebra;
        if !l.is_soluble() {
            continue;
        }
        let Some(ops) = &sm.p_operations else { continue };
        let d = || describe_ordinary(l);
        let zero = Subspace::zero(l.dim());
        for a in l.ideals() {
            if !oracle::is_abelian(l, &a) {
                continue;
            }
            let exists = ops.iter().any(|r| oracle::powers_within(r, &a, &zero));
            let built = ops
                .first()
                .map(|r| matches!(r.null_on_ideal_pop(&a), Ok(x) if oracle::powers_within(&x, &a, &zero)))
                .unwrap_or(false);
            abpdid.check(exists && built, || format!("{}: ideal {}", d(), l.format_subspace(&a)));
        }
        for k in l.ideals() {
            let Some(q) = restr_q.attempt(l.quotient(&k), d) else { continue };
            let scan = is_restrictable_by_scan(&q.algebra);
            let basis = is_restrictable(&q.algebra);
            restr_q.check(scan && basis, || {
                format!("{}: quotient by {} (scan {scan}, basis test {basis})", d(), l.format_subspace(&k))
            });
        }
    }

    Ok(vec![chab, chief, compl, ab, nonnull, ordprim, abpdid, restr_q])
}
