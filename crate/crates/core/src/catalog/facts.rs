use serde::Serialize;

use crate::envelopes::{certify, minimal_p_envelope};
use crate::error::{Error, Result};
use crate::lie::{iso, SeriesKind};
use crate::restricted::{enumerate_p_operations, is_restrictable};
use crate::schunck::{
    find_qn, nilradical_restricted, no_lambda_files, projector, residual, und_membership, ClassDescriptor,
};
use crate::cohomology::all_complements;

use super::{build, span_of_labels, Built, CatalogEntry, Fact};

#[derive(Clone, Debug, Serialize)]
pub struct FactOutcome {
    pub key: String,
    pub fact: Fact,
    pub passed: bool,
    pub detail: String,
}

fn class(name: &str) -> Result<ClassDescriptor> {
    ClassDescriptor::parse(name, &no_lambda_files)
}

fn need_restricted(e: &CatalogEntry) -> Result<&crate::restricted::RestrictedAlgebra> {
    e.built
        .restricted()
        .ok_or_else(|| Error::Precondition(format!("{} carries no p-operation", e.key)))
}

fn need_algebra(e: &CatalogEntry) -> Result<&crate::lie::LieAlgebra> {
    e.built
        .algebra()
        .ok_or_else(|| Error::Precondition(format!("{} is not a Lie algebra", e.key)))
}

pub fn check_fact(e: &CatalogEntry, fact: &Fact, budget: u128) -> Result<FactOutcome> {
    let (passed, detail) = evaluate(e, fact, budget)?;
    Ok(FactOutcome { key: e.key.clone(), fact: fact.clone(), passed, detail })
}

pub fn check_facts(e: &CatalogEntry, budget: u128) -> Result<Vec<FactOutcome>> {
    e.expected_facts.iter().map(|f| check_fact(e, f, budget)).collect()
}

fn evaluate(e: &CatalogEntry, fact: &Fact, budget: u128) -> Result<(bool, String)> {
    Ok(match fact {
        Fact::Dim { n } => {
            let d = need_algebra(e)?.dim();
            (d == *n, format!("dim {d}"))
        }
        Fact::DerivedNotPIdeal => {
            let r = need_restricted(e)?;
            let d = r.algebra().derived_algebra();
            let closed = r.is_p_ideal(&d);
            (!closed, format!("L' = {}", r.algebra().format_subspace(&d)))
        }
        Fact::PsiExceedsPhi => {
            let r = need_restricted(e)?;
            let f = r.field();
            let psi = r.p_frattini(budget)?;
            let phi = r.algebra().frattini(budget)?;
            let l = r.algebra();
            (
                psi.contains_space(f, &phi) && psi.dim() > phi.dim(),
                format!("Psi = {}, Phi = {}", l.format_subspace(&psi), l.format_subspace(&phi)),
            )
        }
        Fact::VectorComplementOnly { ideal } => {
            let r = need_restricted(e)?;
            let a = span_of_labels(r.algebra(), ideal)?;
            let comps = all_complements(r.algebra(), &a, budget)?;
            let restricted = comps.iter().filter(|m| r.is_p_subalgebra(m)).count();
            (
                r.is_p_ideal(&a) && !comps.is_empty() && restricted == 0,
                format!("{} complements, {restricted} closed under [p]", comps.len()),
            )
        }
        Fact::Restrictable { expected } => {
            let b = is_restrictable(need_algebra(e)?);
            (b == *expected, format!("restrictable = {b}"))
        }
        Fact::UniquePOperation => {
            let n = enumerate_p_operations(need_algebra(e)?, budget)?.len();
            (n == 1, format!("{n} p-operations"))
        }
        Fact::UnderlyingIn { class: c, expected } => {
            let b = und_membership(need_algebra(e)?, &class(c)?)?;
            (b == *expected, format!("some p-operation lands in {c}: {b}"))
        }
        Fact::Primitive { expected } => {
            let b = need_restricted(e)?.is_primitive().is_some();
            (b == *expected, format!("primitive = {b}"))
        }
        Fact::Member { class: c, expected } => {
            let b = class(c)?.contains(need_restricted(e)?)?;
            (b == *expected, format!("member of {c} = {b}"))
        }
        Fact::Metabelian { expected } => {
            let d = need_algebra(e)?.series(SeriesKind::Derived);
            let b = d.reaches_zero && d.terms.len() <= 3;
            (b == *expected, format!("metabelian = {b}"))
        }
        Fact::Atom => {
            let b = need_restricted(e)?.is_atom();
            (b, format!("atom = {b}"))
        }
        Fact::ResidualEquals { class: c, span } => {
            let r = need_restricted(e)?;
            let got = residual(r, &class(c)?)?;
            let want = span_of_labels(r.algebra(), span)?;
            (got == want, format!("residual {}", r.algebra().format_subspace(&got)))
        }
        Fact::ProjectorEquals { class: c, span } => {
            let r = need_restricted(e)?;
            let got = projector(r, &class(c)?, budget)?;
            let want = span_of_labels(r.algebra(), span)?;
            (
                got.subspace == want && got.validated,
                format!("projector {} (validated = {})", r.algebra().format_subspace(&got.subspace), got.validated),
            )
        }
        Fact::NilradicalEquals { span } => {
            let r = need_restricted(e)?;
            let got = nilradical_restricted(r);
            let want = span_of_labels(r.algebra(), span)?;
            (got == want, format!("nilradical {}", r.algebra().format_subspace(&got)))
        }
        Fact::MinimalEnvelopeOf { key } => {
            let r = need_restricted(e)?;
            let Built::Ordinary(src) = build(key, e.p)? else {
                return Err(Error::Precondition(format!("{key} is not an ordinary algebra")));
            };
            let env = minimal_p_envelope(&src)?;
            certify(&env)?;
            let same = iso::are_isomorphic(env.target.algebra(), r.algebra())?;
            // a trivial centre makes the p-operation unique, so the
            // underlying isomorphism is a restricted one
            let unique = r.algebra().center().is_zero();
            (same && unique, format!("envelope dim {}, isomorphic = {same}", env.target.dim()))
        }
        Fact::PNormal { expected } => {
            let Built::Lambda(s) = &e.built else {
                return Err(Error::Precondition(format!("{} is not a scalar space", e.key)));
            };
            let b = s.is_p_normal();
            (b == *expected, format!("{} p-normal = {b}", s.describe()))
        }
        Fact::FindQn { p, n, q } => {
            let got = find_qn(*p, 64)?;
            (got == (*n, *q), format!("p = {p}: n = {}, q = {}", got.0, got.1))
        }
    })
}
