use crate::catalog::{build, Built};
use crate::envelopes::{envd_membership, minimal_p_envelope, null_ideal_envelope, Envelope};
use crate::error::Result;
use crate::ff::Subspace;
use crate::lie::{iso, LieAlgebra};
use crate::schunck::is_ordinary_primitive;

use super::oracle::{self, describe_ordinary};
use super::projectors::class;
use super::{LawReport, Sample};

fn image(env: &Envelope) -> Subspace {
    let t = env.target.algebra();
    let cols: Vec<_> = (0..env.source.dim()).map(|i| env.embedding.col(i)).collect();
    Subspace::span(t.field(), t.dim(), &cols)
}

/// Re-checks an envelope by element scans: the embedding preserves
/// brackets, the image generates under brackets and p-th powers, and the
/// centre of a minimal envelope lies in the image.
fn rechecked(env: &Envelope) -> bool {
    let t = env.target.algebra();
    let u = &env.source;
    let f = t.field();
    let m = &env.embedding;
    let hom = (0..u.dim()).all(|i| {
        (0..u.dim()).all(|j| m.apply(f, u.bracket_basis(i, j)) == t.bracket(&m.col(i), &m.col(j)))
    });
    let im = image(env);
    hom && m.rank(f) == u.dim()
        && oracle::p_hull(&env.target, &im).is_full()
        && (!env.minimal || im.contains_space(f, &t.center()))
}

pub fn run(s: &Sample, budget: u128) -> Result<Vec<LawReport>> {
    let mut cert = LawReport::new(
        "envelope-certificates",
        "every soluble algebra has a minimal p-envelope passing its certificate",
    );
    let mut null = LawReport::new(
        "null-ideal-envelope",
        "every abelian ideal A has a p-envelope in which A is a null [p]-ideal",
    );
    let mut q = LawReport::new("envelope-of-q", "the minimal p-envelope of Q is isomorphic to Q*");
    let mut prim1 = LawReport::new(
        "primitive-envelope",
        "the minimal p-envelope of a primitive soluble algebra is primitive",
    );
    let mut prim2 = LawReport::new(
        "primitive-from-envelope",
        "a non-abelian algebra with a primitive p-envelope is primitive",
    );
    let mut hom = LawReport::new(
        "envelope-class-quotients[envd(pC)]",
        "algebras with a p-envelope in pC are closed under quotients",
    );
    let mut sat = LawReport::new(
        "envelope-class-frattini[envd(pC)]",
        "if U/K has a p-envelope in pC for K inside the Frattini subalgebra, so does U",
    );
    let pc = class("pC");

    let mut sources: Vec<(String, LieAlgebra)> = s
        .small
        .iter()
        .filter(|x| x.algebra.is_soluble())
        .map(|x| (describe_ordinary(&x.algebra), x.algebra.clone()))
        .collect();
    if let Built::Ordinary(qa) = build("Q", s.p)? {
        sources.push(("Q".to_string(), qa));
    }

    for (tag, u) in &sources {
        let d = || tag.clone();
        let Some(env) = cert.attempt(minimal_p_envelope(u), d) else { continue };
        cert.check(rechecked(&env), d);

        for a in u.ideals() {
            if !oracle::is_abelian(u, &a) {
                continue;
            }
            let what = || format!("{tag}: ideal {}", u.format_subspace(&a));
            let Some(e) = null.attempt(null_ideal_envelope(u, &a), what) else { continue };
            let t = e.target.algebra();
            let ia = Subspace::span(t.field(), t.dim(), &a.basis().iter().map(|v| e.embedding.apply(t.field(), v)).collect::<Vec<_>>());
            let ok = rechecked(&e) && oracle::powers_within(&e.target, &ia, &Subspace::zero(t.dim()));
            null.check(ok, what);
        }

        let primitive = is_ordinary_primitive(u).is_some();
        let env_primitive = env.target.is_primitive().is_some();
        if primitive {
            prim1.check(env_primitive, d);
        }
        if !u.is_abelian() && env_primitive {
            prim2.check(primitive, d);
        }

        let member = envd_membership(u, &pc)?;
        for k in u.ideals() {
            if k.is_zero() {
                continue;
            }
            let quot = u.quotient(&k)?.algebra;
            let qm = envd_membership(&quot, &pc)?;
            if member {
                hom.check(qm, || format!("{tag}: quotient by {}", u.format_subspace(&k)));
            }
        }
        if let Some(phi) = sat.attempt(u.frattini(budget), d) {
            for k in u.ideals() {
                if k.is_zero() || !phi.contains_space(u.field(), &k) {
                    continue;
                }
                if envd_membership(&u.quotient(&k)?.algebra, &pc)? {
                    sat.check(member, || format!("{tag}: quotient by {}", u.format_subspace(&k)));
                }
            }
        }
    }

    if let (Built::Ordinary(qa), Built::Restricted(qs)) = (build("Q", s.p)?, build("Qstar", s.p)?) {
        if let Some(env) = q.attempt(minimal_p_envelope(&qa), || "Q".into()) {
            let same = iso::are_isomorphic(env.target.algebra(), qs.algebra())?;
            q.check(same && qs.algebra().center().is_zero(), || format!("envelope dim {}", env.target.dim()));
        }
    }

    Ok(vec![cert, null, q, prim1, prim2, hom, sat])
}
