use crate::catalog::{build, span_of_labels, Built};
use crate::error::Result;
use crate::ff::{Extension, Field, Subspace};
use crate::schunck::{closure_check, residual, ClassDescriptor, LambdaSpace};

use super::oracle::{self, describe};
use super::projectors::class;
use super::{LawReport, Sample};

/// The formations whose closure is checked at `p`.
pub fn formation_classes(p: u32) -> Result<Vec<ClassDescriptor>> {
    let f = Field::prime(p)?;
    let ext = Extension::new(&f, 2)?;
    let whole = LambdaSpace::span_of(&f, 2, &ext.field().elements().collect::<Vec<_>>())?;
    let mut out: Vec<ClassDescriptor> =
        ["ploc:pA", "ploc:pU", "ploc:pC", "res:pN*pN", "pU", "pC", "pEv:base"].iter().map(|n| class(n)).collect();
    out.push(ClassDescriptor::ev(whole)?);
    Ok(out)
}

pub fn run(s: &Sample, budget: u128) -> Result<Vec<LawReport>> {
    let mut out = Vec::new();
    for c in formation_classes(s.p)? {
        let mut law = LawReport::new(
            &format!("saturated-formation[{}]", c.name()),
            "closed under [p]-quotients, subdirect products and Frattini extensions on the sample",
        );
        if let Some(rep) = law.attempt(closure_check(&c, &s.restricted, budget), || c.name().to_string()) {
            law.instances += rep.sample_size;
            for (kind, list) in [("quotient", &rep.quot), ("subdirect", &rep.sdir), ("frattini", &rep.frat)] {
                law.counterexamples.extend(list.iter().map(|x| format!("{kind}: {x}")));
            }
        }
        out.push(law);
    }

    let mut der = LawReport::new("abelian-residual-of-der", "the abelian residual of the der example is <b, c>");
    if let Built::Restricted(r) = build("der", s.p)? {
        let want = span_of_labels(r.algebra(), &["b".to_string(), "c".to_string()])?;
        if let Some(got) = der.attempt(residual(&r, &class("pA")), || "der".into()) {
            der.check(got == want, || format!("residual {}", r.algebra().format_subspace(&got)));
        }
    }
    out.push(der);

    let mut pc = LawReport::new(
        "completely-soluble-residual",
        "the abelian residual is the [p]-closure of L', and L is in pC exactly when that closure is nilpotent",
    );
    let pa = class("pA");
    let pcc = class("pC");
    for r in &s.restricted {
        let l = r.algebra();
        let hull = oracle::p_hull(r, &l.derived_algebra());
        let Some(res) = pc.attempt(residual(r, &pa), || describe(r)) else { continue };
        let nil = oracle::nilpotent_mod(l, &hull, &Subspace::zero(r.dim()));
        let member = pcc.contains(r)?;
        pc.check(res == hull && member == nil, || {
            format!("{}: residual {}, closure {}, pC {member}", describe(r), l.format_subspace(&res), l.format_subspace(&hull))
        });
    }
    out.push(pc);
    Ok(out)
}
