use crate::error::Result;
use crate::ff::Subspace;

use super::oracle::{self, describe};
use super::{LawReport, Sample};

pub fn run(s: &Sample, budget: u128) -> Result<Vec<LawReport>> {
    let mut psi_id = LawReport::new("psi-is-p-ideal", "the [p]-Frattini subalgebra of a soluble algebra is a [p]-ideal");
    let mut psi_nil = LawReport::new("psi-nilpotent", "the [p]-Frattini subalgebra of a soluble algebra is nilpotent");
    let mut psi_phi = LawReport::new(
        "psi-contains-phi",
        "the [p]-Frattini subalgebra contains the Frattini subalgebra of the underlying algebra",
    );
    let mut engel = LawReport::new("engel-p-subalgebra", "every Engel subalgebra E_L(a) is a [p]-subalgebra");
    let mut engel_cor = LawReport::new(
        "ideal-maximals-force-nilpotent",
        "if every maximal [p]-subalgebra is an ideal the algebra is nilpotent",
    );
    let mut psinil = LawReport::new(
        "nilpotence-modulo-psi",
        "A [p]-subnormal, B a [p]-ideal of A inside Psi, A/B nilpotent imply A nilpotent",
    );

    for r in &s.restricted {
        let l = r.algebra();
        let f = r.field();
        let n = r.dim();
        let zero = Subspace::zero(n);
        let d = || describe(r);
        let Some(psubs) = psi_id.attempt(r.p_subalgebras(budget), d) else { continue };
        let Some(subs) = psi_phi.attempt(l.subalgebras(budget), d) else { continue };
        let pmax = oracle::maximal_proper(f, &psubs);
        let psi = oracle::intersect(f, n, &pmax);
        let phi = oracle::intersect(f, n, &oracle::maximal_proper(f, &subs));
        let lib = psi_id.attempt(r.p_frattini(budget), d);

        psi_id.check(oracle::is_p_ideal(r, &psi) && lib.as_ref() == Some(&psi), || {
            format!("{}: Psi = {}", d(), l.format_subspace(&psi))
        });
        psi_nil.check(oracle::nilpotent_mod(l, &psi, &zero), || format!("{}: Psi = {}", d(), l.format_subspace(&psi)));
        psi_phi.check(psi.contains_space(f, &phi), || {
            format!("{}: Psi = {}, Phi = {}", d(), l.format_subspace(&psi), l.format_subspace(&phi))
        });

        for a in l.whole().elements(f) {
            let e = oracle::engel(l, &a);
            engel.check(oracle::is_p_subalgebra(r, &e) && l.engel(&a) == e, || {
                format!("{}: a = {}, E = {}", d(), l.format_vector(&a), l.format_subspace(&e))
            });
        }

        if pmax.iter().all(|m| oracle::bracket_within(l, &l.whole(), m, m)) {
            engel_cor.check(oracle::is_nilpotent(l), d);
        }

        for a in &psubs {
            if r.is_p_subnormal(a).is_none() {
                continue;
            }
            let bound = a.intersection(f, &psi);
            for b in &psubs {
                if !bound.contains_space(f, b) || !oracle::bracket_within(l, a, b, b) {
                    continue;
                }
                if oracle::nilpotent_mod(l, a, b) {
                    psinil.check(oracle::nilpotent_mod(l, a, &zero), || {
                        format!("{}: A = {}, B = {}", d(), l.format_subspace(a), l.format_subspace(b))
                    });
                }
            }
        }
    }

    Ok(vec![psi_id, psi_nil, psi_phi, engel, engel_cor, psinil])
}
