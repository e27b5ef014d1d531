use serde::Serialize;

use crate::error::Result;
use crate::restricted::RestrictedAlgebra;

use super::class::ClassDescriptor;

/// Counterexamples to quotient, subdirect and Frattini closure on a sample.
#[derive(Clone, Debug, Default, Serialize)]
pub struct ClosureReport {
    pub class: String,
    pub sample_size: usize,
    pub members: usize,
    pub quot: Vec<String>,
    pub sdir: Vec<String>,
    pub frat: Vec<String>,
}

impl ClosureReport {
    pub fn passes(&self) -> bool {
        self.quot.is_empty() && self.sdir.is_empty() && self.frat.is_empty()
    }
}

pub fn closure_check(c: &ClassDescriptor, sample: &[RestrictedAlgebra], budget: u128) -> Result<ClosureReport> {
    let mut rep = ClosureReport {
        class: c.name().to_string(),
        sample_size: sample.len(),
        ..Default::default()
    };
    for (i, r) in sample.iter().enumerate() {
        let l = r.algebra();
        let f = r.field();
        let member = c.contains(r)?;
        let ideals = r.p_ideals();
        let mut in_class = Vec::with_capacity(ideals.len());
        for k in &ideals {
            in_class.push(c.contains(&r.p_quotient(k)?.algebra)?);
        }
        if member {
            rep.members += 1;
            for (k, &ok) in ideals.iter().zip(&in_class) {
                if !ok {
                    rep.quot.push(format!("#{i}: quotient by {} leaves the class", l.format_subspace(k)));
                }
            }
            continue;
        }
        // a non-member must not be a subdirect product of members
        'pairs: for (a, ka) in ideals.iter().enumerate() {
            if !in_class[a] {
                continue;
            }
            for (b, kb) in ideals.iter().enumerate().skip(a + 1) {
                if in_class[b] && ka.intersection(f, kb).is_zero() {
                    rep.sdir.push(format!(
                        "#{i}: quotients by {} and {} are members",
                        l.format_subspace(ka),
                        l.format_subspace(kb)
                    ));
                    break 'pairs;
                }
            }
        }
        let psi = r.p_frattini(budget)?;
        for (k, &ok) in ideals.iter().zip(&in_class) {
            if ok && psi.contains_space(f, k) && !k.is_zero() {
                rep.frat.push(format!("#{i}: quotient by {} inside Psi is a member", l.format_subspace(k)));
                break;
            }
        }
    }
    Ok(rep)
}
