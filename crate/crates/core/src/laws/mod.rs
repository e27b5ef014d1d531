//! Executable law suites: each law is checked on every instance of a small
//! exhaustive sample and reports its counterexamples.

mod cohomology;
mod envelopes;
mod formations;
mod frattini;
mod intravariance;
mod modules;
pub mod oracle;
mod projectors;
mod structure;

use serde::Serialize;

use crate::catalog::{enumerate_small, restricted_entries, SmallAlgebra};
use crate::error::{Error, Result};
use crate::restricted::RestrictedAlgebra;

pub const SUITES: &[&str] = &[
    "structure",
    "frattini",
    "projectors",
    "formations",
    "cohomology",
    "modules",
    "intravariance",
    "envelopes",
];

/// Largest catalog algebra whose [p]-subalgebra lattice is scanned by the
/// projector and cohomology suites.
pub const LATTICE_DIM: usize = 9;

/// `(p, max_dim)` pairs checked when none is given.
pub const DEFAULT_SCOPES: &[(u32, usize)] = &[(2, 3), (3, 2)];

#[derive(Clone, Debug, Serialize)]
pub struct LawReport {
    pub law: String,
    pub statement: String,
    pub instances: usize,
    pub counterexamples: Vec<String>,
    /// Instances abandoned for capacity reasons, with the reason.
    pub skipped: Vec<String>,
}

impl LawReport {
    pub fn new(law: &str, statement: &str) -> LawReport {
        LawReport {
            law: law.to_string(),
            statement: statement.to_string(),
            instances: 0,
            counterexamples: Vec::new(),
            skipped: Vec::new(),
        }
    }

    pub fn passes(&self) -> bool {
        self.counterexamples.is_empty()
    }

    pub(crate) fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok {
            self.counterexamples.push(what());
        }
    }

    /// Unwraps `r`; capacity errors are recorded as skips, anything else
    /// as a counterexample.
    pub(crate) fn attempt<T>(&mut self, r: Result<T>, what: impl FnOnce() -> String) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(Error::Capacity(m)) => {
                self.skipped.push(format!("{}: {m}", what()));
                None
            }
            Err(e) => {
                self.instances += 1;
                self.counterexamples.push(format!("{}: {e}", what()));
                None
            }
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Scope {
    pub p: u32,
    pub max_dim: usize,
    /// Some dimension used the seeded sample instead of every table.
    pub sampled: bool,
    pub algebras: usize,
    pub restricted: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub scopes: Vec<Scope>,
    pub laws: Vec<LawReport>,
}

impl SuiteReport {
    pub fn passes(&self) -> bool {
        self.laws.iter().all(LawReport::passes)
    }
    pub fn counterexamples(&self) -> usize {
        self.laws.iter().map(|l| l.counterexamples.len()).sum()
    }
}

/// Algebras a suite runs over for one prime.
pub struct Sample {
    pub p: u32,
    pub max_dim: usize,
    pub small: Vec<SmallAlgebra>,
    /// Soluble restricted algebras, every p-operation of every table.
    pub restricted: Vec<RestrictedAlgebra>,
    /// Catalog algebras with their keys.
    pub catalog: Vec<(String, RestrictedAlgebra)>,
}

/// Whether every structure table of dimension `n` over `GF(p)` is scanned.
pub fn exhaustive_at(p: u32, n: usize) -> bool {
    let pairs = n * n.saturating_sub(1) / 2;
    matches!((p as u128).checked_pow((n * pairs) as u32), Some(t) if t <= 1 << 16)
}

impl Sample {
    pub fn new(p: u32, max_dim: usize) -> Result<Sample> {
        let small = enumerate_small(p, max_dim)?;
        let restricted = small
            .iter()
            .filter_map(|s| s.p_operations.clone())
            .flatten()
            .filter(|r| r.is_soluble())
            .collect();
        Ok(Sample { p, max_dim, small, restricted, catalog: restricted_entries(p)? })
    }

    pub fn scope(&self) -> Scope {
        Scope {
            p: self.p,
            max_dim: self.max_dim,
            sampled: !(1..=self.max_dim).all(|n| exhaustive_at(self.p, n)),
            algebras: self.small.len(),
            restricted: self.restricted.len(),
        }
    }

    /// Catalog algebras small enough for subalgebra-lattice checks.
    pub fn catalog_within(&self, max_dim: usize) -> impl Iterator<Item = &(String, RestrictedAlgebra)> {
        self.catalog.iter().filter(move |(_, r)| r.dim() <= max_dim)
    }
}

fn run_on(name: &str, s: &Sample, budget: u128) -> Result<Vec<LawReport>> {
    Ok(match name {
        "structure" => structure::run(s, budget)?,
        "frattini" => frattini::run(s, budget)?,
        "projectors" => projectors::run(s, budget)?,
        "formations" => formations::run(s, budget)?,
        "cohomology" => cohomology::run(s, budget)?,
        "modules" => modules::run(s, budget)?,
        "intravariance" => intravariance::run(s, budget)?,
        "envelopes" => envelopes::run(s, budget)?,
        _ => return Err(Error::InvalidParams(format!("unknown suite {name}; known: {}", SUITES.join(", ")))),
    })
}

/// Runs one suite over every scope and merges the per-law results.
pub fn run_suite(name: &str, scopes: &[(u32, usize)], budget: u128) -> Result<SuiteReport> {
    if !SUITES.contains(&name) {
        return Err(Error::InvalidParams(format!("unknown suite {name}; known: {}", SUITES.join(", "))));
    }
    let mut report = SuiteReport { suite: name.to_string(), scopes: Vec::new(), laws: Vec::new() };
    for &(p, d) in scopes {
        let s = Sample::new(p, d)?;
        report.scopes.push(s.scope());
        for law in run_on(name, &s, budget)? {
            match report.laws.iter_mut().find(|l| l.law == law.law) {
                Some(acc) => {
                    acc.instances += law.instances;
                    acc.counterexamples.extend(law.counterexamples.into_iter().map(|c| format!("p = {p}: {c}")));
                    acc.skipped.extend(law.skipped.into_iter().map(|c| format!("p = {p}: {c}")));
                }
                None => {
                    let mut law = law;
                    law.counterexamples = law.counterexamples.into_iter().map(|c| format!("p = {p}: {c}")).collect();
                    law.skipped = law.skipped.into_iter().map(|c| format!("p = {p}: {c}")).collect();
                    report.laws.push(law);
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests;
