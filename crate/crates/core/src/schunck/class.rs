use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ff::{Elem, Subspace};
use crate::lie::{Closure, LieAlgebra, SeriesKind, DEFAULT_BUDGET};
use crate::restricted::{enumerate_p_operations, FactorKind, RestrictedAlgebra};

use super::lambda::{eigenvalues_in, LambdaSpace};
use super::radical::{ordinary_chief_series, ordinary_primitive_quotients};

/// Classes of ordinary (unrestricted) Lie algebras.
#[derive(Clone, Debug)]
pub enum Ordinary {
    Soluble,
    Nilpotent,
    Supersoluble,
    CompletelySoluble,
    /// Algebras all of whose primitive quotients carry a p-operation in the class.
    Ord(Box<ClassDescriptor>),
    /// Algebras whose minimal p-envelope lies in the class.
    Envd(Box<ClassDescriptor>),
}

impl Ordinary {
    pub fn name(&self) -> String {
        match self {
            Ordinary::Soluble => "S".into(),
            Ordinary::Nilpotent => "N".into(),
            Ordinary::Supersoluble => "U".into(),
            Ordinary::CompletelySoluble => "C".into(),
            Ordinary::Ord(k) => format!("ord({})", k.name()),
            Ordinary::Envd(k) => format!("envd({})", k.name()),
        }
    }

    pub fn contains(&self, l: &LieAlgebra) -> Result<bool> {
        if !l.is_soluble() {
            return Ok(false);
        }
        Ok(match self {
            Ordinary::Soluble => true,
            Ordinary::Nilpotent => l.is_nilpotent(),
            Ordinary::Supersoluble => {
                let terms = ordinary_chief_series(l);
                terms.windows(2).all(|w| w[0].dim() - w[1].dim() == 1)
            }
            Ordinary::CompletelySoluble => l.restrict(&l.derived_algebra())?.is_nilpotent(),
            Ordinary::Ord(k) => {
                for q in ordinary_primitive_quotients(l) {
                    if !und_membership(&q.algebra, k)? {
                        return Ok(false);
                    }
                }
                true
            }
            Ordinary::Envd(k) => {
                let env = crate::envelopes::minimal_p_envelope(l)?;
                k.contains(&env.target)?
            }
        })
    }
}

/// Whether `l` carries some p-operation placing it in `k`.
pub fn und_membership(l: &LieAlgebra, k: &ClassDescriptor) -> Result<bool> {
    for r in enumerate_p_operations(l, DEFAULT_BUDGET as u128)? {
        if k.contains(&r)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Eigenvalue space: the base field itself or an explicit space.
#[derive(Clone, Debug)]
pub enum LambdaSpec {
    BaseField,
    Space(Box<LambdaSpace>),
}

#[derive(Clone, Debug)]
pub enum Kind {
    All,
    Nilpotent,
    Abelian,
    /// Nilpotent length at most k.
    NilLength(usize),
    /// Nilpotency class at most k.
    NilClass(usize),
    CompletelySoluble,
    Supersoluble,
    Ev(LambdaSpec),
    /// Metabelian with every nilpotent subalgebra abelian.
    Metabelian,
    /// `{L : L_F ∈ K}`.
    Product(Box<ClassDescriptor>, Box<ClassDescriptor>),
    Join(Box<ClassDescriptor>, Box<ClassDescriptor>),
    Meet(Box<ClassDescriptor>, Box<ClassDescriptor>),
    /// Restricted algebras whose underlying algebra is in the ordinary class.
    Res(Ordinary),
    /// Smallest Schunck class containing the class: primitives of it.
    Hull(Box<ClassDescriptor>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Flags {
    pub homomorph: bool,
    pub formation: bool,
    pub saturated: bool,
    pub schunck: bool,
}

impl Flags {
    const SATURATED: Flags = Flags { homomorph: true, formation: true, saturated: true, schunck: true };
    const FORMATION: Flags = Flags { homomorph: true, formation: true, saturated: false, schunck: false };
    const SCHUNCK: Flags = Flags { homomorph: true, formation: false, saturated: false, schunck: true };
}

#[derive(Clone, Debug)]
pub struct ClassDescriptor {
    name: String,
    kind: Kind,
    flags: Flags,
}

/// How a membership verdict was reached.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Route {
    NotSoluble,
    Skeleton,
    Direct,
}

#[derive(Clone, Debug)]
pub struct Verdict {
    pub member: bool,
    pub route: Route,
    /// [p]-ideals `K` whose primitive quotient was tested, in order.
    pub checked: Vec<Subspace>,
    /// A `K` with `L/K` primitive and outside the class.
    pub failing: Option<Subspace>,
    /// False when an eigenvalue scan was sampled.
    pub exhaustive: bool,
}

const CACHE_LIMIT: usize = 500_000;

thread_local! {
    static CACHE: RefCell<HashMap<(String, Vec<u32>), bool>> = RefCell::new(HashMap::new());
}

fn bx(c: ClassDescriptor) -> Box<ClassDescriptor> {
    Box::new(c)
}

impl ClassDescriptor {
    fn make(name: impl Into<String>, kind: Kind, flags: Flags) -> ClassDescriptor {
        ClassDescriptor { name: name.into(), kind, flags }
    }

    pub fn all() -> ClassDescriptor {
        Self::make("pS", Kind::All, Flags::SATURATED)
    }
    pub fn nilpotent() -> ClassDescriptor {
        Self::make("pN", Kind::Nilpotent, Flags::SATURATED)
    }
    pub fn abelian() -> ClassDescriptor {
        Self::make("pA", Kind::Abelian, Flags::FORMATION)
    }
    pub fn nil_length(k: usize) -> Result<ClassDescriptor> {
        if k == 0 {
            return Err(Error::InvalidParams("nilpotent length bound must be positive".into()));
        }
        Ok(Self::make(format!("pN^{k}"), Kind::NilLength(k), Flags::SATURATED))
    }
    pub fn nil_class(k: usize) -> Result<ClassDescriptor> {
        if k == 0 {
            return Err(Error::InvalidParams("nilpotency class bound must be positive".into()));
        }
        Ok(Self::make(format!("pN_{k}"), Kind::NilClass(k), Flags::FORMATION))
    }
    pub fn completely_soluble() -> ClassDescriptor {
        Self::make("pC", Kind::CompletelySoluble, Flags::SATURATED)
    }
    pub fn supersoluble() -> ClassDescriptor {
        Self::make("pU", Kind::Supersoluble, Flags::SATURATED)
    }
    pub fn metabelian_m() -> ClassDescriptor {
        Self::make("M", Kind::Metabelian, Flags::FORMATION)
    }
    pub fn ev_base() -> ClassDescriptor {
        Self::make("pEv:base", Kind::Ev(LambdaSpec::BaseField), Flags::SATURATED)
    }
    pub fn ev(lambda: LambdaSpace) -> Result<ClassDescriptor> {
        if !lambda.is_p_normal() {
            return Err(Error::Precondition(format!("{} is not p-normal", lambda.describe())));
        }
        Ok(Self::make(
            format!("pEv:{}", lambda.describe()),
            Kind::Ev(LambdaSpec::Space(Box::new(lambda))),
            Flags::SATURATED,
        ))
    }
    pub fn residual_product(k: ClassDescriptor, f: ClassDescriptor) -> Result<ClassDescriptor> {
        if !f.flags.formation {
            return Err(Error::ClassKind(f.name, "residuals"));
        }
        if !(k.flags.formation && k.flags.saturated) {
            return Err(Error::ClassKind(k.name, "use as the outer factor of a residual product"));
        }
        Ok(Self::make(
            format!("res:({})*({})", k.name, f.name),
            Kind::Product(bx(k), bx(f)),
            Flags::SATURATED,
        ))
    }
    pub fn ploc(f: ClassDescriptor) -> Result<ClassDescriptor> {
        let mut c = Self::residual_product(Self::nilpotent(), f)?;
        if let Kind::Product(_, ref g) = c.kind {
            c.name = format!("ploc:({})", g.name);
        }
        Ok(c)
    }
    pub fn join(a: ClassDescriptor, b: ClassDescriptor) -> ClassDescriptor {
        Self::make(format!("join:({}),({})", a.name, b.name), Kind::Join(bx(a), bx(b)), Flags::SCHUNCK)
    }
    pub fn meet(a: ClassDescriptor, b: ClassDescriptor) -> ClassDescriptor {
        let formation = a.flags.formation && b.flags.formation;
        let flags = Flags {
            homomorph: true,
            formation,
            saturated: formation && a.flags.saturated && b.flags.saturated,
            schunck: true,
        };
        Self::make(format!("meet:({}),({})", a.name, b.name), Kind::Meet(bx(a), bx(b)), flags)
    }
    pub fn res(h: Ordinary) -> ClassDescriptor {
        let flags = match h {
            Ordinary::Ord(_) | Ordinary::Envd(_) => Flags::SCHUNCK,
            _ => Flags::SATURATED,
        };
        Self::make(format!("lift:{}", h.name()), Kind::Res(h), flags)
    }
    pub fn hull(c: ClassDescriptor) -> ClassDescriptor {
        Self::make(format!("hull:({})", c.name), Kind::Hull(bx(c)), Flags::SCHUNCK)
    }

    pub fn name(&self) -> &str {
        &self.name
    }
    pub fn kind(&self) -> &Kind {
        &self.kind
    }
    pub fn flags(&self) -> Flags {
        self.flags
    }
    pub fn residual_support(&self) -> bool {
        self.flags.formation
    }

    /// Parses the class syntax; `load` resolves `pEv:<path>` arguments.
    pub fn parse(s: &str, load: &dyn Fn(&str) -> Result<LambdaSpace>) -> Result<ClassDescriptor> {
        let s = strip_parens(s.trim());
        let bad = || Error::Parse(format!("unknown class {s:?}"));
        if let Some(rest) = s.strip_prefix("ploc:") {
            return Self::ploc(Self::parse(rest, load)?);
        }
        if let Some(rest) = s.strip_prefix("res:") {
            let (a, b) = split_top(rest, '*').ok_or_else(bad)?;
            return Self::residual_product(Self::parse(a, load)?, Self::parse(b, load)?);
        }
        if let Some(rest) = s.strip_prefix("join:") {
            let (a, b) = split_top(rest, ',').ok_or_else(bad)?;
            return Ok(Self::join(Self::parse(a, load)?, Self::parse(b, load)?));
        }
        if let Some(rest) = s.strip_prefix("meet:") {
            let (a, b) = split_top(rest, ',').ok_or_else(bad)?;
            return Ok(Self::meet(Self::parse(a, load)?, Self::parse(b, load)?));
        }
        if let Some(rest) = s.strip_prefix("hull:") {
            return Ok(Self::hull(Self::parse(rest, load)?));
        }
        if let Some(rest) = s.strip_prefix("lift:") {
            return Ok(Self::res(parse_ordinary(rest, load)?));
        }
        if let Some(rest) = s.strip_prefix("pEv:") {
            return if rest == "base" { Ok(Self::ev_base()) } else { Self::ev(load(rest)?) };
        }
        if let Some(k) = s.strip_prefix("pN^") {
            return Self::nil_length(k.parse().map_err(|_| bad())?);
        }
        if let Some(k) = s.strip_prefix("pN_") {
            return Self::nil_class(k.parse().map_err(|_| bad())?);
        }
        match s {
            "pS" => Ok(Self::all()),
            "pN" => Ok(Self::nilpotent()),
            "pA" => Ok(Self::abelian()),
            "pC" => Ok(Self::completely_soluble()),
            "pU" => Ok(Self::supersoluble()),
            "M" => Ok(Self::metabelian_m()),
            _ => Err(bad()),
        }
    }

    /// Cached membership.
    pub fn contains(&self, r: &RestrictedAlgebra) -> Result<bool> {
        let key = (self.name.clone(), r.structure_key());
        if let Some(v) = CACHE.with(|c| c.borrow().get(&key).copied()) {
            return Ok(v);
        }
        let v = self.membership(r)?.member;
        CACHE.with(|c| {
            let mut c = c.borrow_mut();
            if c.len() >= CACHE_LIMIT {
                c.clear();
            }
            c.insert(key, v);
        });
        Ok(v)
    }

    /// Membership with its certificate. Classes defined through skeleta are
    /// decided on the primitive [p]-quotients, the rest by their predicate.
    pub fn membership(&self, r: &RestrictedAlgebra) -> Result<Verdict> {
        if !r.is_soluble() {
            return Ok(Verdict {
                member: false,
                route: Route::NotSoluble,
                checked: vec![],
                failing: None,
                exhaustive: true,
            });
        }
        if matches!(self.kind, Kind::Join(..) | Kind::Meet(..) | Kind::Hull(_)) {
            self.skeleton_route(r)
        } else {
            let (member, exhaustive) = self.direct(r)?;
            Ok(Verdict { member, route: Route::Direct, checked: vec![], failing: None, exhaustive })
        }
    }

    /// Membership through primitive [p]-quotients regardless of flags.
    pub fn skeleton_route(&self, r: &RestrictedAlgebra) -> Result<Verdict> {
        let mut checked = Vec::new();
        let mut exhaustive = true;
        for k in r.p_ideals() {
            if k.is_full() {
                continue;
            }
            let q = r.p_quotient(&k)?.algebra;
            if q.is_primitive().is_none() {
                continue;
            }
            let (ok, ex) = self.skeleton(&q)?;
            exhaustive &= ex;
            checked.push(k.clone());
            if !ok {
                return Ok(Verdict { member: false, route: Route::Skeleton, checked, failing: Some(k), exhaustive });
            }
        }
        Ok(Verdict { member: true, route: Route::Skeleton, checked, failing: None, exhaustive })
    }

    /// The skeleton predicate on a primitive algebra.
    pub fn skeleton(&self, prim: &RestrictedAlgebra) -> Result<(bool, bool)> {
        match &self.kind {
            Kind::Join(a, b) => {
                let (x, ex) = a.skeleton(prim)?;
                if x {
                    return Ok((true, ex));
                }
                let (y, ey) = b.skeleton(prim)?;
                Ok((y, ex && ey))
            }
            Kind::Meet(a, b) => {
                let (x, ex) = a.skeleton(prim)?;
                if !x {
                    return Ok((false, ex));
                }
                let (y, ey) = b.skeleton(prim)?;
                Ok((y, ex && ey))
            }
            Kind::Hull(c) => Ok((c.contains(prim)?, true)),
            _ => self.direct(prim),
        }
    }

    /// The defining predicate evaluated on `r` itself, with the exhaustiveness
    /// of any eigenvalue scan.
    pub fn direct(&self, r: &RestrictedAlgebra) -> Result<(bool, bool)> {
        if !r.is_soluble() {
            return Ok((false, true));
        }
        let l = r.algebra();
        let v = match &self.kind {
            Kind::All => true,
            Kind::Nilpotent => l.is_nilpotent(),
            Kind::Abelian => l.is_abelian(),
            Kind::NilLength(k) => {
                let mut cur = r.clone();
                let mut ok = false;
                for _ in 0..*k {
                    let res = cur.p_closure(&cur.algebra().nilpotent_residual_ordinary(), Closure::Ideal);
                    if res.is_zero() {
                        ok = true;
                        break;
                    }
                    cur = cur.restrict(&res)?;
                }
                ok
            }
            Kind::NilClass(k) => {
                let s = l.series(SeriesKind::LowerCentral);
                s.reaches_zero && s.terms.len() <= k + 1
            }
            Kind::CompletelySoluble => l.restrict(&l.derived_algebra())?.is_nilpotent(),
            Kind::Supersoluble => r
                .p_chief_series()
                .factors
                .iter()
                .all(|c| c.kind == FactorKind::CentralAtom || (c.kind == FactorKind::Null && c.dim == 1)),
            Kind::Ev(spec) => {
                let lam = match spec {
                    LambdaSpec::BaseField => LambdaSpace::base_field(r.field()),
                    LambdaSpec::Space(s) => (**s).clone(),
                };
                let scan = eigenvalues_in(r, &lam)?;
                return Ok((scan.holds, scan.exhaustive));
            }
            Kind::Metabelian => is_metabelian_m(l),
            Kind::Product(k, f) => {
                let res = super::residual(r, f)?;
                k.contains(&r.restrict(&res)?)?
            }
            Kind::Res(h) => h.contains(l)?,
            Kind::Join(..) | Kind::Meet(..) | Kind::Hull(_) => {
                let v = self.skeleton_route(r)?;
                return Ok((v.member, v.exhaustive));
            }
        };
        Ok((v, true))
    }
}

/// Metabelian and no 2-generated nilpotent non-abelian subalgebra; a
/// nilpotent non-abelian subalgebra contains such a pair.
fn is_metabelian_m(l: &LieAlgebra) -> bool {
    let d = l.derived_algebra();
    if !l.product(&d, &d).is_zero() {
        return false;
    }
    let f = l.field();
    let n = l.dim();
    let pts: Vec<Vec<Elem>> = Subspace::full(n).points(f).collect();
    for (i, x) in pts.iter().enumerate() {
        for y in &pts[i + 1..] {
            if l.bracket(x, y).iter().all(|&c| c == 0) {
                continue;
            }
            let s = l.subalgebra_closure(&Subspace::span(f, n, &[x.clone(), y.clone()]));
            if l.restrict(&s).expect("closed").is_nilpotent() {
                return false;
            }
        }
    }
    true
}

fn strip_parens(mut s: &str) -> &str {
    while s.starts_with('(') && s.ends_with(')') && matching_close(s) == Some(s.len() - 1) {
        s = s[1..s.len() - 1].trim();
    }
    s
}

fn matching_close(s: &str) -> Option<usize> {
    let mut depth = 0i32;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    return Some(i);
                }
            }
            _ => {}
        }
    }
    None
}

fn split_top(s: &str, sep: char) -> Option<(&str, &str)> {
    let mut depth = 0i32;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            c if c == sep && depth == 0 => return Some((&s[..i], &s[i + 1..])),
            _ => {}
        }
    }
    None
}

fn parse_ordinary(s: &str, load: &dyn Fn(&str) -> Result<LambdaSpace>) -> Result<Ordinary> {
    let s = strip_parens(s.trim());
    if let Some(rest) = s.strip_prefix("ord") {
        return Ok(Ordinary::Ord(bx(ClassDescriptor::parse(rest, load)?)));
    }
    if let Some(rest) = s.strip_prefix("envd") {
        return Ok(Ordinary::Envd(bx(ClassDescriptor::parse(rest, load)?)));
    }
    match s {
        "S" => Ok(Ordinary::Soluble),
        "N" => Ok(Ordinary::Nilpotent),
        "U" => Ok(Ordinary::Supersoluble),
        "C" => Ok(Ordinary::CompletelySoluble),
        _ => Err(Error::Parse(format!("unknown ordinary class {s:?}"))),
    }
}

impl fmt::Display for ClassDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

/// Rejects `pEv:<path>` arguments.
pub fn no_lambda_files(path: &str) -> Result<LambdaSpace> {
    Err(Error::Parse(format!("no loader for eigenvalue space {path:?}")))
}
