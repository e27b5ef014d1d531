//! Named example algebras with their expected facts, and exhaustive or
//! seeded enumeration of small algebras.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ff::{Elem, Extension, Field, Matrix, Subspace};
use crate::lie::{iso, LieAlgebra, Representation, DEFAULT_BUDGET};
use crate::restricted::{enumerate_p_operations, jacobson_construct, RestrictedAlgebra};
use crate::schunck::{find_qn, root_space, LambdaSpace};

mod facts;
pub use facts::{check_fact, check_facts, FactOutcome};

/// Every catalog key.
pub const KEYS: &[&str] = &[
    "der",
    "nilder",
    "nocomp",
    "noform_X",
    "noform_Y",
    "noform_L",
    "P",
    "Q",
    "Qstar",
    "P_lambda",
    "T",
    "notpn",
    "notpn_variant",
    "atom_null",
    "atom_nonnull",
];

#[derive(Clone, Debug)]
pub enum Built {
    Restricted(RestrictedAlgebra),
    Ordinary(LieAlgebra),
    Lambda(LambdaSpace),
}

impl Built {
    pub fn restricted(&self) -> Option<&RestrictedAlgebra> {
        match self {
            Built::Restricted(r) => Some(r),
            _ => None,
        }
    }
    pub fn algebra(&self) -> Option<&LieAlgebra> {
        match self {
            Built::Restricted(r) => Some(r.algebra()),
            Built::Ordinary(l) => Some(l),
            Built::Lambda(_) => None,
        }
    }
}

/// A checkable statement about a catalog entry. Subspaces are given by
/// spanning basis labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "fact", rename_all = "snake_case")]
pub enum Fact {
    Dim { n: usize },
    DerivedNotPIdeal,
    PsiExceedsPhi,
    /// A vector-space complement of the ideal exists but no [p]-complement.
    VectorComplementOnly { ideal: Vec<String> },
    Restrictable { expected: bool },
    /// The p-operation is the only one (trivial centre).
    UniquePOperation,
    /// Some p-operation places the algebra in the class.
    UnderlyingIn { class: String, expected: bool },
    Primitive { expected: bool },
    Member { class: String, expected: bool },
    Metabelian { expected: bool },
    Atom,
    ResidualEquals { class: String, span: Vec<String> },
    ProjectorEquals { class: String, span: Vec<String> },
    NilradicalEquals { span: Vec<String> },
    /// The minimal p-envelope of the named entry is isomorphic to this one.
    MinimalEnvelopeOf { key: String },
    PNormal { expected: bool },
    FindQn { p: u32, n: u32, q: u128 },
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub key: String,
    pub p: u32,
    pub built: Built,
    pub expected_facts: Vec<Fact>,
}

fn field(p: u32) -> Result<Field> {
    Field::prime(p).map_err(|_| Error::InvalidParams(format!("{p} is not prime")))
}

fn labels(v: &[String]) -> Vec<&str> {
    v.iter().map(|s| s.as_str()).collect()
}

fn vec_labels(prefix: &str, n: u32) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

/// `v_i ↦ v_{i+1}` on indices mod `n`.
fn shift(n: usize) -> Matrix {
    let mut m = Matrix::zero(n, n);
    for i in 0..n {
        m.set((i + 1) % n, i, 1);
    }
    m
}

/// `v_i ↦ i v_i`.
fn index_diag(f: &Field, n: usize) -> Matrix {
    let mut m = Matrix::zero(n, n);
    for i in 0..n {
        m.set(i, i, f.from_int(i as i64));
    }
    m
}

fn restricted(l: LieAlgebra, images: Vec<Vec<Elem>>) -> Result<RestrictedAlgebra> {
    jacobson_construct(&l, images)
}

/// `⟨a,b,c⟩`, `ab = b`.
fn u_algebra(f: &Field) -> Result<LieAlgebra> {
    Ok(LieAlgebra::new(f, 3, &[(0, 1, vec![0, 1, 0])])?.with_labels(&["a", "b", "c"]))
}

/// `V` for `U`: `a v_i = i v_i`, `b v_i = v_{i+1}`, `c` the identity (as
/// forced by `b^[p] = c` on the split extension).
fn noform_v(f: &Field, u: &LieAlgebra) -> Result<Representation> {
    let n = f.p() as usize;
    Representation::new(u, n, vec![index_diag(f, n), shift(n), Matrix::identity(n)])
}

/// `W`: `a w_0 = 0, a w_1 = w_1, b w_0 = −w_1, b w_1 = 0, c w_i = w_i`.
fn noform_w(f: &Field, u: &LieAlgebra) -> Result<Representation> {
    let a = Matrix::from_rows(2, &[vec![0, 0], vec![0, 1]]);
    let b = Matrix::from_rows(2, &[vec![0, 0], vec![f.neg(1), 0]]);
    Representation::new(u, 2, vec![a, b, Matrix::identity(2)])
}

/// `N = ⟨a,b,c⟩`, `ab = c`, with `a ↦ 0, b ↦ c, c ↦ c`.
fn n_algebra(f: &Field) -> Result<RestrictedAlgebra> {
    let l = LieAlgebra::new(f, 3, &[(0, 1, vec![0, 0, 1])])?.with_labels(&["a", "b", "c"]);
    restricted(l, vec![vec![0, 0, 0], vec![0, 0, 1], vec![0, 0, 1]])
}

/// `K`: `a k_i = i k_{i−1}`, `b k_i = k_{i+1}`, `c k_i = k_i`.
fn k_actions(f: &Field) -> Vec<Matrix> {
    let n = f.p() as usize;
    let mut a = Matrix::zero(n, n);
    for i in 0..n {
        a.set((i + n - 1) % n, i, f.from_int(i as i64));
    }
    vec![a, shift(n), Matrix::identity(n)]
}

/// `S* = ⟨x,y,z⟩`, `xy = y`, with `x ↦ x, y ↦ z, z ↦ z`.
fn s_star(f: &Field) -> Result<RestrictedAlgebra> {
    let l = LieAlgebra::new(f, 3, &[(0, 1, vec![0, 1, 0])])?.with_labels(&["x", "y", "z"]);
    restricted(l, vec![vec![1, 0, 0], vec![0, 0, 1], vec![0, 0, 1]])
}

/// `V` for `S*`: `x v_i = i v_i`, `y v_i = v_{i+1}`, `z v_i = v_i`.
fn v_actions(f: &Field) -> Vec<Matrix> {
    let n = f.p() as usize;
    vec![index_diag(f, n), shift(n), Matrix::identity(n)]
}

fn with_module_labels(r: RestrictedAlgebra, module: Vec<String>) -> RestrictedAlgebra {
    let mut all = module;
    all.extend(r.algebra().labels()[all.len()..].iter().cloned());
    r.with_labels(&labels(&all))
}

pub fn build(key: &str, p: u32) -> Result<Built> {
    let f = field(p)?;
    let np = p as usize;
    let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    Ok(match key {
        "der" => {
            let l = u_algebra(&f)?;
            Built::Restricted(restricted(l, vec![vec![1, 0, 0], vec![0, 0, 1], vec![0, 0, 0]])?)
        }
        "nilder" => {
            let l = LieAlgebra::new(&f, 4, &[(0, 1, vec![0, 0, 1, 0])])?.with_labels(&["a", "b", "c", "d"]);
            Built::Restricted(restricted(l, vec![vec![0; 4], vec![0; 4], vec![0, 0, 0, 1], vec![0; 4]])?)
        }
        "nocomp" => {
            let l = LieAlgebra::abelian(&f, 2).with_labels(&["a", "b"]);
            Built::Restricted(restricted(l, vec![vec![0, 0], vec![1, 0]])?)
        }
        "noform_X" | "noform_Y" => {
            let u = u_algebra(&f)?;
            let (rep, images, prefix) = if key == "noform_X" {
                (noform_v(&f, &u)?, vec![vec![1, 0, 0], vec![0, 0, 1], vec![0, 0, 1]], "v")
            } else {
                (noform_w(&f, &u)?, vec![vec![1, 0, 0], vec![0, 0, 0], vec![0, 0, 1]], "w")
            };
            let ur = restricted(u, images)?;
            let e = ur.restricted_split_extension(&rep, None)?;
            Built::Restricted(with_module_labels(e, vec_labels(prefix, rep.dim() as u32)))
        }
        "noform_L" => {
            let u = u_algebra(&f)?;
            let rep = noform_v(&f, &u)?.direct_sum(&noform_w(&f, &u)?)?;
            let mut names = vec_labels("v", p);
            names.extend(s(&["w0", "w1", "a", "b", "c"]));
            Built::Ordinary(u.split_extension(&rep)?.with_labels(&labels(&names)))
        }
        "P" => {
            let n = n_algebra(&f)?;
            let rep = Representation::new(n.algebra(), np, k_actions(&f))?;
            let e = n.restricted_split_extension(&rep, None)?;
            Built::Restricted(with_module_labels(e, vec_labels("k", p)))
        }
        "Q" => {
            let sl = LieAlgebra::new(&f, 2, &[(0, 1, vec![0, 1])])?.with_labels(&["x", "y"]);
            let acts = v_actions(&f)[..2].to_vec();
            let rep = Representation::new(&sl, np, acts)?;
            let mut names = vec_labels("v", p);
            names.extend(s(&["x", "y"]));
            Built::Ordinary(sl.split_extension(&rep)?.with_labels(&labels(&names)))
        }
        "Qstar" => {
            let ss = s_star(&f)?;
            let rep = Representation::new(ss.algebra(), np, v_actions(&f))?;
            let e = ss.restricted_split_extension(&rep, None)?;
            Built::Restricted(with_module_labels(e, vec_labels("v", p)))
        }
        "P_lambda" => {
            let ext = Extension::new(&f, 2)?;
            let lam = ext
                .field()
                .elements()
                .find(|&x| ext.minimal_poly(x).degree() == Some(2))
                .expect("GF(p^2) has elements of degree 2");
            Built::Restricted(crate::schunck::build_p_lambda(&ext, lam)?)
        }
        "T" => Built::Restricted(build_t(&f)?),
        "notpn" => {
            let base = Field::new(2, 2)?;
            Built::Lambda(root_space(&base, 3, 2)?.0)
        }
        "notpn_variant" => {
            let base = Field::prime(3)?;
            Built::Lambda(root_space(&base, 2, 2)?.0)
        }
        "atom_null" | "atom_nonnull" => {
            let l = LieAlgebra::abelian(&f, 1).with_labels(&["a"]);
            let img = if key == "atom_null" { 0 } else { 1 };
            Built::Restricted(restricted(l, vec![vec![img]])?)
        }
        _ => return Err(Error::UnknownKey(key.to_string())),
    })
}

/// `(N ⊕ S*) / ⟨c − z⟩` on `⟨a,b,c,x,y⟩`: `ab = c`, `xy = y`, with
/// `a ↦ 0, b ↦ c, c ↦ c, x ↦ x, y ↦ c`.
fn t_top(f: &Field) -> Result<RestrictedAlgebra> {
    let l = LieAlgebra::new(f, 5, &[(0, 1, vec![0, 0, 1, 0, 0]), (3, 4, vec![0, 0, 0, 0, 1])])?
        .with_labels(&["a", "b", "c", "x", "y"]);
    restricted(
        l,
        vec![vec![0; 5], vec![0, 0, 1, 0, 0], vec![0, 0, 1, 0, 0], vec![0, 0, 0, 1, 0], vec![0, 0, 1, 0, 0]],
    )
}

/// `K ⊗ V` split by `(N ⊕ S*) / ⟨c − z⟩`, null on `K ⊗ V`. The element
/// `c − z` of `N ⊕ S*` acts as zero on `K ⊗ V`, so the quotient is the
/// largest algebra acting faithfully.
fn build_t(f: &Field) -> Result<RestrictedAlgebra> {
    let np = f.p() as usize;
    let top = t_top(f)?;
    let zero = Matrix::zero(np, np);
    let k = k_actions(f);
    let v = v_actions(f);
    let kr = Representation::new(
        top.algebra(),
        np,
        vec![k[0].clone(), k[1].clone(), k[2].clone(), zero.clone(), zero.clone()],
    )?;
    let vr = Representation::new(top.algebra(), np, vec![zero.clone(), zero.clone(), zero, v[0].clone(), v[1].clone()])?;
    let e = top.restricted_split_extension(&kr.tensor(&vr)?, None)?;
    let mut names = Vec::new();
    for i in 0..np {
        for j in 0..np {
            names.push(format!("k{i}v{j}"));
        }
    }
    names.extend(["a", "b", "c", "x", "y"].iter().map(|s| s.to_string()));
    Ok(e.with_labels(&labels(&names)))
}

pub fn expected_facts(key: &str, p: u32) -> Vec<Fact> {
    let sp = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    let member = |c: &str, e: bool| Fact::Member { class: c.into(), expected: e };
    match key {
        "der" => vec![
            Fact::Dim { n: 3 },
            Fact::DerivedNotPIdeal,
            Fact::PsiExceedsPhi,
            Fact::ResidualEquals { class: "pA".into(), span: sp(&["b", "c"]) },
            Fact::ResidualEquals { class: "pN".into(), span: sp(&["b", "c"]) },
            Fact::ProjectorEquals { class: "pN".into(), span: sp(&["a", "c"]) },
            Fact::NilradicalEquals { span: sp(&["b", "c"]) },
            member("pC", true),
        ],
        "nilder" => vec![Fact::Dim { n: 4 }, Fact::DerivedNotPIdeal, Fact::PsiExceedsPhi],
        "nocomp" => vec![Fact::VectorComplementOnly { ideal: sp(&["a"]) }],
        "noform_X" => vec![
            Fact::Restrictable { expected: true },
            Fact::UniquePOperation,
            Fact::UnderlyingIn { class: "lift:S".into(), expected: true },
        ],
        "noform_Y" => vec![Fact::Restrictable { expected: true }, Fact::UniquePOperation],
        "noform_L" => vec![
            Fact::Restrictable { expected: false },
            Fact::UnderlyingIn { class: "pS".into(), expected: false },
        ],
        "P" => vec![
            Fact::Dim { n: p as usize + 3 },
            Fact::Primitive { expected: true },
            member("ploc:pN_2", true),
        ],
        "Q" => vec![Fact::Restrictable { expected: false }],
        "Qstar" => vec![
            Fact::Primitive { expected: true },
            member("pN", false),
            // y lies in the derived algebra and shifts V invertibly
            member("pC", false),
            member("ploc:M", true),
            Fact::MinimalEnvelopeOf { key: "Q".into() },
        ],
        "P_lambda" => vec![Fact::Primitive { expected: true }],
        "T" => vec![
            Fact::Dim { n: (p * p) as usize + 5 },
            Fact::Primitive { expected: true },
            Fact::Metabelian { expected: false },
            member("ploc:pN_2", false),
            member("ploc:M", false),
        ],
        "notpn" => vec![
            Fact::PNormal { expected: false },
            Fact::FindQn { p: 2, n: 2, q: 3 },
            Fact::FindQn { p: 3, n: 3, q: 13 },
        ],
        "notpn_variant" => vec![Fact::PNormal { expected: true }],
        "atom_null" | "atom_nonnull" => vec![
            Fact::Atom,
            member("pN", true),
            member("pA", true),
            member("pU", true),
            member("pC", true),
            member("pEv:base", true),
        ],
        _ => vec![],
    }
}

/// Whether the entry's construction is fixed over one field regardless of `p`.
pub fn fixed_prime(key: &str) -> Option<u32> {
    match key {
        "notpn" => Some(2),
        "notpn_variant" => Some(3),
        _ => None,
    }
}

pub fn entry(key: &str, p: u32) -> Result<CatalogEntry> {
    let p = fixed_prime(key).unwrap_or(p);
    Ok(CatalogEntry {
        key: key.to_string(),
        p,
        built: build(key, p)?,
        expected_facts: expected_facts(key, p),
    })
}

/// The (key, p) pairs whose expected facts are reproduced: every key at
/// p = 2 and p = 3, fixed-prime keys once.
pub fn fact_instances() -> Vec<(String, u32)> {
    let mut out = Vec::new();
    for &k in KEYS {
        match fixed_prime(k) {
            Some(p) => out.push((k.to_string(), p)),
            None => out.extend([2, 3].map(|p| (k.to_string(), p))),
        }
    }
    out
}

/// Catalog keys that build a restricted algebra, for the suites.
pub fn restricted_entries(p: u32) -> Result<Vec<(String, RestrictedAlgebra)>> {
    let mut out = Vec::new();
    for &k in KEYS {
        if fixed_prime(k).is_some() {
            continue;
        }
        if let Built::Restricted(r) = build(k, p)? {
            out.push((k.to_string(), r));
        }
    }
    Ok(out)
}

/// A small Lie algebra with every p-operation, or `None` if it has none.
#[derive(Clone, Debug)]
pub struct SmallAlgebra {
    pub algebra: LieAlgebra,
    pub p_operations: Option<Vec<RestrictedAlgebra>>,
}

fn table_from_code(f: &Field, n: usize, mut code: u64) -> Vec<(usize, usize, Vec<Elem>)> {
    let q = f.order() as u64;
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut v = vec![0; n];
            for x in v.iter_mut() {
                *x = (code % q) as Elem;
                code /= q;
            }
            out.push((i, j, v));
        }
    }
    out
}

/// Number of algebras drawn in the seeded regime.
pub const SAMPLED_COUNT: usize = 24;
/// Seed of the sampled regime.
pub const SAMPLE_SEED: u64 = 0x5eed;

/// Lie algebras of dimension `1..=max_dim` over `GF(p)`: every structure
/// table up to isomorphism when `p^(d·C(d,2))` is at most 2^16, otherwise a
/// seeded sample of Jacobi-passing tables.
pub fn enumerate_small(p: u32, max_dim: usize) -> Result<Vec<SmallAlgebra>> {
    let f = field(p)?;
    let mut out = Vec::new();
    for n in 1..=max_dim {
        let pairs = n * (n - 1) / 2;
        let total = (p as u128).checked_pow((n * pairs) as u32);
        let algebras = match total {
            Some(t) if t <= 1 << 16 => exhaustive(&f, n, t as u64)?,
            _ => sampled(&f, n)?,
        };
        for l in algebras {
            let ops = if crate::restricted::is_restrictable(&l) {
                Some(enumerate_p_operations(&l, DEFAULT_BUDGET as u128)?)
            } else {
                None
            };
            out.push(SmallAlgebra { algebra: l, p_operations: ops });
        }
    }
    Ok(out)
}

fn exhaustive(f: &Field, n: usize, total: u64) -> Result<Vec<LieAlgebra>> {
    let mut reps: Vec<LieAlgebra> = Vec::new();
    for code in 0..total {
        let Ok(l) = LieAlgebra::new(f, n, &table_from_code(f, n, code)) else {
            continue;
        };
        let mut seen = false;
        for r in &reps {
            if iso::are_isomorphic(r, &l)? {
                seen = true;
                break;
            }
        }
        if !seen {
            reps.push(l);
        }
    }
    Ok(reps)
}

fn sampled(f: &Field, n: usize) -> Result<Vec<LieAlgebra>> {
    let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED + n as u64);
    let pairs = n * (n - 1) / 2;
    let mut out = Vec::new();
    for _ in 0..1_000_000 {
        if out.len() == SAMPLED_COUNT {
            break;
        }
        let mut br = Vec::with_capacity(pairs);
        for i in 0..n {
            for j in i + 1..n {
                // sparse tables pass Jacobi far more often
                let v: Vec<Elem> =
                    (0..n).map(|_| if rng.gen_bool(0.3) { rng.gen_range(0..f.order()) } else { 0 }).collect();
                br.push((i, j, v));
            }
        }
        if let Ok(l) = LieAlgebra::new(f, n, &br) {
            out.push(l);
        }
    }
    Ok(out)
}

/// Restricted algebras of the small enumeration, every p-operation each.
pub fn restricted_sample(p: u32, max_dim: usize) -> Result<Vec<RestrictedAlgebra>> {
    Ok(enumerate_small(p, max_dim)?
        .into_iter()
        .filter_map(|s| s.p_operations)
        .flatten()
        .collect())
}

/// Results of the prime search recorded for reports.
pub fn prime_search(p: u32) -> Result<(u32, u128)> {
    find_qn(p, 64)
}

/// Spans named by basis labels.
pub fn span_of_labels(l: &LieAlgebra, names: &[String]) -> Result<Subspace> {
    let f = l.field();
    let vecs = names
        .iter()
        .map(|s| {
            l.label_index(s)
                .map(|i| l.basis_vector(i))
                .ok_or_else(|| Error::Parse(format!("no basis label {s}")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Subspace::span(f, l.dim(), &vecs))
}

#[cfg(test)]
mod tests;
