use std::collections::{BTreeSet, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ff::{Elem, Extension, Field, Matrix, Poly, Subspace};
use crate::lie::{LieAlgebra, Representation};
use crate::restricted::{jacobson_construct, RestrictedAlgebra};

/// Above this many elements, eigenvalue scans sample instead of enumerating.
pub const EIGEN_SCAN_LIMIT: u128 = 100_000;

/// An `F`-subspace of `GF(q^d)` given by a basis, `q = |F|`.
#[derive(Clone, Debug)]
pub struct LambdaSpace {
    ext: Extension,
    basis: Vec<Elem>,
    members: BTreeSet<Elem>,
}

impl LambdaSpace {
    pub fn new(base: &Field, degree: u32, basis: Vec<Elem>) -> Result<LambdaSpace> {
        let ext = Extension::new(base, degree)?;
        let e = ext.field().clone();
        if basis.iter().any(|&b| b >= e.order()) {
            return Err(Error::InvalidParams("basis element outside the extension".into()));
        }
        let mut members = BTreeSet::from([0]);
        for &b in &basis {
            let cur: Vec<Elem> = members.iter().copied().collect();
            for c in base.elements().skip(1) {
                let cb = e.mul(ext.embed(c), b);
                for &x in &cur {
                    members.insert(e.add(x, cb));
                }
            }
        }
        let expected = (base.order() as usize).pow(basis.len() as u32);
        if members.len() != expected {
            return Err(Error::InvalidParams("basis is not linearly independent over the base field".into()));
        }
        Ok(LambdaSpace { ext, basis, members })
    }

    /// `Λ = F` inside `F` itself.
    pub fn base_field(base: &Field) -> LambdaSpace {
        LambdaSpace::new(base, 1, vec![1]).expect("the base field is a valid space")
    }

    /// The `F`-span of `λ` inside `GF(q^d)`.
    pub fn span_of(base: &Field, degree: u32, gens: &[Elem]) -> Result<LambdaSpace> {
        let ext = Extension::new(base, degree)?;
        let e = ext.field();
        // echelonize by greedy insertion into the enumerated span
        let mut basis = Vec::new();
        let mut seen = BTreeSet::from([0]);
        for &g in gens {
            if seen.contains(&g) {
                continue;
            }
            basis.push(g);
            let cur: Vec<Elem> = seen.iter().copied().collect();
            for c in base.elements().skip(1) {
                let cg = e.mul(ext.embed(c), g);
                for &x in &cur {
                    seen.insert(e.add(x, cg));
                }
            }
        }
        LambdaSpace::new(base, degree, basis)
    }

    pub fn extension(&self) -> &Extension {
        &self.ext
    }
    pub fn base(&self) -> &Field {
        self.ext.base()
    }
    pub fn degree(&self) -> u32 {
        self.ext.degree()
    }
    pub fn basis(&self) -> &[Elem] {
        &self.basis
    }
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    pub fn contains(&self, x: Elem) -> bool {
        self.members.contains(&x)
    }
    pub fn members(&self) -> impl Iterator<Item = Elem> + '_ {
        self.members.iter().copied()
    }

    /// Closed under `λ ↦ λ^q` and `λ ↦ λ^p`; both maps are `F`-semilinear,
    /// so the basis decides.
    pub fn is_p_normal(&self) -> bool {
        let e = self.ext.field();
        let q = self.base().order() as u64;
        let p = self.base().p() as u64;
        self.basis
            .iter()
            .all(|&b| self.contains(e.pow(b, q)) && self.contains(e.pow(b, p)))
    }

    /// Whether every root of `chi` (over the closure) lies in `Λ`.
    pub fn splits_inside(&self, chi: &Poly) -> bool {
        let n = chi.degree().unwrap_or(0);
        let roots = self.ext.roots(chi);
        roots.len() == n && roots.iter().all(|&r| self.contains(r))
    }

    /// Canonical text naming the space.
    pub fn describe(&self) -> String {
        let e = self.ext.field();
        let parts: Vec<String> = self
            .basis
            .iter()
            .map(|&b| format!("{:?}", e.coeffs(b)))
            .collect();
        format!("GF({}^{})<{}>", self.base().order(), self.degree(), parts.join(","))
    }
}

/// Outcome of an eigenvalue scan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenScan {
    pub holds: bool,
    /// False when only a seeded sample of elements was examined.
    pub exhaustive: bool,
    pub witness: Option<Vec<Elem>>,
}

fn scan_elements(r: &RestrictedAlgebra, mut test: impl FnMut(&[Elem]) -> bool) -> EigenScan {
    let f = r.field();
    let n = r.dim();
    let whole = Subspace::full(n);
    let count = whole.point_count(f) * (f.order() as u128 - 1) + 1;
    if count <= EIGEN_SCAN_LIMIT {
        for x in whole.elements(f) {
            if !test(&x) {
                return EigenScan { holds: false, exhaustive: true, witness: Some(x) };
            }
        }
        return EigenScan { holds: true, exhaustive: true, witness: None };
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for _ in 0..EIGEN_SCAN_LIMIT {
        let x: Vec<Elem> = (0..n).map(|_| rng.gen_range(0..f.order())).collect();
        if !test(&x) {
            return EigenScan { holds: false, exhaustive: false, witness: Some(x) };
        }
    }
    EigenScan { holds: true, exhaustive: false, witness: None }
}

/// Whether every eigenvalue of every `ad(x)` lies in `Λ`.
pub fn eigenvalues_in(r: &RestrictedAlgebra, lambda: &LambdaSpace) -> Result<EigenScan> {
    if lambda.base() != r.field() {
        return Err(Error::FieldMismatch);
    }
    let l = r.algebra();
    let f = r.field();
    let mut memo: HashMap<Poly, bool> = HashMap::new();
    Ok(scan_elements(r, |x| {
        let chi = l.ad(x).char_poly(f);
        *memo.entry(chi.clone()).or_insert_with(|| lambda.splits_inside(&chi))
    }))
}

/// Eigenvalues of all `ad(x)` inside the least extension holding them.
#[derive(Clone, Debug)]
pub struct EigenvalueSet {
    pub extension: Extension,
    pub values: BTreeSet<Elem>,
    pub exhaustive: bool,
}

fn lcm(a: usize, b: usize) -> usize {
    let (mut x, mut y) = (a, b);
    while y != 0 {
        (x, y) = (y, x % y);
    }
    a / x * b
}

pub fn eigenvalue_set(r: &RestrictedAlgebra) -> Result<EigenvalueSet> {
    let l = r.algebra();
    let f = r.field();
    let mut polys: BTreeSet<Vec<Elem>> = BTreeSet::new();
    let scan = scan_elements(r, |x| {
        polys.insert(l.ad(x).char_poly(f).coeffs().to_vec());
        true
    });
    let mut d = 1;
    for c in &polys {
        for k in Poly::new(c.clone()).factor_degrees(f) {
            d = lcm(d, k);
        }
    }
    let extension = Extension::new(f, d as u32)?;
    let mut values = BTreeSet::new();
    for c in polys {
        values.extend(extension.roots(&Poly::new(c)));
    }
    Ok(EigenvalueSet { extension, values, exhaustive: scan.exhaustive })
}

/// Companion matrix of a monic polynomial: `e_i ↦ e_{i+1}`, last column `−m_i`.
pub fn companion(f: &Field, m: &Poly) -> Matrix {
    let k = m.degree().expect("nonzero polynomial");
    let mut c = Matrix::zero(k, k);
    for i in 0..k {
        if i + 1 < k {
            c.set(i + 1, i, 1);
        }
        c.set(i, k - 1, f.neg(m.coeff(i)));
    }
    c
}

/// `P_λ`: the split extension of `V = F[t]/(m)` by the abelian [p]-algebra
/// spanned by `a, a^p, a^{p^2}, …` where `a` is the companion matrix of the
/// minimal polynomial `m` of `λ`. The p-map is the matrix p-th power on the
/// acting part and zero on `V`.
pub fn build_p_lambda(ext: &Extension, lambda: Elem) -> Result<RestrictedAlgebra> {
    let f = ext.base();
    let p = f.p() as u64;
    let m = ext.minimal_poly(lambda);
    let a = companion(f, &m);
    let k = a.rows();
    let mut span = Subspace::zero(k * k);
    let mut mats: Vec<Matrix> = Vec::new();
    let mut cur = a;
    while span.insert(f, &cur.flatten()) {
        mats.push(cur.clone());
        cur = cur.pow(f, p);
    }
    let r = mats.len();
    let acting = LieAlgebra::abelian(f, r);
    let cols: Vec<Vec<Elem>> = mats.iter().map(|x| x.flatten()).collect();
    let sys = Matrix::from_cols(k * k, &cols);
    let images = mats
        .iter()
        .map(|x| {
            sys.solve(f, &x.pow(f, p).flatten())
                .ok_or_else(|| Error::Inconsistency("matrix p-th powers left the span".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let top = jacobson_construct(&acting, images)?;
    let rep = Representation::new(&acting, k, mats)?;
    let mut labels: Vec<String> = (0..k).map(|i| format!("v{i}")).collect();
    labels.extend((0..r).map(|i| format!("a{i}")));
    let out = top.restricted_split_extension(&rep, None)?;
    let refs: Vec<&str> = labels.iter().map(|s| s.as_str()).collect();
    Ok(out.with_labels(&refs))
}

/// Smallest `n` such that a prime `q > p` divides `p^n − 1`, with the least such `q`.
pub fn find_qn(p: u32, max_n: u32) -> Result<(u32, u128)> {
    if !crate::ff::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let pp = p as u128;
    for n in 1..=max_n {
        let Some(pw) = pp.checked_pow(n) else {
            return Err(Error::Capacity(format!("{p}^{n} overflows 128 bits")));
        };
        let mut rest = pw - 1;
        for d in 2..=pp {
            while rest % d == 0 {
                rest /= d;
            }
        }
        if rest <= 1 {
            continue;
        }
        let mut q = pp + 1;
        while q * q <= rest {
            if rest % q == 0 {
                return Ok((n, q));
            }
            q += 1;
        }
        return Ok((n, rest));
    }
    Err(Error::Capacity(format!("no prime above {p} divides p^n - 1 for n <= {max_n}")))
}

/// The space `⟨u⟩` for `u` a root of `t^q − c` over `F = GF(p^n)`, with
/// `c` a non-`q`-th power; returned with its generator.
pub fn root_space(base: &Field, q: u32, c: Elem) -> Result<(LambdaSpace, Elem)> {
    let poly = {
        let mut co = vec![0; q as usize + 1];
        co[0] = base.neg(c);
        co[q as usize] = 1;
        Poly::new(co)
    };
    if !poly.roots(base).is_empty() {
        return Err(Error::InvalidParams("the constant is a q-th power in the base field".into()));
    }
    let ext = Extension::new(base, q)?;
    let u = *ext
        .roots(&poly)
        .iter()
        .min()
        .ok_or_else(|| Error::InvalidParams("t^q - c has no root of degree q".into()))?;
    Ok((LambdaSpace::span_of(base, q, &[u])?, u))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_search_matches_known_pairs() {
        assert_eq!(find_qn(2, 64).unwrap(), (2, 3));
        assert_eq!(find_qn(3, 64).unwrap(), (3, 13));
        for p in [2, 3, 5, 7, 11] {
            let (n, q) = find_qn(p, 64).unwrap();
            assert!(q > p as u128);
            assert_eq!(((p as u128).pow(n) - 1) % q, 0);
        }
    }

    #[test]
    fn cube_root_space_over_gf4_is_not_p_normal() {
        let f = Field::new(2, 2).unwrap();
        let (lam, u) = root_space(&f, 3, 2).unwrap();
        let e = lam.extension().field().clone();
        // conjugates u^4 = c u stay, u^2 leaves
        assert!(lam.contains(e.pow(u, 4)));
        assert!(!lam.contains(e.pow(u, 2)));
        assert!(!lam.is_p_normal());
    }

    #[test]
    fn square_root_space_over_gf3_is_p_normal() {
        let f = Field::prime(3).unwrap();
        let (lam, _) = root_space(&f, 2, 2).unwrap();
        assert!(lam.is_p_normal());
        assert!(LambdaSpace::base_field(&f).is_p_normal());
    }

    #[test]
    fn p_lambda_acts_with_eigenvalue_lambda() {
        let f = Field::prime(3).unwrap();
        let ext = Extension::new(&f, 2).unwrap();
        let lam = (0..9).find(|&x| ext.minimal_poly(x).degree() == Some(2)).unwrap();
        let pl = build_p_lambda(&ext, lam).unwrap();
        assert!(pl.is_primitive().is_some());
        let set = eigenvalue_set(&pl).unwrap();
        assert!(set.exhaustive);
        let big = &set.extension;
        let e = big.field();
        // λ embedded through the tower GF(9) ⊆ GF(9^k)
        let want = big.roots(&ext.minimal_poly(lam));
        assert!(want.iter().all(|w| set.values.contains(w)));
        assert!(e.order() >= 9);
    }
}
