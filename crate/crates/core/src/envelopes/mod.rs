//! Minimal p-envelopes of ordinary Lie algebras.
//!
//! A minimal envelope `E` of `U` is a central extension of
//! `M = (ad U)_{[p]} ⊆ gl(U)` by `Z(U)`: `E = U ⊕ W` with `W` lifting a
//! complement of `ad U` in `M`. On `U × W` the bracket is forced by the
//! derivation action; on `W × W` it is fixed up to a `Z(U)`-valued term,
//! which is solved for so that Jacobi holds and every `ad(e)^p` is inner.

use crate::error::{Error, Result};
use crate::ff::{Elem, Field, Matrix, Subspace};
use crate::lie::{Closure, LieAlgebra};
use crate::restricted::{jacobson_construct, RestrictedAlgebra};
use crate::schunck::ClassDescriptor;

#[derive(Clone, Debug)]
pub struct Envelope {
    pub source: LieAlgebra,
    pub target: RestrictedAlgebra,
    /// Columns are images of the source basis.
    pub embedding: Matrix,
    pub minimal: bool,
}

/// Basis of the smallest subspace of `gl_n` containing `gens` and closed
/// under commutators and p-th powers.
pub fn matrix_p_closure(f: &Field, n: usize, gens: &[Matrix]) -> Vec<Matrix> {
    let p = f.p() as u64;
    let mut span = Subspace::zero(n * n);
    let mut basis: Vec<Matrix> = Vec::new();
    let push = |m: Matrix, span: &mut Subspace, basis: &mut Vec<Matrix>| {
        if span.insert(f, &m.flatten()) {
            basis.push(m);
            true
        } else {
            false
        }
    };
    for g in gens {
        push(g.clone(), &mut span, &mut basis);
    }
    loop {
        let mut grew = false;
        let snap = basis.clone();
        for i in 0..snap.len() {
            for j in i + 1..snap.len() {
                grew |= push(snap[i].commutator(f, &snap[j]), &mut span, &mut basis);
            }
            grew |= push(snap[i].pow(f, p), &mut span, &mut basis);
        }
        if !grew {
            return basis;
        }
    }
}

struct Frame {
    f: Field,
    n: usize,
    /// Basis of `ad U` followed by the complement `W`, as matrices.
    ad_basis: Vec<Matrix>,
    w_basis: Vec<Matrix>,
    system: Matrix,
    ad_system: Matrix,
    centre: Subspace,
}

impl Frame {
    /// `m = ad(u) + Σ c_k W_k` with `u` least.
    fn split(&self, m: &Matrix) -> Result<(Vec<Elem>, Vec<Elem>)> {
        let x = self
            .system
            .solve(&self.f, &m.flatten())
            .ok_or_else(|| Error::Certificate("matrix left the p-closure".into()))?;
        let (a, c) = x.split_at(self.ad_basis.len());
        let mut adpart = Matrix::zero(self.n, self.n);
        for (k, &ak) in a.iter().enumerate() {
            adpart.axpy(&self.f, ak, &self.ad_basis[k]);
        }
        let u = self
            .ad_system
            .solve(&self.f, &adpart.flatten())
            .ok_or_else(|| Error::Certificate("ad part has no preimage".into()))?;
        Ok((u, c.to_vec()))
    }

    fn element(&self, u: &[Elem], c: &[Elem]) -> Vec<Elem> {
        let mut v = u.to_vec();
        v.extend_from_slice(c);
        v
    }
}

fn build_table(u: &LieAlgebra, fr: &Frame, theta: &[Elem]) -> Result<Vec<Vec<Elem>>> {
    let f = &fr.f;
    let n = fr.n;
    let r = fr.w_basis.len();
    let dim = n + r;
    let z = fr.centre.basis();
    let mut table = vec![vec![0; dim]; dim * dim];
    for i in 0..n {
        for j in 0..n {
            let mut v = u.bracket_basis(i, j).to_vec();
            v.resize(dim, 0);
            table[i * dim + j] = v;
        }
    }
    for a in 0..r {
        for i in 0..n {
            let mut v = fr.w_basis[a].col(i);
            v.resize(dim, 0);
            table[(n + a) * dim + i] = v.clone();
            table[i * dim + n + a] = f.scale(f.neg(1), &v);
        }
    }
    let mut idx = 0;
    for a in 0..r {
        for b in a + 1..r {
            let (uu, c) = fr.split(&fr.w_basis[a].commutator(f, &fr.w_basis[b]))?;
            let mut v = fr.element(&uu, &c);
            for zt in z {
                let mut zv = zt.clone();
                zv.resize(dim, 0);
                f.axpy(&mut v, theta[idx], &zv);
                idx += 1;
            }
            table[(n + a) * dim + n + b] = v.clone();
            table[(n + b) * dim + n + a] = f.scale(f.neg(1), &v);
        }
    }
    Ok(table)
}

/// Jacobi sums on `W` triples and `ad(e)^p − ad(b_e)` for every basis `e`.
fn defects(l: &LieAlgebra, n: usize, images: &[Vec<Elem>]) -> Vec<Elem> {
    let f = l.field();
    let dim = l.dim();
    let mut out = Vec::new();
    for a in n..dim {
        for b in a + 1..dim {
            for c in b + 1..dim {
                let (x, y, w) = (l.basis_vector(a), l.basis_vector(b), l.basis_vector(c));
                let s1 = l.bracket(&l.bracket(&x, &y), &w);
                let s2 = l.bracket(&l.bracket(&y, &w), &x);
                let s3 = l.bracket(&l.bracket(&w, &x), &y);
                out.extend(f.vadd(&f.vadd(&s1, &s2), &s3));
            }
        }
    }
    for (e, b) in images.iter().enumerate() {
        let d = l.ad_basis(e).pow(f, f.p() as u64).sub(f, &l.ad(b));
        out.extend(d.flatten());
    }
    out
}

pub fn minimal_p_envelope(u: &LieAlgebra) -> Result<Envelope> {
    let f = u.field().clone();
    let p = f.p() as u64;
    let n = u.dim();
    let ads: Vec<Matrix> = (0..n).map(|i| u.ad_basis(i).clone()).collect();
    let m_basis = matrix_p_closure(&f, n, &ads);
    let mut ad_span = Subspace::zero(n * n);
    let mut ad_basis = Vec::new();
    for a in &ads {
        if ad_span.insert(&f, &a.flatten()) {
            ad_basis.push(a.clone());
        }
    }
    let mut all = ad_span.clone();
    let mut w_basis = Vec::new();
    for m in &m_basis {
        if all.insert(&f, &m.flatten()) {
            w_basis.push(m.clone());
        }
    }
    let r = w_basis.len();
    let cols: Vec<Vec<Elem>> = ad_basis.iter().chain(&w_basis).map(|m| m.flatten()).collect();
    let ad_cols: Vec<Vec<Elem>> = ads.iter().map(|m| m.flatten()).collect();
    let fr = Frame {
        f: f.clone(),
        n,
        system: Matrix::from_cols(n * n, &cols),
        ad_system: Matrix::from_cols(n * n, &ad_cols),
        ad_basis,
        w_basis,
        centre: u.center(),
    };
    let dim = n + r;
    // p-images: the least lift of the matrix p-th power of each basis action
    let mut images = Vec::with_capacity(dim);
    for i in 0..n {
        let (uu, c) = fr.split(&ads[i].pow(&f, p))?;
        images.push(fr.element(&uu, &c));
    }
    for a in 0..r {
        let (uu, c) = fr.split(&fr.w_basis[a].pow(&f, p))?;
        images.push(fr.element(&uu, &c));
    }
    let unknowns = r * r.saturating_sub(1) / 2 * fr.centre.dim();
    let eval = |theta: &[Elem]| -> Result<Vec<Elem>> {
        let l = LieAlgebra::from_table(&f, dim, build_table(u, &fr, theta)?);
        Ok(defects(&l, n, &images))
    };
    let zero = vec![0; unknowns];
    let r0 = eval(&zero)?;
    let theta = if r0.iter().all(|&c| c == 0) {
        zero
    } else {
        let mut cols = Vec::with_capacity(unknowns);
        for j in 0..unknowns {
            let mut t = vec![0; unknowns];
            t[j] = 1;
            cols.push(f.vsub(&eval(&t)?, &r0));
        }
        if cols.is_empty() {
            return Err(Error::Certificate("envelope bracket admits no correction".into()));
        }
        let sys = Matrix::from_cols(r0.len(), &cols);
        sys.solve(&f, &f.scale(f.neg(1), &r0))
            .ok_or_else(|| Error::Certificate("no central correction makes the envelope restricted".into()))?
    };
    let table = build_table(u, &fr, &theta)?;
    let mut entries = Vec::new();
    for i in 0..dim {
        for j in i + 1..dim {
            if table[i * dim + j].iter().any(|&c| c != 0) {
                entries.push((i, j, table[i * dim + j].clone()));
            }
        }
    }
    let mut labels: Vec<String> = u.labels().to_vec();
    labels.extend((0..r).map(|k| format!("w{k}")));
    let mut e = LieAlgebra::new(&f, dim, &entries).map_err(|err| Error::Certificate(format!("envelope bracket: {err}")))?;
    e.set_labels(labels);
    let target = jacobson_construct(&e, images).map_err(|err| Error::Certificate(format!("envelope p-map: {err}")))?;
    let emb_cols: Vec<Vec<Elem>> = (0..n)
        .map(|i| {
            let mut v = vec![0; dim];
            v[i] = 1;
            v
        })
        .collect();
    let env = Envelope {
        source: u.clone(),
        target,
        embedding: Matrix::from_cols(dim, &emb_cols),
        minimal: true,
    };
    certify(&env)?;
    Ok(env)
}

/// Checks injectivity, homomorphism, [p]-closure of the image, and for
/// minimal envelopes the dimension formula and `Z(E) ⊆ ι(U)`.
pub fn certify(env: &Envelope) -> Result<()> {
    let t = env.target.algebra();
    let f = t.field();
    let n = env.source.dim();
    if env.embedding.rank(f) != n {
        return Err(Error::Certificate("embedding is not injective".into()));
    }
    if !env.source.is_homomorphism(t, &env.embedding) {
        return Err(Error::Certificate("embedding is not a homomorphism".into()));
    }
    let image = Subspace::span(f, t.dim(), &(0..n).map(|i| env.embedding.col(i)).collect::<Vec<_>>());
    if !env.target.p_closure(&image, Closure::Subalgebra).is_full() {
        return Err(Error::Certificate("image does not generate the envelope".into()));
    }
    if env.minimal {
        let ads: Vec<Matrix> = (0..n).map(|i| env.source.ad_basis(i).clone()).collect();
        let m = matrix_p_closure(f, n, &ads).len();
        let adu = n - env.source.center().dim();
        if t.dim() != n + m - adu {
            return Err(Error::Certificate("dimension differs from dim U + dim M/ad U".into()));
        }
        if !image.contains_space(f, &t.center()) {
            return Err(Error::Certificate("centre of the envelope leaves the image".into()));
        }
    }
    Ok(())
}

/// `U` has a p-envelope in `k`, decided on the minimal envelope.
pub fn envd_membership(u: &LieAlgebra, k: &ClassDescriptor) -> Result<bool> {
    k.contains(&minimal_p_envelope(u)?.target)
}

/// An envelope whose p-map vanishes on the abelian ideal `a` of `U`.
pub fn null_ideal_envelope(u: &LieAlgebra, a: &Subspace) -> Result<Envelope> {
    if !u.is_ideal(a) || !u.is_abelian_subspace(a) {
        return Err(Error::NotClosed("an abelian ideal"));
    }
    let env = minimal_p_envelope(u)?;
    let t = env.target.algebra();
    let f = t.field();
    let ia = Subspace::span(f, t.dim(), &a.basis().iter().map(|v| env.embedding.apply(f, v)).collect::<Vec<_>>());
    let nulled = env.target.null_on_ideal_pop(&ia)?;
    let image = Subspace::span(f, t.dim(), &(0..u.dim()).map(|i| env.embedding.col(i)).collect::<Vec<_>>());
    let hull = nulled.p_closure(&image, Closure::Subalgebra);
    let target = nulled.restrict(&hull)?;
    let cols: Vec<Vec<Elem>> = (0..u.dim()).map(|i| hull.coords(&env.embedding.col(i))).collect();
    let out = Envelope {
        source: u.clone(),
        target,
        embedding: Matrix::from_cols(hull.dim(), &cols),
        minimal: false,
    };
    certify(&out)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn centreless_restrictable_algebra_is_its_own_envelope() {
        let f = Field::prime(3).unwrap();
        let u = LieAlgebra::new(&f, 2, &[(0, 1, vec![0, 1])]).unwrap();
        let env = minimal_p_envelope(&u).unwrap();
        assert_eq!(env.target.dim(), 2);
    }

    #[test]
    fn heisenberg_envelope_adds_p_powers() {
        for p in [2, 3] {
            let f = Field::prime(p).unwrap();
            let u = LieAlgebra::new(&f, 3, &[(0, 1, vec![0, 0, 1])]).unwrap();
            // ad(a)^p = 0 for p >= 3, and for p = 2 ad(a)^2 = 0 too
            let env = minimal_p_envelope(&u).unwrap();
            assert_eq!(env.target.dim(), 3);
        }
    }

    #[test]
    fn non_restrictable_algebra_gets_larger_envelope() {
        // [x, v_i] = i v_i, [y, v_i] = v_{i+1}, [x, y] = y over GF(3)
        let f = Field::prime(3).unwrap();
        let mut br = vec![(3, 4, vec![0, 0, 0, 0, 1])];
        for i in 0..3 {
            let mut v = vec![0; 5];
            v[i] = i as Elem;
            br.push((3, i, v));
            let mut w = vec![0; 5];
            w[(i + 1) % 3] = 1;
            br.push((4, i, w));
        }
        let q = LieAlgebra::new(&f, 5, &br).unwrap();
        assert!(!crate::restricted::is_restrictable(&q));
        let env = minimal_p_envelope(&q).unwrap();
        assert_eq!(env.target.dim(), 6);
        assert!(env.target.is_primitive().is_some());
    }
}
