use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::ff::{Elem, Matrix, Subspace};
use crate::lie::{LieAlgebra, Representation};

/// Largest number of matrix entries a differential may have.
pub const COCHAIN_BUDGET: usize = 40_000_000;

/// Increasing index tuples of length `k` from `0..n`, in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Cochains `Hom(Λ^k L, V)`; entry `t * dim V + r` is coordinate `r` of the
/// value on the `t`-th index tuple.
#[derive(Clone, Debug)]
pub struct CochainComplex {
    rep: Representation,
    /// `diffs[k]` is `d^k: C^k → C^{k+1}`.
    diffs: Vec<Matrix>,
}

impl CochainComplex {
    pub fn new(rep: &Representation, n_max: usize) -> Result<CochainComplex> {
        let l = rep.algebra();
        let n = l.dim();
        let d = rep.dim();
        let mut diffs = Vec::new();
        for k in 0..=n_max {
            let rows = binom(n, k + 1) * d;
            let cols = binom(n, k) * d;
            if rows.saturating_mul(cols) > COCHAIN_BUDGET {
                return Err(Error::Capacity(format!("differential d^{k} has {rows}x{cols} entries")));
            }
            diffs.push(differential(l, rep, k));
        }
        Ok(CochainComplex {
            rep: rep.clone(),
            diffs,
        })
    }

    pub fn differential(&self, k: usize) -> &Matrix {
        &self.diffs[k]
    }

    pub fn cochain_dim(&self, k: usize) -> usize {
        binom(self.rep.algebra().dim(), k) * self.rep.dim()
    }

    pub fn cocycles(&self, k: usize) -> Subspace {
        self.diffs[k].kernel(self.rep.field())
    }

    pub fn coboundaries(&self, k: usize) -> Subspace {
        if k == 0 {
            Subspace::zero(self.cochain_dim(0))
        } else {
            self.diffs[k - 1].image(self.rep.field())
        }
    }

    /// `dim H^k`, for `k ≤ n_max`.
    pub fn dim(&self, k: usize) -> usize {
        self.cocycles(k).dim() - self.coboundaries(k).dim()
    }

    /// Whether `d^{k+1} d^k = 0` for every stored pair.
    pub fn is_complex(&self) -> bool {
        let f = self.rep.field();
        self.diffs.windows(2).all(|w| w[1].mul(f, &w[0]).is_zero())
    }
}

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

fn differential(l: &LieAlgebra, rep: &Representation, k: usize) -> Matrix {
    let f = l.field();
    let n = l.dim();
    let d = rep.dim();
    let src = combinations(n, k);
    let dst = combinations(n, k + 1);
    let index: HashMap<Vec<usize>, usize> = src.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
    let mut m = Matrix::zero(dst.len() * d, src.len() * d);
    let sgn = |e: usize, x: Elem| if e % 2 == 0 { x } else { f.neg(x) };
    for (ti, t) in dst.iter().enumerate() {
        // Σ (-1)^i ρ(x_i) f(..x̂_i..)
        for i in 0..t.len() {
            let mut s = t.clone();
            let xi = s.remove(i);
            let si = index[&s];
            let a = rep.action(xi);
            for r in 0..d {
                for c in 0..d {
                    let v = a.get(r, c);
                    if v != 0 {
                        let (row, col) = (ti * d + r, si * d + c);
                        m.set(row, col, f.add(m.get(row, col), sgn(i, v)));
                    }
                }
            }
        }
        // Σ_{i<j} (-1)^{i+j} f([x_i, x_j], ..x̂_i..x̂_j..)
        for i in 0..t.len() {
            for j in i + 1..t.len() {
                let br = l.bracket_basis(t[i], t[j]);
                let rest: Vec<usize> = t.iter().enumerate().filter(|&(q, _)| q != i && q != j).map(|(_, &x)| x).collect();
                for (c, &g) in br.iter().enumerate() {
                    if g == 0 || rest.contains(&c) {
                        continue;
                    }
                    let before = rest.iter().filter(|&&x| x < c).count();
                    let mut s = rest.clone();
                    s.insert(before, c);
                    let si = index[&s];
                    let coef = sgn(i + j + before, g);
                    for r in 0..d {
                        let (row, col) = (ti * d + r, si * d + r);
                        m.set(row, col, f.add(m.get(row, col), coef));
                    }
                }
            }
        }
    }
    m
}

/// `dim H^n(L, V)`.
pub fn cohomology_dim(rep: &Representation, n: usize) -> Result<usize> {
    Ok(CochainComplex::new(rep, n)?.dim(n))
}

/// Splitting of `v = c + a` along `C ⊕ A`, where `C` is spanned by the
/// coordinate vectors outside the pivots of `A`.
fn split_a(a: &Subspace, f: &crate::ff::Field, v: &[Elem]) -> Vec<Elem> {
    a.from_coords(f, &a.coords(v))
}

/// Affine solution space of complements to the abelian ideal `a`:
/// particular solution and kernel, in the coordinates of maps `C → A`.
fn complement_system(l: &LieAlgebra, a: &Subspace) -> Result<Option<(Vec<Elem>, Subspace, Vec<usize>)>> {
    if !l.is_ideal(a) || !l.is_abelian_subspace(a) {
        return Err(Error::NotClosed("an abelian ideal"));
    }
    let f = l.field();
    let np = a.non_pivots();
    let (nc, na) = (np.len(), a.dim());
    let nv = nc * na;
    if nv == 0 {
        return Ok(Some((vec![], Subspace::zero(0), np)));
    }
    // ad(e_j) row_k in A coordinates
    let act: Vec<Vec<Vec<Elem>>> = np
        .iter()
        .map(|&j| a.basis().iter().map(|r| a.coords(&l.ad_basis(j).apply(f, r))).collect())
        .collect();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for x in 0..nc {
        for y in x + 1..nc {
            let w = l.bracket_basis(np[x], np[y]);
            let wa = split_a(a, f, w);
            let wc = f.vsub(w, &wa);
            let b = a.coords(&wa);
            for r in 0..na {
                let mut row = vec![0; nv];
                for k in 0..na {
                    // [c_x, f c_y] - [c_y, f c_x]
                    row[y * na + k] = f.add(row[y * na + k], act[x][k][r]);
                    row[x * na + k] = f.sub(row[x * na + k], act[y][k][r]);
                }
                // - f(π_C [c_x, c_y])
                for (z, &j) in np.iter().enumerate() {
                    if wc[j] != 0 {
                        row[z * na + r] = f.sub(row[z * na + r], wc[j]);
                    }
                }
                rows.push(row);
                rhs.push(f.neg(b[r]));
            }
        }
    }
    if rows.is_empty() {
        return Ok(Some((vec![0; nv], Subspace::full(nv), np)));
    }
    let m = Matrix::from_rows(nv, &rows);
    Ok(m.solve(f, &rhs).map(|x| (x, m.kernel(f), np)))
}

fn complement_from(l: &LieAlgebra, a: &Subspace, np: &[usize], x: &[Elem]) -> Subspace {
    let f = l.field();
    let na = a.dim();
    let vecs: Vec<Vec<Elem>> = np
        .iter()
        .enumerate()
        .map(|(z, &j)| {
            let mut v = l.basis_vector(j);
            let fa = a.from_coords(f, &x[z * na..(z + 1) * na]);
            f.axpy(&mut v, 1, &fa);
            v
        })
        .collect();
    Subspace::span(f, l.dim(), &vecs)
}

/// A subalgebra complementing the abelian ideal `a`, if one exists.
pub fn complement_abelian_ideal(l: &LieAlgebra, a: &Subspace) -> Result<Option<Subspace>> {
    Ok(complement_system(l, a)?.map(|(x, _, np)| complement_from(l, a, &np, &x)))
}

/// Every complement to the abelian ideal `a`, sorted.
pub fn all_complements(l: &LieAlgebra, a: &Subspace, budget: u128) -> Result<Vec<Subspace>> {
    let f = l.field();
    let Some((x0, ker, np)) = complement_system(l, a)? else {
        return Ok(vec![]);
    };
    if (f.order() as u128).checked_pow(ker.dim() as u32).map_or(true, |c| c > budget) {
        return Err(Error::Capacity("too many complements to enumerate".into()));
    }
    let mut out: Vec<Subspace> = ker
        .elements(f)
        .map(|k| complement_from(l, a, &np, &f.vadd(&x0, &k)))
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// Least `x ∈ a` with `(1 + ad x) u1 = u2`.
pub fn conjugating_element(l: &LieAlgebra, a: &Subspace, u1: &Subspace, u2: &Subspace) -> Option<Vec<Elem>> {
    let f = l.field();
    if u1.dim() != u2.dim() {
        return None;
    }
    let na = a.dim();
    let np2 = u2.non_pivots();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for u in u1.basis() {
        // u + Σ α_k [row_k, u] ∈ u2
        let base = u2.reduce(f, u);
        let cols: Vec<Vec<Elem>> = a.basis().iter().map(|r| u2.reduce(f, &l.bracket(r, u))).collect();
        for &c in &np2 {
            rows.push((0..na).map(|k| cols[k][c]).collect::<Vec<Elem>>());
            rhs.push(f.neg(base[c]));
        }
    }
    let alpha = if na == 0 {
        if rhs.iter().all(|&c| c == 0) {
            vec![]
        } else {
            return None;
        }
    } else if rows.is_empty() {
        vec![0; na]
    } else {
        Matrix::from_rows(na, &rows).solve(f, &rhs)?
    };
    Some(a.from_coords(f, &alpha))
}

/// `1 + ad(x)`, certified to be an automorphism.
pub fn apply_alpha(l: &LieAlgebra, x: &[Elem]) -> Result<Matrix> {
    let f = l.field();
    let m = Matrix::identity(l.dim()).add(f, &l.ad(x));
    if m.rank(f) != l.dim() || !l.is_homomorphism(l, &m) {
        return Err(Error::Certificate("1 + ad(x) is not an automorphism".into()));
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::Field;

    fn gf(p: u32) -> Field {
        Field::prime(p).unwrap()
    }

    #[test]
    fn low_degree_examples() {
        let f = gf(3);
        let l = LieAlgebra::abelian(&f, 1);
        let v = Representation::trivial(&l, 1);
        assert_eq!(cohomology_dim(&v, 0).unwrap(), 1);
        assert_eq!(cohomology_dim(&v, 1).unwrap(), 1);
        let t = Representation::trivial(&LieAlgebra::abelian(&f, 3), 2);
        assert_eq!(cohomology_dim(&t, 0).unwrap(), 2);
    }

    #[test]
    fn abelian_trivial_cohomology_is_exterior_power() {
        // oracle: H^k(F^n, F) = Λ^k of the dual, dimension binom(n, k)
        let f = gf(2);
        let l = LieAlgebra::abelian(&f, 4);
        let c = CochainComplex::new(&Representation::trivial(&l, 1), 3).unwrap();
        assert!(c.is_complex());
        for k in 0..=3 {
            assert_eq!(c.dim(k), binom(4, k));
        }
    }

    #[test]
    fn d_squared_vanishes_on_adjoint_modules() {
        for p in [2, 3] {
            let f = gf(p);
            let l = LieAlgebra::new(&f, 3, &[(0, 1, vec![0, 1, 0]), (0, 2, vec![0, 0, 2 % p])]).unwrap();
            let c = CochainComplex::new(&Representation::adjoint(&l), 3).unwrap();
            assert!(c.is_complex());
            // H^0 of the adjoint module is the centre
            assert_eq!(c.dim(0), l.center().dim());
            // H^1 of the adjoint module is outer derivations
            assert_eq!(c.dim(1), l.derivations().len() - (l.dim() - l.center().dim()));
        }
    }

    #[test]
    fn heisenberg_centre_has_no_complement() {
        let f = gf(3);
        let l = LieAlgebra::new(&f, 3, &[(0, 1, vec![0, 0, 1])]).unwrap();
        assert_eq!(complement_abelian_ideal(&l, &l.center()).unwrap(), None);
    }

    #[test]
    fn split_extension_recovers_complement_and_conjugacy() {
        let f = gf(3);
        let l = LieAlgebra::new(&f, 2, &[(0, 1, vec![0, 1])]).unwrap();
        let a = Subspace::span(&f, 2, &[vec![0, 1]]);
        let m = complement_abelian_ideal(&l, &a).unwrap().unwrap();
        assert_eq!(m.dim(), 1);
        assert!(l.is_subalgebra(&m) && m.intersection(&f, &a).is_zero());
        let all = all_complements(&l, &a, 100).unwrap();
        assert_eq!(all.len(), 3);
        for u in &all {
            let x = conjugating_element(&l, &a, &m, u).unwrap();
            let alpha = apply_alpha(&l, &x).unwrap();
            assert_eq!(m.map(&f, &alpha), *u);
        }
        assert_eq!(conjugating_element(&l, &a, &m, &m), Some(vec![0, 0]));
    }
}
