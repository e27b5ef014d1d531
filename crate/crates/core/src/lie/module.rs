use crate::error::{Error, Result};
use crate::ff::{Elem, Field, Matrix, Subspace};

use super::algebra::LieAlgebra;
use super::lattice::{closed_sets, minimal_closed, DEFAULT_BUDGET};

/// A finite-dimensional module given by one matrix per basis vector.
#[derive(Clone, Debug)]
pub struct Representation {
    algebra: LieAlgebra,
    dim: usize,
    action: Vec<Matrix>,
}

impl Representation {
    pub fn new(algebra: &LieAlgebra, dim: usize, action: Vec<Matrix>) -> Result<Representation> {
        if action.len() != algebra.dim() {
            return Err(Error::Representation(format!(
                "expected {} matrices, got {}",
                algebra.dim(),
                action.len()
            )));
        }
        if action.iter().any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(Error::Representation("matrix of the wrong size".into()));
        }
        let r = Representation {
            algebra: algebra.clone(),
            dim,
            action,
        };
        let f = algebra.field();
        for i in 0..algebra.dim() {
            for j in i + 1..algebra.dim() {
                let lhs = r.act(algebra.bracket_basis(i, j));
                let rhs = r.action[i].commutator(f, &r.action[j]);
                if lhs != rhs {
                    return Err(Error::Representation(format!(
                        "bracket of basis vectors {i} and {j} is not preserved"
                    )));
                }
            }
        }
        Ok(r)
    }

    pub fn trivial(algebra: &LieAlgebra, dim: usize) -> Representation {
        Representation {
            algebra: algebra.clone(),
            dim,
            action: vec![Matrix::zero(dim, dim); algebra.dim()],
        }
    }

    pub fn adjoint(algebra: &LieAlgebra) -> Representation {
        Representation {
            algebra: algebra.clone(),
            dim: algebra.dim(),
            action: (0..algebra.dim()).map(|i| algebra.ad_basis(i).clone()).collect(),
        }
    }

    /// The action of `algebra` on an ideal `a` of a larger algebra `big`,
    /// where `algebra` is the quotient `big / c` for an ideal `c ⊇`
    /// centralizer of `a`; `lift` gives representatives in `big`.
    pub fn from_action_on(
        algebra: &LieAlgebra,
        big: &LieAlgebra,
        a: &Subspace,
        lift: impl Fn(usize) -> Vec<Elem>,
    ) -> Result<Representation> {
        let f = big.field();
        let action = (0..algebra.dim())
            .map(|i| {
                let x = lift(i);
                let cols: Vec<Vec<Elem>> = a.basis().iter().map(|v| a.coords(&big.bracket(&x, v))).collect();
                Matrix::from_cols(a.dim(), &cols)
            })
            .collect();
        let _ = f;
        Representation::new(algebra, a.dim(), action)
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }
    pub fn field(&self) -> &Field {
        self.algebra.field()
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn action(&self, i: usize) -> &Matrix {
        &self.action[i]
    }
    pub fn actions(&self) -> &[Matrix] {
        &self.action
    }

    /// `ρ(x)`.
    pub fn act(&self, x: &[Elem]) -> Matrix {
        let f = self.field();
        let mut m = Matrix::zero(self.dim, self.dim);
        for (i, &c) in x.iter().enumerate() {
            if c != 0 {
                m.axpy(f, c, &self.action[i]);
            }
        }
        m
    }

    pub fn is_trivial(&self) -> bool {
        self.action.iter().all(|m| m.is_zero())
    }

    /// `V^L`.
    pub fn invariants(&self) -> Subspace {
        let rows: Vec<Vec<Elem>> = self.action.iter().flat_map(|m| m.row_vecs()).collect();
        if rows.is_empty() {
            return Subspace::full(self.dim);
        }
        Matrix::from_rows(self.dim, &rows).kernel(self.field())
    }

    /// Submodule generated by `s`.
    pub fn spin(&self, s: &Subspace) -> Subspace {
        let f = self.field();
        let mut out = s.clone();
        let mut queue: Vec<Vec<Elem>> = s.basis().to_vec();
        while let Some(v) = queue.pop() {
            if out.is_full() {
                break;
            }
            for m in &self.action {
                let w = m.apply(f, &v);
                if out.insert(f, &w) {
                    queue.push(w);
                }
            }
        }
        out
    }

    pub fn is_submodule(&self, s: &Subspace) -> bool {
        let f = self.field();
        s.basis()
            .iter()
            .all(|v| self.action.iter().all(|m| s.contains(f, &m.apply(f, v))))
    }

    /// All submodules in ascending order.
    pub fn submodules(&self, budget: u128) -> Result<Vec<Subspace>> {
        closed_sets(self.field(), &Subspace::zero(self.dim), &|s| self.spin(s), budget)
    }

    pub fn minimal_submodules(&self) -> Vec<Subspace> {
        minimal_closed(self.field(), &Subspace::full(self.dim), &|s| self.spin(s))
    }

    pub fn is_irreducible(&self) -> bool {
        if self.dim == 0 {
            return false;
        }
        let f = self.field();
        let full = Subspace::full(self.dim);
        full.points(f).all(|v| self.spin(&Subspace::span(f, self.dim, &[v])).is_full())
    }

    /// Module on `upper / lower` in reduced coordinates.
    pub fn subquotient(&self, upper: &Subspace, lower: &Subspace) -> Result<Representation> {
        let f = self.field();
        if !self.is_submodule(upper) || !self.is_submodule(lower) || !upper.contains_space(f, lower) {
            return Err(Error::NotClosed("a pair of nested submodules"));
        }
        let reduced: Vec<Vec<Elem>> = upper.basis().iter().map(|v| lower.reduce(f, v)).collect();
        let slice = Subspace::span(f, self.dim, &reduced);
        let k = slice.dim();
        let action = self
            .action
            .iter()
            .map(|m| {
                let cols: Vec<Vec<Elem>> = slice
                    .basis()
                    .iter()
                    .map(|w| slice.coords(&lower.reduce(f, &m.apply(f, w))))
                    .collect();
                Matrix::from_cols(k, &cols)
            })
            .collect();
        Ok(Representation {
            algebra: self.algebra.clone(),
            dim: k,
            action,
        })
    }

    /// Ascending composition series built from least minimal submodules.
    pub fn composition_series(&self) -> Vec<Subspace> {
        let f = self.field();
        let mut series = vec![Subspace::zero(self.dim)];
        loop {
            let cur = series.last().unwrap().clone();
            if cur.is_full() {
                break;
            }
            let q = self.subquotient(&Subspace::full(self.dim), &cur).expect("submodule");
            let m = q.minimal_submodules().into_iter().next().expect("nonzero module");
            // lift along the slice coordinates used by subquotient
            let reduced: Vec<Vec<Elem>> = Subspace::full(self.dim)
                .basis()
                .iter()
                .map(|v| cur.reduce(f, v))
                .collect();
            let slice = Subspace::span(f, self.dim, &reduced);
            let mut next = cur.clone();
            for r in m.basis() {
                next.insert(f, &slice.from_coords(f, r));
            }
            series.push(next);
        }
        series
    }

    pub fn composition_factors(&self) -> Vec<Representation> {
        let s = self.composition_series();
        s.windows(2)
            .map(|w| self.subquotient(&w[1], &w[0]).expect("series terms are submodules"))
            .collect()
    }

    fn check_compatible(&self, o: &Representation) -> Result<()> {
        if self.field() != o.field() {
            return Err(Error::FieldMismatch);
        }
        if !self.algebra.same_structure(&o.algebra) {
            return Err(Error::Representation("modules for different algebras".into()));
        }
        Ok(())
    }

    pub fn direct_sum(&self, o: &Representation) -> Result<Representation> {
        self.check_compatible(o)?;
        let n = self.dim + o.dim;
        let action = self
            .action
            .iter()
            .zip(&o.action)
            .map(|(a, b)| {
                let mut m = Matrix::zero(n, n);
                for i in 0..self.dim {
                    for j in 0..self.dim {
                        m.set(i, j, a.get(i, j));
                    }
                }
                for i in 0..o.dim {
                    for j in 0..o.dim {
                        m.set(self.dim + i, self.dim + j, b.get(i, j));
                    }
                }
                m
            })
            .collect();
        Ok(Representation {
            algebra: self.algebra.clone(),
            dim: n,
            action,
        })
    }

    /// `V ⊗ W` with basis `v_i ⊗ w_j` at index `i * dim W + j`.
    pub fn tensor(&self, o: &Representation) -> Result<Representation> {
        self.check_compatible(o)?;
        let f = self.field();
        let (iv, iw) = (Matrix::identity(self.dim), Matrix::identity(o.dim));
        let action = self
            .action
            .iter()
            .zip(&o.action)
            .map(|(a, b)| a.kron(f, &iw).add(f, &iv.kron(f, b)))
            .collect();
        Ok(Representation {
            algebra: self.algebra.clone(),
            dim: self.dim * o.dim,
            action,
        })
    }

    /// `Hom(V, W)` with `f` stored row-major as a `dim W × dim V` matrix.
    pub fn hom(&self, o: &Representation) -> Result<Representation> {
        self.check_compatible(o)?;
        let f = self.field();
        let (iv, iw) = (Matrix::identity(self.dim), Matrix::identity(o.dim));
        let action = self
            .action
            .iter()
            .zip(&o.action)
            .map(|(a, b)| b.kron(f, &iv).sub(f, &iw.kron(f, &a.transpose())))
            .collect();
        Ok(Representation {
            algebra: self.algebra.clone(),
            dim: self.dim * o.dim,
            action,
        })
    }

    pub fn dual(&self) -> Representation {
        let f = self.field();
        Representation {
            algebra: self.algebra.clone(),
            dim: self.dim,
            action: self.action.iter().map(|m| m.transpose().scale(f, f.neg(1))).collect(),
        }
    }

    /// Restriction to a subalgebra, as a module for `L.restrict(u)`.
    pub fn restrict(&self, u: &Subspace) -> Result<Representation> {
        let sub = self.algebra.restrict(u)?;
        let action = u.basis().iter().map(|v| self.act(v)).collect();
        Ok(Representation {
            algebra: sub,
            dim: self.dim,
            action,
        })
    }

    /// Pull back along a homomorphism `phi: source → self.algebra`.
    pub fn pullback(&self, source: &LieAlgebra, phi: &Matrix) -> Result<Representation> {
        let action = (0..source.dim()).map(|i| self.act(&phi.col(i))).collect();
        Representation::new(source, self.dim, action)
    }

    /// An invertible `T` with `T ρ₁(x) = ρ₂(x) T` for all `x`, if any.
    pub fn isomorphism(&self, o: &Representation) -> Result<Option<Matrix>> {
        self.check_compatible(o)?;
        if self.dim != o.dim {
            return Ok(None);
        }
        let f = self.field();
        let n = self.dim;
        if n == 0 {
            return Ok(Some(Matrix::zero(0, 0)));
        }
        let cps = |r: &Representation| -> Vec<_> { r.action.iter().map(|m| m.char_poly(f)).collect() };
        if cps(self) != cps(o) {
            return Ok(None);
        }
        // T ρ₁ − ρ₂ T = 0 in row-major vec(T)
        let mut rows = Vec::new();
        let id = Matrix::identity(n);
        for (a, b) in self.action.iter().zip(&o.action) {
            let m = id.kron(f, &a.transpose()).sub(f, &b.kron(f, &id));
            rows.extend(m.row_vecs());
        }
        let sol = Matrix::from_rows(n * n, &rows).kernel(f);
        if (f.order() as f64).powi(sol.dim() as i32) > DEFAULT_BUDGET as f64 {
            return Err(Error::Capacity(format!(
                "intertwiner space of dimension {} is too large",
                sol.dim()
            )));
        }
        for v in sol.elements(f) {
            let t = Matrix::from_flat(n, n, v);
            if t.rank(f) == n {
                return Ok(Some(t));
            }
        }
        Ok(None)
    }

    pub fn is_isomorphic(&self, o: &Representation) -> Result<bool> {
        Ok(self.isomorphism(o)?.is_some())
    }
}

impl LieAlgebra {
    /// `V ⊕ L` with `V` first, `[x, v] = ρ(x) v` and `V` abelian.
    pub fn split_extension(&self, rep: &Representation) -> Result<LieAlgebra> {
        if !rep.algebra().same_structure(self) {
            return Err(Error::Representation("module for a different algebra".into()));
        }
        let f = self.field();
        let (dv, dl) = (rep.dim(), self.dim());
        let n = dv + dl;
        let mut table = vec![vec![0; n]; n * n];
        for i in 0..dl {
            for j in 0..dl {
                table[(dv + i) * n + dv + j][dv..].copy_from_slice(self.bracket_basis(i, j));
            }
            for k in 0..dv {
                let col = rep.action(i).col(k);
                let neg: Vec<Elem> = col.iter().map(|&x| f.neg(x)).collect();
                table[(dv + i) * n + k][..dv].copy_from_slice(&col);
                table[k * n + dv + i][..dv].copy_from_slice(&neg);
            }
        }
        let mut out = LieAlgebra::from_table(f, n, table);
        let mut labels: Vec<String> = (0..dv).map(|k| format!("v{k}")).collect();
        labels.extend(self.labels().iter().cloned());
        out.set_labels(labels);
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u32) -> Field {
        Field::prime(p).unwrap()
    }

    // S = <x, y> with [x, y] = y acting on V = <v_0..v_{p-1}>, x v_i = i v_i, y v_i = v_{i+1}
    fn q_module(p: u32) -> Representation {
        let f = gf(p);
        let n = p as usize;
        let s = LieAlgebra::new(&f, 2, &[(0, 1, vec![0, 1])]).unwrap();
        let mut x = Matrix::zero(n, n);
        let mut y = Matrix::zero(n, n);
        for i in 0..n {
            x.set(i, i, f.from_int(i as i64));
            y.set((i + 1) % n, i, 1);
        }
        Representation::new(&s, n, vec![x, y]).unwrap()
    }

    #[test]
    fn q_module_is_irreducible() {
        let v = q_module(3);
        assert!(v.is_irreducible());
        assert_eq!(v.submodules(DEFAULT_BUDGET).unwrap().len(), 2);
        assert_eq!(v.composition_factors().len(), 1);
    }

    #[test]
    fn trivial_tensor_is_identity() {
        let v = q_module(3);
        let t = Representation::trivial(v.algebra(), 1);
        let w = t.tensor(&v).unwrap();
        assert!(w.is_isomorphic(&v).unwrap());
    }

    #[test]
    fn identity_is_invariant_in_endomorphisms() {
        let v = q_module(3);
        let h = v.hom(&v).unwrap();
        let id = Matrix::identity(3).flatten();
        assert!(h.invariants().contains(v.field(), &id));
        assert_eq!(h.invariants().dim(), 1);
    }

    #[test]
    fn bad_action_is_rejected() {
        let f = gf(2);
        let s = LieAlgebra::new(&f, 2, &[(0, 1, vec![0, 1])]).unwrap();
        let m = Matrix::identity(1);
        assert!(Representation::new(&s, 1, vec![Matrix::zero(1, 1), m]).is_err());
    }

    #[test]
    fn split_extension_with_zero_action_is_direct_sum() {
        let f = gf(3);
        let s = LieAlgebra::new(&f, 2, &[(0, 1, vec![0, 1])]).unwrap();
        let t = Representation::trivial(&s, 2);
        let e = s.split_extension(&t).unwrap();
        let d = LieAlgebra::abelian(&f, 2).direct_sum(&s).unwrap();
        assert_eq!(e, d);
    }

    #[test]
    fn composition_factors_of_a_uniserial_module() {
        // Jordan block for a 1-dim algebra: 0 < <e0> < V, trivial factors
        let f = gf(2);
        let l = LieAlgebra::abelian(&f, 1);
        let j = Matrix::from_rows(2, &[vec![0, 1], vec![0, 0]]);
        let v = Representation::new(&l, 2, vec![j]).unwrap();
        assert_eq!(v.submodules(DEFAULT_BUDGET).unwrap().len(), 3);
        let cf = v.composition_factors();
        assert_eq!(cf.len(), 2);
        assert!(cf.iter().all(|c| c.is_trivial()));
        assert_eq!(v.dual().submodules(DEFAULT_BUDGET).unwrap().len(), 3);
    }
}
