use std::fmt;

use crate::error::{Error, Result};
use crate::ff::{Elem, Field, Matrix, Subspace};

/// Finite-dimensional Lie algebra given by structure constants.
#[derive(Clone)]
pub struct LieAlgebra {
    field: Field,
    dim: usize,
    labels: Vec<String>,
    // table[i*dim + j] = [e_i, e_j]
    table: Vec<Vec<Elem>>,
    ad: Vec<Matrix>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Closure {
    Subalgebra,
    Ideal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum SeriesKind {
    Derived,
    LowerCentral,
}

#[derive(Clone, Debug)]
pub struct SeriesReport {
    pub kind: SeriesKind,
    pub terms: Vec<Subspace>,
    /// The last term is fixed by one more step.
    pub stabilized: bool,
    /// The series reached zero.
    pub reaches_zero: bool,
}

/// Quotient algebra together with the coordinates it was built on.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub algebra: LieAlgebra,
    pub ideal: Subspace,
    /// Ambient coordinates that carry the quotient basis.
    pub columns: Vec<usize>,
}

impl Quotient {
    pub fn project(&self, v: &[Elem]) -> Vec<Elem> {
        self.ideal.quotient_coords(self.algebra.field(), v)
    }

    /// Representative of a quotient vector supported on the complement columns.
    pub fn section(&self, c: &[Elem]) -> Vec<Elem> {
        let mut v = vec![0; self.ideal.ambient()];
        for (&col, &x) in self.columns.iter().zip(c) {
            v[col] = x;
        }
        v
    }

    /// Preimage of a subspace of the quotient.
    pub fn lift(&self, s: &Subspace) -> Subspace {
        let f = self.algebra.field();
        let mut out = self.ideal.clone();
        for r in s.basis() {
            out.insert(f, &self.section(r));
        }
        out
    }

    pub fn project_space(&self, s: &Subspace) -> Subspace {
        let f = self.algebra.field();
        let vecs: Vec<Vec<Elem>> = s.basis().iter().map(|r| self.project(r)).collect();
        Subspace::span(f, self.columns.len(), &vecs)
    }
}

impl LieAlgebra {
    /// Builds an algebra from brackets `[e_i, e_j]` for `i < j`; omitted pairs are zero.
    pub fn new(field: &Field, dim: usize, brackets: &[(usize, usize, Vec<Elem>)]) -> Result<LieAlgebra> {
        let mut table = vec![vec![0; dim]; dim * dim];
        for (i, j, v) in brackets {
            let (i, j) = (*i, *j);
            if i >= dim || j >= dim || v.len() != dim {
                return Err(Error::Dimension(format!("bracket entry ({i},{j}) out of range")));
            }
            if v.iter().any(|&x| x >= field.order()) {
                return Err(Error::Parse("bracket coefficient outside the field".into()));
            }
            if i == j {
                if v.iter().any(|&x| x != 0) {
                    return Err(Error::Dimension(format!("nonzero self bracket at {i}")));
                }
                continue;
            }
            let neg: Vec<Elem> = v.iter().map(|&x| field.neg(x)).collect();
            let (a, b, va, vb) = if i < j { (i, j, v.clone(), neg) } else { (j, i, neg, v.clone()) };
            table[a * dim + b] = va;
            table[b * dim + a] = vb;
        }
        let l = LieAlgebra::from_table(field, dim, table);
        l.check_jacobi()?;
        Ok(l)
    }

    pub(crate) fn from_table(field: &Field, dim: usize, table: Vec<Vec<Elem>>) -> LieAlgebra {
        let ad = (0..dim)
            .map(|i| {
                let cols: Vec<Vec<Elem>> = (0..dim).map(|j| table[i * dim + j].clone()).collect();
                Matrix::from_cols(dim, &cols)
            })
            .collect();
        LieAlgebra {
            field: field.clone(),
            dim,
            labels: (0..dim).map(|i| format!("e{i}")).collect(),
            table,
            ad,
        }
    }

    /// Builds from an arbitrary bilinear bracket on basis vectors and validates.
    pub fn from_bracket_fn(
        field: &Field,
        dim: usize,
        br: impl Fn(usize, usize) -> Vec<Elem>,
    ) -> Result<LieAlgebra> {
        let mut entries = Vec::new();
        for i in 0..dim {
            for j in i + 1..dim {
                let v = br(i, j);
                if v.iter().any(|&x| x != 0) {
                    entries.push((i, j, v));
                }
            }
        }
        LieAlgebra::new(field, dim, &entries)
    }

    pub fn abelian(field: &Field, dim: usize) -> LieAlgebra {
        LieAlgebra::from_table(field, dim, vec![vec![0; dim]; dim * dim])
    }

    pub fn with_labels(mut self, labels: &[&str]) -> LieAlgebra {
        if labels.len() == self.dim {
            self.labels = labels.iter().map(|s| s.to_string()).collect();
        }
        self
    }
    pub fn set_labels(&mut self, labels: Vec<String>) {
        if labels.len() == self.dim {
            self.labels = labels;
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn labels(&self) -> &[String] {
        &self.labels
    }
    pub fn label_index(&self, name: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == name)
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Elem> {
        let mut v = vec![0; self.dim];
        v[i] = 1;
        v
    }
    pub fn zero_vector(&self) -> Vec<Elem> {
        vec![0; self.dim]
    }
    pub fn whole(&self) -> Subspace {
        Subspace::full(self.dim)
    }

    /// `[e_i, e_j]`.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &[Elem] {
        &self.table[i * self.dim + j]
    }

    pub fn bracket(&self, x: &[Elem], y: &[Elem]) -> Vec<Elem> {
        let f = &self.field;
        let mut out = vec![0; self.dim];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                if yj == 0 || i == j {
                    continue;
                }
                f.axpy(&mut out, f.mul(xi, yj), &self.table[i * self.dim + j]);
            }
        }
        out
    }

    pub fn ad_basis(&self, i: usize) -> &Matrix {
        &self.ad[i]
    }

    pub fn ad(&self, x: &[Elem]) -> Matrix {
        let mut m = Matrix::zero(self.dim, self.dim);
        for (i, &xi) in x.iter().enumerate() {
            if xi != 0 {
                m.axpy(&self.field, xi, &self.ad[i]);
            }
        }
        m
    }

    pub fn is_abelian(&self) -> bool {
        self.table.iter().all(|v| v.iter().all(|&x| x == 0))
    }

    fn check_jacobi(&self) -> Result<()> {
        let f = &self.field;
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                for k in j + 1..self.dim {
                    let (a, b, c) = (self.basis_vector(i), self.basis_vector(j), self.basis_vector(k));
                    let t1 = self.bracket(&a, &self.bracket(&b, &c));
                    let t2 = self.bracket(&b, &self.bracket(&c, &a));
                    let t3 = self.bracket(&c, &self.bracket(&a, &b));
                    let s = f.vadd(&f.vadd(&t1, &t2), &t3);
                    if s.iter().any(|&x| x != 0) {
                        return Err(Error::Jacobi(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    /// Structure constants `[e_i, e_j]` for `i < j`, omitting zeros.
    pub fn brackets(&self) -> Vec<(usize, usize, Vec<Elem>)> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                let v = &self.table[i * self.dim + j];
                if v.iter().any(|&x| x != 0) {
                    out.push((i, j, v.clone()));
                }
            }
        }
        out
    }

    pub fn same_structure(&self, o: &LieAlgebra) -> bool {
        self.field == o.field && self.dim == o.dim && self.table == o.table
    }

    /// `[A, B]` as a subspace.
    pub fn product(&self, a: &Subspace, b: &Subspace) -> Subspace {
        let mut s = Subspace::zero(self.dim);
        for x in a.basis() {
            for y in b.basis() {
                s.insert(&self.field, &self.bracket(x, y));
                if s.is_full() {
                    return s;
                }
            }
        }
        s
    }

    pub fn derived_algebra(&self) -> Subspace {
        self.product(&self.whole(), &self.whole())
    }

    pub fn is_subalgebra(&self, s: &Subspace) -> bool {
        let b = s.basis();
        for i in 0..b.len() {
            for j in i + 1..b.len() {
                if !s.contains(&self.field, &self.bracket(&b[i], &b[j])) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_ideal(&self, s: &Subspace) -> bool {
        s.basis().iter().all(|x| {
            (0..self.dim).all(|i| s.contains(&self.field, &self.ad[i].apply(&self.field, x)))
        })
    }

    /// Whether brackets of members of `s` vanish.
    pub fn is_abelian_subspace(&self, s: &Subspace) -> bool {
        let b = s.basis();
        (0..b.len()).all(|i| (i + 1..b.len()).all(|j| self.bracket(&b[i], &b[j]).iter().all(|&x| x == 0)))
    }

    /// Smallest subalgebra or ideal containing `s`.
    pub fn closure(&self, s: &Subspace, mode: Closure) -> Subspace {
        let f = &self.field;
        let mut out = s.clone();
        let mut queue: Vec<Vec<Elem>> = s.basis().to_vec();
        let mut all: Vec<Vec<Elem>> = s.basis().to_vec();
        while let Some(x) = queue.pop() {
            if out.is_full() {
                break;
            }
            match mode {
                Closure::Ideal => {
                    for i in 0..self.dim {
                        let y = self.ad[i].apply(f, &x);
                        if out.insert(f, &y) {
                            queue.push(y.clone());
                        }
                    }
                }
                Closure::Subalgebra => {
                    let snapshot = all.clone();
                    for y in &snapshot {
                        let z = self.bracket(&x, y);
                        if out.insert(f, &z) {
                            queue.push(z.clone());
                            all.push(z);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn subalgebra_closure(&self, s: &Subspace) -> Subspace {
        self.closure(s, Closure::Subalgebra)
    }
    pub fn ideal_closure(&self, s: &Subspace) -> Subspace {
        self.closure(s, Closure::Ideal)
    }

    /// `C_L(A) = {x : [x, A] = 0}`.
    pub fn centralizer(&self, a: &Subspace) -> Subspace {
        let f = &self.field;
        let n = self.dim;
        // rows: for each basis vector of A, the map x ↦ [x, a] = -ad(a) x
        let mut rows = Vec::new();
        for v in a.basis() {
            let m = self.ad(v);
            rows.extend(m.row_vecs());
        }
        if rows.is_empty() {
            return self.whole();
        }
        Matrix::from_rows(n, &rows).kernel(f)
    }

    pub fn center(&self) -> Subspace {
        self.centralizer(&self.whole())
    }

    /// `N_L(U) = {x : [x, U] ⊆ U}`.
    pub fn normalizer(&self, u: &Subspace) -> Subspace {
        let f = &self.field;
        let n = self.dim;
        let np = u.non_pivots();
        if np.is_empty() {
            return self.whole();
        }
        // x ↦ reduction of [u_k, x] modulo U, restricted to non-pivot columns
        let mut rows = Vec::new();
        for v in u.basis() {
            let m = self.ad(v);
            // columns of m are [v, e_j]; reduce each column modulo U
            let reduced: Vec<Vec<Elem>> = (0..n).map(|j| u.reduce(f, &m.col(j))).collect();
            for &c in &np {
                rows.push((0..n).map(|j| reduced[j][c]).collect());
            }
        }
        if rows.is_empty() {
            return self.whole();
        }
        Matrix::from_rows(n, &rows).kernel(f)
    }

    pub fn series(&self, kind: SeriesKind) -> SeriesReport {
        let mut terms = vec![self.whole()];
        loop {
            let last = terms.last().unwrap();
            let next = match kind {
                SeriesKind::Derived => self.product(last, last),
                SeriesKind::LowerCentral => self.product(&self.whole(), last),
            };
            if &next == last {
                break;
            }
            let zero = next.is_zero();
            terms.push(next);
            if zero {
                break;
            }
        }
        let reaches_zero = terms.last().unwrap().is_zero();
        SeriesReport {
            kind,
            terms,
            stabilized: true,
            reaches_zero,
        }
    }

    pub fn is_soluble(&self) -> bool {
        self.series(SeriesKind::Derived).reaches_zero
    }
    pub fn is_nilpotent(&self) -> bool {
        self.series(SeriesKind::LowerCentral).reaches_zero
    }

    /// Intersection of the lower central series.
    pub fn nilpotent_residual_ordinary(&self) -> Subspace {
        self.series(SeriesKind::LowerCentral).terms.last().unwrap().clone()
    }

    /// Fitting null component of `ad(a)`.
    pub fn engel(&self, a: &[Elem]) -> Subspace {
        let f = &self.field;
        self.ad(a).pow(f, self.dim.max(1) as u64).kernel(f)
    }

    pub fn quotient(&self, ideal: &Subspace) -> Result<Quotient> {
        if !self.is_ideal(ideal) {
            return Err(Error::NotClosed("an ideal"));
        }
        Ok(self.quotient_unchecked(ideal))
    }

    pub(crate) fn quotient_unchecked(&self, ideal: &Subspace) -> Quotient {
        let f = &self.field;
        let cols = ideal.non_pivots();
        let k = cols.len();
        let mut table = vec![vec![0; k]; k * k];
        for (a, &ca) in cols.iter().enumerate() {
            for (b, &cb) in cols.iter().enumerate() {
                if a != b {
                    table[a * k + b] = ideal.quotient_coords(f, self.bracket_basis(ca, cb));
                }
            }
        }
        let mut q = LieAlgebra::from_table(f, k, table);
        q.labels = cols.iter().map(|&c| self.labels[c].clone()).collect();
        Quotient {
            algebra: q,
            ideal: ideal.clone(),
            columns: cols,
        }
    }

    /// The subalgebra `s` as an algebra in the coordinates of its stored basis.
    pub fn restrict(&self, s: &Subspace) -> Result<LieAlgebra> {
        if !self.is_subalgebra(s) {
            return Err(Error::NotClosed("a subalgebra"));
        }
        let f = &self.field;
        let b = s.basis();
        let k = b.len();
        let mut table = vec![vec![0; k]; k * k];
        for i in 0..k {
            for j in 0..k {
                if i != j {
                    table[i * k + j] = s.coords(&self.bracket(&b[i], &b[j]));
                }
            }
        }
        let mut r = LieAlgebra::from_table(f, k, table);
        r.labels = s
            .pivots()
            .iter()
            .map(|&c| self.labels[c].clone())
            .collect();
        Ok(r)
    }

    pub fn direct_sum(&self, o: &LieAlgebra) -> Result<LieAlgebra> {
        if self.field != o.field {
            return Err(Error::FieldMismatch);
        }
        let (n1, n2) = (self.dim, o.dim);
        let n = n1 + n2;
        let mut table = vec![vec![0; n]; n * n];
        for i in 0..n1 {
            for j in 0..n1 {
                table[i * n + j][..n1].copy_from_slice(self.bracket_basis(i, j));
            }
        }
        for i in 0..n2 {
            for j in 0..n2 {
                table[(n1 + i) * n + n1 + j][n1..].copy_from_slice(o.bracket_basis(i, j));
            }
        }
        let mut r = LieAlgebra::from_table(&self.field, n, table);
        r.labels = self.labels.iter().chain(o.labels.iter()).cloned().collect();
        Ok(r)
    }

    /// Basis of the derivation algebra, as matrices.
    pub fn derivations(&self) -> Vec<Matrix> {
        let f = &self.field;
        let n = self.dim;
        // unknown D has entries d[r][c] at index r*n + c; D e_c = sum_r d[r][c] e_r
        let nv = n * n;
        let mut rows: Vec<Vec<Elem>> = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                // D[e_i,e_j] - [D e_i, e_j] - [e_i, D e_j] = 0, one equation per output coordinate k
                let bij = self.bracket_basis(i, j);
                for k in 0..n {
                    let mut row = vec![0; nv];
                    for (c, &bc) in bij.iter().enumerate() {
                        if bc != 0 {
                            row[k * n + c] = f.add(row[k * n + c], bc);
                        }
                    }
                    for r in 0..n {
                        // [e_r, e_j]_k contributes -d[r][i]
                        let a = self.bracket_basis(r, j)[k];
                        if a != 0 {
                            row[r * n + i] = f.sub(row[r * n + i], a);
                        }
                        let b = self.bracket_basis(i, r)[k];
                        if b != 0 {
                            row[r * n + j] = f.sub(row[r * n + j], b);
                        }
                    }
                    if row.iter().any(|&x| x != 0) {
                        rows.push(row);
                    }
                }
            }
        }
        let ker = if rows.is_empty() {
            Subspace::full(nv)
        } else {
            Matrix::from_rows(nv, &rows).kernel(f)
        };
        ker.basis()
            .iter()
            .map(|v| Matrix::from_flat(n, n, v.clone()))
            .collect()
    }

    pub fn is_derivation(&self, d: &Matrix) -> bool {
        let f = &self.field;
        (0..self.dim).all(|i| {
            (i + 1..self.dim).all(|j| {
                let lhs = d.apply(f, self.bracket_basis(i, j));
                let r1 = self.bracket(&d.col(i), &self.basis_vector(j));
                let r2 = self.bracket(&self.basis_vector(i), &d.col(j));
                lhs == f.vadd(&r1, &r2)
            })
        })
    }

    /// Whether the linear map with matrix `m` (columns are images of basis
    /// vectors of `self`) is a homomorphism into `target`.
    pub fn is_homomorphism(&self, target: &LieAlgebra, m: &Matrix) -> bool {
        let f = &self.field;
        (0..self.dim).all(|i| {
            (i + 1..self.dim).all(|j| {
                let lhs = m.apply(f, self.bracket_basis(i, j));
                lhs == target.bracket(&m.col(i), &m.col(j))
            })
        })
    }

    pub fn format_vector(&self, v: &[Elem]) -> String {
        let f = &self.field;
        let mut parts = Vec::new();
        for (i, &c) in v.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let coef = if c == 1 {
                String::new()
            } else if f.is_prime_field() {
                format!("{c}")
            } else {
                format!("{:?}", f.coeffs(c))
            };
            parts.push(format!("{coef}{}", self.labels[i]));
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    pub fn format_subspace(&self, s: &Subspace) -> String {
        let parts: Vec<String> = s.basis().iter().map(|v| self.format_vector(v)).collect();
        format!("<{}>", parts.join(", "))
    }
}

impl PartialEq for LieAlgebra {
    fn eq(&self, o: &LieAlgebra) -> bool {
        self.same_structure(o)
    }
}
impl Eq for LieAlgebra {}

impl fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LieAlgebra(dim {}, {:?}", self.dim, self.field)?;
        for (i, j, v) in self.brackets() {
            write!(f, ", [{},{}]={}", self.labels[i], self.labels[j], self.format_vector(&v))?;
        }
        write!(f, ")")
    }
}
