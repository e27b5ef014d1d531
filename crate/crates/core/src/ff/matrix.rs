use std::fmt;

use super::field::{Elem, Field};
use super::poly::Poly;
use super::subspace::Subspace;

/// Dense matrix over a finite field, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

/// Result of a row reduction.
#[derive(Clone, Debug)]
pub struct Rref {
    pub reduced: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
    /// `transform * original = reduced`.
    pub transform: Matrix,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }
    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }
    pub fn from_rows(cols: usize, rows: &[Vec<Elem>]) -> Matrix {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            data.extend_from_slice(r);
        }
        Matrix {
            rows: rows.len(),
            cols,
            data,
        }
    }
    /// Matrix whose columns are the given vectors.
    pub fn from_cols(rows: usize, cols: &[Vec<Elem>]) -> Matrix {
        let mut m = Matrix::zero(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for i in 0..rows {
                m.data[i * cols.len() + j] = c[i];
            }
        }
        m
    }
    pub fn from_flat(rows: usize, cols: usize, data: Vec<Elem>) -> Matrix {
        assert_eq!(data.len(), rows * cols);
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }
    pub fn data(&self) -> &[Elem] {
        &self.data
    }
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.data[i * self.cols + j]
    }
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        self.data[i * self.cols + j] = v;
    }
    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }
    pub fn col(&self, j: usize) -> Vec<Elem> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }
    pub fn row_vecs(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    pub fn add(&self, f: &Field, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: f.vadd(&self.data, &o.data),
        }
    }
    pub fn sub(&self, f: &Field, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: f.vsub(&self.data, &o.data),
        }
    }
    pub fn scale(&self, f: &Field, c: Elem) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: f.scale(c, &self.data),
        }
    }
    /// `self += c * o`.
    pub fn axpy(&mut self, f: &Field, c: Elem, o: &Matrix) {
        f.axpy(&mut self.data, c, &o.data);
    }

    pub fn mul(&self, f: &Field, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.rows, "matrix product shape mismatch");
        let mut r = Matrix::zero(self.rows, o.cols);
        for i in 0..self.rows {
            let out = &mut r.data[i * o.cols..(i + 1) * o.cols];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a != 0 {
                    f.axpy(out, a, o.row(k));
                }
            }
        }
        r
    }

    /// Matrix times column vector.
    pub fn apply(&self, f: &Field, v: &[Elem]) -> Vec<Elem> {
        assert_eq!(self.cols, v.len());
        (0..self.rows).map(|i| f.dot(self.row(i), v)).collect()
    }

    /// Row vector times matrix.
    pub fn apply_left(&self, f: &Field, v: &[Elem]) -> Vec<Elem> {
        assert_eq!(self.rows, v.len());
        let mut out = vec![0; self.cols];
        for (i, &a) in v.iter().enumerate() {
            f.axpy(&mut out, a, self.row(i));
        }
        out
    }

    pub fn pow(&self, f: &Field, mut e: u64) -> Matrix {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(f, &base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(f, &base);
            }
        }
        acc
    }

    /// `[A, B] = AB - BA`.
    pub fn commutator(&self, f: &Field, o: &Matrix) -> Matrix {
        self.mul(f, o).sub(f, &o.mul(f, self))
    }

    pub fn rref(&self, f: &Field) -> Rref {
        let mut a = self.clone();
        let mut t = Matrix::identity(self.rows);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(piv) = (r..self.rows).find(|&i| a.get(i, c) != 0) else {
                continue;
            };
            a.swap_rows(r, piv);
            t.swap_rows(r, piv);
            let inv = f.inv(a.get(r, c));
            a.scale_row(f, r, inv);
            t.scale_row(f, r, inv);
            for i in 0..self.rows {
                if i != r {
                    let m = a.get(i, c);
                    if m != 0 {
                        let nm = f.neg(m);
                        a.add_row_multiple(f, i, r, nm);
                        t.add_row_multiple(f, i, r, nm);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref {
            reduced: a,
            rank: r,
            pivots,
            transform: t,
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            for c in 0..self.cols {
                self.data.swap(i * self.cols + c, j * self.cols + c);
            }
        }
    }
    fn scale_row(&mut self, f: &Field, i: usize, s: Elem) {
        for x in &mut self.data[i * self.cols..(i + 1) * self.cols] {
            *x = f.mul(*x, s);
        }
    }
    // row_i += s * row_j
    fn add_row_multiple(&mut self, f: &Field, i: usize, j: usize, s: Elem) {
        let cols = self.cols;
        for c in 0..cols {
            let v = self.data[j * cols + c];
            if v != 0 {
                self.data[i * cols + c] = f.add(self.data[i * cols + c], f.mul(s, v));
            }
        }
    }

    pub fn rank(&self, f: &Field) -> usize {
        self.rref(f).rank
    }

    /// Row space as a canonical subspace.
    pub fn row_space(&self, f: &Field) -> Subspace {
        Subspace::span(f, self.cols, &self.row_vecs())
    }

    /// `{x : A x = 0}`.
    pub fn kernel(&self, f: &Field) -> Subspace {
        let r = self.rref(f);
        let free: Vec<usize> = (0..self.cols).filter(|c| !r.pivots.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &j in &free {
            let mut v = vec![0; self.cols];
            v[j] = 1;
            for (i, &pc) in r.pivots.iter().enumerate() {
                v[pc] = f.neg(r.reduced.get(i, j));
            }
            basis.push(v);
        }
        Subspace::span(f, self.cols, &basis)
    }

    /// Column space `{A x}`.
    pub fn image(&self, f: &Field) -> Subspace {
        self.transpose().row_space(f)
    }

    /// Lexicographically least `x` with `A x = b`, or `None` when inconsistent.
    pub fn solve(&self, f: &Field, b: &[Elem]) -> Option<Vec<Elem>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Matrix::zero(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, self.cols, b[i]);
        }
        let r = aug.rref(f);
        if r.pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![0; self.cols];
        for (i, &pc) in r.pivots.iter().enumerate() {
            x[pc] = r.reduced.get(i, self.cols);
        }
        // canonical coset representative: zero on the kernel's pivot columns
        Some(self.kernel(f).reduce(f, &x))
    }

    pub fn determinant(&self, f: &Field) -> Elem {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.clone();
        let mut det = 1;
        for c in 0..n {
            let Some(piv) = (c..n).find(|&i| a.get(i, c) != 0) else {
                return 0;
            };
            if piv != c {
                a.swap_rows(c, piv);
                det = f.neg(det);
            }
            let d = a.get(c, c);
            det = f.mul(det, d);
            let inv = f.inv(d);
            for i in c + 1..n {
                let m = a.get(i, c);
                if m != 0 {
                    a.add_row_multiple(f, i, c, f.neg(f.mul(m, inv)));
                }
            }
        }
        det
    }

    pub fn inverse(&self, f: &Field) -> Option<Matrix> {
        let r = self.rref(f);
        if r.rank == self.rows && self.is_square() {
            Some(r.transform)
        } else {
            None
        }
    }

    /// Characteristic polynomial `det(tI - A)` via Hessenberg reduction.
    pub fn char_poly(&self, f: &Field) -> Poly {
        assert!(self.is_square());
        let n = self.rows;
        let mut h = self.clone();
        for j in 0..n.saturating_sub(2) {
            let Some(piv) = (j + 1..n).find(|&i| h.get(i, j) != 0) else {
                continue;
            };
            if piv != j + 1 {
                h.swap_rows(piv, j + 1);
                h.swap_cols(piv, j + 1);
            }
            let inv = f.inv(h.get(j + 1, j));
            for i in j + 2..n {
                let m = f.mul(h.get(i, j), inv);
                if m != 0 {
                    h.add_row_multiple(f, i, j + 1, f.neg(m));
                    h.add_col_multiple(f, j + 1, i, m);
                }
            }
        }
        // p_k from the leading k×k block
        let mut ps: Vec<Poly> = vec![Poly::one()];
        for k in 1..=n {
            let hk = h.get(k - 1, k - 1);
            let mut pk = Poly::new(vec![f.neg(hk), 1]).mul(f, &ps[k - 1]);
            let mut prod = 1;
            for m in 1..k {
                prod = f.mul(prod, h.get(k - m, k - m - 1));
                let coef = f.mul(h.get(k - m - 1, k - 1), prod);
                if coef != 0 {
                    pk = pk.sub(f, &ps[k - m - 1].scale(f, coef));
                }
            }
            ps.push(pk);
        }
        ps.pop().unwrap()
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for r in 0..self.rows {
            self.data.swap(r * self.cols + i, r * self.cols + j);
        }
    }
    // col_i += s * col_j
    fn add_col_multiple(&mut self, f: &Field, i: usize, j: usize, s: Elem) {
        for r in 0..self.rows {
            let v = self.data[r * self.cols + j];
            if v != 0 {
                let idx = r * self.cols + i;
                self.data[idx] = f.add(self.data[idx], f.mul(s, v));
            }
        }
    }

    /// Evaluates a polynomial at this square matrix.
    pub fn eval_poly(&self, f: &Field, p: &Poly) -> Matrix {
        let n = self.rows;
        let mut acc = Matrix::zero(n, n);
        for &c in p.coeffs().iter().rev() {
            acc = acc.mul(f, self);
            for i in 0..n {
                acc.data[i * n + i] = f.add(acc.data[i * n + i], c);
            }
        }
        acc
    }

    /// Flattened entries, used when matrices are treated as vectors.
    pub fn flatten(&self) -> Vec<Elem> {
        self.data.clone()
    }

    /// Kronecker product `self ⊗ o`.
    pub fn kron(&self, f: &Field, o: &Matrix) -> Matrix {
        let (r, c) = (self.rows * o.rows, self.cols * o.cols);
        let mut m = Matrix::zero(r, c);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a == 0 {
                    continue;
                }
                for k in 0..o.rows {
                    for l in 0..o.cols {
                        m.set(i * o.rows + k, j * o.cols + l, f.mul(a, o.get(k, l)));
                    }
                }
            }
        }
        m
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u32) -> Field {
        Field::prime(p).unwrap()
    }

    #[test]
    fn rank_of_dependent_rows_over_gf2() {
        let f = gf(2);
        let m = Matrix::from_rows(3, &[vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]]);
        assert_eq!(m.rank(&f), 2);
        let r = m.rref(&f);
        // transform reproduces the reduced form
        assert_eq!(r.transform.mul(&f, &m), r.reduced);
    }

    #[test]
    fn zero_and_identity_rref() {
        let f = gf(3);
        assert_eq!(Matrix::zero(3, 4).rank(&f), 0);
        assert!(Matrix::zero(3, 4).row_space(&f).is_zero());
        let i = Matrix::identity(4);
        assert_eq!(i.rref(&f).reduced, i);
    }

    #[test]
    fn jordan_block_kernel_and_image() {
        let f = gf(3);
        let j = Matrix::from_rows(2, &[vec![0, 1], vec![0, 0]]);
        // oracle: count vectors killed by J over all 9 vectors
        let killed = (0..9u32)
            .filter(|&c| j.apply(&f, &[c % 3, c / 3]).iter().all(|&x| x == 0))
            .count();
        assert_eq!(killed, 3);
        assert_eq!(j.kernel(&f).dim(), 1);
        assert_eq!(j.image(&f).dim(), 1);
    }

    #[test]
    fn solve_returns_least_solution() {
        let f = gf(3);
        let a = Matrix::from_rows(3, &[vec![1, 1, 1]]);
        // all solutions of x+y+z = 2, least in lexicographic order
        let mut best = None;
        for c in 0..27u32 {
            let x = vec![c / 9, (c / 3) % 3, c % 3];
            if a.apply(&f, &x) == vec![2] {
                best = Some(best.map_or(x.clone(), |b: Vec<u32>| b.min(x)));
            }
        }
        assert_eq!(a.solve(&f, &[2]), best);
        assert_eq!(Matrix::identity(2).solve(&f, &[2, 1]), Some(vec![2, 1]));
        assert_eq!(Matrix::zero(2, 2).solve(&f, &[0, 0]), Some(vec![0, 0]));
        assert_eq!(Matrix::zero(1, 2).solve(&f, &[1]), None);
    }

    #[test]
    fn char_poly_examples() {
        let f = gf(3);
        let d = Matrix::from_rows(2, &[vec![1, 0], vec![0, 2]]);
        let cp = d.char_poly(&f);
        assert_eq!(cp.roots(&f), vec![1, 2]);
        let z = Matrix::zero(3, 3).char_poly(&f);
        assert_eq!(z, Poly::monomial(1, 3));
    }

    #[test]
    fn char_poly_agrees_with_determinants() {
        // det(cI - A) at every scalar pins down a polynomial of degree < |F|
        let f = gf(5);
        let a = Matrix::from_rows(3, &[vec![1, 2, 3], vec![0, 4, 1], vec![2, 2, 0]]);
        let cp = a.char_poly(&f);
        assert_eq!(cp.degree(), Some(3));
        for c in f.elements() {
            let m = Matrix::identity(3).scale(&f, c).sub(&f, &a);
            assert_eq!(cp.eval(&f, c), m.determinant(&f));
        }
        assert!(a.eval_poly(&f, &cp).is_zero());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn mat(p: u32, r: usize, c: usize) -> impl Strategy<Value = Matrix> {
            proptest::collection::vec(0..p, r * c).prop_map(move |d| Matrix::from_flat(r, c, d))
        }

        proptest! {
            #[test]
            fn rank_nullity(m in mat(3, 4, 5)) {
                let f = gf(3);
                prop_assert_eq!(m.kernel(&f).dim() + m.image(&f).dim(), 5);
            }

            #[test]
            fn rref_is_idempotent(m in mat(2, 5, 6)) {
                let f = gf(2);
                let r = m.rref(&f).reduced;
                prop_assert_eq!(r.rref(&f).reduced, r);
            }

            #[test]
            fn cayley_hamilton(m in mat(7, 4, 4)) {
                let f = gf(7);
                let cp = m.char_poly(&f);
                prop_assert!(m.eval_poly(&f, &cp).is_zero());
                for c in 0..7 {
                    let d = Matrix::identity(4).scale(&f, c).sub(&f, &m).determinant(&f);
                    prop_assert_eq!(cp.eval(&f, c), d);
                }
            }
        }
    }
}
