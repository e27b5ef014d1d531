use std::cmp::Ordering;
use std::fmt;

use super::field::{Elem, Field};
use super::matrix::Matrix;

/// Subspace of `F^n` stored by its reduced row echelon basis.
///
/// Two subspaces are equal exactly when their bases coincide entrywise.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    n: usize,
    rows: Vec<Vec<Elem>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(n: usize) -> Subspace {
        Subspace {
            n,
            rows: vec![],
            pivots: vec![],
        }
    }

    pub fn full(n: usize) -> Subspace {
        let rows = (0..n)
            .map(|i| {
                let mut v = vec![0; n];
                v[i] = 1;
                v
            })
            .collect();
        Subspace {
            n,
            rows,
            pivots: (0..n).collect(),
        }
    }

    pub fn span(f: &Field, n: usize, vecs: &[Vec<Elem>]) -> Subspace {
        let mut s = Subspace::zero(n);
        for v in vecs {
            s.insert(f, v);
        }
        s
    }

    /// Span of the `i`-th coordinate vectors.
    pub fn coordinate(n: usize, idx: &[usize]) -> Subspace {
        let mut idx = idx.to_vec();
        idx.sort_unstable();
        idx.dedup();
        let rows = idx
            .iter()
            .map(|&i| {
                let mut v = vec![0; n];
                v[i] = 1;
                v
            })
            .collect();
        Subspace { n, rows, pivots: idx }
    }

    pub fn ambient(&self) -> usize {
        self.n
    }
    pub fn dim(&self) -> usize {
        self.rows.len()
    }
    pub fn basis(&self) -> &[Vec<Elem>] {
        &self.rows
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }
    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }
    pub fn is_full(&self) -> bool {
        self.rows.len() == self.n
    }

    /// Columns that are not pivots, ascending.  These index the canonical
    /// complement and the coordinates of quotients.
    pub fn non_pivots(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.n - self.dim());
        let mut k = 0;
        for c in 0..self.n {
            if k < self.pivots.len() && self.pivots[k] == c {
                k += 1;
            } else {
                out.push(c);
            }
        }
        out
    }

    /// Canonical coset representative: `v` reduced to vanish on every pivot.
    pub fn reduce(&self, f: &Field, v: &[Elem]) -> Vec<Elem> {
        let mut w = v.to_vec();
        for (r, &pc) in self.rows.iter().zip(&self.pivots) {
            let c = w[pc];
            if c != 0 {
                f.axpy(&mut w, f.neg(c), r);
            }
        }
        w
    }

    pub fn contains(&self, f: &Field, v: &[Elem]) -> bool {
        self.reduce(f, v).iter().all(|&x| x == 0)
    }

    pub fn contains_space(&self, f: &Field, o: &Subspace) -> bool {
        o.dim() <= self.dim() && o.rows.iter().all(|r| self.contains(f, r))
    }

    /// Coordinates of a member with respect to the stored basis.
    pub fn coords(&self, v: &[Elem]) -> Vec<Elem> {
        self.pivots.iter().map(|&p| v[p]).collect()
    }

    pub fn from_coords(&self, f: &Field, c: &[Elem]) -> Vec<Elem> {
        let mut v = vec![0; self.n];
        for (r, &a) in self.rows.iter().zip(c) {
            f.axpy(&mut v, a, r);
        }
        v
    }

    /// Coordinates of the image of `v` in the quotient by this subspace.
    pub fn quotient_coords(&self, f: &Field, v: &[Elem]) -> Vec<Elem> {
        let w = self.reduce(f, v);
        self.non_pivots().iter().map(|&c| w[c]).collect()
    }

    /// Adds `v`; returns whether the dimension grew.
    pub fn insert(&mut self, f: &Field, v: &[Elem]) -> bool {
        assert_eq!(v.len(), self.n, "vector length does not match the ambient space");
        let mut w = self.reduce(f, v);
        let Some(c) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = f.inv(w[c]);
        for x in w.iter_mut() {
            *x = f.mul(*x, inv);
        }
        for r in self.rows.iter_mut() {
            let a = r[c];
            if a != 0 {
                f.axpy(r, f.neg(a), &w);
            }
        }
        let pos = self.pivots.partition_point(|&p| p < c);
        self.pivots.insert(pos, c);
        self.rows.insert(pos, w);
        true
    }

    pub fn sum(&self, f: &Field, o: &Subspace) -> Subspace {
        assert_eq!(self.n, o.n, "ambient mismatch");
        let (mut big, small) = if self.dim() >= o.dim() { (self.clone(), o) } else { (o.clone(), self) };
        for r in &small.rows {
            big.insert(f, r);
        }
        big
    }

    pub fn intersection(&self, f: &Field, o: &Subspace) -> Subspace {
        assert_eq!(self.n, o.n, "ambient mismatch");
        if self.is_zero() || o.is_zero() {
            return Subspace::zero(self.n);
        }
        // x = sum c_i u_i lies in o iff its reduction modulo o vanishes on the non-pivots of o
        let np = o.non_pivots();
        if np.is_empty() {
            return self.clone();
        }
        let reds: Vec<Vec<Elem>> = self.rows.iter().map(|r| o.reduce(f, r)).collect();
        let mut m = Matrix::zero(np.len(), self.dim());
        for (j, red) in reds.iter().enumerate() {
            for (i, &c) in np.iter().enumerate() {
                m.set(i, j, red[c]);
            }
        }
        let k = m.kernel(f);
        let vecs: Vec<Vec<Elem>> = k.basis().iter().map(|c| self.from_coords(f, c)).collect();
        Subspace::span(f, self.n, &vecs)
    }

    /// Image of the subspace under `v ↦ M v`.
    pub fn map(&self, f: &Field, m: &Matrix) -> Subspace {
        let vecs: Vec<Vec<Elem>> = self.rows.iter().map(|r| m.apply(f, r)).collect();
        Subspace::span(f, m.rows(), &vecs)
    }

    /// Matrix with the basis as rows.
    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_rows(self.n, &self.rows)
    }

    /// Nonzero vectors with first nonzero basis coordinate equal to one.
    pub fn points<'a>(&'a self, f: &'a Field) -> Points<'a> {
        Points::new(self, f)
    }

    /// Number of points, `(q^k - 1)/(q - 1)`.
    pub fn point_count(&self, f: &Field) -> u128 {
        let q = f.order() as u128;
        let mut s = 0u128;
        let mut pw = 1u128;
        for _ in 0..self.dim() {
            s = s.saturating_add(pw);
            pw = pw.saturating_mul(q);
        }
        s
    }

    /// Every element of the subspace, in coordinate order.
    pub fn elements<'a>(&'a self, f: &'a Field) -> impl Iterator<Item = Vec<Elem>> + 'a {
        let q = f.order() as u64;
        let k = self.dim() as u32;
        let total = q.checked_pow(k).expect("subspace too large to enumerate");
        (0..total).map(move |mut code| {
            let mut c = vec![0; self.dim()];
            for x in c.iter_mut().rev() {
                *x = (code % q) as Elem;
                code /= q;
            }
            self.from_coords(f, &c)
        })
    }

    pub fn display(&self) -> String {
        let rows: Vec<String> = self.rows.iter().map(|r| format!("{r:?}")).collect();
        format!("<{}>", rows.join(", "))
    }
}

impl Ord for Subspace {
    fn cmp(&self, o: &Subspace) -> Ordering {
        self.n
            .cmp(&o.n)
            .then(self.dim().cmp(&o.dim()))
            .then_with(|| self.rows.cmp(&o.rows))
    }
}
impl PartialOrd for Subspace {
    fn partial_cmp(&self, o: &Subspace) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace{}", self.display())
    }
}

pub struct Points<'a> {
    s: &'a Subspace,
    f: &'a Field,
    lead: usize,
    tail: Vec<Elem>,
    done: bool,
}

impl<'a> Points<'a> {
    fn new(s: &'a Subspace, f: &'a Field) -> Points<'a> {
        let k = s.dim();
        Points {
            s,
            f,
            lead: 0,
            tail: vec![0; k.saturating_sub(1)],
            done: k == 0,
        }
    }
}

impl Iterator for Points<'_> {
    type Item = Vec<Elem>;
    fn next(&mut self) -> Option<Vec<Elem>> {
        if self.done {
            return None;
        }
        let k = self.s.dim();
        let mut c = vec![0; k];
        c[self.lead] = 1;
        let free = k - 1 - self.lead;
        c[self.lead + 1..].copy_from_slice(&self.tail[..free]);
        let out = self.s.from_coords(self.f, &c);
        // advance the odometer over the free tail
        let q = self.f.order();
        let mut i = free;
        loop {
            if i == 0 {
                self.lead += 1;
                if self.lead == k {
                    self.done = true;
                }
                for x in self.tail.iter_mut() {
                    *x = 0;
                }
                break;
            }
            i -= 1;
            self.tail[i] += 1;
            if self.tail[i] < q {
                break;
            }
            self.tail[i] = 0;
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_subspaces(f: &Field, n: usize) -> Vec<Subspace> {
        // brute force: spans of all pairs of subsets is overkill; spans of all
        // sets of up to n vectors found by closure over single insertions
        let full = Subspace::full(n);
        let vecs: Vec<Vec<Elem>> = full.elements(f).collect();
        let mut found = std::collections::BTreeSet::new();
        found.insert(Subspace::zero(n));
        let mut frontier = vec![Subspace::zero(n)];
        while let Some(s) = frontier.pop() {
            for v in &vecs {
                let mut t = s.clone();
                if t.insert(f, v) && found.insert(t.clone()) {
                    frontier.push(t);
                }
            }
        }
        found.into_iter().collect()
    }

    #[test]
    fn subspace_counts_match_gaussian_binomials() {
        let f = Field::prime(2).unwrap();
        assert_eq!(all_subspaces(&f, 2).len(), 5);
        assert_eq!(all_subspaces(&f, 4).len(), 1 + 15 + 35 + 15 + 1);
    }

    #[test]
    fn idempotence_and_complementary_lines() {
        let f = Field::prime(2).unwrap();
        let u = Subspace::span(&f, 2, &[vec![1, 0]]);
        let v = Subspace::span(&f, 2, &[vec![1, 1]]);
        assert_eq!(u.sum(&f, &u), u);
        assert_eq!(u.intersection(&f, &u), u);
        assert!(u.sum(&f, &v).is_full());
        assert!(u.intersection(&f, &v).is_zero());
    }

    #[test]
    fn planes_in_gf2_cubed_meet() {
        let f = Field::prime(2).unwrap();
        let planes: Vec<_> = all_subspaces(&f, 3).into_iter().filter(|s| s.dim() == 2).collect();
        assert_eq!(planes.len(), 7);
        for a in &planes {
            for b in &planes {
                let i = a.intersection(&f, b);
                // oracle: count common vectors
                let common = a.elements(&f).filter(|v| b.contains(&f, v)).count();
                assert_eq!(1usize << i.dim(), common);
                assert!(i.dim() >= 1);
            }
        }
    }

    #[test]
    fn modular_law_and_dimension_formula_on_gf2_4() {
        let f = Field::prime(2).unwrap();
        let subs = all_subspaces(&f, 4);
        for a in &subs {
            for b in &subs {
                let s = a.sum(&f, b);
                let i = a.intersection(&f, b);
                assert_eq!(a.dim() + b.dim(), s.dim() + i.dim());
                for c in &subs {
                    if a.contains_space(&f, c) {
                        // C ⊆ A ⇒ A ∩ (B + C) = (A ∩ B) + C
                        let lhs = a.intersection(&f, &b.sum(&f, c));
                        let rhs = a.intersection(&f, b).sum(&f, c);
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn points_are_distinct_and_counted() {
        let f = Field::prime(3).unwrap();
        let s = Subspace::full(3);
        let pts: std::collections::BTreeSet<_> = s.points(&f).collect();
        assert_eq!(pts.len(), 13);
        assert_eq!(s.point_count(&f), 13);
        assert_eq!(Subspace::zero(3).points(&f).count(), 0);
    }

    #[test]
    fn quotient_coordinates_vanish_exactly_on_members() {
        let f = Field::prime(3).unwrap();
        let s = Subspace::span(&f, 3, &[vec![1, 2, 0]]);
        for v in Subspace::full(3).elements(&f) {
            let q = s.quotient_coords(&f, &v);
            assert_eq!(q.iter().all(|&x| x == 0), s.contains(&f, &v));
        }
    }
}
