use crate::ff::{Elem, Matrix, Subspace};
use crate::lie::{LieAlgebra, Quotient};
use crate::restricted::RestrictedAlgebra;

/// Chief series of the underlying algebra, least minimal ideal first,
/// stored from `L` down to `0`.
pub fn ordinary_chief_series(l: &LieAlgebra) -> Vec<Subspace> {
    let mut asc = vec![Subspace::zero(l.dim())];
    loop {
        let cur = asc.last().unwrap().clone();
        if cur.is_full() {
            break;
        }
        let q = l.quotient(&cur).expect("series terms are ideals");
        let m = q.algebra.minimal_ideals().into_iter().next().expect("nonzero quotient");
        asc.push(q.lift(&m));
    }
    asc.reverse();
    asc
}

/// `C_L(A/B) = {x : [x, A] ⊆ B}`.
pub fn factor_centralizer(l: &LieAlgebra, a: &Subspace, b: &Subspace) -> Subspace {
    let f = l.field();
    let n = l.dim();
    // x ↦ ([x, a_i] mod B)_i, stacked
    let mut rows: Vec<Vec<Elem>> = Vec::new();
    for ai in a.basis() {
        let cols: Vec<Vec<Elem>> = (0..n).map(|j| b.reduce(f, &l.bracket(&l.basis_vector(j), ai))).collect();
        rows.extend(Matrix::from_cols(n, &cols).row_vecs());
    }
    if rows.is_empty() {
        return l.whole();
    }
    Matrix::from_rows(n, &rows).kernel(f)
}

/// Soluble with a minimal ideal equal to its own centralizer.
pub fn is_ordinary_primitive(l: &LieAlgebra) -> Option<Subspace> {
    if l.dim() == 0 || !l.is_soluble() {
        return None;
    }
    l.minimal_ideals().into_iter().find(|a| l.centralizer(a) == *a)
}

/// Quotients `L/I` of the underlying algebra that are primitive.
pub fn ordinary_primitive_quotients(l: &LieAlgebra) -> Vec<Quotient> {
    l.ideals()
        .into_iter()
        .filter(|i| !i.is_full())
        .map(|i| l.quotient(&i).expect("ideal"))
        .filter(|q| is_ordinary_primitive(&q.algebra).is_some())
        .collect()
}

/// Intersection of the centralizers of the chief factors of `L`.
pub fn nilradical(l: &LieAlgebra) -> Subspace {
    let f = l.field();
    let terms = ordinary_chief_series(l);
    terms
        .windows(2)
        .fold(l.whole(), |acc, w| acc.intersection(f, &factor_centralizer(l, &w[0], &w[1])))
}

/// The same intersection over a [p]-chief series.
pub fn nilradical_restricted(r: &RestrictedAlgebra) -> Subspace {
    let f = r.field();
    let l = r.algebra();
    r.p_chief_series()
        .factors
        .iter()
        .fold(l.whole(), |acc, c| acc.intersection(f, &factor_centralizer(l, &c.upper, &c.lower)))
}
