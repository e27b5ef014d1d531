use crate::error::{Error, Result};
use crate::ff::{Elem, Field, Matrix, Subspace};
use crate::lie::LieAlgebra;

/// Basis images of a p-operation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct POperation {
    pub images: Vec<Vec<Elem>>,
}

/// A Lie algebra with a verified p-operation.
#[derive(Clone, Debug)]
pub struct RestrictedAlgebra {
    algebra: LieAlgebra,
    pop: POperation,
}

impl PartialEq for RestrictedAlgebra {
    fn eq(&self, o: &Self) -> bool {
        self.algebra == o.algebra && self.pop == o.pop
    }
}
impl Eq for RestrictedAlgebra {}

/// Accepts basis images `b_i` when `ad(e_i)^p = ad(b_i)` for every `i`.
pub fn jacobson_construct(l: &LieAlgebra, images: Vec<Vec<Elem>>) -> Result<RestrictedAlgebra> {
    if images.len() != l.dim() || images.iter().any(|v| v.len() != l.dim()) {
        return Err(Error::Dimension("p-images must be one vector per basis element".into()));
    }
    let f = l.field();
    let p = f.p() as u64;
    for (i, b) in images.iter().enumerate() {
        if l.ad_basis(i).pow(f, p) != l.ad(b) {
            return Err(Error::JacobsonRejected(i));
        }
    }
    Ok(RestrictedAlgebra {
        algebra: l.clone(),
        pop: POperation { images },
    })
}

/// `S(u, v)` in `(u+v)^[p] = u^[p] + v^[p] + S(u, v)`, from
/// `ad(tu + v)^{p-1}(u) = Σ i s_i(u, v) t^{i-1}`.
pub fn jacobson_correction(l: &LieAlgebra, u: &[Elem], v: &[Elem]) -> Vec<Elem> {
    let f = l.field();
    let p = f.p() as usize;
    let n = l.dim();
    let (adu, adv) = (l.ad(u), l.ad(v));
    // w[d] is the coefficient of t^d
    let mut w: Vec<Vec<Elem>> = vec![vec![0; n]; p];
    w[0] = u.to_vec();
    for _ in 0..p - 1 {
        let mut next = vec![vec![0; n]; p];
        for d in 0..p {
            if w[d].iter().all(|&c| c == 0) {
                continue;
            }
            next[d] = f.vadd(&next[d], &adv.apply(f, &w[d]));
            if d + 1 < p {
                next[d + 1] = f.vadd(&next[d + 1], &adu.apply(f, &w[d]));
            }
        }
        w = next;
    }
    let mut s = vec![0; n];
    for i in 1..p {
        let inv = f.inv(f.from_int(i as i64));
        f.axpy(&mut s, inv, &w[i - 1]);
    }
    s
}

/// `x^[p]` for `x = Σ c_k basis_k` given the images of `basis`.
pub fn evaluate_with(l: &LieAlgebra, basis: &[Vec<Elem>], images: &[Vec<Elem>], coeffs: &[Elem]) -> Vec<Elem> {
    let f = l.field();
    let p = f.p() as u64;
    let n = l.dim();
    let mut u = vec![0; n];
    let mut up = vec![0; n];
    let mut first = true;
    for (k, &c) in coeffs.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let v = f.scale(c, &basis[k]);
        let vp = f.scale(f.pow(c, p), &images[k]);
        if first {
            u = v;
            up = vp;
            first = false;
            continue;
        }
        let s = jacobson_correction(l, &u, &v);
        up = f.vadd(&f.vadd(&up, &vp), &s);
        u = f.vadd(&u, &v);
    }
    up
}

impl RestrictedAlgebra {
    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }
    pub fn pop(&self) -> &POperation {
        &self.pop
    }
    pub fn images(&self) -> &[Vec<Elem>] {
        &self.pop.images
    }
    pub fn field(&self) -> &Field {
        self.algebra.field()
    }
    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }
    pub fn p(&self) -> u32 {
        self.field().p()
    }

    /// Field, structure constants and p-images flattened into one key.
    pub fn structure_key(&self) -> Vec<u32> {
        let l = &self.algebra;
        let n = l.dim();
        let mut k = vec![self.p(), self.field().m(), n as u32];
        for i in 0..n {
            for j in i + 1..n {
                k.extend_from_slice(l.bracket_basis(i, j));
            }
        }
        for b in &self.pop.images {
            k.extend_from_slice(b);
        }
        k
    }

    pub fn with_labels(mut self, labels: &[&str]) -> RestrictedAlgebra {
        self.algebra = self.algebra.with_labels(labels);
        self
    }

    /// `x^[p]`.
    pub fn evaluate_p(&self, x: &[Elem]) -> Vec<Elem> {
        let basis: Vec<Vec<Elem>> = (0..self.dim()).map(|i| self.algebra.basis_vector(i)).collect();
        evaluate_with(&self.algebra, &basis, &self.pop.images, x)
    }

    /// `x^[p]`, verifying `ad(x^[p]) = ad(x)^p`.
    pub fn evaluate_p_checked(&self, x: &[Elem]) -> Result<Vec<Elem>> {
        let f = self.field();
        let y = self.evaluate_p(x);
        if self.algebra.ad(&y) != self.algebra.ad(x).pow(f, f.p() as u64) {
            return Err(Error::Inconsistency(format!(
                "ad of the p-th power of {:?} differs from the p-th power of ad",
                x
            )));
        }
        Ok(y)
    }

    /// Whether the p-map vanishes identically.
    pub fn is_null_on(&self, s: &Subspace) -> bool {
        self.algebra.is_abelian_subspace(s)
            && s.basis().iter().all(|v| self.evaluate_p(v).iter().all(|&c| c == 0))
    }

    pub fn is_null(&self) -> bool {
        self.algebra.is_abelian() && self.pop.images.iter().all(|v| v.iter().all(|&c| c == 0))
    }

    pub fn is_soluble(&self) -> bool {
        self.algebra.is_soluble()
    }
    pub fn is_nilpotent(&self) -> bool {
        self.algebra.is_nilpotent()
    }
}

/// Inner derivation matrices of `l` stacked as columns of one system.
fn ad_system(l: &LieAlgebra) -> Matrix {
    let cols: Vec<Vec<Elem>> = (0..l.dim()).map(|i| l.ad_basis(i).flatten()).collect();
    Matrix::from_cols(l.dim() * l.dim(), &cols)
}

/// Least `b_i` with `ad(b_i) = ad(e_i)^p` for each basis vector, if all exist.
///
/// The basis test suffices: `x ↦ ad(x)^p` differs from a p-semilinear map
/// by inner derivations.
pub fn base_p_images(l: &LieAlgebra) -> Option<Vec<Vec<Elem>>> {
    let f = l.field();
    let p = f.p() as u64;
    if l.dim() == 0 {
        return Some(vec![]);
    }
    let sys = ad_system(l);
    (0..l.dim())
        .map(|i| sys.solve(f, &l.ad_basis(i).pow(f, p).flatten()))
        .collect()
}

pub fn is_restrictable(l: &LieAlgebra) -> bool {
    base_p_images(l).is_some()
}

/// Element-by-element restrictability test.
pub fn is_restrictable_by_scan(l: &LieAlgebra) -> bool {
    let f = l.field();
    let p = f.p() as u64;
    let sys = ad_system(l);
    let image = if l.dim() == 0 {
        return true;
    } else {
        sys.image(f)
    };
    Subspace::full(l.dim())
        .elements(f)
        .all(|x| image.contains(f, &l.ad(&x).pow(f, p).flatten()))
}

/// Every p-operation: base images shifted by p-semilinear maps into the centre.
pub fn enumerate_p_operations(l: &LieAlgebra, budget: u128) -> Result<Vec<RestrictedAlgebra>> {
    let f = l.field();
    let Some(base) = base_p_images(l) else {
        return Ok(vec![]);
    };
    let z = l.center();
    let count = (f.order() as u128).checked_pow((z.dim() * l.dim()) as u32);
    if count.map_or(true, |c| c > budget) {
        return Err(Error::Capacity("too many p-operations to enumerate".into()));
    }
    let zs: Vec<Vec<Elem>> = z.elements(f).collect();
    let n = l.dim();
    let mut out = Vec::new();
    let mut idx = vec![0usize; n];
    loop {
        let images: Vec<Vec<Elem>> = (0..n).map(|i| f.vadd(&base[i], &zs[idx[i]])).collect();
        out.push(jacobson_construct(l, images)?);
        // odometer, last coordinate fastest
        let mut k = n;
        loop {
            if k == 0 {
                out.sort_by(|a, b| a.pop.images.cmp(&b.pop.images));
                return Ok(out);
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < zs.len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn der(p: u32) -> RestrictedAlgebra {
        let f = Field::prime(p).unwrap();
        let l = LieAlgebra::new(&f, 3, &[(0, 1, vec![0, 1, 0])]).unwrap();
        jacobson_construct(&l, vec![vec![1, 0, 0], vec![0, 0, 1], vec![0, 0, 0]]).unwrap()
    }

    #[test]
    fn der_images_accepted_and_bad_ones_rejected() {
        let r = der(3);
        assert!(matches!(
            jacobson_construct(r.algebra(), vec![vec![0, 0, 0], vec![0, 0, 1], vec![0, 0, 0]]),
            Err(Error::JacobsonRejected(0))
        ));
    }

    #[test]
    fn nilder_c_maps_to_d() {
        let f = Field::prime(3).unwrap();
        let l = LieAlgebra::new(&f, 4, &[(0, 1, vec![0, 0, 1, 0])]).unwrap();
        let r = jacobson_construct(&l, vec![vec![0; 4], vec![0; 4], vec![0, 0, 0, 1], vec![0; 4]]).unwrap();
        assert_eq!(r.evaluate_p(&[0, 0, 1, 0]), vec![0, 0, 0, 1]);
    }

    #[test]
    fn der_sum_power_matches_ad_and_centre_offset() {
        for p in [2, 3, 5] {
            let r = der(p);
            let f = r.field().clone();
            let x = vec![1, 1, 0];
            let v = r.evaluate_p_checked(&x).unwrap();
            // ad(a + b) is idempotent, so v = a + b modulo the centre <c>
            let z = r.algebra().center();
            assert!(z.contains(&f, &f.vsub(&v, &[1, 1, 0])), "p={p} v={v:?}");
            assert_eq!(v, vec![1, 1, 1]);
        }
    }

    #[test]
    fn evaluation_axioms_hold_exhaustively() {
        // heisenberg with a nonzero p-map over GF(3) and GF(2)
        for p in [2, 3] {
            let f = Field::prime(p).unwrap();
            let l = LieAlgebra::new(&f, 3, &[(0, 1, vec![0, 0, 1])]).unwrap();
            for r in enumerate_p_operations(&l, 1 << 20).unwrap() {
                for x in Subspace::full(3).elements(&f) {
                    let y = r.evaluate_p_checked(&x).unwrap();
                    for lam in f.elements() {
                        let lx = f.scale(lam, &x);
                        assert_eq!(r.evaluate_p(&lx), f.scale(f.pow(lam, p as u64), &y));
                    }
                }
            }
        }
    }

    #[test]
    fn abelian_plane_over_gf2_has_sixteen_p_operations() {
        let f = Field::prime(2).unwrap();
        let l = LieAlgebra::abelian(&f, 2);
        assert!(is_restrictable(&l));
        assert_eq!(enumerate_p_operations(&l, 1000).unwrap().len(), 16);
    }

    #[test]
    fn scan_agrees_with_basis_test() {
        let f = Field::prime(3).unwrap();
        // [x, y] = y with x acting on an extra vector by a non-p-power scalar
        let q = LieAlgebra::new(&f, 2, &[(0, 1, vec![0, 1])]).unwrap();
        assert!(is_restrictable(&q) && is_restrictable_by_scan(&q));
        let w = LieAlgebra::new(&f, 3, &[(0, 1, vec![0, 1, 0]), (0, 2, vec![0, 0, 1])]).unwrap();
        assert_eq!(is_restrictable(&w), is_restrictable_by_scan(&w));
    }
}
