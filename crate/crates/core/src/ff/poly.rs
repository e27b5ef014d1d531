use std::fmt;

use super::field::{Elem, Field};

/// Polynomial over a field, coefficients low-to-high with trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Elem>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Elem>) -> Poly {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { coeffs }
    }
    pub fn zero() -> Poly {
        Poly { coeffs: vec![] }
    }
    pub fn one() -> Poly {
        Poly { coeffs: vec![1] }
    }
    pub fn constant(c: Elem) -> Poly {
        Poly::new(vec![c])
    }
    /// The monomial `c t^k`.
    pub fn monomial(c: Elem, k: usize) -> Poly {
        let mut v = vec![0; k + 1];
        v[k] = c;
        Poly::new(v)
    }
    pub fn t() -> Poly {
        Poly::monomial(1, 1)
    }
    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }
    pub fn coeff(&self, k: usize) -> Elem {
        self.coeffs.get(k).copied().unwrap_or(0)
    }
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }
    pub fn lead(&self) -> Elem {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn add(&self, f: &Field, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|i| f.add(self.coeff(i), o.coeff(i))).collect())
    }
    pub fn sub(&self, f: &Field, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|i| f.sub(self.coeff(i), o.coeff(i))).collect())
    }
    pub fn scale(&self, f: &Field, c: Elem) -> Poly {
        Poly::new(self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }
    pub fn mul(&self, f: &Field, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut r = vec![0; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                r[i + j] = f.add(r[i + j], f.mul(a, b));
            }
        }
        Poly::new(r)
    }

    /// Quotient and remainder; panics if `d` is zero.
    pub fn divrem(&self, f: &Field, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let inv = f.inv(d.lead());
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut q = vec![0; r.len() - dd];
        for k in (dd..r.len()).rev() {
            let c = f.mul(r[k], inv);
            if c == 0 {
                continue;
            }
            q[k - dd] = c;
            for (i, &di) in d.coeffs.iter().enumerate() {
                r[k - dd + i] = f.sub(r[k - dd + i], f.mul(c, di));
            }
        }
        r.truncate(dd);
        (Poly::new(q), Poly::new(r))
    }

    pub fn rem(&self, f: &Field, d: &Poly) -> Poly {
        self.divrem(f, d).1
    }

    pub fn monic(&self, f: &Field) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        self.scale(f, f.inv(self.lead()))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, f: &Field, o: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(f, &b);
            a = b;
            b = r;
        }
        a.monic(f)
    }

    pub fn eval(&self, f: &Field, x: Elem) -> Elem {
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn derivative(&self, f: &Field) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| f.mul(f.from_int(i as i64), c))
                .collect(),
        )
    }

    /// `self^e mod m`.
    pub fn powmod(&self, f: &Field, mut e: u64, m: &Poly) -> Poly {
        let mut base = self.rem(f, m);
        let mut acc = Poly::one().rem(f, m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(f, &base).rem(f, m);
            }
            base = base.mul(f, &base).rem(f, m);
            e >>= 1;
        }
        acc
    }

    /// Multiplicity of `x` as a root.
    pub fn root_multiplicity(&self, f: &Field, x: Elem) -> usize {
        if self.is_zero() {
            return usize::MAX;
        }
        let lin = Poly::new(vec![f.neg(x), 1]);
        let mut g = self.clone();
        let mut k = 0;
        loop {
            let (q, r) = g.divrem(f, &lin);
            if !r.is_zero() {
                return k;
            }
            g = q;
            k += 1;
        }
    }

    /// All roots in `f`, each repeated by multiplicity, found by a full scan.
    pub fn roots(&self, f: &Field) -> Vec<Elem> {
        let mut out = Vec::new();
        if self.is_zero() {
            return out;
        }
        for x in f.elements() {
            if self.eval(f, x) == 0 {
                let k = self.root_multiplicity(f, x);
                out.extend(std::iter::repeat(x).take(k));
            }
        }
        out
    }

    /// Degrees of the irreducible factors (with repetition counted once per
    /// distinct factor), by distinct-degree factorization of the squarefree part.
    pub fn factor_degrees(&self, f: &Field) -> Vec<usize> {
        let mut degs = Vec::new();
        let Some(n) = self.degree() else { return degs };
        if n == 0 {
            return degs;
        }
        let mut g = self.squarefree_part(f);
        let q = f.order() as u64;
        let x = Poly::t();
        let mut xq = x.clone();
        let mut d = 1;
        while g.degree().unwrap_or(0) >= 2 * d {
            xq = xq.powmod(f, q, &g);
            let h = xq.sub(f, &x).gcd(f, &g);
            let hd = h.degree().unwrap_or(0);
            for _ in 0..hd / d {
                degs.push(d);
            }
            if hd > 0 {
                g = g.divrem(f, &h).0;
                xq = xq.rem(f, &g);
            }
            d += 1;
        }
        if let Some(gd) = g.degree() {
            if gd > 0 {
                degs.push(gd);
            }
        }
        degs.sort_unstable();
        degs
    }

    /// Product of the distinct monic irreducible factors.
    pub fn squarefree_part(&self, f: &Field) -> Poly {
        let p = self.monic(f);
        if p.degree().unwrap_or(0) == 0 {
            return p;
        }
        let d = p.derivative(f);
        if d.is_zero() {
            // p(t) = g(t^p)^ with coefficients p-th powers: take p-th roots
            let pp = f.p() as usize;
            let inv_e = (f.order() as u64) / f.p() as u64; // x^(q/p) is the inverse Frobenius
            let root: Vec<Elem> = p
                .coeffs
                .iter()
                .step_by(pp)
                .map(|&c| f.pow(c, inv_e))
                .collect();
            return Poly::new(root).squarefree_part(f);
        }
        let g = p.gcd(f, &d);
        let core = p.divrem(f, &g).0;
        if g.degree().unwrap_or(0) == 0 {
            return core;
        }
        // factors of g not already in core
        let rest = g.squarefree_part(f);
        let extra = rest.divrem(f, &rest.gcd(f, &core)).0;
        core.mul(f, &extra).monic(f)
    }

    pub fn display(&self, f: &Field) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let cs = if f.is_prime_field() {
                c.to_string()
            } else {
                format!("{:?}", f.coeffs(c))
            };
            parts.push(match k {
                0 => cs,
                1 if c == 1 => "t".into(),
                1 => format!("{cs}t"),
                _ if c == 1 => format!("t^{k}"),
                _ => format!("{cs}t^{k}"),
            });
        }
        parts.join(" + ")
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly{:?}", self.coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divrem_reconstructs() {
        let f = Field::new(3, 2).unwrap();
        let a = Poly::new(vec![1, 5, 0, 7, 2]);
        let b = Poly::new(vec![2, 0, 4]);
        let (q, r) = a.divrem(&f, &b);
        assert_eq!(q.mul(&f, &b).add(&f, &r), a);
        assert!(r.degree().unwrap_or(0) < 2);
    }

    #[test]
    fn roots_with_multiplicity() {
        let f = Field::prime(3).unwrap();
        // (t-1)^2 (t-2)
        let p = Poly::new(vec![f.neg(1), 1])
            .mul(&f, &Poly::new(vec![f.neg(1), 1]))
            .mul(&f, &Poly::new(vec![f.neg(2), 1]));
        assert_eq!(p.roots(&f), vec![1, 1, 2]);
    }

    #[test]
    fn factor_degrees_of_products() {
        let f = Field::prime(2).unwrap();
        // (t^2+t+1)(t^3+t+1)(t)^2
        let a = Poly::new(vec![1, 1, 1]);
        let b = Poly::new(vec![1, 1, 0, 1]);
        let c = Poly::new(vec![0, 0, 1]);
        let p = a.mul(&f, &b).mul(&f, &c);
        assert_eq!(p.factor_degrees(&f), vec![1, 2, 3]);
        // (t^2+t+1)^2 is not separable
        assert_eq!(a.mul(&f, &a).factor_degrees(&f), vec![2]);
    }
}
