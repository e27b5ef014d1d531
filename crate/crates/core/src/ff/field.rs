use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Element of GF(p^m), encoded as `sum c_i p^i` over its coefficient vector.
pub type Elem = u32;

const MAX_ORDER: u64 = 1 << 24;
const ADD_TABLE_LIMIT: u32 = 256;

/// GF(p^m) with the lexicographically least monic irreducible modulus.
#[derive(Clone)]
pub struct Field(Arc<Inner>);

struct Inner {
    p: u32,
    m: u32,
    q: u32,
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    add: Vec<u32>,
    neg: Vec<u32>,
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

// dense GF(p) polynomial helpers used only to pick the modulus
fn pmod_trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn prem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = pmod_trim(a.to_vec());
    let db = b.len() - 1;
    let inv = inv_mod(b[db], p);
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let c = r[r.len() - 1] * inv % p;
        for (i, &bi) in b.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p * p - c * bi % p) % p;
        }
        r = pmod_trim(r);
    }
    r
}

fn inv_mod(a: u32, p: u32) -> u32 {
    let mut r = 1u64;
    let mut b = a as u64 % p as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    r as u32
}

fn irreducible_over_prime(f: &[u32], p: u32) -> bool {
    let m = f.len() - 1;
    for d in 1..=m / 2 {
        let count = (p as u64).pow(d as u32);
        for code in 0..count {
            let mut g = vec![0u32; d + 1];
            let mut c = code;
            for gi in g.iter_mut().take(d) {
                *gi = (c % p as u64) as u32;
                c /= p as u64;
            }
            g[d] = 1;
            if prem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Lexicographically least monic irreducible of degree `m`, compared on the
/// low-to-high coefficient list.  Degree one uses `t`.
fn smallest_irreducible(p: u32, m: u32) -> Vec<u32> {
    if m == 1 {
        return vec![0, 1];
    }
    let total = (p as u64).pow(m);
    for code in 0..total {
        let mut f = vec![0u32; m as usize + 1];
        let mut c = code;
        for i in (0..m as usize).rev() {
            f[i] = (c % p as u64) as u32;
            c /= p as u64;
        }
        f[m as usize] = 1;
        if f[0] != 0 && irreducible_over_prime(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl Field {
    pub fn new(p: u32, m: u32) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if m < 1 {
            return Err(Error::InvalidDegree(m));
        }
        let q64 = (p as u64).checked_pow(m).unwrap_or(u64::MAX);
        if q64 > MAX_ORDER {
            return Err(Error::FieldTooLarge(q64));
        }
        let modulus = smallest_irreducible(p, m);
        Ok(Self::with_modulus(p, m, modulus))
    }

    pub fn prime(p: u32) -> Result<Field> {
        Field::new(p, 1)
    }

    /// Rebuilds a field from serialized data, checking the modulus.
    pub fn from_parts(p: u32, m: u32, modulus: &[u32]) -> Result<Field> {
        let f = Field::new(p, m)?;
        if f.modulus() != modulus {
            return Err(Error::Parse(format!(
                "modulus {modulus:?} differs from the canonical {:?}",
                f.modulus()
            )));
        }
        Ok(f)
    }

    fn with_modulus(p: u32, m: u32, modulus: Vec<u32>) -> Field {
        let q = p.pow(m);
        let md = m as usize;
        let to_digits = |mut a: u32| {
            let mut d = vec![0u32; md];
            for x in d.iter_mut() {
                *x = a % p;
                a /= p;
            }
            d
        };
        let from_digits = |d: &[u32]| d.iter().rev().fold(0u32, |acc, &x| acc * p + x);
        let polymul = |a: u32, b: u32| -> u32 {
            let da = to_digits(a);
            let db = to_digits(b);
            let mut prod = vec![0u64; 2 * md];
            for i in 0..md {
                for j in 0..md {
                    prod[i + j] = (prod[i + j] + da[i] as u64 * db[j] as u64) % p as u64;
                }
            }
            let pp = p as u64;
            let mut r: Vec<u64> = prod.iter().map(|&x| x % pp).collect();
            for k in (md..2 * md).rev() {
                let c = r[k];
                if c != 0 {
                    for (i, &mi) in modulus.iter().enumerate() {
                        let idx = k - md + i;
                        r[idx] = (r[idx] + pp * pp - c * mi as u64 % pp) % pp;
                    }
                }
            }
            let r: Vec<u32> = r[..md].iter().map(|&x| x as u32).collect();
            from_digits(&r)
        };
        // discrete log tables from the least primitive element
        let mut exp = vec![0u32; q as usize];
        let mut log = vec![0u32; q as usize];
        if q == 2 {
            exp[0] = 1;
        } else {
            'search: for g in 2..q {
                let mut x = 1u32;
                for k in 0..(q - 1) {
                    if k > 0 && x == 1 {
                        continue 'search;
                    }
                    exp[k as usize] = x;
                    x = polymul(x, g);
                }
                if x == 1 {
                    break;
                }
            }
        }
        for k in 0..(q - 1) {
            log[exp[k as usize] as usize] = k;
        }
        let digit_add = |a: u32, b: u32| {
            let (mut a, mut b, mut w, mut r) = (a, b, 1u32, 0u32);
            while a > 0 || b > 0 {
                r += ((a % p + b % p) % p) * w;
                w *= p;
                a /= p;
                b /= p;
            }
            r
        };
        let add = if m > 1 && p != 2 && q <= ADD_TABLE_LIMIT {
            let mut t = vec![0u32; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    t[(a * q + b) as usize] = digit_add(a, b);
                }
            }
            t
        } else {
            Vec::new()
        };
        let neg = (0..q)
            .map(|a| {
                let d = to_digits(a);
                let nd: Vec<u32> = d.iter().map(|&x| (p - x) % p).collect();
                from_digits(&nd)
            })
            .collect();
        Field(Arc::new(Inner {
            p,
            m,
            q,
            modulus,
            exp,
            log,
            add,
            neg,
        }))
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }
    pub fn m(&self) -> u32 {
        self.0.m
    }
    /// Number of elements.
    pub fn order(&self) -> u32 {
        self.0.q
    }
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }
    pub fn is_prime_field(&self) -> bool {
        self.0.m == 1
    }

    #[inline]
    pub fn zero(&self) -> Elem {
        0
    }
    #[inline]
    pub fn one(&self) -> Elem {
        1
    }

    /// Image of an integer in the prime field.
    pub fn from_int(&self, n: i64) -> Elem {
        n.rem_euclid(self.0.p as i64) as Elem
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let i = &*self.0;
        if i.m == 1 {
            let s = a + b;
            if s >= i.p {
                s - i.p
            } else {
                s
            }
        } else if i.p == 2 {
            a ^ b
        } else if !i.add.is_empty() {
            i.add[(a * i.q + b) as usize]
        } else {
            let (mut a, mut b, mut w, mut r) = (a, b, 1u32, 0u32);
            while a > 0 || b > 0 {
                r += ((a % i.p + b % i.p) % i.p) * w;
                w *= i.p;
                a /= i.p;
                b /= i.p;
            }
            r
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.0.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            return 0;
        }
        let i = &*self.0;
        let s = i.log[a as usize] + i.log[b as usize];
        let n = i.q - 1;
        i.exp[(if s >= n { s - n } else { s }) as usize]
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self, a: Elem) -> Elem {
        assert!(a != 0, "inverse of zero");
        let i = &*self.0;
        let n = i.q - 1;
        let l = i.log[a as usize];
        i.exp[((n - l) % n) as usize]
    }

    pub fn div(&self, a: Elem, b: Elem) -> Elem {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let n = (self.0.q - 1) as u64;
        let l = self.0.log[a as usize] as u64;
        self.0.exp[((l * (e % n)) % n) as usize]
    }

    /// x ↦ x^p.
    pub fn frobenius(&self, a: Elem) -> Elem {
        self.pow(a, self.0.p as u64)
    }

    /// A generator of the multiplicative group.
    pub fn primitive_element(&self) -> Elem {
        if self.0.q == 2 {
            1
        } else {
            self.0.exp[1]
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.0.q
    }

    pub fn coeffs(&self, a: Elem) -> Vec<u32> {
        let mut a = a;
        (0..self.0.m)
            .map(|_| {
                let d = a % self.0.p;
                a /= self.0.p;
                d
            })
            .collect()
    }

    pub fn from_coeffs(&self, c: &[u32]) -> Result<Elem> {
        if c.len() != self.0.m as usize || c.iter().any(|&x| x >= self.0.p) {
            return Err(Error::Parse(format!(
                "element {c:?} is not a reduced coefficient list of length {}",
                self.0.m
            )));
        }
        Ok(c.iter().rev().fold(0u32, |acc, &x| acc * self.0.p + x))
    }

    /// Sum of the coefficient vector of multiples: `y += a * x`.
    #[inline]
    pub fn axpy(&self, y: &mut [Elem], a: Elem, x: &[Elem]) {
        if a == 0 {
            return;
        }
        for (yi, &xi) in y.iter_mut().zip(x) {
            if xi != 0 {
                *yi = self.add(*yi, self.mul(a, xi));
            }
        }
    }

    pub fn scale(&self, a: Elem, x: &[Elem]) -> Vec<Elem> {
        x.iter().map(|&xi| self.mul(a, xi)).collect()
    }

    pub fn vadd(&self, x: &[Elem], y: &[Elem]) -> Vec<Elem> {
        x.iter().zip(y).map(|(&a, &b)| self.add(a, b)).collect()
    }

    pub fn vsub(&self, x: &[Elem], y: &[Elem]) -> Vec<Elem> {
        x.iter().zip(y).map(|(&a, &b)| self.sub(a, b)).collect()
    }

    pub fn dot(&self, x: &[Elem], y: &[Elem]) -> Elem {
        x.iter()
            .zip(y)
            .fold(0, |acc, (&a, &b)| self.add(acc, self.mul(a, b)))
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Field) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.m == other.0.m && self.0.modulus == other.0.modulus)
    }
}
impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.0.p, self.0.m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf4_modulus_is_unique_quadratic() {
        // the only monic irreducible quadratic over GF(2): t^2+t+1
        let f = Field::new(2, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        let g = Field::new(2, 1).unwrap();
        assert_eq!(g.modulus(), &[0, 1]);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(Field::new(4, 1).unwrap_err(), Error::NotPrime(4));
        assert_eq!(Field::new(3, 0).unwrap_err(), Error::InvalidDegree(0));
    }

    #[test]
    fn inverse_of_two_mod_three() {
        let f = Field::prime(3).unwrap();
        assert_eq!(f.inv(2), 2);
        assert_eq!(f.mul(2, 2), 1);
    }

    // schoolbook product mod the modulus, independent of the log tables
    fn naive_mul(f: &Field, a: Elem, b: Elem) -> Elem {
        let p = f.p() as u64;
        let m = f.m() as usize;
        let da = f.coeffs(a);
        let db = f.coeffs(b);
        let mut prod = vec![0u64; 2 * m];
        for i in 0..m {
            for j in 0..m {
                prod[i + j] = (prod[i + j] + da[i] as u64 * db[j] as u64) % p;
            }
        }
        let md = f.modulus();
        for k in (m..2 * m).rev() {
            let c = prod[k];
            for (i, &mi) in md.iter().enumerate() {
                prod[k - m + i] = (prod[k - m + i] + p * p - c * mi as u64 % p) % p;
            }
        }
        let c: Vec<u32> = prod[..m].iter().map(|&x| x as u32).collect();
        f.from_coeffs(&c).unwrap()
    }

    #[test]
    fn arithmetic_matches_schoolbook_and_frobenius_is_automorphism() {
        for (p, m) in [(2, 1), (2, 2), (2, 3), (2, 4), (2, 5), (2, 6), (3, 1), (3, 2), (3, 3), (5, 1), (5, 2), (7, 2)] {
            let f = Field::new(p, m).unwrap();
            assert!(f.order() <= 64);
            for a in f.elements() {
                for b in f.elements() {
                    assert_eq!(f.mul(a, b), naive_mul(&f, a, b));
                    let s = f.add(a, b);
                    assert_eq!(f.frobenius(s), f.add(f.frobenius(a), f.frobenius(b)));
                    assert_eq!(f.frobenius(f.mul(a, b)), f.mul(f.frobenius(a), f.frobenius(b)));
                    assert_eq!(f.sub(s, b), a);
                }
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1);
                }
            }
            let images: std::collections::BTreeSet<_> = f.elements().map(|a| f.frobenius(a)).collect();
            assert_eq!(images.len() as u32, f.order());
        }
    }

    #[test]
    fn primitive_element_generates() {
        for (p, m) in [(2, 2), (2, 6), (3, 3), (5, 1), (3, 1)] {
            let f = Field::new(p, m).unwrap();
            let g = f.primitive_element();
            let mut seen = std::collections::BTreeSet::new();
            let mut x = 1;
            for _ in 0..f.order() - 1 {
                seen.insert(x);
                x = f.mul(x, g);
            }
            assert_eq!(seen.len() as u32, f.order() - 1);
        }
    }
}
