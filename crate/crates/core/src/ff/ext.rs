use std::collections::HashMap;

use super::field::{Elem, Field};
use super::poly::Poly;
use crate::error::{Error, Result};

/// An extension `E = GF(p^{m d})` of `F = GF(p^m)` with a fixed embedding.
///
/// The embedding sends the generator class `t` of `F` to the least root of
/// the modulus of `F` inside `E`.
#[derive(Clone, Debug)]
pub struct Extension {
    base: Field,
    ext: Field,
    degree: u32,
    image: Vec<Elem>,
    preimage: HashMap<Elem, Elem>,
}

impl Extension {
    pub fn new(base: &Field, degree: u32) -> Result<Extension> {
        if degree < 1 {
            return Err(Error::InvalidDegree(degree));
        }
        let ext = Field::new(base.p(), base.m() * degree)?;
        let image: Vec<Elem> = if base.m() == 1 {
            base.elements().collect()
        } else {
            let md: Vec<Elem> = base.modulus().to_vec();
            let mp = Poly::new(md);
            let root = ext
                .elements()
                .find(|&x| mp.eval(&ext, x) == 0)
                .expect("modulus of the base splits in the extension");
            let mut powers = vec![1];
            for i in 1..base.m() as usize {
                let prev = powers[i - 1];
                powers.push(ext.mul(prev, root));
            }
            base.elements()
                .map(|a| {
                    base.coeffs(a)
                        .iter()
                        .zip(&powers)
                        .fold(0, |acc, (&c, &w)| ext.add(acc, ext.mul(c, w)))
                })
                .collect()
        };
        let preimage = image.iter().enumerate().map(|(a, &e)| (e, a as Elem)).collect();
        Ok(Extension {
            base: base.clone(),
            ext,
            degree,
            image,
            preimage,
        })
    }

    pub fn base(&self) -> &Field {
        &self.base
    }
    pub fn field(&self) -> &Field {
        &self.ext
    }
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn embed(&self, a: Elem) -> Elem {
        self.image[a as usize]
    }

    /// The base element mapping to `e`, if `e` lies in the image.
    pub fn restrict(&self, e: Elem) -> Option<Elem> {
        self.preimage.get(&e).copied()
    }

    pub fn embed_poly(&self, p: &Poly) -> Poly {
        Poly::new(p.coeffs().iter().map(|&c| self.embed(c)).collect())
    }

    /// Roots in `E` of a polynomial over `F`, with multiplicity.
    pub fn roots(&self, p: &Poly) -> Vec<Elem> {
        self.embed_poly(p).roots(&self.ext)
    }

    /// Minimal polynomial over `F` of an element of `E`.
    pub fn minimal_poly(&self, x: Elem) -> Poly {
        let e = &self.ext;
        let qf = self.base.order() as u64;
        let mut conj = vec![x];
        loop {
            let next = e.pow(*conj.last().unwrap(), qf);
            if next == x {
                break;
            }
            conj.push(next);
        }
        let mut m = Poly::one();
        for c in conj {
            m = m.mul(e, &Poly::new(vec![e.neg(c), 1]));
        }
        let coeffs = m
            .coeffs()
            .iter()
            .map(|&c| self.restrict(c).expect("minimal polynomial has base coefficients"))
            .collect();
        Poly::new(coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedding_is_a_ring_homomorphism() {
        let f = Field::new(2, 2).unwrap();
        let x = Extension::new(&f, 3).unwrap();
        assert_eq!(x.field().order(), 64);
        for a in f.elements() {
            for b in f.elements() {
                assert_eq!(x.embed(f.add(a, b)), x.field().add(x.embed(a), x.embed(b)));
                assert_eq!(x.embed(f.mul(a, b)), x.field().mul(x.embed(a), x.embed(b)));
            }
        }
    }

    #[test]
    fn cube_root_of_non_cube_over_gf4() {
        let f = Field::new(2, 2).unwrap();
        let x = Extension::new(&f, 3).unwrap();
        // c = t is not a cube in GF(4)*, a group of order 3 whose cubes are {1}
        let c = 2;
        let poly = Poly::new(vec![f.neg(c), 0, 0, 1]);
        assert!(poly.roots(&f).is_empty());
        let roots = x.roots(&poly);
        assert_eq!(roots.len(), 3);
        // oracle: direct cube check in GF(64)
        for r in &roots {
            assert_eq!(x.field().pow(*r, 3), x.embed(c));
        }
        let companion = crate::ff::Matrix::from_rows(3, &[vec![0, 0, c], vec![1, 0, 0], vec![0, 1, 0]]);
        assert_eq!(companion.char_poly(&f), poly);
        assert_eq!(x.minimal_poly(roots[0]), poly);
    }
}
