//! The JSON interchange format for algebras and scalar spaces.
//!
//! Field elements are written as integers over prime fields and as
//! coefficient lists (constant term first) over extension fields; both
//! forms are accepted on input.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ff::{Elem, Field};
use crate::lie::LieAlgebra;
use crate::restricted::{jacobson_construct, RestrictedAlgebra};
use crate::schunck::LambdaSpace;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    #[serde(default = "one")]
    pub m: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u32>>,
}

fn one() -> u32 {
    1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElemRepr {
    Int(u32),
    Coeffs(Vec<u32>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub value: Vec<ElemRepr>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub field: FieldSpec,
    pub dim: usize,
    #[serde(default)]
    pub labels: Vec<String>,
    #[serde(default)]
    pub brackets: Vec<BracketEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p_images: Option<Vec<Vec<ElemRepr>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LambdaFile {
    pub field: FieldSpec,
    pub ext_degree: u32,
    pub basis: Vec<ElemRepr>,
}

/// An algebra read from disk, with or without a p-operation.
#[derive(Clone, Debug)]
pub enum Loaded {
    Restricted(RestrictedAlgebra),
    Unrestricted(LieAlgebra),
}

impl Loaded {
    pub fn algebra(&self) -> &LieAlgebra {
        match self {
            Loaded::Restricted(r) => r.algebra(),
            Loaded::Unrestricted(l) => l,
        }
    }
    pub fn restricted(&self) -> Option<&RestrictedAlgebra> {
        match self {
            Loaded::Restricted(r) => Some(r),
            Loaded::Unrestricted(_) => None,
        }
    }
}

pub fn field_spec(f: &Field) -> FieldSpec {
    FieldSpec {
        p: f.p(),
        m: f.m(),
        modulus: if f.is_prime_field() { None } else { Some(f.modulus().to_vec()) },
    }
}

pub fn field_from_spec(s: &FieldSpec) -> Result<Field> {
    match &s.modulus {
        Some(m) => Field::from_parts(s.p, s.m, m),
        None => Field::new(s.p, s.m),
    }
}

pub fn elem_repr(f: &Field, a: Elem) -> ElemRepr {
    if f.is_prime_field() {
        ElemRepr::Int(a)
    } else {
        ElemRepr::Coeffs(f.coeffs(a))
    }
}

pub fn elem_from_repr(f: &Field, e: &ElemRepr) -> Result<Elem> {
    match e {
        ElemRepr::Int(a) if *a < f.order() => Ok(*a),
        ElemRepr::Int(a) => Err(Error::Parse(format!("element {a} outside GF({})", f.order()))),
        ElemRepr::Coeffs(c) => f.from_coeffs(c),
    }
}

fn vector(f: &Field, n: usize, v: &[ElemRepr]) -> Result<Vec<Elem>> {
    if v.len() != n {
        return Err(Error::Parse(format!("vector of length {} where {n} was expected", v.len())));
    }
    v.iter().map(|e| elem_from_repr(f, e)).collect()
}

fn vector_repr(f: &Field, v: &[Elem]) -> Vec<ElemRepr> {
    v.iter().map(|&a| elem_repr(f, a)).collect()
}

pub fn algebra_file(l: &LieAlgebra, p_images: Option<&[Vec<Elem>]>) -> AlgebraFile {
    let f = l.field();
    AlgebraFile {
        field: field_spec(f),
        dim: l.dim(),
        labels: l.labels().to_vec(),
        brackets: l
            .brackets()
            .into_iter()
            .map(|(i, j, v)| BracketEntry { i, j, value: vector_repr(f, &v) })
            .collect(),
        p_images: p_images.map(|im| im.iter().map(|v| vector_repr(f, v)).collect()),
    }
}

pub fn restricted_file(r: &RestrictedAlgebra) -> AlgebraFile {
    algebra_file(r.algebra(), Some(r.images()))
}

pub fn algebra_from_file(a: &AlgebraFile) -> Result<Loaded> {
    let f = field_from_spec(&a.field)?;
    let n = a.dim;
    let mut brackets = Vec::with_capacity(a.brackets.len());
    for b in &a.brackets {
        if b.i >= b.j || b.j >= n {
            return Err(Error::Parse(format!("bracket index pair ({}, {}) needs i < j < {n}", b.i, b.j)));
        }
        brackets.push((b.i, b.j, vector(&f, n, &b.value)?));
    }
    let mut l = LieAlgebra::new(&f, n, &brackets)?;
    if !a.labels.is_empty() {
        if a.labels.len() != n {
            return Err(Error::Parse(format!("{} labels for dimension {n}", a.labels.len())));
        }
        l.set_labels(a.labels.clone());
    }
    match &a.p_images {
        Some(im) => {
            if im.len() != n {
                return Err(Error::Parse(format!("{} p-images for dimension {n}", im.len())));
            }
            let images = im.iter().map(|v| vector(&f, n, v)).collect::<Result<Vec<_>>>()?;
            Ok(Loaded::Restricted(jacobson_construct(&l, images)?))
        }
        None => match jacobson_construct(&l, vec![vec![0; n]; n]) {
            Ok(r) => Ok(Loaded::Restricted(r)),
            Err(_) => Ok(Loaded::Unrestricted(l)),
        },
    }
}

pub fn parse_algebra(text: &str) -> Result<Loaded> {
    let a: AlgebraFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    algebra_from_file(&a)
}

pub fn lambda_file(s: &LambdaSpace) -> LambdaFile {
    let e = s.extension().field();
    LambdaFile {
        field: field_spec(s.base()),
        ext_degree: s.degree(),
        basis: s.basis().iter().map(|&b| ElemRepr::Coeffs(e.coeffs(b))).collect(),
    }
}

pub fn lambda_from_file(l: &LambdaFile) -> Result<LambdaSpace> {
    let base = field_from_spec(&l.field)?;
    let ext = Field::new(base.p(), base.m() * l.ext_degree)?;
    let basis = l.basis.iter().map(|b| elem_from_repr(&ext, b)).collect::<Result<Vec<_>>>()?;
    LambdaSpace::new(&base, l.ext_degree, basis)
}

pub fn parse_lambda(text: &str) -> Result<LambdaSpace> {
    let l: LambdaFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    lambda_from_file(&l)
}

pub fn to_pretty<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("plain data serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{build, Built};

    #[test]
    fn restricted_round_trip() {
        for key in ["der", "P", "Qstar", "atom_nonnull"] {
            let Built::Restricted(r) = build(key, 3).unwrap() else { panic!("{key}") };
            let text = to_pretty(&restricted_file(&r));
            let Loaded::Restricted(back) = parse_algebra(&text).unwrap() else { panic!("{key}") };
            assert!(back.algebra().same_structure(r.algebra()));
            assert_eq!(back.images(), r.images());
            assert_eq!(back.algebra().labels(), r.algebra().labels());
        }
    }

    #[test]
    fn missing_images_fall_back() {
        let Built::Ordinary(q) = build("Q", 2).unwrap() else { panic!() };
        let text = to_pretty(&algebra_file(&q, None));
        assert!(matches!(parse_algebra(&text).unwrap(), Loaded::Unrestricted(_)));
        let ab = LieAlgebra::abelian(&Field::prime(2).unwrap(), 2);
        let text = to_pretty(&algebra_file(&ab, None));
        let Loaded::Restricted(r) = parse_algebra(&text).unwrap() else { panic!() };
        assert!(r.is_null());
    }

    #[test]
    fn extension_field_elements() {
        let Built::Restricted(r) = build("P_lambda", 2).unwrap() else { panic!() };
        let file = restricted_file(&r);
        assert!(file.field.m == 2 || file.brackets.iter().all(|b| b.value.iter().all(|e| matches!(e, ElemRepr::Int(_)))));
        let Loaded::Restricted(back) = algebra_from_file(&file).unwrap() else { panic!() };
        assert!(back.algebra().same_structure(r.algebra()));
    }

    #[test]
    fn lambda_round_trip() {
        let Built::Lambda(s) = build("notpn", 2).unwrap() else { panic!() };
        let back = parse_lambda(&to_pretty(&lambda_file(&s))).unwrap();
        assert_eq!(back.basis(), s.basis());
        assert_eq!(back.is_p_normal(), s.is_p_normal());
    }

    #[test]
    fn rejects_malformed() {
        assert!(matches!(parse_algebra("{"), Err(Error::Parse(_))));
        let bad = r#"{"field":{"p":2},"dim":2,"brackets":[{"i":1,"j":0,"value":[1,0]}]}"#;
        assert!(matches!(parse_algebra(bad), Err(Error::Parse(_))));
        let bad = r#"{"field":{"p":2},"dim":2,"brackets":[{"i":0,"j":1,"value":[2,0]}]}"#;
        assert!(matches!(parse_algebra(bad), Err(Error::Parse(_))));
        let bad = r#"{"field":{"p":4},"dim":1}"#;
        assert!(matches!(parse_algebra(bad), Err(Error::NotPrime(4))));
    }
}
