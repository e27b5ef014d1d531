//! Finite fields and the exact linear algebra built on them.

mod ext;
mod field;
mod matrix;
mod poly;
mod subspace;

pub use ext::Extension;
pub use field::{is_prime, Elem, Field};
pub use matrix::{Matrix, Rref};
pub use poly::Poly;
pub use subspace::{Points, Subspace};
