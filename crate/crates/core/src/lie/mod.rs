mod algebra;
pub mod iso;
pub mod lattice;
mod module;

pub use algebra::{Closure, LieAlgebra, Quotient, SeriesKind, SeriesReport};
pub use lattice::DEFAULT_BUDGET;
pub use module::Representation;
