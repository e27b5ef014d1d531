pub mod error;
pub mod ff;
pub mod lie;
pub mod restricted;
pub mod cohomology;
pub mod schunck;
pub mod envelopes;
pub mod catalog;
pub mod json;
pub mod laws;

pub use error::{Error, Result};
