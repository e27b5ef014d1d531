mod pop;
mod structure;

pub use pop::{
    base_p_images, enumerate_p_operations, evaluate_with, is_restrictable, is_restrictable_by_scan,
    jacobson_construct, jacobson_correction, POperation, RestrictedAlgebra,
};
pub use structure::{factor_module, ChiefFactor, ChiefSeries, FactorKind, PQuotient};
