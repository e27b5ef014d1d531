//! Classes of restricted algebras, projectors, residuals, centrality of
//! chief factors and modules, and eigenvalue-defined formations.

mod class;
mod closure;
mod lambda;
mod modules;
mod projector;
mod radical;

pub use class::{no_lambda_files, und_membership, ClassDescriptor, Flags, Kind, LambdaSpec, Ordinary, Route, Verdict};
pub use closure::{closure_check, ClosureReport};
pub use lambda::{
    build_p_lambda, companion, eigenvalue_set, eigenvalues_in, find_qn, root_space, EigenScan, EigenvalueSet,
    LambdaSpace, EIGEN_SCAN_LIMIT,
};
pub use modules::{
    classify_chief_factor, factor_centrality, factor_split_extension, hypercentral_decomposition, is_module_central,
    ChiefFactorReport, Decomposition,
};
pub use projector::{all_projectors, is_covering, projector, projector_recursive, residual, Projector, ProjectorLattice};
pub use radical::{
    factor_centralizer, is_ordinary_primitive, nilradical, nilradical_restricted, ordinary_chief_series,
    ordinary_primitive_quotients,
};

#[cfg(test)]
mod tests;
