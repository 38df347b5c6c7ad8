//! Quandle cochain complexes and their cohomology.

pub mod complex;
pub mod differential;
pub mod groups;
pub mod module;

pub use complex::{Cochain, CochainBasis};
pub use differential::{
    coboundary, differential_matrix, generalized_differential_matrix, satisfies_two_cocycle_condition, Coefficients,
};
pub use groups::{cohomology_group, induced_map, is_coboundary, CochainMap, CohomologyGroup};
pub use module::QuandleModule;
