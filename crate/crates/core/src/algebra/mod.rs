//! Exact linear algebra over the integers, `Z/M` and the rationals.

pub mod coeff;
pub mod group;
pub mod homology;
pub mod intmat;
pub mod rational;
pub mod zn;

pub use coeff::CoefficientModule;
pub use group::AbelianGroup;
pub use homology::{homology_of_pair, solve_membership, GroupHom, Homology};
pub use intmat::{smith_normal_form, IntMatrix, Snf};
pub use rational::RationalMatrix;
pub use zn::ZnMatrix;
