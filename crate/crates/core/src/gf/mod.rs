mod equivalence;
mod field;
mod gamma;
mod json;
mod mat;
mod subspace;

pub use equivalence::{projectively_equivalent, scale_columns};
pub use field::{PrimeField, MAX_MODULUS};
pub use gamma::SubgroupGamma;
pub use json::MatJson;
pub use mat::{numbered, Mat, Rref};
pub use subspace::{complementary_projection, Subspace};
