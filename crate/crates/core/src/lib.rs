//! Exact computational algebra for symmetrized group-coset matrices.
//!
//! The crate builds finite groups from small specifications, partitions a
//! group into symmetrized double cosets `HgH ∪ Hg⁻¹H`, forms the
//! symmetrized group-coset matrix `M^sym(G,H)` over sparse rational
//! polynomials, and analyses it: group determinants, rational-linear
//! eigenvalue forms, and the boundary-matrix pipeline that turns a rational
//! specialization of the class variables into slopes with filling ranks.
//!
//! Everything is exact over `Q` except the abelian character cross-check,
//! which uses floating complex numbers on purpose.

pub mod coset_matrix;
pub mod error;
pub mod goldens;
pub mod group;
pub mod poly;
pub mod repr;
pub mod slope;
pub mod spectral;

pub use error::{Error, Result};
pub use group::{FiniteGroup, GroupSpec, Subgroup, SubgroupSpec};
pub use poly::{MPoly, PolyMatrix, Rational, VariableLegend};
pub use spectral::RationalMatrix;

/// Default seed for every seeded sampler in the crate.
pub const DEFAULT_SEED: u64 = 0xC0FFEE;
