//! Exact rational arithmetic, sparse multivariate polynomials and
//! polynomial matrices.

mod legend;
mod matrix;
mod mpoly;
mod rational;
pub mod univariate;

pub use legend::{parse_factored, parse_poly, VariableLegend};
pub use matrix::PolyMatrix;
pub use mpoly::{MPoly, Monomial};
pub use rational::{parse_rational, rat, rat_frac, Rational};
pub use univariate::UPoly;
