//! Exact spectra of rational matrices and rational-linear eigenvalue forms
//! of symbolic symmetric matrices.

mod eigenforms;
mod eigs;
mod matrix;

pub use eigenforms::{
    find_linear_eigenforms, linear_factor_residual, LinearEigenform, SamplerConfig, Verification, VerificationMode,
};
pub use eigs::{nullity, rational_eigs, Eigenvalue, Spectrum};
pub use matrix::RationalMatrix;

use crate::poly::Rational;

pub(crate) fn ser_rational<S: serde::Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}
