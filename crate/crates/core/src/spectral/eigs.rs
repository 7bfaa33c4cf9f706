use serde::Serialize;

use super::matrix::RationalMatrix;
use crate::error::{Error, Result};
use crate::poly::Rational;

/// One rational eigenvalue with its algebraic multiplicity and the
/// dimension of its eigenspace.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Eigenvalue {
    #[serde(serialize_with = "crate::spectral::ser_rational")]
    pub value: Rational,
    pub algebraic: usize,
    pub geometric: usize,
}

/// Rational part of a spectrum. `residual_degrees` lists the degrees of the
/// square-free parts of the characteristic polynomial that have no rational
/// roots, once per multiplicity; together with the algebraic
/// multiplicities they add up to the matrix size.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Spectrum {
    pub eigenvalues: Vec<Eigenvalue>,
    pub residual_degrees: Vec<usize>,
}

impl Spectrum {
    pub fn find(&self, value: &Rational) -> Option<&Eigenvalue> {
        self.eigenvalues.iter().find(|e| &e.value == value)
    }

    pub fn algebraic_total(&self) -> usize {
        self.eigenvalues.iter().map(|e| e.algebraic).sum::<usize>() + self.residual_degrees.iter().sum::<usize>()
    }
}

/// Every rational eigenvalue of a square rational matrix, ascending, with
/// exact multiplicities. Completeness does not depend on factoring any
/// integer: roots come from exact real-root isolation of the square-free
/// parts of the characteristic polynomial.
pub fn rational_eigs(m: &RationalMatrix) -> Result<Spectrum> {
    if !m.is_square() {
        return Err(Error::Dimension("spectrum of a non-square matrix".into()));
    }
    let report = m.charpoly()?.rational_roots();
    let mut eigenvalues = Vec::with_capacity(report.roots.len());
    for (value, algebraic) in report.roots {
        let geometric = m.sub_scalar(&value)?.nullity();
        eigenvalues.push(Eigenvalue {
            value,
            algebraic,
            geometric,
        });
    }
    Ok(Spectrum {
        eigenvalues,
        residual_degrees: report.residual_degrees,
    })
}

/// Dimension of the kernel of `m`.
pub fn nullity(m: &RationalMatrix) -> usize {
    m.nullity()
}
