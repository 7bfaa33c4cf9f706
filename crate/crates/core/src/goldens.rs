//! Published factorizations of symmetrized group determinants and the
//! eigenvalue table for `PSL(2, Z_p)`, with checks against computed values.

use serde::Serialize;

use crate::coset_matrix::{element_legend, group_determinant, sym_group_determinant};
use crate::error::Result;
use crate::group::GroupSpec;
use crate::poly::{parse_factored, Rational, VariableLegend};
use crate::repr::psl2_lambda;

/// `(name, group, factored det^sym)` with variables named after the least
/// element of each class.
pub fn sym_det_goldens() -> Vec<(&'static str, GroupSpec, &'static str)> {
    use GroupSpec::*;
    let z = |n| Cyclic { n };
    vec![
        ("Z3", z(3), "(a + 2b)(a - b)^2"),
        ("Z4", z(4), "(a + 2b + c)(a - 2b + c)(a - c)^2"),
        ("Z5", z(5), "(a + 2b + 2c)(a^2 - ab - b^2 - ac + 3bc - c^2)^2"),
        ("Z6", z(6), "(a + 2b + 2c + d)(a + b - c - d)^2(a - 2b + 2c - d)(a - b - c + d)^2"),
        (
            "Z8",
            z(8),
            "(a + 2b + 2c + 2d + e)(a - 2c + e)^2(a - 2b + 2c - 2d + e)(a^2 - 2b^2 + 4bd - 2d^2 - 2ae + e^2)^2",
        ),
        (
            "D6",
            Dihedral { order: 6 },
            "(a + 2b + d + e + f)(a + 2b - d - e - f)(a^2 - 2ab + b^2 - d^2 + de - e^2 + df + ef - f^2)^2",
        ),
        (
            "Q8",
            Quaternion,
            "(a + 2b + 2c + 2d + e)(a - e)^4(a + 2b - 2c - 2d + e)(a - 2b + 2c - 2d + e)(a - 2b - 2c + 2d + e)",
        ),
        (
            "Z2+Z2",
            DirectSum { factors: vec![z(2), z(2)] },
            "(a + b + c + d)(a + b - c - d)(a - b + c - d)(a - b - c + d)",
        ),
        (
            "Z3+Z3",
            DirectSum { factors: vec![z(3), z(3)] },
            "(a + 2b + 2d + 2e + 2f)(-a + b + d + e - 2f)^2(a - b + 2d - e - f)^2(-a + b + d - 2e + f)^2(-a - 2b + d + e + f)^2",
        ),
    ]
}

/// Full group determinant of `Z_3` over `a, b, c`.
pub const Z3_GROUP_DET: &str = "(a + b + c)(a^2 - ab + b^2 - ac - bc + c^2)";

/// `(p, λ)` with `λ` over letters in an unspecified class order.
pub const LAMBDA_TABLE: [(u64, &str); 6] = [
    (5, "a + b - c - d"),
    (7, "a + 2b - c - d - e"),
    (11, "a + 2b + 2c - d - e - f - g - h"),
    (13, "a + b + 2c + 2d - e - f - g - h - i - j"),
    (17, "a + b + 2c + 2d + 2e - f - g - h - i - j - k - l - m"),
    (19, "a + 2b + 2c + 2d + 2e - f - g - h - i - j - k - l - m - n"),
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GoldenOutcome {
    pub name: String,
    pub expected: String,
    pub computed: String,
    pub passed: bool,
}

/// Expands `factored` and compares it with the computed `det^sym`.
pub fn check_sym_det(name: &str, spec: &GroupSpec, factored: &str) -> Result<GoldenOutcome> {
    let group = spec.build()?;
    let (det, legend) = sym_group_determinant(&group)?;
    let expected = parse_factored(factored, &legend)?;
    Ok(GoldenOutcome {
        name: name.to_string(),
        expected: legend.format(&expected),
        computed: legend.format(&det),
        passed: expected == det,
    })
}

pub fn check_z3_group_det() -> Result<GoldenOutcome> {
    let group = GroupSpec::Cyclic { n: 3 }.build()?;
    let legend = element_legend(&group);
    let det = group_determinant(&group)?;
    let expected = parse_factored(Z3_GROUP_DET, &legend)?;
    Ok(GoldenOutcome {
        name: "Z3 full".into(),
        expected: legend.format(&expected),
        computed: legend.format(&det),
        passed: expected == det,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LambdaOutcome {
    pub p: u64,
    pub lambda: String,
    pub table_row: String,
    /// Coefficient of the class of `H` is 1.
    pub unit_identity_coefficient: bool,
    /// The remaining coefficients agree with the table row as a multiset.
    pub coefficients_match: bool,
    /// Eigenspace dimension of `λ` at each seeded specialization.
    pub eigenspace_dims: Vec<usize>,
    pub passed: bool,
}

/// Sorted coefficients of a linear form other than the first.
fn tail_multiset(coeffs: &[Rational]) -> Vec<Rational> {
    let mut tail = coeffs[1..].to_vec();
    tail.sort();
    tail
}

/// Computes `λ` for `PSL(2, Z_p)`, compares it with the table row, and
/// checks its eigenspace dimension at `points` seeded specializations.
pub fn check_lambda(p: u64, row: &str, points: usize, seed: u64) -> Result<LambdaOutcome> {
    let lambda = psl2_lambda(p)?;
    let coeffs = lambda.form.linear_coefficients().expect("linear form");
    let row_legend = VariableLegend::letters(coeffs.len());
    let row_form = parse_factored(row, &row_legend)?;
    let row_coeffs = row_form.linear_coefficients().expect("linear row");
    let unit = coeffs[0] == Rational::from_integer(1.into());
    let coefficients_match = row_coeffs[0] == coeffs[0] && tail_multiset(&coeffs) == tail_multiset(&row_coeffs);

    let eigenspace_dims = lambda.eigenspace_dims(points, seed)?;
    let bound = lambda.multiplicity_bound;
    Ok(LambdaOutcome {
        p,
        lambda: lambda.legend.format(&lambda.form),
        table_row: row.to_string(),
        unit_identity_coefficient: unit,
        coefficients_match,
        passed: unit && coefficients_match && eigenspace_dims.iter().all(|&d| d >= bound),
        eigenspace_dims,
    })
}
