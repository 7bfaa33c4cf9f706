//! Constant-slope subspaces and the boundary-matrix route from a
//! specialization of `M^sym(G, H)` to slopes with filling ranks.
//!
//! A half-dimensional subspace `U` of `Q^n ⊕ Q^n` is given by the columns of
//! `[A; B]`. A vector of constant slope `[x:y]` in `U` is a `ν` with
//! `Aν = x·w` and `Bν = y·w` for one `w`, so these vectors are the kernel of
//! `[[A, -xI], [B, -yI]]`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize, Serializer};

use crate::coset_matrix::sym_coset_matrix;
use crate::error::{Error, Result};
use crate::group::{CosetTable, FiniteGroup, GroupSpec, Subgroup, SubgroupSpec, SymClassPartition};
use crate::poly::{parse_rational, MPoly, PolyMatrix, Rational, UPoly, VariableLegend};
use crate::spectral::{rational_eigs, RationalMatrix, Spectrum};

/// The columns of `[A; B]` span `U`; column `j` is `Σ_i a_ij α_i + b_ij β_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubspacePair {
    a: RationalMatrix,
    b: RationalMatrix,
}

impl SubspacePair {
    pub fn new(a: RationalMatrix, b: RationalMatrix) -> Result<Self> {
        let n = a.rows();
        if !a.is_square() || b.rows() != n || b.cols() != n {
            return Err(Error::Dimension("A and B must be square of the same size".into()));
        }
        let stacked = RationalMatrix::from_fn(2 * n, n, |(i, j)| {
            if i < n {
                a.get(i, j).clone()
            } else {
                b.get(i - n, j).clone()
            }
        })?;
        if stacked.rank() != n {
            return Err(Error::Precondition("the columns of [A; B] are linearly dependent".into()));
        }
        Ok(SubspacePair { a, b })
    }

    pub fn dim(&self) -> usize {
        self.a.rows()
    }

    pub fn a(&self) -> &RationalMatrix {
        &self.a
    }

    pub fn b(&self) -> &RationalMatrix {
        &self.b
    }

    fn block(&self, x: &Rational, y: &Rational) -> Result<RationalMatrix> {
        let n = self.dim();
        RationalMatrix::from_fn(2 * n, 2 * n, |(i, j)| {
            let top = i < n;
            let left = j < n;
            let (r, c) = (i % n, j % n);
            match (top, left) {
                (true, true) => self.a.get(r, c).clone(),
                (false, true) => self.b.get(r, c).clone(),
                (true, false) if r == c => -x.clone(),
                (false, false) if r == c => -y.clone(),
                _ => Rational::zero(),
            }
        })
    }
}

/// Homogeneous `p(x, y) = Σ_i coeffs[i]·x^i·y^(n-i)`, defined up to sign.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlopePolynomial {
    pub coeffs: Vec<Rational>,
    pub degenerate: bool,
}

impl SlopePolynomial {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// As a polynomial in the two variables `x` (index 0) and `y` (index 1).
    pub fn to_mpoly(&self) -> MPoly {
        let n = self.degree() as u32;
        let terms = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| (crate::poly::Monomial::from_exponents(vec![i as u32, n - i as u32]), c.clone()));
        MPoly::from_terms(2, terms).expect("two variables")
    }

    pub fn eval(&self, x: &Rational, y: &Rational) -> Rational {
        self.to_mpoly().evaluate(&[x.clone(), y.clone()]).expect("two variables")
    }

    pub fn legend() -> VariableLegend {
        VariableLegend::from_names(vec!["x".into(), "y".into()]).expect("distinct names")
    }
}

/// `p(x, y) = det [[A, -xI], [B, -yI]]`, expanded exactly.
pub fn slope_polynomial(u: &SubspacePair) -> Result<SlopePolynomial> {
    let n = u.dim();
    let x = MPoly::var(2, 0);
    let y = MPoly::var(2, 1);
    let m = PolyMatrix::from_fn(2 * n, 2 * n, 2, |i, j| {
        let (r, c) = (i % n, j % n);
        match (i < n, j < n) {
            (true, true) => MPoly::constant(2, u.a.get(r, c).clone()),
            (false, true) => MPoly::constant(2, u.b.get(r, c).clone()),
            (true, false) if r == c => -&x,
            (false, false) if r == c => -&y,
            _ => MPoly::zero(2),
        }
    })?;
    let det = m.det_bareiss()?;
    let mut coeffs = vec![Rational::zero(); n + 1];
    for (mono, c) in det.terms() {
        let e = mono.exponents();
        if (e[0] + e[1]) as usize != n {
            return Err(Error::Inconsistency(format!("slope polynomial is not homogeneous of degree {n}")));
        }
        coeffs[e[0] as usize] = c.clone();
    }
    Ok(SlopePolynomial {
        degenerate: det.is_zero(),
        coeffs,
    })
}

/// A slope `m·α + n·β`, normalized to `m > 0` and `gcd(m, n) = 1`, or
/// `(0, 1)`. As a projective point it is `[x:y] = [m:n]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Slope {
    #[serde(serialize_with = "ser_int")]
    pub m: BigInt,
    #[serde(serialize_with = "ser_int")]
    pub n: BigInt,
}

fn ser_int<S: Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v.to_i64() {
        Some(x) => s.serialize_i64(x),
        None => s.serialize_str(&v.to_string()),
    }
}

fn ser_rationals<S: Serializer>(v: &Option<Vec<Rational>>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(values) => s.collect_seq(values.iter().map(|r| r.to_string())),
        None => s.serialize_none(),
    }
}

impl Slope {
    pub fn new(m: BigInt, n: BigInt) -> Result<Self> {
        if m.is_zero() && n.is_zero() {
            return Err(Error::Precondition("slope (0, 0)".into()));
        }
        let g = m.gcd(&n);
        let (mut m, mut n) = (m / &g, n / &g);
        if m.is_negative() || (m.is_zero() && n.is_negative()) {
            m = -m;
            n = -n;
        }
        Ok(Slope { m, n })
    }

    /// The slope `m·α + n·β` whose ratio `n/m` is `t`.
    pub fn from_ratio(t: &Rational) -> Self {
        Slope {
            m: t.denom().clone(),
            n: t.numer().clone(),
        }
    }

    /// `(0, 1)`, the point `[0:1]`.
    pub fn vertical() -> Self {
        Slope {
            m: BigInt::zero(),
            n: BigInt::one(),
        }
    }

    /// `n/m`, or `None` for `(0, 1)`.
    pub fn ratio(&self) -> Option<Rational> {
        (!self.m.is_zero()).then(|| Rational::new(self.n.clone(), self.m.clone()))
    }

    pub fn x(&self) -> Rational {
        Rational::from_integer(self.m.clone())
    }

    pub fn y(&self) -> Rational {
        Rational::from_integer(self.n.clone())
    }
}

/// `dim W(x₀, y₀)`, the dimension of the constant-slope `[x₀:y₀]` vectors.
pub fn constant_slope_dim(u: &SubspacePair, x0: &Rational, y0: &Rational) -> Result<usize> {
    if x0.is_zero() && y0.is_zero() {
        return Err(Error::Precondition("slope (0, 0)".into()));
    }
    Ok(u.block(x0, y0)?.nullity())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SlopeRank {
    #[serde(flatten)]
    pub slope: Slope,
    pub dim: usize,
}

/// Slopes with a positive-dimensional constant-slope space, with the
/// degrees of irrational root factors of `p(1, t)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SlopeScan {
    pub slopes: Vec<SlopeRank>,
    pub residual_degrees: Vec<usize>,
}

/// Every rational projective root of `p`: `[0:1]` for each factor of `x`,
/// and `[1:t]` for each rational root `t` of `p(1, t)`.
pub fn slopes_with_positive_rank(u: &SubspacePair) -> Result<SlopeScan> {
    let p = slope_polynomial(u)?;
    if p.degenerate {
        return Err(Error::Precondition("slope polynomial is identically zero".into()));
    }
    let n = p.degree();
    // p(1, t) = Σ_i coeffs[i]·t^(n-i)
    let dehomogenized = UPoly::new(p.coeffs.iter().rev().cloned().collect());
    let report = dehomogenized.rational_roots();
    let mut slopes = Vec::new();
    let x_power = n - dehomogenized.degree().unwrap_or(0);
    if x_power > 0 {
        let dim = constant_slope_dim(u, &Rational::zero(), &Rational::one())?;
        slopes.push(SlopeRank {
            slope: Slope::vertical(),
            dim,
        });
    }
    for (t, _) in &report.roots {
        let slope = Slope::from_ratio(t);
        let dim = constant_slope_dim(u, &slope.x(), &slope.y())?;
        slopes.push(SlopeRank { slope, dim });
    }
    if slopes.iter().any(|s| s.dim == 0) {
        return Err(Error::Inconsistency("root of the slope polynomial with no constant-slope vector".into()));
    }
    slopes.sort_by(|a, b| a.slope.cmp(&b.slope));
    Ok(SlopeScan {
        slopes,
        residual_degrees: report.residual_degrees,
    })
}

/// Spectrum of `B·A⁻¹`; eigenvalue `y/x` corresponds to slope `[x:y]`.
pub fn eigen_route(u: &SubspacePair) -> Result<Spectrum> {
    let inv = u.a.inverse().map_err(|_| {
        Error::Precondition("A is singular, so U contains a constant-slope [0:1] vector".into())
    })?;
    rational_eigs(&u.b.mul(&inv)?)
}

/// A specialization of the class variables of `M^sym(G, H)`, keyed by the
/// variable names `a, b, ...`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FillingSpec {
    pub group: GroupSpec,
    #[serde(default = "SubgroupSpec::trivial")]
    pub subgroup: SubgroupSpec,
    pub values: BTreeMap<String, ValueText>,
}

/// A rational given as `"p/q"`, `"p"` or a JSON integer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ValueText {
    Text(String),
    Integer(i64),
}

impl ValueText {
    pub fn parse(&self) -> Result<Rational> {
        match self {
            ValueText::Text(s) => parse_rational(s),
            ValueText::Integer(v) => Ok(Rational::from_integer((*v).into())),
        }
    }
}

impl FillingSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Group, subgroup and the value of every class variable in class order.
    pub fn resolve(&self) -> Result<(FiniteGroup, Subgroup, Vec<Rational>, VariableLegend)> {
        let group = self.group.build()?;
        let subgroup = self.subgroup.resolve(&group)?;
        let legend = sym_coset_matrix(&group, &subgroup).legend;
        for key in self.values.keys() {
            if legend.index_of(key).is_none() {
                return Err(Error::Parse(format!("unknown class variable {key:?}")));
            }
        }
        let values = legend
            .names()
            .iter()
            .map(|name| {
                self.values
                    .get(name)
                    .ok_or_else(|| Error::MissingClassValue(name.clone()))?
                    .parse()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((group, subgroup, values, legend))
    }
}

/// `B = t(M^sym(G, H))`.
pub fn boundary_matrix(spec: &FillingSpec) -> Result<RationalMatrix> {
    let (group, subgroup, values, _) = spec.resolve()?;
    specialized_boundary(&group, &subgroup, &values)
}

pub fn specialized_boundary(group: &FiniteGroup, subgroup: &Subgroup, values: &[Rational]) -> Result<RationalMatrix> {
    sym_coset_matrix(group, subgroup).matrix.evaluate(values)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FillRank {
    #[serde(flatten)]
    pub slope: Slope,
    pub fillrank: usize,
}

/// Slopes `m·α + n·β` with positive filling rank, ordered by `n/m`
/// ascending. At most `k` slopes are listed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FillRankReport {
    pub slopes: Vec<FillRank>,
    pub k: usize,
    pub residual_degrees: Vec<usize>,
}

pub fn filling_ranks(spec: &FillingSpec) -> Result<FillRankReport> {
    fill_ranks_of(&boundary_matrix(spec)?)
}

/// Eigenvalue `n/m` of the boundary matrix gives slope `(m, n)` with
/// filling rank equal to its eigenspace dimension.
pub fn fill_ranks_of(b: &RationalMatrix) -> Result<FillRankReport> {
    if !b.is_symmetric() {
        return Err(Error::Precondition("boundary matrix is not symmetric".into()));
    }
    let spectrum = rational_eigs(b)?;
    let slopes = spectrum
        .eigenvalues
        .iter()
        .map(|e| FillRank {
            slope: Slope::from_ratio(&e.value),
            fillrank: e.geometric,
        })
        .collect();
    Ok(FillRankReport {
        slopes,
        k: b.rows(),
        residual_degrees: spectrum.residual_degrees,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub passed: bool,
    /// Indices exhibiting a failure: `(g, i, j)` for invariance, `(i, j)`
    /// for symmetry, `(g)` for inversion.
    pub witness: Option<Vec<usize>>,
}

impl IdentityCheck {
    fn from_witness(witness: Option<Vec<usize>>) -> Self {
        IdentityCheck {
            passed: witness.is_none(),
            witness,
        }
    }
}

/// Whether a function on pairs of cosets is left-invariant, symmetric and
/// inversion-invariant, and on success the induced function on classes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub invariance: IdentityCheck,
    pub symmetry: IdentityCheck,
    pub inversion: IdentityCheck,
    #[serde(serialize_with = "ser_rationals")]
    pub induced: Option<Vec<Rational>>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.invariance.passed && self.symmetry.passed && self.inversion.passed
    }
}

/// `b[i][j]` is read as `B(g_i H, g_j H)` over the left coset
/// representatives of `H`.
pub fn verify_boundary_identities(b: &RationalMatrix, group: &FiniteGroup, subgroup: &Subgroup) -> Result<IdentityReport> {
    let cosets = CosetTable::new(group, subgroup);
    let k = cosets.len();
    if b.rows() != k || b.cols() != k {
        return Err(Error::Dimension(format!("expected a {k}x{k} matrix")));
    }
    let reps = cosets.reps();
    let invariance = (0..group.order()).find_map(|g| {
        (0..k).find_map(|i| {
            (0..k).find_map(|j| {
                let gi = cosets.coset_of(group.mul(g, reps[i]));
                let gj = cosets.coset_of(group.mul(g, reps[j]));
                (b.get(gi, gj) != b.get(i, j)).then(|| vec![g, i, j])
            })
        })
    });
    let symmetry = (0..k).find_map(|i| (i + 1..k).find_map(|j| (b.get(i, j) != b.get(j, i)).then(|| vec![i, j])));
    let base = cosets.coset_of(group.identity());
    let inversion = (0..group.order()).find_map(|g| {
        let forward = cosets.coset_of(g);
        let backward = cosets.coset_of(group.inv(g));
        (b.get(base, backward) != b.get(base, forward)).then(|| vec![g])
    });
    let mut report = IdentityReport {
        invariance: IdentityCheck::from_witness(invariance),
        symmetry: IdentityCheck::from_witness(symmetry),
        inversion: IdentityCheck::from_witness(inversion),
        induced: None,
    };
    if report.passed() {
        let classes = SymClassPartition::new(group, subgroup);
        let induced: Vec<Rational> = classes
            .classes()
            .iter()
            .map(|c| b.get(base, cosets.coset_of(c[0])).clone())
            .collect();
        if &specialized_boundary(group, subgroup, &induced)? != b {
            return Err(Error::Inconsistency("identities hold but B is not t(M^sym(G, H))".into()));
        }
        report.induced = Some(induced);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, rat_frac};
    use proptest::prelude::*;

    fn pair(a: &[&[i64]], b: &[&[i64]]) -> SubspacePair {
        SubspacePair::new(RationalMatrix::from_i64(a).unwrap(), RationalMatrix::from_i64(b).unwrap()).unwrap()
    }

    fn slope(m: i64, n: i64) -> Slope {
        Slope::new(m.into(), n.into()).unwrap()
    }

    fn format(p: &SlopePolynomial) -> String {
        SlopePolynomial::legend().format(&p.to_mpoly())
    }

    fn z3_spec(a: &str, b: &str) -> FillingSpec {
        FillingSpec::from_json(&format!(
            r#"{{"group":{{"family":"cyclic","n":3}},"values":{{"a":"{a}","b":"{b}"}}}}"#
        ))
        .unwrap()
    }

    #[test]
    fn slope_normalization() {
        assert_eq!(slope(-2, 4), slope(1, -2));
        assert_eq!(slope(0, -3), Slope::vertical());
        assert_eq!(Slope::from_ratio(&rat_frac(-3, 6)), slope(2, -1));
        assert!(Slope::new(0.into(), 0.into()).is_err());
    }

    #[test]
    fn slope_polynomial_examples() {
        let diag = pair(&[&[1, 0], &[0, 1]], &[&[2, 0], &[0, 3]]);
        let p = slope_polynomial(&diag).unwrap();
        // (2x - y)(3x - y) = 6x^2 - 5xy + y^2, up to sign
        let expected = ["6*x^2 - 5*x*y + y^2", "-6*x^2 + 5*x*y - y^2"];
        assert!(expected.contains(&format(&p).as_str()), "{}", format(&p));

        let swap = pair(&[&[1, 0], &[0, 1]], &[&[0, 1], &[1, 0]]);
        let p = slope_polynomial(&swap).unwrap();
        assert!(["x^2 - y^2", "-x^2 + y^2"].contains(&format(&p).as_str()));

        let tall = pair(&[&[0, 0], &[0, 1]], &[&[1, 0], &[0, 1]]);
        let p = slope_polynomial(&tall).unwrap();
        assert!(p.coeffs[0].is_zero());
        assert!(!p.degenerate);
    }

    #[test]
    fn dependent_columns_are_rejected() {
        let a = RationalMatrix::from_i64(&[&[1, 1], &[0, 0]]).unwrap();
        let b = RationalMatrix::from_i64(&[&[2, 2], &[0, 0]]).unwrap();
        assert!(matches!(SubspacePair::new(a, b), Err(Error::Precondition(_))));
    }

    #[test]
    fn constant_slope_dims() {
        let diag = pair(&[&[1, 0], &[0, 1]], &[&[2, 0], &[0, 3]]);
        assert_eq!(constant_slope_dim(&diag, &rat(1), &rat(2)).unwrap(), 1);
        assert_eq!(constant_slope_dim(&diag, &rat(1), &rat(5)).unwrap(), 0);
        let ones = pair(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]], &[&[1, 1, 1], &[1, 1, 1], &[1, 1, 1]]);
        assert_eq!(constant_slope_dim(&ones, &rat(1), &rat(0)).unwrap(), 2);
        assert!(constant_slope_dim(&ones, &rat(0), &rat(0)).is_err());
    }

    #[test]
    fn positive_rank_slopes() {
        let diag = pair(&[&[1, 0], &[0, 1]], &[&[2, 0], &[0, 3]]);
        let scan = slopes_with_positive_rank(&diag).unwrap();
        let found: Vec<_> = scan.slopes.iter().map(|s| (s.slope.clone(), s.dim)).collect();
        assert_eq!(found, vec![(slope(1, 2), 1), (slope(1, 3), 1)]);

        let id = pair(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]], &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        let scan = slopes_with_positive_rank(&id).unwrap();
        assert_eq!(scan.slopes, vec![SlopeRank { slope: slope(1, 1), dim: 3 }]);

        let irr = pair(&[&[1, 0], &[0, 1]], &[&[0, 1], &[1, 3]]);
        let scan = slopes_with_positive_rank(&irr).unwrap();
        assert!(scan.slopes.is_empty());
        assert_eq!(scan.residual_degrees, vec![2]);

        let tall = pair(&[&[0, 0], &[0, 1]], &[&[1, 0], &[0, 1]]);
        let scan = slopes_with_positive_rank(&tall).unwrap();
        assert!(scan.slopes.contains(&SlopeRank { slope: Slope::vertical(), dim: 1 }));
    }

    #[test]
    fn eigen_route_examples() {
        let diag = pair(&[&[1, 0], &[0, 1]], &[&[2, 0], &[0, 3]]);
        let values: Vec<_> = eigen_route(&diag).unwrap().eigenvalues.into_iter().map(|e| e.value).collect();
        assert_eq!(values, vec![rat(2), rat(3)]);

        let a = RationalMatrix::from_i64(&[&[2, 1], &[1, 1]]).unwrap();
        let u = SubspacePair::new(a.clone(), a.scale(&rat(2))).unwrap();
        let s = eigen_route(&u).unwrap();
        assert_eq!(s.eigenvalues.len(), 1);
        assert_eq!((s.eigenvalues[0].value.clone(), s.eigenvalues[0].geometric), (rat(2), 2));

        let tall = pair(&[&[0, 0], &[0, 1]], &[&[1, 0], &[0, 1]]);
        assert!(matches!(eigen_route(&tall), Err(Error::Precondition(_))));
    }

    #[test]
    fn boundary_matrix_examples() {
        let b = boundary_matrix(&z3_spec("0", "1")).unwrap();
        assert_eq!(b, RationalMatrix::from_i64(&[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0]]).unwrap());
        assert_eq!(boundary_matrix(&z3_spec("1", "0")).unwrap(), RationalMatrix::identity(3));
        let whole = FillingSpec::from_json(
            r#"{"group":{"family":"cyclic","n":4},"subgroup":{"generators":[1]},"values":{"a":5}}"#,
        )
        .unwrap();
        assert_eq!(boundary_matrix(&whole).unwrap(), RationalMatrix::diagonal(&[rat(5)]));

        let missing = FillingSpec::from_json(r#"{"group":{"family":"cyclic","n":3},"values":{"a":"1"}}"#).unwrap();
        assert!(matches!(boundary_matrix(&missing), Err(Error::MissingClassValue(ref v)) if v == "b"));
        let extra = FillingSpec::from_json(r#"{"group":{"family":"cyclic","n":2},"values":{"a":"1","b":"1","q":"2"}}"#).unwrap();
        assert!(matches!(boundary_matrix(&extra), Err(Error::Parse(_))));
    }

    #[test]
    fn filling_rank_examples() {
        let r = filling_ranks(&z3_spec("0", "1")).unwrap();
        assert_eq!(
            serde_json::to_string(&r).unwrap(),
            r#"{"slopes":[{"m":1,"n":-1,"fillrank":2},{"m":1,"n":2,"fillrank":1}],"k":3,"residual_degrees":[]}"#
        );
        let r = filling_ranks(&z3_spec("1", "0")).unwrap();
        assert_eq!(r.slopes, vec![FillRank { slope: slope(1, 1), fillrank: 3 }]);
        let singular = filling_ranks(&z3_spec("1", "1")).unwrap();
        assert_eq!(singular.slopes[0], FillRank { slope: slope(1, 0), fillrank: 2 });
        let half = filling_ranks(&z3_spec("1/2", "0")).unwrap();
        assert_eq!(half.slopes, vec![FillRank { slope: slope(2, 1), fillrank: 3 }]);
    }

    #[test]
    fn identities_of_specialized_matrices() {
        let q8 = GroupSpec::Quaternion.build().unwrap();
        let h = Subgroup::closure(&q8, &[4], false).unwrap();
        let t: Vec<Rational> = (0..SymClassPartition::new(&q8, &h).len()).map(|i| rat(3 * i as i64 - 2)).collect();
        let b = specialized_boundary(&q8, &h, &t).unwrap();
        let report = verify_boundary_identities(&b, &q8, &h).unwrap();
        assert!(report.passed());
        assert_eq!(report.induced, Some(t));

        let mut skew = RationalMatrix::identity(3);
        skew.set(0, 1, rat(1));
        let z3 = GroupSpec::Cyclic { n: 3 }.build().unwrap();
        let report = verify_boundary_identities(&skew, &z3, &Subgroup::trivial(&z3)).unwrap();
        assert_eq!(report.symmetry.witness, Some(vec![0, 1]));
        assert!(report.induced.is_none());

        // Z_4: b(0,2) = b(1,3) = c; perturb one pair symmetrically
        let z4 = GroupSpec::Cyclic { n: 4 }.build().unwrap();
        let mut b = specialized_boundary(&z4, &Subgroup::trivial(&z4), &[rat(1), rat(2), rat(3)]).unwrap();
        b.set(0, 2, rat(7));
        b.set(2, 0, rat(7));
        let report = verify_boundary_identities(&b, &z4, &Subgroup::trivial(&z4)).unwrap();
        assert!(report.symmetry.passed);
        assert!(!report.invariance.passed);
        let w = report.invariance.witness.unwrap();
        let (g, i, j) = (w[0], w[1], w[2]);
        assert_ne!(b.get((g + i) % 4, (g + j) % 4), b.get(i, j));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn boundary_matrices_are_symmetric_and_round_trip(n in 1usize..=6, raw in prop::collection::vec(-20i64..=20, 4)) {
            let g = GroupSpec::Cyclic { n }.build().unwrap();
            let h = Subgroup::trivial(&g);
            let s = SymClassPartition::new(&g, &h).len();
            let t: Vec<Rational> = (0..s).map(|i| rat(raw[i % raw.len()] + i as i64)).collect();
            let b = specialized_boundary(&g, &h, &t).unwrap();
            prop_assert!(b.is_symmetric());
            let report = fill_ranks_of(&b).unwrap();
            prop_assert!(report.slopes.len() <= report.k);
            let u = SubspacePair::new(RationalMatrix::identity(n), b.clone()).unwrap();
            let scan = slopes_with_positive_rank(&u).unwrap();
            let via_scan: Vec<_> = scan.slopes.iter().map(|s| (s.slope.clone(), s.dim)).collect();
            let mut via_fill: Vec<_> = report.slopes.iter().map(|s| (s.slope.clone(), s.fillrank)).collect();
            via_fill.sort();
            prop_assert_eq!(via_scan, via_fill);
            prop_assert_eq!(verify_boundary_identities(&b, &g, &h).unwrap().induced, Some(t));
        }
    }
}
