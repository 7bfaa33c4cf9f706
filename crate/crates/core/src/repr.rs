//! Matrix representations, the `H`-fixed projector, trace eigenforms and
//! the abelian character cross-check.

use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coset_matrix::{group_matrix, sym_coset_matrix};
use crate::error::{Error, Result};
use crate::group::{psl2_projective_action, FiniteGroup, PermutationRep, Subgroup, SymClassPartition};
use crate::poly::{MPoly, PolyMatrix, Rational, VariableLegend};
use crate::spectral::RationalMatrix;

/// A representation `ρ: G → GL_n(Q)` stored element by element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixRep {
    dim: usize,
    mats: Vec<RationalMatrix>,
}

impl MatrixRep {
    /// Unchecked constructor; see [`MatrixRep::validate`].
    pub fn new(dim: usize, mats: Vec<RationalMatrix>) -> Result<Self> {
        if mats.iter().any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(Error::Dimension(format!("every matrix must be {dim}x{dim}")));
        }
        Ok(MatrixRep { dim, mats })
    }

    /// Permutation matrices with `ρ(g) e_x = e_{π_g(x)}`.
    pub fn from_permutation(perm: &PermutationRep) -> Self {
        let n = perm.degree();
        let mats = (0..perm.group_order())
            .map(|g| {
                let mut m = RationalMatrix::zero(n, n);
                for x in 0..n {
                    m.set(perm.apply(g, x), x, Rational::one());
                }
                m
            })
            .collect();
        MatrixRep { dim: n, mats }
    }

    pub fn trivial(group: &FiniteGroup) -> Self {
        Self::one_dimensional(&vec![Rational::one(); group.order()])
    }

    /// `ρ(g) = [values[g]]`.
    pub fn one_dimensional(values: &[Rational]) -> Self {
        MatrixRep {
            dim: 1,
            mats: values.iter().map(|v| RationalMatrix::diagonal(std::slice::from_ref(v))).collect(),
        }
    }

    pub fn direct_sum(&self, other: &MatrixRep) -> Result<MatrixRep> {
        if self.mats.len() != other.mats.len() {
            return Err(Error::Dimension("representations of different groups".into()));
        }
        let n = self.dim + other.dim;
        let mats = self
            .mats
            .iter()
            .zip(&other.mats)
            .map(|(a, b)| {
                RationalMatrix::from_fn(n, n, |(i, j)| match (i < self.dim, j < self.dim) {
                    (true, true) => a.get(i, j).clone(),
                    (false, false) => b.get(i - self.dim, j - self.dim).clone(),
                    _ => Rational::zero(),
                })
            })
            .collect::<Result<_>>()?;
        Ok(MatrixRep { dim: n, mats })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn group_order(&self) -> usize {
        self.mats.len()
    }

    pub fn matrix(&self, g: usize) -> &RationalMatrix {
        &self.mats[g]
    }

    pub fn trace(&self, g: usize) -> Rational {
        (0..self.dim).map(|i| self.mats[g].get(i, i).clone()).sum()
    }

    pub fn is_homomorphism_on(&self, group: &FiniteGroup, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<bool> {
        for (a, b) in pairs {
            if self.mats[a].mul(&self.mats[b])? != self.mats[group.mul(a, b)] {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `ρ(1) = I` and `ρ(ab) = ρ(a)ρ(b)` on all pairs for small groups, on
    /// `pairs` seeded random pairs otherwise.
    pub fn validate(&self, group: &FiniteGroup, pairs: usize, seed: u64) -> Result<()> {
        if self.mats.len() != group.order() {
            return Err(Error::Dimension("one matrix per group element is required".into()));
        }
        if self.mats[group.identity()] != RationalMatrix::identity(self.dim) {
            return Err(Error::Verification("identity does not act trivially".into()));
        }
        let n = group.order();
        let ok = if n * n <= pairs {
            self.is_homomorphism_on(group, (0..n).flat_map(|a| (0..n).map(move |b| (a, b))))?
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let sample: Vec<(usize, usize)> = (0..pairs)
                .map(|_| (rng.random_range(0..n), rng.random_range(0..n)))
                .collect();
            self.is_homomorphism_on(group, sample)?
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Verification("matrices are not multiplicative".into()))
        }
    }
}

/// Right regular representation `h: g ↦ g h⁻¹`.
pub fn regular_rep(group: &FiniteGroup) -> MatrixRep {
    MatrixRep::from_permutation(&crate::group::regular_action(group))
}

/// `M(ρ) = Σ_g ρ(g)·X_g` over the element variables.
pub fn rep_matrix(rho: &MatrixRep) -> PolyMatrix {
    weighted_sum(rho, rho.group_order(), |g| g)
}

/// `Σ_g ρ(g)·Y_{σ(g)}` over the class variables of `(G, H)`, with the same
/// legend as the symmetrized group-coset matrix.
pub fn sym_rep_matrix(rho: &MatrixRep, group: &FiniteGroup, subgroup: &Subgroup) -> (PolyMatrix, VariableLegend) {
    let classes = SymClassPartition::new(group, subgroup);
    let legend = sym_coset_matrix(group, subgroup).legend;
    (weighted_sum(rho, classes.len(), |g| classes.class_of(g)), legend)
}

fn weighted_sum(rho: &MatrixRep, nvars: usize, var: impl Fn(usize) -> usize) -> PolyMatrix {
    let n = rho.dim;
    let mut coeffs = vec![vec![Rational::zero(); nvars]; n * n];
    for (g, m) in rho.mats.iter().enumerate() {
        let v = var(g);
        for i in 0..n {
            for j in 0..n {
                let x = m.get(i, j);
                if !x.is_zero() {
                    coeffs[i * n + j][v] += x;
                }
            }
        }
    }
    PolyMatrix::from_fn(n, n, nvars, |i, j| MPoly::linear(&coeffs[i * n + j])).expect("positive dimension")
}

/// `P = Σ_{h ∈ H} ρ(h)` with its exact rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Projector {
    pub matrix: RationalMatrix,
    pub rank: usize,
}

pub fn fixed_projector(rho: &MatrixRep, subgroup: &Subgroup) -> Projector {
    let n = rho.dim;
    let mut p = RationalMatrix::zero(n, n);
    for &h in subgroup.members() {
        for i in 0..n {
            for j in 0..n {
                let v = p.get(i, j) + rho.matrix(h).get(i, j);
                p.set(i, j, v);
            }
        }
    }
    let rank = p.rank();
    Projector { matrix: p, rank }
}

const RANK_RESAMPLES: usize = 3;

/// Rank of `Σ_g ρ(g) Y_{σ(g)}` as a polynomial matrix, which equals the rank
/// of the fixed projector. The projector rank is returned after it has been
/// matched by the rank at a random rational specialization; a specialization
/// can only lose rank, so a lower sample is retried up to three times.
pub fn sym_rank(rho: &MatrixRep, group: &FiniteGroup, subgroup: &Subgroup, seed: u64) -> Result<usize> {
    let expected = fixed_projector(rho, subgroup).rank;
    let (m, legend) = sym_rep_matrix(rho, group, subgroup);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = Vec::new();
    for _ in 0..=RANK_RESAMPLES {
        let point = random_rational_point(&mut rng, legend.len());
        let r = m.evaluate(&point)?.rank();
        if r == expected {
            return Ok(expected);
        }
        if r > expected {
            return Err(Error::Inconsistency(format!(
                "specialized rank {r} exceeds the projector rank {expected}"
            )));
        }
        seen.push(r);
    }
    Err(Error::Inconsistency(format!(
        "projector rank {expected} but specialized ranks {seen:?}"
    )))
}

/// Seeded point with coordinates `n/d`, `|n| ≤ 1000`, `1 ≤ d ≤ 16`.
pub fn random_rational_point(rng: &mut ChaCha8Rng, n: usize) -> Vec<Rational> {
    (0..n)
        .map(|_| {
            let num: i64 = rng.random_range(-1000..=1000);
            let den: i64 = rng.random_range(1..=16);
            Rational::new(num.into(), den.into())
        })
        .collect()
}

/// `Σ_g tr ρ(g)·Y_{σ(g)}`, the nonzero eigenvalue of the symmetrized
/// representation matrix when the projector has rank one.
pub fn trace_eigenform(rho: &MatrixRep, group: &FiniteGroup, subgroup: &Subgroup) -> Result<MPoly> {
    let rank = fixed_projector(rho, subgroup).rank;
    if rank != 1 {
        return Err(Error::Precondition(format!("projector rank is {rank}, not 1")));
    }
    let classes = SymClassPartition::new(group, subgroup);
    let mut coeffs = vec![Rational::zero(); classes.len()];
    for g in 0..group.order() {
        coeffs[classes.class_of(g)] += rho.trace(g);
    }
    Ok(MPoly::linear(&coeffs))
}

/// The eigenvalue `λ` of `M^sym(PSL(2,Z_p), H)` for the unipotent subgroup
/// `H`, with eigenspace dimension at least `p`.
#[derive(Debug, Clone)]
pub struct Psl2Lambda {
    pub group: FiniteGroup,
    pub subgroup: Subgroup,
    pub form: MPoly,
    pub legend: VariableLegend,
    pub multiplicity_bound: usize,
}

impl Psl2Lambda {
    /// Eigenspace dimension of `λ` in `M^sym(G, H)` at `points` seeded
    /// rational specializations.
    pub fn eigenspace_dims(&self, points: usize, seed: u64) -> Result<Vec<usize>> {
        if points == 0 {
            return Ok(Vec::new());
        }
        let m = sym_coset_matrix(&self.group, &self.subgroup).matrix;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..points)
            .map(|_| {
                let point = random_rational_point(&mut rng, self.legend.len());
                let value = self.form.evaluate(&point)?;
                Ok(m.evaluate(&point)?.sub_scalar(&value)?.nullity())
            })
            .collect()
    }
}

/// The subgroup generated by `[1 1; 0 1]`.
pub fn psl2_unipotent_subgroup(group: &FiniteGroup) -> Result<Subgroup> {
    let u = group
        .labels()
        .iter()
        .position(|l| l == "[1 1; 0 1]")
        .ok_or_else(|| Error::InvalidGroup("group has no element labelled [1 1; 0 1]".into()))?;
    Subgroup::closure(group, &[u], false)
}

/// `λ' = Σ_g (fix(g) - 1)·Y_{σ(g)}` is the trace of the `p`-dimensional
/// summand of the action on the projective line, and `λ = λ'/p`.
pub fn psl2_lambda(p: u64) -> Result<Psl2Lambda> {
    let (group, action) = psl2_projective_action(p)?;
    let subgroup = psl2_unipotent_subgroup(&group)?;
    let classes = SymClassPartition::new(&group, &subgroup);
    let mut coeffs = vec![Rational::zero(); classes.len()];
    for g in 0..group.order() {
        coeffs[classes.class_of(g)] += Rational::from_integer((action.fixed_points(g) as i64 - 1).into());
    }
    let l = Rational::from_integer(subgroup.order().into());
    let form = MPoly::linear(&coeffs).scale(&l.recip());
    let names = VariableLegend::letters(classes.len()).names().to_vec();
    let members = classes
        .classes()
        .iter()
        .map(|c| c.iter().map(|&g| group.label(g).to_string()).collect())
        .collect();
    let legend = VariableLegend::from_names(names)?.with_members(members);
    Ok(Psl2Lambda {
        group,
        subgroup,
        form,
        legend,
        multiplicity_bound: p as usize,
    })
}

/// Outcome of comparing the character product with the exact group
/// determinant at one point.
#[derive(Debug, Clone, PartialEq)]
pub struct CharacterCheck {
    pub exact: Rational,
    pub product: Complex64,
    pub relative_error: f64,
    pub passed: bool,
}

/// All characters of an abelian group, as exponents `r(g) ∈ [0, 1)` with
/// `χ(g) = exp(2πi·r(g))`.
pub fn abelian_characters(group: &FiniteGroup) -> Result<Vec<Vec<Rational>>> {
    if !group.is_abelian() {
        return Err(Error::Precondition("characters are enumerated for abelian groups only".into()));
    }
    let n = group.order();
    // elements of the subgroup generated so far, and the characters on it
    let mut span = vec![group.identity()];
    let mut in_span = vec![false; n];
    in_span[group.identity()] = true;
    let mut chars: Vec<Vec<Option<Rational>>> = vec![{
        let mut c = vec![None; n];
        c[group.identity()] = Some(Rational::zero());
        c
    }];
    while span.len() < n {
        let g = (0..n).find(|&x| !in_span[x]).unwrap();
        // smallest e with g^e in the span
        let mut e = 1;
        let mut ge = g;
        while !in_span[ge] {
            ge = group.mul(ge, g);
            e += 1;
        }
        let mut new_span = Vec::with_capacity(span.len() * e);
        let mut power = group.identity();
        for _ in 0..e {
            for &k in &span {
                new_span.push(group.mul(k, power));
            }
            power = group.mul(power, g);
        }
        let mut next = Vec::with_capacity(chars.len() * e);
        for c in &chars {
            let base = c[ge].clone().expect("defined on the span");
            for j in 0..e {
                let value = (&base + Rational::from_integer(j.into())) / Rational::from_integer(e.into());
                let mut d = c.clone();
                let mut power = group.identity();
                let mut shift = Rational::zero();
                for _ in 0..e {
                    for &k in &span {
                        let x = group.mul(k, power);
                        let r = c[k].clone().unwrap() + &shift;
                        d[x] = Some(&r - r.floor());
                    }
                    power = group.mul(power, g);
                    shift += &value;
                }
                next.push(d);
            }
        }
        for &x in &new_span {
            in_span[x] = true;
        }
        span = new_span;
        chars = next;
    }
    Ok(chars
        .into_iter()
        .map(|c| c.into_iter().map(|v| v.expect("total")).collect())
        .collect())
}

/// Compares `Π_χ Σ_g χ(g)·x_g` in floating complex arithmetic with the
/// exact group determinant at the integer point `x`. The error is relative
/// to the exact value, or, when that is zero, to the first-order rounding
/// sensitivity `Σ_χ ‖x‖₁·Π_{ψ≠χ} |f_ψ|` of the product.
pub fn abelian_det_crosscheck(group: &FiniteGroup, point: &[i64], tol: f64) -> Result<CharacterCheck> {
    if point.len() != group.order() {
        return Err(Error::ArityMismatch {
            expected: group.order(),
            found: point.len(),
        });
    }
    let chars = abelian_characters(group)?;
    let values: Vec<Rational> = point.iter().map(|&v| Rational::from_integer(v.into())).collect();
    let exact = group_matrix(group).evaluate(&values)?.det()?;
    let factors: Vec<Complex64> = chars
        .iter()
        .map(|c| {
            point
                .iter()
                .enumerate()
                .map(|(g, &x)| {
                    let angle = 2.0 * std::f64::consts::PI * c[g].to_f64().unwrap_or(0.0);
                    Complex64::from_polar(1.0, angle) * x as f64
                })
                .sum()
        })
        .collect();
    let product: Complex64 = factors.iter().product();
    let exact_f = exact.to_f64().unwrap_or(f64::NAN);
    let error = (product - Complex64::new(exact_f, 0.0)).norm();
    let relative_error = if exact.is_zero() {
        // a vanishing factor is only known up to rounding of size ‖x‖₁, so
        // scale by how much such an error can move the product
        let l1: f64 = point.iter().map(|&x| (x as f64).abs()).sum();
        let sensitivity: f64 = (0..factors.len())
            .map(|i| l1 * factors.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, f)| f.norm()).product::<f64>())
            .sum();
        if sensitivity == 0.0 {
            error
        } else {
            error / sensitivity
        }
    } else {
        error / exact_f.abs()
    };
    Ok(CharacterCheck {
        exact,
        product,
        relative_error,
        passed: relative_error < tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coset_matrix::element_legend;
    use crate::group::{coset_action, GroupSpec};
    use crate::poly::rat;
    use crate::spectral::rational_eigs;

    fn cyclic(n: usize) -> FiniteGroup {
        GroupSpec::Cyclic { n }.build().unwrap()
    }

    #[test]
    fn regular_rep_examples() {
        let t = cyclic(1);
        assert_eq!(regular_rep(&t).matrix(0), &RationalMatrix::identity(1));
        let z2 = cyclic(2);
        let r = regular_rep(&z2);
        assert_eq!(r.matrix(1), &RationalMatrix::from_i64(&[&[0, 1], &[1, 0]]).unwrap());
        for g in [cyclic(5), GroupSpec::Dihedral { order: 8 }.build().unwrap(), GroupSpec::Quaternion.build().unwrap()] {
            let reg = regular_rep(&g);
            reg.validate(&g, 1000, 1).unwrap();
            assert_eq!(rep_matrix(&reg), group_matrix(&g));
        }
    }

    #[test]
    fn rep_matrix_examples() {
        let z3 = cyclic(3);
        let l = element_legend(&z3);
        let m = rep_matrix(&MatrixRep::trivial(&z3));
        assert_eq!(l.format(m.get(0, 0)), "a + b + c");
        let (s, sl) = sym_rep_matrix(&MatrixRep::trivial(&z3), &z3, &Subgroup::trivial(&z3));
        assert_eq!(sl.format(s.get(0, 0)), "a + 2*b");
        let sum = MatrixRep::trivial(&z3).direct_sum(&regular_rep(&z3)).unwrap();
        let expected = rep_matrix(&MatrixRep::trivial(&z3)).direct_sum(&group_matrix(&z3)).unwrap();
        assert_eq!(rep_matrix(&sum), expected);
    }

    #[test]
    fn projector_ranks() {
        let z4 = cyclic(4);
        let reg = regular_rep(&z4);
        assert_eq!(fixed_projector(&reg, &Subgroup::trivial(&z4)).rank, 4);
        let h = Subgroup::closure(&z4, &[2], false).unwrap();
        assert_eq!(fixed_projector(&reg, &h).rank, 2);

        let (g, act) = psl2_projective_action(5).unwrap();
        let h = psl2_unipotent_subgroup(&g).unwrap();
        let rho = MatrixRep::from_permutation(&act);
        assert_eq!(fixed_projector(&rho, &h).rank, 2);
        assert_eq!(sym_rank(&rho, &g, &h, 3).unwrap(), 2);

        let z6 = cyclic(6);
        let h = Subgroup::closure(&z6, &[3], false).unwrap();
        assert_eq!(sym_rank(&regular_rep(&z6), &z6, &h, 3).unwrap(), 3);
    }

    #[test]
    fn trace_forms() {
        let z2 = cyclic(2);
        let sign = MatrixRep::one_dimensional(&[rat(1), rat(-1)]);
        let form = trace_eigenform(&sign, &z2, &Subgroup::trivial(&z2)).unwrap();
        assert_eq!(VariableLegend::letters(2).format(&form), "a - b");
        let z3 = cyclic(3);
        let whole = trace_eigenform(&MatrixRep::trivial(&z3), &z3, &Subgroup::whole(&z3)).unwrap();
        assert_eq!(VariableLegend::letters(1).format(&whole), "3*a");
        assert!(matches!(
            trace_eigenform(&regular_rep(&z3), &z3, &Subgroup::trivial(&z3)),
            Err(Error::Precondition(_))
        ));
        // coset action of S_3 on 3 points has a rank-2 projector for a point
        // stabilizer; the trivial summand has rank 1
        let d6 = GroupSpec::Dihedral { order: 6 }.build().unwrap();
        let h = Subgroup::closure(&d6, &[3], false).unwrap();
        assert_eq!(fixed_projector(&MatrixRep::from_permutation(&coset_action(&d6, &h)), &h).rank, 2);
        let rho = MatrixRep::trivial(&d6);
        let form = trace_eigenform(&rho, &d6, &h).unwrap();
        let (m, _) = sym_rep_matrix(&rho, &d6, &h);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let pt = random_rational_point(&mut rng, m.nvars());
        let spec = rational_eigs(&m.evaluate(&pt).unwrap()).unwrap();
        assert!(spec.find(&form.evaluate(&pt).unwrap()).is_some());
    }

    #[test]
    fn psl2_lambda_small_primes() {
        let l5 = psl2_lambda(5).unwrap();
        let mut c5 = l5.form.linear_coefficients().unwrap();
        assert_eq!(c5[0], rat(1));
        c5.sort();
        assert_eq!(c5, vec![rat(-1), rat(-1), rat(1), rat(1)]);
        let l3 = psl2_lambda(3).unwrap();
        assert_eq!(l3.multiplicity_bound, 3);
        let coeffs = l3.form.linear_coefficients().unwrap();
        assert_eq!(coeffs[0], rat(1));
    }

    #[test]
    fn characters_of_small_groups() {
        let v4 = GroupSpec::DirectSum {
            factors: vec![GroupSpec::Cyclic { n: 2 }, GroupSpec::Cyclic { n: 2 }],
        }
        .build()
        .unwrap();
        for g in [cyclic(1), cyclic(6), v4] {
            let chars = abelian_characters(&g).unwrap();
            assert_eq!(chars.len(), g.order());
            for c in &chars {
                for a in 0..g.order() {
                    for b in 0..g.order() {
                        let s = &c[a] + &c[b];
                        assert_eq!(&s - s.floor(), c[g.mul(a, b)]);
                    }
                }
            }
        }
        assert!(abelian_characters(&GroupSpec::Quaternion.build().unwrap()).is_err());
    }

    #[test]
    fn crosscheck_examples() {
        let z2 = cyclic(2);
        let c = abelian_det_crosscheck(&z2, &[3, 1], 1e-9).unwrap();
        assert_eq!(c.exact, rat(8));
        assert!(c.passed);
        let z3 = cyclic(3);
        assert!(abelian_det_crosscheck(&z3, &[1, 0, 0], 1e-9).unwrap().passed);
        // a vanishing character sum makes the determinant exactly zero
        let z8 = cyclic(8);
        let c = abelian_det_crosscheck(&z8, &[6, 6, -4, 6, -4, -8, 4, -2], 1e-9).unwrap();
        assert!(c.exact.is_zero());
        assert!(c.passed, "{c:?}");
    }
}
