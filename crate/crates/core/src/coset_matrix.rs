//! Group matrices, their variable-identifying quotients, and the
//! symmetrized group-coset matrix.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::group::{CosetTable, FiniteGroup, Subgroup, SymClassPartition};
use crate::poly::{MPoly, PolyMatrix, Rational, VariableLegend};

/// Which variables a quotient identifies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuotientKind {
    /// `X_g = X_{g⁻¹}`
    Sym,
    /// `X_g = X_{gh}` for `h ∈ H`
    Coset,
    /// both of the above: one variable per `HgH ∪ Hg⁻¹H`
    SymCoset,
}

/// A quotient of the group-matrix ring by identification of variables:
/// element `g` goes to variable `target(g)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientMap {
    kind: QuotientKind,
    target: Vec<usize>,
    legend: VariableLegend,
}

/// One variable per element: `a, b, c, ...` for groups of order at most 26,
/// `X0, X1, ...` otherwise.
pub fn element_legend(group: &FiniteGroup) -> VariableLegend {
    let n = group.order();
    let base = if n <= 26 {
        VariableLegend::letters(n)
    } else {
        VariableLegend::indexed("X", n)
    };
    base.with_members(group.labels().iter().map(|l| vec![l.clone()]).collect())
}

fn class_legend(group: &FiniteGroup, classes: &[Vec<usize>], names: Vec<String>) -> VariableLegend {
    let members = classes
        .iter()
        .map(|c| c.iter().map(|&g| group.label(g).to_string()).collect())
        .collect();
    VariableLegend::from_names(names)
        .expect("generated names are valid")
        .with_members(members)
}

impl QuotientMap {
    /// Every quotient variable is named after the element variable of the
    /// smallest member of its class, so `det^sym` reads in the same letters
    /// as `det`.
    pub fn new(group: &FiniteGroup, subgroup: &Subgroup, kind: QuotientKind) -> Self {
        let n = group.order();
        let classes: Vec<Vec<usize>> = match kind {
            QuotientKind::Sym => SymClassPartition::new(group, &Subgroup::trivial(group)).classes().to_vec(),
            QuotientKind::SymCoset => SymClassPartition::new(group, subgroup).classes().to_vec(),
            QuotientKind::Coset => {
                let table = CosetTable::new(group, subgroup);
                let mut cs = vec![Vec::new(); table.len()];
                for g in 0..n {
                    cs[table.coset_of(g)].push(g);
                }
                cs
            }
        };
        let mut target = vec![0; n];
        for (i, c) in classes.iter().enumerate() {
            for &g in c {
                target[g] = i;
            }
        }
        let elements = element_legend(group);
        let names = classes.iter().map(|c| elements.name(c[0]).to_string()).collect();
        QuotientMap {
            kind,
            target,
            legend: class_legend(group, &classes, names),
        }
    }

    pub fn kind(&self) -> QuotientKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.legend.len()
    }

    pub fn is_empty(&self) -> bool {
        self.legend.is_empty()
    }

    #[inline]
    pub fn target(&self, g: usize) -> usize {
        self.target[g]
    }

    pub fn legend(&self) -> &VariableLegend {
        &self.legend
    }

    /// Image of a polynomial in the element variables.
    pub fn apply(&self, p: &MPoly) -> Result<MPoly> {
        p.rename(&self.target, self.len())
    }
}

/// `M(G)`: entry `(i, j)` is `X_{g_i⁻¹ g_j}`.
pub fn group_matrix(group: &FiniteGroup) -> PolyMatrix {
    let n = group.order();
    PolyMatrix::from_fn(n, n, n, |i, j| MPoly::var(n, group.mul(group.inv(i), j))).expect("nonempty group")
}

/// `det(M(G))` in the element variables.
pub fn group_determinant(group: &FiniteGroup) -> Result<MPoly> {
    group_matrix(group).det_bareiss()
}

/// `det^sym(G)`, computed as the determinant of the symmetrized group
/// matrix, with the legend of the symmetrizing quotient.
pub fn sym_group_determinant(group: &FiniteGroup) -> Result<(MPoly, VariableLegend)> {
    let q = QuotientMap::new(group, &Subgroup::trivial(group), QuotientKind::Sym);
    let det = apply_quotient(&group_matrix(group), &q)?.det_bareiss()?;
    Ok((det, q.legend().clone()))
}

/// Replaces each element variable of `m` by its quotient variable.
pub fn apply_quotient(m: &PolyMatrix, q: &QuotientMap) -> Result<PolyMatrix> {
    if m.nvars() != q.target.len() {
        return Err(Error::ArityMismatch {
            expected: q.target.len(),
            found: m.nvars(),
        });
    }
    m.map(|e| q.apply(e))
}

/// The symmetrized group-coset matrix with its cosets and classes.
#[derive(Debug, Clone)]
pub struct SymCosetMatrix {
    pub matrix: PolyMatrix,
    pub legend: VariableLegend,
    pub cosets: CosetTable,
    pub classes: SymClassPartition,
}

/// `M^sym(G, H)`: entry `(i, j)` is `Y_{σ(g_i⁻¹ g_j)}` over the left coset
/// representatives. Variables are `a, b, ...` in class order (`Y0, Y1, ...`
/// beyond 26 classes), each annotated with the labels of its class.
pub fn sym_coset_matrix(group: &FiniteGroup, subgroup: &Subgroup) -> SymCosetMatrix {
    let cosets = CosetTable::new(group, subgroup);
    let classes = SymClassPartition::new(group, subgroup);
    let s = classes.len();
    let reps = cosets.reps();
    let k = reps.len();
    let matrix = PolyMatrix::from_fn(k, k, s, |i, j| {
        MPoly::var(s, classes.class_of(group.mul(group.inv(reps[i]), reps[j])))
    })
    .expect("at least one coset");
    let names = VariableLegend::letters(s).names().to_vec();
    let legend = class_legend(group, classes.classes(), names);
    SymCosetMatrix {
        matrix,
        legend,
        cosets,
        classes,
    }
}

/// Element ordering in which position `p + q·k` (0-based) holds `g_p h_q`,
/// with `g_p` the coset representatives and `h_q` the members of `H`.
pub fn coset_block_order(group: &FiniteGroup, subgroup: &Subgroup) -> Vec<usize> {
    let table = CosetTable::new(group, subgroup);
    subgroup
        .members()
        .iter()
        .flat_map(|&h| table.reps().iter().map(move |&g| group.mul(g, h)))
        .collect()
}

/// `det(tI - M)` with `t` appended as the last variable.
pub fn charpoly_direct(m: &PolyMatrix) -> Result<MPoly> {
    if !m.is_square() {
        return Err(Error::Dimension("characteristic polynomial of a non-square matrix".into()));
    }
    let n = m.nvars();
    let t = MPoly::var(n + 1, n);
    let shifted = m.map(|e| Ok(-e.extend(1)))?.sub_scalar_identity(&-&t)?;
    shifted.det_bareiss()
}

/// Output of the substitution route to the characteristic polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubstitutionCharpoly {
    /// `p(l·t) / l^k`, equal to `±det(tI - M^sym(G,H))`; `t` is the last
    /// variable.
    pub poly: MPoly,
    /// Power of `t` split off the substituted group determinant.
    pub cofactor_exponent: usize,
}

/// Substitutes `X_1 ↦ Y_H - t` and `X_g ↦ Y_{σ(g)}` in the group
/// determinant, which yields `t^m p(t)`, and rescales `p` to compare with
/// the characteristic polynomial of `M^sym(G,H)`. The substitution is a ring
/// map, so it is applied to `M(G)` before taking the determinant.
///
/// `m` must equal `|G| - k`; anything else is reported as an internal
/// inconsistency.
pub fn charpoly_via_substitution(group: &FiniteGroup, subgroup: &Subgroup) -> Result<SubstitutionCharpoly> {
    let classes = SymClassPartition::new(group, subgroup);
    let s = classes.len();
    let t_var = s;
    let t = MPoly::var(s + 1, t_var);
    let images: Vec<MPoly> = (0..group.order())
        .map(|g| {
            let y = MPoly::var(s + 1, classes.class_of(g));
            if g == group.identity() {
                &y - &t
            } else {
                y
            }
        })
        .collect();
    let det = group_matrix(group).substitute(&images)?.det_bareiss()?;
    let m = det.valuation_in(t_var) as usize;
    let k = subgroup.index();
    if m != group.order() - k {
        return Err(Error::Inconsistency(format!(
            "substituted determinant has t^{m}, expected t^{}",
            group.order() - k
        )));
    }
    let p = det.exact_div(&t.pow(m as u32))?;
    let l = Rational::from_integer(subgroup.order().into());
    let mut rescale: Vec<MPoly> = (0..s).map(|i| MPoly::var(s + 1, i)).collect();
    rescale.push(t.scale(&l));
    let scaled = p.substitute(&rescale)?;
    let lead = scaled
        .coefficients_in(t_var)
        .pop()
        .filter(MPoly::is_constant)
        .map(|c| c.constant_term())
        .ok_or_else(|| Error::Inconsistency("rescaled polynomial is not monic up to a constant".into()))?;
    if lead.abs() != num_traits::pow(l.clone(), k) {
        return Err(Error::Inconsistency(format!("leading coefficient {lead} is not ±{l}^{k}")));
    }
    let poly = scaled.scale(&lead.abs().recip());
    Ok(SubstitutionCharpoly {
        poly,
        cofactor_exponent: m,
    })
}

/// `a == b` or `a == -b`.
pub fn equal_up_to_sign(a: &MPoly, b: &MPoly) -> bool {
    a == b || *a == -b
}

/// Specialization with `Y_H = 1` and every other class variable `0`.
pub fn identity_point(nvars: usize) -> Vec<Rational> {
    (0..nvars)
        .map(|i| if i == 0 { Rational::one() } else { Rational::zero() })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupSpec;
    use crate::poly::parse_poly;
    use crate::spectral::RationalMatrix;

    fn build(spec: GroupSpec) -> FiniteGroup {
        spec.build().unwrap()
    }

    fn cyclic(n: usize) -> FiniteGroup {
        build(GroupSpec::Cyclic { n })
    }

    fn text(m: &PolyMatrix, l: &VariableLegend) -> Vec<Vec<String>> {
        (0..m.rows()).map(|i| m.row(i).iter().map(|e| l.format(e)).collect()).collect()
    }

    #[test]
    fn group_matrix_examples() {
        let trivial = cyclic(1);
        assert_eq!(text(&group_matrix(&trivial), &element_legend(&trivial)), vec![vec!["a"]]);
        let z2 = cyclic(2);
        assert_eq!(text(&group_matrix(&z2), &element_legend(&z2)), vec![vec!["a", "b"], vec!["b", "a"]]);
        let z3 = cyclic(3);
        assert_eq!(
            text(&group_matrix(&z3), &element_legend(&z3)),
            vec![vec!["a", "b", "c"], vec!["c", "a", "b"], vec!["b", "c", "a"]]
        );
    }

    #[test]
    fn determinant_examples() {
        let z3 = cyclic(3);
        let l = element_legend(&z3);
        let expected = &parse_poly("a + b + c", &l).unwrap() * &parse_poly("a^2 - a*b + b^2 - a*c - b*c + c^2", &l).unwrap();
        assert_eq!(group_determinant(&z3).unwrap(), expected);
        let z2 = cyclic(2);
        assert_eq!(element_legend(&z2).format(&group_determinant(&z2).unwrap()), "a^2 - b^2");
        assert_eq!(group_determinant(&cyclic(1)).unwrap(), MPoly::var(1, 0));
        let (sym, sl) = sym_group_determinant(&z3).unwrap();
        assert_eq!(sl.format(&sym), "a^3 - 3*a*b^2 + 2*b^3");
    }

    #[test]
    fn sym_determinant_is_quotient_of_determinant() {
        for g in [cyclic(4), cyclic(5), build(GroupSpec::Dihedral { order: 6 }), build(GroupSpec::Quaternion)] {
            let q = QuotientMap::new(&g, &Subgroup::trivial(&g), QuotientKind::Sym);
            let via_det = q.apply(&group_determinant(&g).unwrap()).unwrap();
            assert_eq!(via_det, sym_group_determinant(&g).unwrap().0);
        }
    }

    #[test]
    fn sym_coset_matrix_examples() {
        let z3 = cyclic(3);
        let sc = sym_coset_matrix(&z3, &Subgroup::trivial(&z3));
        assert_eq!(
            text(&sc.matrix, &sc.legend),
            vec![vec!["a", "b", "b"], vec!["b", "a", "b"], vec!["b", "b", "a"]]
        );
        assert_eq!(sc.legend.members(1), ["1", "2"]);
        let whole = sym_coset_matrix(&z3, &Subgroup::whole(&z3));
        assert_eq!(text(&whole.matrix, &whole.legend), vec![vec!["a"]]);

        let g = build(GroupSpec::Psl2 { p: 5 });
        let u = g.labels().iter().position(|l| l == "[1 1; 0 1]").unwrap();
        let h = Subgroup::closure(&g, &[u], false).unwrap();
        let sc = sym_coset_matrix(&g, &h);
        assert_eq!((sc.matrix.rows(), sc.matrix.nvars()), (12, 4));
        assert!(sc.matrix.is_symmetric());
        assert!((0..12).all(|i| *sc.matrix.get(i, i) == MPoly::var(4, 0)));
        assert_eq!(sc.matrix.evaluate(&identity_point(4)).unwrap(), RationalMatrix::identity(12));
    }

    #[test]
    fn block_form_of_quotient() {
        let z6 = cyclic(6);
        let h = Subgroup::closure(&z6, &[3], false).unwrap();
        let b = sym_coset_matrix(&z6, &h);
        let q = QuotientMap::new(&z6, &h, QuotientKind::SymCoset);
        let order = coset_block_order(&z6, &h);
        let full = apply_quotient(&group_matrix(&z6).permuted(&order).unwrap(), &q).unwrap();
        let k = b.matrix.rows();
        // quotient variables are named by smallest element, the coset matrix
        // by class order; both enumerate classes in the same order
        for i in 0..6 {
            for j in 0..6 {
                assert_eq!(full.get(i, j), b.matrix.get(i % k, j % k));
            }
        }
        let z2 = cyclic(2);
        let q = QuotientMap::new(&z2, &Subgroup::whole(&z2), QuotientKind::SymCoset);
        let m = apply_quotient(&group_matrix(&z2), &q).unwrap();
        assert_eq!(text(&m, q.legend()), vec![vec!["a", "a"], vec!["a", "a"]]);
    }

    #[test]
    fn sym_quotient_matches_coset_matrix_for_trivial_subgroup() {
        let z3 = cyclic(3);
        let q = QuotientMap::new(&z3, &Subgroup::trivial(&z3), QuotientKind::Sym);
        let m = apply_quotient(&group_matrix(&z3), &q).unwrap();
        assert_eq!(m, sym_coset_matrix(&z3, &Subgroup::trivial(&z3)).matrix);
    }

    #[test]
    fn coset_quotient_names() {
        let z6 = cyclic(6);
        let h = Subgroup::closure(&z6, &[2], false).unwrap();
        let q = QuotientMap::new(&z6, &h, QuotientKind::Coset);
        assert_eq!(q.len(), 2);
        assert_eq!(q.legend().names(), ["a", "b"]);
        assert_eq!(q.target(3), 1);
    }

    #[test]
    fn charpoly_examples() {
        let l = VariableLegend::letters(2).with_extra("t").unwrap();
        let one = PolyMatrix::from_fn(1, 1, 1, |_, _| MPoly::var(1, 0)).unwrap();
        assert_eq!(charpoly_direct(&one).unwrap(), parse_poly("t - a", &VariableLegend::letters(1).with_extra("t").unwrap()).unwrap());
        let two = PolyMatrix::from_fn(2, 2, 2, |i, j| MPoly::var(2, usize::from(i != j))).unwrap();
        assert_eq!(l.format(&charpoly_direct(&two).unwrap()), "a^2 - 2*a*t - b^2 + t^2");
        let z3 = cyclic(3);
        let sc = sym_coset_matrix(&z3, &Subgroup::trivial(&z3));
        let expected = &parse_poly("t - a - 2*b", &l).unwrap() * &parse_poly("t - a + b", &l).unwrap().pow(2);
        assert_eq!(charpoly_direct(&sc.matrix).unwrap(), expected);
    }

    #[test]
    fn substitution_route_examples() {
        let z2 = cyclic(2);
        let r = charpoly_via_substitution(&z2, &Subgroup::whole(&z2)).unwrap();
        assert_eq!(r.cofactor_exponent, 1);
        let sc = sym_coset_matrix(&z2, &Subgroup::whole(&z2));
        assert!(equal_up_to_sign(&r.poly, &charpoly_direct(&sc.matrix).unwrap()));

        let z4 = cyclic(4);
        let h = Subgroup::closure(&z4, &[2], false).unwrap();
        let r = charpoly_via_substitution(&z4, &h).unwrap();
        assert_eq!(r.cofactor_exponent, 2);
        assert!(equal_up_to_sign(&r.poly, &charpoly_direct(&sym_coset_matrix(&z4, &h).matrix).unwrap()));
    }
}
