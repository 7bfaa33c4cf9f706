use num_traits::Zero;

use super::mpoly::MPoly;
use super::rational::Rational;
use crate::error::{Error, Result};
use crate::spectral::RationalMatrix;

/// Dense matrix of polynomials sharing one arity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    nvars: usize,
    entries: Vec<MPoly>,
}

impl PolyMatrix {
    pub fn from_fn(rows: usize, cols: usize, nvars: usize, mut f: impl FnMut(usize, usize) -> MPoly) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Dimension("matrix dimensions must be positive".into()));
        }
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let e = f(i, j);
                if e.nvars() != nvars {
                    return Err(Error::ArityMismatch {
                        expected: nvars,
                        found: e.nvars(),
                    });
                }
                entries.push(e);
            }
        }
        Ok(PolyMatrix {
            rows,
            cols,
            nvars,
            entries,
        })
    }

    pub fn from_rows(rows: Vec<Vec<MPoly>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map(Vec::len).unwrap_or(0);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        let nvars = rows.first().and_then(|row| row.first()).map(MPoly::nvars).unwrap_or(0);
        PolyMatrix::from_fn(r, c, nvars, |i, j| rows[i][j].clone())
    }

    pub fn identity(n: usize, nvars: usize) -> Self {
        PolyMatrix::from_fn(n, n, nvars, |i, j| {
            if i == j {
                MPoly::one(nvars)
            } else {
                MPoly::zero(nvars)
            }
        })
        .expect("positive size")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &MPoly {
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[MPoly] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn map(&self, f: impl Fn(&MPoly) -> Result<MPoly>) -> Result<PolyMatrix> {
        let entries = self.entries.iter().map(f).collect::<Result<Vec<_>>>()?;
        let nvars = entries.first().map(MPoly::nvars).unwrap_or(self.nvars);
        if entries.iter().any(|e| e.nvars() != nvars) {
            return Err(Error::ArityMismatch {
                expected: nvars,
                found: entries.iter().find(|e| e.nvars() != nvars).unwrap().nvars(),
            });
        }
        Ok(PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            nvars,
            entries,
        })
    }

    pub fn substitute(&self, images: &[MPoly]) -> Result<PolyMatrix> {
        self.map(|e| e.substitute(images))
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<RationalMatrix> {
        let values = self
            .entries
            .iter()
            .map(|e| e.evaluate(point))
            .collect::<Result<Vec<_>>>()?;
        RationalMatrix::new(self.rows, self.cols, values)
    }

    pub fn checked_mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        PolyMatrix::from_fn(self.rows, other.cols, self.nvars, |i, j| {
            (0..self.cols).fold(MPoly::zero(self.nvars), |acc, k| &acc + &(self.get(i, k) * other.get(k, j)))
        })
    }

    /// `self - c·I` for a scalar polynomial `c`.
    pub fn sub_scalar_identity(&self, c: &MPoly) -> Result<PolyMatrix> {
        if !self.is_square() {
            return Err(Error::Dimension("matrix is not square".into()));
        }
        let mut out = self.clone();
        for i in 0..self.rows {
            let idx = i * self.cols + i;
            out.entries[idx] = out.entries[idx].checked_sub(c)?;
        }
        Ok(out)
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.nvars != other.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                found: other.nvars,
            });
        }
        let n = self.nvars;
        PolyMatrix::from_fn(self.rows + other.rows, self.cols + other.cols, n, |i, j| {
            match (i < self.rows, j < self.cols) {
                (true, true) => self.get(i, j).clone(),
                (false, false) => other.get(i - self.rows, j - self.cols).clone(),
                _ => MPoly::zero(n),
            }
        })
    }

    /// Reorders rows and columns: entry `(i, j)` of the result is entry
    /// `(order[i], order[j])` of `self`.
    pub fn permuted(&self, order: &[usize]) -> Result<PolyMatrix> {
        if !self.is_square() || order.len() != self.rows {
            return Err(Error::Dimension("permutation does not match matrix size".into()));
        }
        PolyMatrix::from_fn(self.rows, self.cols, self.nvars, |i, j| self.get(order[i], order[j]).clone())
    }

    pub fn trace(&self) -> Result<MPoly> {
        if !self.is_square() {
            return Err(Error::Dimension("matrix is not square".into()));
        }
        Ok((0..self.rows).fold(MPoly::zero(self.nvars), |acc, i| &acc + self.get(i, i)))
    }

    /// Determinant by one-step fraction-free (Bareiss) elimination. The
    /// pivot in column `k` is the first row at or below `k` with a nonzero
    /// entry; every division is exact.
    pub fn det_bareiss(&self) -> Result<MPoly> {
        if !self.is_square() {
            return Err(Error::Dimension("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        let nv = self.nvars;
        let mut a: Vec<Vec<MPoly>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut negate = false;
        let mut prev = MPoly::one(nv);
        for k in 0..n.saturating_sub(1) {
            let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
                return Ok(MPoly::zero(nv));
            };
            if p != k {
                a.swap(p, k);
                negate = !negate;
            }
            let (top, bottom) = a.split_at_mut(k + 1);
            let pivot_row = &top[k];
            let update = |row: &mut Vec<MPoly>| -> Result<()> {
                for j in k + 1..n {
                    let num = &(&pivot_row[k] * &row[j]) - &(&row[k] * &pivot_row[j]);
                    row[j] = num.exact_div(&prev)?;
                }
                row[k] = MPoly::zero(nv);
                Ok(())
            };
            #[cfg(feature = "parallel")]
            {
                use rayon::prelude::*;
                bottom.par_iter_mut().try_for_each(update)?;
            }
            #[cfg(not(feature = "parallel"))]
            {
                bottom.iter_mut().try_for_each(update)?;
            }
            prev = a[k][k].clone();
        }
        let det = a[n - 1][n - 1].clone();
        Ok(if negate { -det } else { det })
    }

    /// Determinant by cofactor expansion along the first row; exponential,
    /// used as an independent check on small matrices.
    pub fn det_cofactor(&self) -> Result<MPoly> {
        if !self.is_square() {
            return Err(Error::Dimension("determinant of a non-square matrix".into()));
        }
        let idx: Vec<usize> = (0..self.rows).collect();
        Ok(self.cofactor_rec(0, &idx))
    }

    fn cofactor_rec(&self, row: usize, cols: &[usize]) -> MPoly {
        if cols.len() == 1 {
            return self.get(row, cols[0]).clone();
        }
        let mut acc = MPoly::zero(self.nvars);
        for (pos, &c) in cols.iter().enumerate() {
            let entry = self.get(row, c);
            if entry.is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let term = entry * &self.cofactor_rec(row + 1, &rest);
            acc = if pos % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        acc
    }

    pub fn to_rational(&self) -> Result<RationalMatrix> {
        if let Some(e) = self.entries.iter().find(|e| !e.is_constant()) {
            return Err(Error::Precondition(format!(
                "matrix entry with {} terms is not constant",
                e.num_terms()
            )));
        }
        let vals = self
            .entries
            .iter()
            .map(|e| if e.is_zero() { Rational::zero() } else { e.constant_term() })
            .collect();
        RationalMatrix::new(self.rows, self.cols, vals)
    }

    pub fn from_rational(m: &RationalMatrix, nvars: usize) -> PolyMatrix {
        PolyMatrix::from_fn(m.rows(), m.cols(), nvars, |i, j| MPoly::constant(nvars, m.get(i, j).clone()))
            .expect("positive size")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, rat, Monomial, VariableLegend};
    use proptest::prelude::*;

    fn pm(rows: &[&[&str]], l: &VariableLegend) -> PolyMatrix {
        PolyMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|s| parse_poly(s, l).unwrap()).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn determinant_examples() {
        let l = VariableLegend::letters(2);
        assert_eq!(PolyMatrix::identity(3, 2).det_bareiss().unwrap(), MPoly::one(2));
        let m = pm(&[&["a", "b"], &["b", "a"]], &l);
        assert_eq!(l.format(&m.det_bareiss().unwrap()), "a^2 - b^2");
        let z3 = pm(&[&["a", "b", "b"], &["b", "a", "b"], &["b", "b", "a"]], &l);
        assert_eq!(l.format(&z3.det_bareiss().unwrap()), "a^3 - 3*a*b^2 + 2*b^3");
        // needs a row swap
        let swap = pm(&[&["0", "a"], &["b", "1"]], &l);
        assert_eq!(l.format(&swap.det_bareiss().unwrap()), "-a*b");
        let singular = pm(&[&["a", "b"], &["2*a", "2*b"]], &l);
        assert!(singular.det_bareiss().unwrap().is_zero());
    }

    fn poly3() -> impl Strategy<Value = MPoly> {
        prop::collection::vec((prop::collection::vec(0u32..2, 3), -5i64..=5), 0..3).prop_map(|ts| {
            MPoly::from_terms(3, ts.into_iter().map(|(e, c)| (Monomial::from_exponents(e), rat(c)))).unwrap()
        })
    }

    fn poly_matrix(max: usize) -> impl Strategy<Value = PolyMatrix> {
        (1..=max).prop_flat_map(|n| {
            prop::collection::vec(poly3(), n * n).prop_map(move |v| PolyMatrix::from_fn(n, n, 3, |i, j| v[i * n + j].clone()).unwrap())
        })
    }

    fn const_matrix(n: usize) -> impl Strategy<Value = RationalMatrix> {
        prop::collection::vec(-9i64..=9, n * n).prop_map(move |v| RationalMatrix::new(n, n, v.into_iter().map(rat).collect()).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn bareiss_matches_cofactor(m in poly_matrix(4)) {
            prop_assert_eq!(m.det_bareiss().unwrap(), m.det_cofactor().unwrap());
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn determinant_is_multiplicative(a in const_matrix(3), b in const_matrix(3)) {
            let pa = PolyMatrix::from_rational(&a, 0);
            let pb = PolyMatrix::from_rational(&b, 0);
            let lhs = &pa.det_bareiss().unwrap() * &pb.det_bareiss().unwrap();
            let rhs = pa.checked_mul(&pb).unwrap().det_bareiss().unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
