use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{Rational, UPoly};

/// Dense matrix over `Q`, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RationalMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Dimension("matrix dimensions must be positive".into()));
        }
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries do not fill a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(RationalMatrix { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl FnMut((usize, usize)) -> Rational) -> Result<Self> {
        let data = (0..rows).flat_map(|i| (0..cols).map(move |j| (i, j))).map(f).collect();
        Self::new(rows, cols, data)
    }

    pub fn from_rows(rows: &[Vec<Rational>]) -> Result<Self> {
        let c = rows.first().map(Vec::len).unwrap_or(0);
        if rows.iter().any(|r| r.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Self::new(rows.len(), c, rows.concat())
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        let r: Vec<Vec<Rational>> = rows
            .iter()
            .map(|row| row.iter().map(|&x| Rational::from_integer(x.into())).collect())
            .collect();
        Self::from_rows(&r)
    }

    pub fn identity(n: usize) -> Self {
        Self::diagonal(&vec![Rational::one(); n])
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn diagonal(d: &[Rational]) -> Self {
        let n = d.len();
        let mut m = Self::zero(n, n);
        for (i, v) in d.iter().enumerate() {
            m.data[i * n + i] = v.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |(i, j)| self.get(j, i).clone()).expect("positive size")
    }

    pub fn mul(&self, other: &RationalMatrix) -> Result<RationalMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    /// `self - c·I`
    pub fn sub_scalar(&self, c: &Rational) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Dimension("matrix is not square".into()));
        }
        let mut out = self.clone();
        for i in 0..self.rows {
            out.data[i * self.cols + i] -= c;
        }
        Ok(out)
    }

    /// Integer matrix with the same row space: each row multiplied by the
    /// lcm of its denominators.
    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                row.iter().map(|x| (x * Rational::from_integer(l.clone())).to_integer()).collect()
            })
            .collect()
    }

    /// Rank by fraction-free elimination over `Z`.
    pub fn rank(&self) -> usize {
        let mut a = self.integer_rows();
        let (n, m) = (self.rows, self.cols);
        let mut prev = BigInt::one();
        let mut r = 0;
        for c in 0..m {
            if r == n {
                break;
            }
            let Some(p) = (r..n).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(p, r);
            let (top, bottom) = a.split_at_mut(r + 1);
            let pivot = &top[r];
            for row in bottom.iter_mut() {
                for j in c + 1..m {
                    let num = &pivot[c] * &row[j] - &row[c] * &pivot[j];
                    debug_assert!((&num % &prev).is_zero());
                    row[j] = num / &prev;
                }
                row[c] = BigInt::zero();
            }
            prev = top[r][c].clone();
            r += 1;
        }
        r
    }

    /// Dimension of the right kernel.
    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    /// Determinant by fraction-free elimination on the integer-scaled rows.
    pub fn det(&self) -> Result<Rational> {
        if !self.is_square() {
            return Err(Error::Dimension("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut scale = Rational::one();
        for i in 0..n {
            let l = self.row(i).iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            scale *= Rational::from_integer(l);
        }
        let mut a = self.integer_rows();
        let mut prev = BigInt::one();
        let mut negate = false;
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
                return Ok(Rational::zero());
            };
            if p != k {
                a.swap(p, k);
                negate = !negate;
            }
            let (top, bottom) = a.split_at_mut(k + 1);
            let pivot = &top[k];
            for row in bottom.iter_mut() {
                for j in k + 1..n {
                    row[j] = (&pivot[k] * &row[j] - &row[k] * &pivot[j]) / &prev;
                }
                row[k] = BigInt::zero();
            }
            prev = top[k][k].clone();
        }
        let det = Rational::from_integer(prev) / scale;
        Ok(if negate { -det } else { det })
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (RationalMatrix, Vec<usize>) {
        let mut a = self.clone();
        let (n, m) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m {
            if r == n {
                break;
            }
            let Some(p) = (r..n).find(|&i| !a.get(i, c).is_zero()) else {
                continue;
            };
            for j in 0..m {
                a.data.swap(p * m + j, r * m + j);
            }
            let inv = a.get(r, c).recip();
            for j in c..m {
                a.data[r * m + j] *= &inv;
            }
            for i in 0..n {
                if i == r || a.get(i, c).is_zero() {
                    continue;
                }
                let f = a.get(i, c).clone();
                for j in c..m {
                    let delta = &f * a.get(r, j);
                    a.data[i * m + j] -= delta;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (a, pivots)
    }

    /// Basis of the right kernel, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let (r, pivots) = self.rref();
        let m = self.cols;
        let mut basis = Vec::new();
        for free in (0..m).filter(|c| !pivots.contains(c)) {
            let mut v = vec![Rational::zero(); m];
            v[free] = Rational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -r.get(row, free).clone();
            }
            basis.push(v);
        }
        basis
    }

    pub fn inverse(&self) -> Result<RationalMatrix> {
        if !self.is_square() {
            return Err(Error::Dimension("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let aug = RationalMatrix::from_fn(n, 2 * n, |(i, j)| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                Rational::one()
            } else {
                Rational::zero()
            }
        })?;
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Precondition("matrix is singular".into()));
        }
        RationalMatrix::from_fn(n, n, |(i, j)| r.get(i, j + n).clone())
    }

    /// `det(tI - self)`, monic, by reduction to Hessenberg form.
    pub fn charpoly(&self) -> Result<UPoly> {
        if !self.is_square() {
            return Err(Error::Dimension("characteristic polynomial of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut h = self.clone();
        let idx = |i: usize, j: usize| i * n + j;
        for m in 1..n.saturating_sub(1) {
            let Some(p) = (m..n).find(|&i| !h.get(i, m - 1).is_zero()) else {
                continue;
            };
            if p != m {
                for j in 0..n {
                    h.data.swap(idx(p, j), idx(m, j));
                }
                for i in 0..n {
                    h.data.swap(idx(i, p), idx(i, m));
                }
            }
            let pivot_inv = h.get(m, m - 1).recip();
            for i in m + 1..n {
                if h.get(i, m - 1).is_zero() {
                    continue;
                }
                let u = h.get(i, m - 1) * &pivot_inv;
                for j in 0..n {
                    let d = &u * h.get(m, j);
                    h.data[idx(i, j)] -= d;
                }
                for j in 0..n {
                    let d = &u * h.get(j, i);
                    h.data[idx(j, m)] += d;
                }
            }
        }
        // p_m = (t - h_mm) p_{m-1} - Σ_i h_im (Π h_{j,j-1}) p_{i-1}, 1-based
        let t = UPoly::new(vec![Rational::zero(), Rational::one()]);
        let mut p: Vec<UPoly> = vec![UPoly::constant(Rational::one())];
        for m in 1..=n {
            let mut next = t.sub(&UPoly::constant(h.get(m - 1, m - 1).clone())).mul(&p[m - 1]);
            let mut prod = Rational::one();
            for i in (1..m).rev() {
                prod *= h.get(i, i - 1);
                if prod.is_zero() {
                    break;
                }
                let c = h.get(i - 1, m - 1) * &prod;
                if !c.is_zero() {
                    next = next.sub(&p[i - 1].scale(&c));
                }
            }
            p.push(next);
        }
        Ok(p.pop().unwrap())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, rat_frac};
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> RationalMatrix {
        RationalMatrix::from_i64(rows).unwrap()
    }

    #[test]
    fn nullity_examples() {
        assert_eq!(RationalMatrix::zero(4, 4).nullity(), 4);
        assert_eq!(RationalMatrix::identity(5).nullity(), 0);
        assert_eq!(m(&[&[1, 1, 1], &[1, 1, 1], &[1, 1, 1]]).nullity(), 2);
        // column skipping
        assert_eq!(m(&[&[0, 1, 2], &[0, 2, 4], &[0, 0, 1]]).rank(), 2);
    }

    #[test]
    fn charpoly_examples() {
        assert_eq!(RationalMatrix::identity(2).charpoly().unwrap(), UPoly::from_integers(&[1, -2, 1]));
        assert_eq!(m(&[&[0, 1], &[1, 0]]).charpoly().unwrap(), UPoly::from_integers(&[-1, 0, 1]));
        let j = m(&[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0]]);
        assert_eq!(j.charpoly().unwrap(), UPoly::from_integers(&[-2, -3, 0, 1]));
    }

    #[test]
    fn inverse_and_det() {
        let a = m(&[&[2, 1], &[7, 4]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), RationalMatrix::identity(2));
        assert_eq!(a.det().unwrap(), rat(1));
        let b = RationalMatrix::from_rows(&[vec![rat_frac(1, 2), rat(1)], vec![rat(3), rat_frac(1, 3)]]).unwrap();
        assert_eq!(b.det().unwrap(), rat_frac(1, 6) - rat(3));
        assert!(m(&[&[1, 2], &[2, 4]]).inverse().is_err());
    }

    #[test]
    fn nullspace_vectors_are_in_kernel() {
        let a = m(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[1, 0, 1, 0]]);
        let ns = a.nullspace();
        assert_eq!(ns.len(), a.nullity());
        for v in ns {
            assert!(a.mul_vec(&v).iter().all(Zero::is_zero));
        }
    }

    fn rational_matrix(n: usize) -> impl Strategy<Value = RationalMatrix> {
        prop::collection::vec((-4i64..=4, 1i64..4), n * n)
            .prop_map(move |v| RationalMatrix::new(n, n, v.into_iter().map(|(a, b)| rat_frac(a, b)).collect()).unwrap())
    }

    /// Naive Leibniz determinant used as an oracle.
    fn leibniz(a: &RationalMatrix) -> Rational {
        fn rec(a: &RationalMatrix, perm: &mut Vec<usize>, acc: &mut Rational) {
            let n = a.rows();
            if perm.len() == n {
                let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| perm[i] > perm[j]).count();
                let mut term = if inversions % 2 == 0 { rat(1) } else { rat(-1) };
                for (r, &c) in perm.iter().enumerate() {
                    term *= a.get(r, c);
                }
                *acc += term;
                return;
            }
            for c in 0..n {
                if !perm.contains(&c) {
                    perm.push(c);
                    rec(a, perm, acc);
                    perm.pop();
                }
            }
        }
        let mut acc = Rational::zero();
        rec(a, &mut Vec::new(), &mut acc);
        acc
    }

    proptest! {
        #[test]
        fn det_matches_leibniz(a in (1usize..5).prop_flat_map(rational_matrix)) {
            prop_assert_eq!(a.det().unwrap(), leibniz(&a));
        }

        #[test]
        fn charpoly_matches_determinant(a in (1usize..6).prop_flat_map(rational_matrix), x in -5i64..5) {
            let direct = a.sub_scalar(&rat(x)).unwrap().scale(&rat(-1)).det().unwrap();
            prop_assert_eq!(a.charpoly().unwrap().eval(&rat(x)), direct);
        }

        #[test]
        fn rank_matches_rref(rows in 1usize..6, cols in 1usize..6, seed in prop::collection::vec(-2i64..=2, 36)) {
            let a = RationalMatrix::from_fn(rows, cols, |(i, j)| rat(seed[i * 6 + j])).unwrap();
            prop_assert_eq!(a.rank(), a.rref().1.len());
        }
    }
}
