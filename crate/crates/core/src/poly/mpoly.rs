use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::rational::Rational;
use super::univariate::UPoly;
use crate::error::{Error, Result};

/// Exponent vector, ordered graded-lexicographically with variable 0 the
/// most significant.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn from_exponents(e: Vec<u32>) -> Self {
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| a.checked_sub(b))
            .collect::<Option<Vec<u32>>>()
            .map(Monomial)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial over `Q` in a fixed number of variables.
///
/// Zero coefficients are never stored, so structural equality is
/// polynomial equality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable {i} out of range for arity {nvars}");
        let mut p = Self::zero(nvars);
        p.terms.insert(Monomial::var(nvars, i), Rational::one());
        p
    }

    /// Degree-one form `Σ coeffs[i]·x_i`.
    pub fn linear(coeffs: &[Rational]) -> Self {
        let n = coeffs.len();
        let mut p = Self::zero(n);
        for (i, c) in coeffs.iter().enumerate() {
            p.add_term(Monomial::var(n, i), c.clone());
        }
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Result<Self> {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            if m.0.len() != nvars {
                return Err(Error::ArityMismatch {
                    expected: nvars,
                    found: m.0.len(),
                });
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn constant_term(&self) -> Rational {
        self.terms
            .get(&Monomial::one(self.nvars))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter().rev()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[var]).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Coefficients of a homogeneous degree-one polynomial, or `None` when
    /// the polynomial is not of that shape.
    pub fn linear_coefficients(&self) -> Option<Vec<Rational>> {
        let mut out = vec![Rational::zero(); self.nvars];
        for (m, c) in &self.terms {
            if m.degree() != 1 {
                return None;
            }
            let i = m.0.iter().position(|&e| e == 1)?;
            out[i] = c.clone();
        }
        Some(out)
    }

    fn check_arity(&self, other: &MPoly) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                found: other.nvars,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &MPoly) -> Result<MPoly> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &MPoly) -> Result<MPoly> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &MPoly) -> Result<MPoly> {
        self.check_arity(other)?;
        let mut out = MPoly::zero(self.nvars);
        if self.is_zero() || other.is_zero() {
            return Ok(out);
        }
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, mut e: u32) -> MPoly {
        let mut base = self.clone();
        let mut acc = MPoly::one(self.nvars);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn scale(&self, c: &Rational) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(self.nvars);
        }
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    /// Quotient `q` with `q·den = self`; fails with `InexactDivision` when
    /// `den` does not divide `self`.
    pub fn exact_div(&self, den: &MPoly) -> Result<MPoly> {
        self.check_arity(den)?;
        let (lm, lc) = den.leading_term().ok_or(Error::DivisionByZero)?;
        if den.terms.len() == 1 {
            // monomial divisor: divide term by term
            let mut q = MPoly::zero(self.nvars);
            for (m, c) in &self.terms {
                let qm = m.div(lm).ok_or(Error::InexactDivision)?;
                q.terms.insert(qm, c / lc);
            }
            return Ok(q);
        }
        let mut rem = self.terms.clone();
        let mut q = MPoly::zero(self.nvars);
        while let Some((m, c)) = rem.iter().next_back() {
            let qm = m.div(lm).ok_or(Error::InexactDivision)?;
            let qc = c / lc;
            for (dm, dc) in &den.terms {
                let key = qm.mul(dm);
                let delta = &qc * dc;
                match rem.entry(key) {
                    std::collections::btree_map::Entry::Vacant(v) => {
                        v.insert(-delta);
                    }
                    std::collections::btree_map::Entry::Occupied(mut o) => {
                        *o.get_mut() -= delta;
                        if o.get().is_zero() {
                            o.remove();
                        }
                    }
                }
            }
            q.terms.insert(qm, qc);
        }
        Ok(q)
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                found: point.len(),
            });
        }
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Replaces variable `i` by `images[i]`; all images share one arity,
    /// which becomes the arity of the result.
    pub fn substitute(&self, images: &[MPoly]) -> Result<MPoly> {
        if images.len() != self.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                found: images.len(),
            });
        }
        let target = match images.first() {
            Some(p) => p.nvars,
            None => return Ok(self.clone()),
        };
        if let Some(bad) = images.iter().find(|p| p.nvars != target) {
            return Err(Error::ArityMismatch {
                expected: target,
                found: bad.nvars,
            });
        }
        // cache powers per variable
        let mut powers: Vec<Vec<MPoly>> = images.iter().map(|p| vec![MPoly::one(target), p.clone()]).collect();
        let mut out = MPoly::zero(target);
        for (m, c) in &self.terms {
            let mut t = MPoly::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let cache = &mut powers[i];
                while cache.len() <= e as usize {
                    let next = &cache[cache.len() - 1] * &cache[1];
                    cache.push(next);
                }
                t = &t * &cache[e as usize];
            }
            for (tm, tc) in t.terms {
                out.add_term(tm, tc);
            }
        }
        Ok(out)
    }

    /// Re-indexes variables: variable `i` becomes variable `map[i]` in a
    /// ring of `nvars` variables. Variables mapped to the same target are
    /// identified.
    pub fn rename(&self, map: &[usize], nvars: usize) -> Result<MPoly> {
        if map.len() != self.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                found: map.len(),
            });
        }
        let mut out = MPoly::zero(nvars);
        for (m, c) in &self.terms {
            let mut e = vec![0u32; nvars];
            for (i, &x) in m.0.iter().enumerate() {
                e[map[i]] += x;
            }
            out.add_term(Monomial(e), c.clone());
        }
        Ok(out)
    }

    /// Same polynomial in a ring with `extra` additional trailing variables.
    pub fn extend(&self, extra: usize) -> MPoly {
        let nvars = self.nvars + extra;
        MPoly {
            nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = m.0.clone();
                    e.resize(nvars, 0);
                    (Monomial(e), c.clone())
                })
                .collect(),
        }
    }

    /// Writes the polynomial as `Σ_k c_k · x_var^k`, returning `c_k` (same
    /// arity, no occurrence of `var`).
    pub fn coefficients_in(&self, var: usize) -> Vec<MPoly> {
        let deg = self.degree_in(var).unwrap_or(0) as usize;
        let mut out = vec![MPoly::zero(self.nvars); deg + 1];
        for (m, c) in &self.terms {
            let k = m.0[var] as usize;
            let mut e = m.0.clone();
            e[var] = 0;
            out[k].add_term(Monomial(e), c.clone());
        }
        out
    }

    /// Univariate view in variable `var`; fails if other variables occur.
    pub fn to_univariate(&self, var: usize) -> Result<UPoly> {
        let coeffs = self
            .coefficients_in(var)
            .into_iter()
            .map(|c| {
                if c.is_constant() {
                    Ok(c.constant_term())
                } else {
                    Err(Error::Precondition("polynomial is not univariate".into()))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(UPoly::new(coeffs))
    }

    /// `x_var^k`-adic valuation: the largest `k` with `x_var^k | self`.
    pub fn valuation_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var]).min().unwrap_or(0)
    }

    /// Divides out a content so that the leading coefficient is positive
    /// and the coefficients are coprime integers.
    pub fn primitive(&self) -> MPoly {
        use num_integer::Integer;
        if self.is_zero() {
            return self.clone();
        }
        let mut num_gcd = num_bigint::BigInt::zero();
        let mut den_lcm = num_bigint::BigInt::one();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut content = Rational::new(num_gcd, den_lcm);
        if self.leading_term().map(|(_, c)| c.is_negative()).unwrap_or(false) {
            content = -content;
        }
        self.scale(&content.recip())
    }
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        self.checked_add(rhs).expect("arity mismatch in MPoly addition")
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        self.checked_sub(rhs).expect("arity mismatch in MPoly subtraction")
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        self.checked_mul(rhs).expect("arity mismatch in MPoly multiplication")
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, rat, VariableLegend};
    use proptest::prelude::*;

    fn p(text: &str) -> MPoly {
        parse_poly(text, &VariableLegend::letters(3)).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(&p("a - b") * &p("a + b"), p("a^2 - b^2"));
        assert_eq!(&p("a^2 - b^2") + &MPoly::zero(3), p("a^2 - b^2"));
        let expanded = &p("a + 2*b") * &p("a - b").pow(2);
        assert_eq!(expanded, p("a^3 - 3*a*b^2 + 2*b^3"));
        assert!(p("a").checked_add(&MPoly::zero(2)).is_err());
    }

    #[test]
    fn division_examples() {
        assert_eq!(p("a^2 - b^2").exact_div(&p("a - b")).unwrap(), p("a + b"));
        assert_eq!(p("a^2 - b^2").exact_div(&MPoly::one(3)).unwrap(), p("a^2 - b^2"));
        assert_eq!(
            p("a^3 - 3*a*b^2 + 2*b^3").exact_div(&p("a - b")).unwrap(),
            p("a^2 + a*b - 2*b^2")
        );
        assert_eq!(p("a^2 + 1").exact_div(&p("a - b")), Err(Error::InexactDivision));
        assert_eq!(p("a*b + a").exact_div(&p("b")), Err(Error::InexactDivision));
        assert_eq!(p("a").exact_div(&MPoly::zero(3)), Err(Error::DivisionByZero));
    }

    #[test]
    fn evaluation_examples() {
        assert_eq!(p("a^2 - b^2").evaluate(&[rat(3), rat(1), rat(0)]).unwrap(), rat(8));
        assert_eq!(p("a^2 + 7").evaluate(&[rat(0), rat(0), rat(0)]).unwrap(), rat(7));
        assert_eq!(p("a^3 - 3*a*b^2 + 2*b^3").evaluate(&[rat(0), rat(1), rat(0)]).unwrap(), rat(2));
        assert!(p("a").evaluate(&[rat(1)]).is_err());
    }

    #[test]
    fn substitution_identifies_variables() {
        // c ↦ b on det(Z_3)
        let det = &p("a + b + c") * &p("a^2 - a*b + b^2 - a*c - b*c + c^2");
        let images = [MPoly::var(3, 0), MPoly::var(3, 1), MPoly::var(3, 1)];
        assert_eq!(det.substitute(&images).unwrap(), p("a^3 - 3*a*b^2 + 2*b^3"));
        let id: Vec<MPoly> = (0..3).map(|i| MPoly::var(3, i)).collect();
        assert_eq!(det.substitute(&id).unwrap(), det);
        assert_eq!(det.rename(&[0, 1, 1], 3).unwrap(), p("a^3 - 3*a*b^2 + 2*b^3"));
    }

    fn small_poly(nvars: usize) -> impl Strategy<Value = MPoly> {
        prop::collection::vec((prop::collection::vec(0u32..3, nvars), -5i64..=5), 0..6).prop_map(move |ts| {
            MPoly::from_terms(nvars, ts.into_iter().map(|(e, c)| (Monomial::from_exponents(e), rat(c)))).unwrap()
        })
    }

    proptest! {
        #[test]
        fn exact_div_inverts_mul(a in small_poly(3), b in small_poly(3)) {
            prop_assume!(!b.is_zero());
            prop_assert_eq!((&a * &b).exact_div(&b).unwrap(), a);
        }

        #[test]
        fn evaluate_commutes_with_substitute(
            a in small_poly(2),
            imgs in prop::collection::vec(small_poly(3), 2),
            pt in prop::collection::vec(-4i64..=4, 3),
        ) {
            let point: Vec<Rational> = pt.into_iter().map(rat).collect();
            let direct = a.substitute(&imgs).unwrap().evaluate(&point).unwrap();
            let inner: Vec<Rational> = imgs.iter().map(|q| q.evaluate(&point).unwrap()).collect();
            prop_assert_eq!(direct, a.evaluate(&inner).unwrap());
        }
    }
}
