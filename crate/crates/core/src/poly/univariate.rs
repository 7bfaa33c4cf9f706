//! Dense univariate polynomials over `Q` with square-free decomposition and
//! complete, exact rational root finding.
//!
//! Rational roots are found without factoring any integer: the primitive
//! square-free part is made monic over `Z`, its real roots are isolated by
//! Descartes-rule bisection (Vincent–Collins–Akritas), and each isolating
//! interval is searched for an integer root by integer bisection.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::Rational;

/// Coefficients in ascending degree order; trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UPoly {
    coeffs: Vec<Rational>,
}

/// Rational roots with multiplicities (ascending), and the degrees of the
/// parts of the polynomial without rational roots, each listed once per
/// multiplicity of the square-free factor it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootReport {
    pub roots: Vec<(Rational, usize)>,
    pub residual_degrees: Vec<usize>,
}

impl UPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        UPoly::new(vec![c])
    }

    /// `x - r`
    pub fn linear_root(r: &Rational) -> Self {
        UPoly::new(vec![-r.clone(), Rational::one()])
    }

    pub fn from_integers(c: &[i64]) -> Self {
        UPoly::new(c.iter().map(|&x| Rational::from_integer(x.into())).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        UPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn mul(&self, other: &UPoly) -> UPoly {
        if self.is_zero() || other.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UPoly::new(out)
    }

    pub fn sub(&self, other: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let get = |v: &[Rational], i: usize| v.get(i).cloned().unwrap_or_else(Rational::zero);
        UPoly::new((0..n).map(|i| get(&self.coeffs, i) - get(&other.coeffs, i)).collect())
    }

    pub fn scale(&self, c: &Rational) -> UPoly {
        UPoly::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn pow(&self, e: usize) -> UPoly {
        (0..e).fold(UPoly::constant(Rational::one()), |acc, _| acc.mul(self))
    }

    pub fn monic(&self) -> UPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.leading().recip())
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn div_rem(&self, d: &UPoly) -> (UPoly, UPoly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.coeffs.len() - 1;
        let lead_inv = d.leading().recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (UPoly::zero(), self.clone());
        }
        let mut q = vec![Rational::zero(); rem.len() - dd];
        for i in (0..q.len()).rev() {
            let c = &rem[i + dd] * &lead_inv;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[i + j] -= &c * dc;
                }
            }
            q[i] = c;
        }
        rem.truncate(dd);
        (UPoly::new(q), UPoly::new(rem))
    }

    /// Exact quotient; `None` if the remainder is nonzero.
    pub fn exact_div(&self, d: &UPoly) -> Option<UPoly> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.monic(), other.monic());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Yun's algorithm: monic square-free `a_i` with `self = c·Π a_i^i`.
    /// Factors equal to `1` are omitted.
    pub fn squarefree_decomposition(&self) -> Vec<(UPoly, usize)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let c = f.gcd(&df);
        let mut w = f.exact_div(&c).expect("gcd divides");
        let mut y = df.exact_div(&c).expect("gcd divides");
        let mut z = y.sub(&w.derivative());
        let mut i = 1;
        while w.degree().unwrap_or(0) > 0 {
            let g = w.gcd(&z);
            if g.degree().unwrap_or(0) > 0 {
                out.push((g.clone(), i));
            }
            w = w.exact_div(&g).expect("gcd divides");
            y = z.exact_div(&g).expect("gcd divides");
            z = y.sub(&w.derivative());
            i += 1;
        }
        out
    }

    /// Primitive integer coefficient vector proportional to `self`, with a
    /// positive leading coefficient.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let sign = if ints.last().unwrap().is_negative() { -BigInt::one() } else { BigInt::one() };
        ints.into_iter().map(|c| c / &g * &sign).collect()
    }

    /// All rational roots with multiplicity, plus residual degrees.
    pub fn rational_roots(&self) -> RootReport {
        let mut roots = Vec::new();
        let mut residual_degrees = Vec::new();
        for (factor, mult) in self.squarefree_decomposition() {
            let found = squarefree_rational_roots(&factor);
            let residual = factor.degree().unwrap() - found.len();
            roots.extend(found.into_iter().map(|r| (r, mult)));
            if residual > 0 {
                residual_degrees.extend(std::iter::repeat_n(residual, mult));
            }
        }
        roots.sort_by(|a, b| a.0.cmp(&b.0));
        residual_degrees.sort_unstable();
        RootReport {
            roots,
            residual_degrees,
        }
    }
}

/// Rational roots of a square-free polynomial.
fn squarefree_rational_roots(f: &UPoly) -> Vec<Rational> {
    let mut a = f.primitive_integer();
    let mut out = Vec::new();
    if a.is_empty() {
        return out;
    }
    if a[0].is_zero() {
        out.push(Rational::zero());
        a.remove(0);
    }
    let n = a.len() - 1;
    if n == 0 {
        return out;
    }
    // z = lead·x turns a into a monic integer polynomial in z
    let lead = a[n].clone();
    let mut monic = vec![BigInt::one(); n + 1];
    let mut power = BigInt::one();
    for i in (0..n).rev() {
        monic[i] = &a[i] * &power;
        power *= &lead;
    }
    for z in integer_roots(&monic) {
        out.push(Rational::new(z, lead.clone()));
    }
    out.sort();
    out
}

/// Integer roots of a square-free integer polynomial with nonzero constant
/// term.
pub(crate) fn integer_roots(a: &[BigInt]) -> Vec<BigInt> {
    let mut out = Vec::new();
    if a.len() < 2 {
        return out;
    }
    debug_assert!(!a[0].is_zero());
    for negative in [false, true] {
        let g: Vec<BigInt> = a
            .iter()
            .enumerate()
            .map(|(i, c)| if negative && i % 2 == 1 { -c } else { c.clone() })
            .collect();
        for z in positive_integer_roots(&g) {
            out.push(if negative { -z } else { z });
        }
    }
    out.sort();
    out
}

fn positive_integer_roots(g: &[BigInt]) -> Vec<BigInt> {
    let n = g.len() - 1;
    let lead = g[n].abs();
    // Cauchy bound 1 + max|a_i|/|a_n| ≤ 2^bits
    let max = g[..n].iter().map(|c| c.abs()).max().unwrap_or_default();
    let bound = max / &lead + 2u32;
    let bits = bound.bits() as u32;
    // h(x) = g(2^bits · x), roots of g in (0, 2^bits) ↔ roots of h in (0, 1)
    let h: Vec<BigInt> = g.iter().enumerate().map(|(i, c)| c << (bits as usize * i)).collect();
    let mut intervals = Vec::new();
    let mut exact = Vec::new();
    isolate(primitive(h), BigInt::zero(), 0, &mut intervals, &mut exact);
    let scale = |c: &BigInt, k: u32| Rational::new(c << bits as usize, BigInt::one() << k as usize);
    let mut out = Vec::new();
    for (c, k) in exact {
        let r = scale(&c, k);
        if r.is_integer() {
            out.push(r.to_integer());
        }
    }
    for (c, k) in intervals {
        let lo = scale(&c, k);
        let hi = scale(&(c + 1), k);
        if let Some(z) = integer_in_isolating_interval(g, &lo, &hi) {
            out.push(z);
        }
    }
    out
}

fn primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if !g.is_zero() && !g.is_one() {
        for c in &mut v {
            *c /= &g;
        }
    }
    v
}

fn sign_variations(v: &[BigInt]) -> usize {
    let mut count = 0;
    let mut last = Sign::NoSign;
    for c in v {
        let s = c.sign();
        if s == Sign::NoSign {
            continue;
        }
        if last != Sign::NoSign && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

fn taylor_shift_one(mut a: Vec<BigInt>) -> Vec<BigInt> {
    let n = a.len();
    for i in 0..n.saturating_sub(1) {
        for j in (i..n - 1).rev() {
            let next = a[j + 1].clone();
            a[j] += next;
        }
    }
    a
}

/// Upper bound (exact when 0 or 1) on the number of roots in `(0, 1)`.
fn descartes_unit(h: &[BigInt]) -> usize {
    let reversed: Vec<BigInt> = h.iter().rev().cloned().collect();
    sign_variations(&taylor_shift_one(reversed))
}

/// Interval `(c/2^k, (c+1)/2^k)` bookkeeping for `h`, whose roots in
/// `(0, 1)` are the roots of the original polynomial in that interval.
fn isolate(h: Vec<BigInt>, c: BigInt, k: u32, intervals: &mut Vec<(BigInt, u32)>, exact: &mut Vec<(BigInt, u32)>) {
    match descartes_unit(&h) {
        0 => {}
        1 => intervals.push((c, k)),
        _ => {
            let n = h.len() - 1;
            // left(x) = 2^n h(x/2)
            let left: Vec<BigInt> = h.iter().enumerate().map(|(i, v)| v << (n - i)).collect();
            let left = primitive(left);
            // midpoint root: left(1) = 0
            let at_one: BigInt = left.iter().sum();
            let right = taylor_shift_one(left.clone());
            if at_one.is_zero() {
                exact.push((&c * 2 + 1, k + 1));
            }
            isolate(left, &c * 2, k + 1, intervals, exact);
            isolate(right, &c * 2 + 1, k + 1, intervals, exact);
        }
    }
}

fn eval_int(a: &[BigInt], x: &BigInt) -> BigInt {
    a.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

/// The only root of the square-free `g` in the open interval `(lo, hi)`,
/// if it is an integer.
fn integer_in_isolating_interval(g: &[BigInt], lo: &Rational, hi: &Rational) -> Option<BigInt> {
    let mut a = lo.floor().to_integer() + 1;
    let mut b = hi.ceil().to_integer() - 1;
    if a > b {
        return None;
    }
    let fa = eval_int(g, &a);
    if fa.is_zero() {
        return Some(a);
    }
    let fb = eval_int(g, &b);
    if fb.is_zero() {
        return Some(b);
    }
    if fa.sign() == fb.sign() {
        return None;
    }
    let sa = fa.sign();
    while &b - &a > BigInt::one() {
        let m: BigInt = (&a + &b) >> 1;
        let fm = eval_int(g, &m);
        if fm.is_zero() {
            return Some(m);
        }
        if fm.sign() == sa {
            a = m;
        } else {
            b = m;
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, rat_frac};
    use proptest::prelude::*;

    #[test]
    fn squarefree_of_repeated_roots() {
        // (x-2)(x+1)^2 = x^3 - 3x - 2
        let f = UPoly::from_integers(&[-2, -3, 0, 1]);
        let sf = f.squarefree_decomposition();
        assert_eq!(sf.len(), 2);
        assert_eq!(sf[0], (UPoly::from_integers(&[-2, 1]), 1));
        assert_eq!(sf[1], (UPoly::from_integers(&[1, 1]), 2));
        let r = f.rational_roots();
        assert_eq!(r.roots, vec![(rat(-1), 2), (rat(2), 1)]);
        assert!(r.residual_degrees.is_empty());
    }

    #[test]
    fn irrational_roots_are_residual() {
        // t^2 - 3t - 1, discriminant 13
        let r = UPoly::from_integers(&[-1, -3, 1]).rational_roots();
        assert!(r.roots.is_empty());
        assert_eq!(r.residual_degrees, vec![2]);
        // (t^2 - 2)^2 (2t - 1)
        let f = UPoly::from_integers(&[-2, 0, 1]).pow(2).mul(&UPoly::from_integers(&[-1, 2]));
        let r = f.rational_roots();
        assert_eq!(r.roots, vec![(rat_frac(1, 2), 1)]);
        assert_eq!(r.residual_degrees, vec![2, 2]);
    }

    #[test]
    fn zero_and_large_roots() {
        let big = rat(1_000_000_007) * rat(1_000_000_009);
        let f = UPoly::linear_root(&big)
            .mul(&UPoly::linear_root(&rat(0)))
            .mul(&UPoly::linear_root(&rat_frac(-7, 3)))
            .mul(&UPoly::from_integers(&[1, 0, 1]));
        let r = f.rational_roots();
        assert_eq!(r.roots, vec![(rat_frac(-7, 3), 1), (rat(0), 1), (big, 1)]);
        assert_eq!(r.residual_degrees, vec![2]);
    }

    #[test]
    fn close_roots_are_separated() {
        // roots 5 and 6 and an irrational root between them
        let f = UPoly::linear_root(&rat(5))
            .mul(&UPoly::linear_root(&rat(6)))
            .mul(&UPoly::from_integers(&[-30, 0, 1]));
        let r = f.rational_roots();
        assert_eq!(r.roots, vec![(rat(5), 1), (rat(6), 1)]);
    }

    proptest! {
        #[test]
        fn recovers_planted_roots(
            roots in prop::collection::vec((-60i64..60, 1i64..6), 1..7),
            mults in prop::collection::vec(1usize..3, 7),
            noise in prop::collection::vec(-9i64..9, 0..3),
        ) {
            let mut f = UPoly::constant(rat(3));
            let mut expected: Vec<(Rational, usize)> = Vec::new();
            for (i, &(n, d)) in roots.iter().enumerate() {
                let r = rat_frac(n, d);
                if expected.iter().any(|(x, _)| *x == r) {
                    continue;
                }
                f = f.mul(&UPoly::linear_root(&r).pow(mults[i]));
                expected.push((r, mults[i]));
            }
            // x^2 + c with c > 0 has no real roots
            for c in noise {
                f = f.mul(&UPoly::from_integers(&[c.abs() + 1, 0, 1]));
            }
            expected.sort();
            prop_assert_eq!(f.rational_roots().roots, expected);
        }
    }
}
