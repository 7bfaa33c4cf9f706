use std::fmt::Write;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::mpoly::{MPoly, Monomial};
use super::rational::Rational;
use crate::error::{Error, Result};

/// Names of the variables of a polynomial ring, with optional per-variable
/// descriptions of the group elements each variable stands for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VariableLegend {
    names: Vec<String>,
    members: Vec<Vec<String>>,
}

impl VariableLegend {
    /// `a, b, c, ...` for at most 26 variables, `Y0, Y1, ...` beyond that.
    pub fn letters(n: usize) -> Self {
        let names = if n <= 26 {
            (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
        } else {
            (0..n).map(|i| format!("Y{i}")).collect()
        };
        VariableLegend {
            names,
            members: vec![Vec::new(); n],
        }
    }

    /// `prefix0, prefix1, ...`
    pub fn indexed(prefix: &str, n: usize) -> Self {
        VariableLegend {
            names: (0..n).map(|i| format!("{prefix}{i}")).collect(),
            members: vec![Vec::new(); n],
        }
    }

    pub fn from_names(names: Vec<String>) -> Result<Self> {
        for (i, a) in names.iter().enumerate() {
            if !is_identifier(a) {
                return Err(Error::Parse(format!("`{a}` is not a valid variable name")));
            }
            if names[..i].contains(a) {
                return Err(Error::Parse(format!("duplicate variable name `{a}`")));
            }
        }
        let n = names.len();
        Ok(VariableLegend {
            names,
            members: vec![Vec::new(); n],
        })
    }

    pub fn with_members(mut self, members: Vec<Vec<String>>) -> Self {
        assert_eq!(members.len(), self.names.len());
        self.members = members;
        self
    }

    /// Legend with one more trailing variable.
    pub fn with_extra(&self, name: &str) -> Result<Self> {
        let mut names = self.names.clone();
        names.push(name.to_string());
        let mut out = Self::from_names(names)?;
        out.members[..self.members.len()].clone_from_slice(&self.members);
        Ok(out)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn members(&self, i: usize) -> &[String] {
        &self.members[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Canonical text: terms in descending graded-lex order, `*` between
    /// factors, signs inline, e.g. `a^3 - 3*a*b^2 + 2*b^3` or `3/2*a*b`.
    pub fn format(&self, p: &MPoly) -> String {
        if p.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in p.terms().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let mag = c.abs();
            let mono = self.format_monomial(m);
            if mono.is_empty() {
                write!(out, "{mag}").unwrap();
            } else if mag.is_one() {
                out.push_str(&mono);
            } else {
                write!(out, "{mag}*{mono}").unwrap();
            }
        }
        out
    }

    fn format_monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (i, &e) in m.exponents().iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(self.names[i].clone()),
                _ => parts.push(format!("{}^{e}", self.names[i])),
            }
        }
        parts.join("*")
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_digit() || c == '_')
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            _ if c.is_whitespace() => i += 1,
            '+' | '-' | '*' | '/' | '^' => {
                out.push(match c {
                    '+' => Token::Plus,
                    '-' => Token::Minus,
                    '*' => Token::Star,
                    '/' => Token::Slash,
                    _ => Token::Caret,
                });
                i += 1;
            }
            _ if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push(Token::Num(s.parse().expect("digits")));
            }
            _ if c.is_ascii_alphabetic() => {
                let start = i;
                i += 1;
                while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Token::Ident(chars[start..i].iter().collect()));
            }
            _ => return Err(Error::Parse(format!("unexpected character `{c}`"))),
        }
    }
    Ok(out)
}

/// Parses the polynomial text grammar
/// `term (("+"|"-") term)*`, `term := coeff ["*"] var ["^" exp] ...`.
/// Whitespace is ignored and `*` between factors is optional.
pub fn parse_poly(text: &str, legend: &VariableLegend) -> Result<MPoly> {
    let tokens = tokenize(text)?;
    let n = legend.len();
    let mut pos = 0;
    let mut out = MPoly::zero(n);
    let err = |msg: &str| Error::Parse(format!("{msg} in `{text}`"));
    if tokens.is_empty() {
        return Err(err("empty polynomial"));
    }
    let mut first = true;
    while pos < tokens.len() {
        let mut sign = Rational::one();
        match tokens[pos] {
            Token::Plus if !first => pos += 1,
            Token::Minus => {
                sign = -sign;
                pos += 1;
            }
            _ if first => {}
            _ => return Err(err("expected `+` or `-`")),
        }
        first = false;
        let mut coeff = sign;
        let mut exps = vec![0u32; n];
        let mut factors = 0;
        loop {
            match tokens.get(pos) {
                Some(Token::Num(v)) => {
                    let mut value = Rational::from_integer(v.clone());
                    pos += 1;
                    if tokens.get(pos) == Some(&Token::Slash) {
                        match tokens.get(pos + 1) {
                            Some(Token::Num(d)) if !d.is_zero() => {
                                value /= Rational::from_integer(d.clone());
                                pos += 2;
                            }
                            _ => return Err(err("bad denominator")),
                        }
                    }
                    coeff *= value;
                }
                Some(Token::Ident(name)) => {
                    let idx = legend
                        .index_of(name)
                        .ok_or_else(|| err(&format!("unknown variable `{name}`")))?;
                    pos += 1;
                    let mut e = 1u32;
                    if tokens.get(pos) == Some(&Token::Caret) {
                        match tokens.get(pos + 1) {
                            Some(Token::Num(v)) => {
                                e = v.try_into().map_err(|_| err("exponent too large"))?;
                                pos += 2;
                            }
                            _ => return Err(err("expected exponent")),
                        }
                    }
                    exps[idx] += e;
                }
                _ => return Err(err("expected a coefficient or variable")),
            }
            factors += 1;
            match tokens.get(pos) {
                Some(Token::Star) => pos += 1,
                Some(Token::Num(_)) | Some(Token::Ident(_)) => {}
                _ => break,
            }
        }
        debug_assert!(factors > 0);
        out.add_term(Monomial::from_exponents(exps), coeff);
    }
    Ok(out)
}

/// Parses a product of parenthesized polynomials with optional exponents,
/// such as `-(a + 2b)(a - b)^2`. Text without parentheses is parsed as a
/// single polynomial.
pub fn parse_factored(text: &str, legend: &VariableLegend) -> Result<MPoly> {
    let err = |msg: &str| Error::Parse(format!("{msg} in `{text}`"));
    let t = text.trim();
    if !t.contains('(') {
        return parse_poly(t, legend);
    }
    let (negate, mut rest) = match t.strip_prefix('-') {
        Some(r) => (true, r.trim_start()),
        None => (false, t),
    };
    let mut out = MPoly::one(legend.len());
    while !rest.is_empty() {
        rest = rest.strip_prefix('(').ok_or_else(|| err("expected `(`"))?;
        let close = rest.find(')').ok_or_else(|| err("unbalanced parentheses"))?;
        let factor = parse_poly(&rest[..close], legend)?;
        rest = rest[close + 1..].trim_start();
        let mut e = 1u32;
        if let Some(r) = rest.strip_prefix('^') {
            let digits = r.trim_start();
            let end = digits.find(|c: char| !c.is_ascii_digit()).unwrap_or(digits.len());
            e = digits[..end].parse().map_err(|_| err("expected exponent"))?;
            rest = digits[end..].trim_start();
        }
        out = out.checked_mul(&factor.pow(e))?;
        rest = rest.strip_prefix('*').unwrap_or(rest).trim_start();
    }
    Ok(if negate { -&out } else { out })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat_frac;

    #[test]
    fn canonical_strings() {
        let l = VariableLegend::letters(2);
        let p = parse_poly("a^2 - b^2", &l).unwrap();
        assert_eq!(l.format(&p), "a^2 - b^2");
        assert_eq!(l.format(&MPoly::zero(2)), "0");
        let ab = parse_poly("a*b", &l).unwrap().scale(&rat_frac(3, 2));
        assert_eq!(l.format(&ab), "3/2*a*b");
        let messy = parse_poly(" 2b^3 +a^3 -3 a b^2 ", &l).unwrap();
        assert_eq!(l.format(&messy), "a^3 - 3*a*b^2 + 2*b^3");
        assert_eq!(l.format(&parse_poly("-b + 1/2", &l).unwrap()), "-b + 1/2");
        assert_eq!(l.format(&parse_poly("-3", &l).unwrap()), "-3");
    }

    #[test]
    fn legend_naming() {
        assert_eq!(VariableLegend::letters(3).names(), ["a", "b", "c"]);
        assert_eq!(VariableLegend::letters(27).name(0), "Y0");
        assert!(VariableLegend::from_names(vec!["a".into(), "a".into()]).is_err());
        let l = VariableLegend::letters(2).with_extra("t").unwrap();
        assert_eq!(l.index_of("t"), Some(2));
    }

    #[test]
    fn parse_errors() {
        let l = VariableLegend::letters(2);
        assert!(parse_poly("", &l).is_err());
        assert!(parse_poly("a + z", &l).is_err());
        assert!(parse_poly("a +", &l).is_err());
        assert!(parse_poly("a ^", &l).is_err());
        assert!(parse_poly("3/0*a", &l).is_err());
        assert!(parse_poly("a & b", &l).is_err());
    }

    #[test]
    fn factored_forms() {
        let l = VariableLegend::letters(2);
        let p = parse_factored("(a + 2b)(a - b)^2", &l).unwrap();
        assert_eq!(l.format(&p), "a^3 - 3*a*b^2 + 2*b^3");
        let n = parse_factored("-(a)*(b)", &l).unwrap();
        assert_eq!(l.format(&n), "-a*b");
        assert_eq!(parse_factored("a - b", &l).unwrap(), parse_poly("a - b", &l).unwrap());
        assert!(parse_factored("(a + b", &l).is_err());
        assert!(parse_factored("(a)^x", &l).is_err());
    }

    #[test]
    fn multi_letter_names() {
        let l = VariableLegend::indexed("Y", 12);
        let p = parse_poly("Y0^2 - 2*Y11*Y3 + Y10", &l).unwrap();
        assert_eq!(l.format(&p), "Y0^2 - 2*Y3*Y11 + Y10");
    }
}
