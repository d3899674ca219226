use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Exponent vector `(t, v)`.
pub type Exponent = (i32, i32);

/// Sparse Laurent polynomial in `t` and `v` over the integers.
///
/// Univariate polynomials are those with every `v` exponent zero. No zero
/// coefficient is ever stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    terms: BTreeMap<Exponent, BigInt>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse polynomial {text:?}: {reason}")]
pub struct PolyParseError {
    pub text: String,
    pub reason: String,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: impl Into<BigInt>, t: i32, v: i32) -> Self {
        let mut p = LaurentPoly::zero();
        p.add_term((t, v), c.into());
        p
    }

    pub fn t() -> Self {
        Self::monomial(1, 1, 0)
    }

    pub fn v() -> Self {
        Self::monomial(1, 0, 1)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Exponent, BigInt)>) -> Self {
        let mut p = LaurentPoly::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, e: Exponent, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, t: i32, v: i32) -> BigInt {
        self.terms.get(&(t, v)).cloned().unwrap_or_default()
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_univariate(&self) -> bool {
        self.terms.keys().all(|&(_, v)| v == 0)
    }

    /// `±t^a v^b`
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms.values().next().is_some_and(|c| c.abs().is_one())
    }

    /// Component-wise minimum exponent; `(0, 0)` for zero.
    pub fn min_exponents(&self) -> Exponent {
        if self.is_zero() {
            return (0, 0);
        }
        let t = self.terms.keys().map(|e| e.0).min().unwrap();
        let v = self.terms.keys().map(|e| e.1).min().unwrap();
        (t, v)
    }

    pub fn max_exponents(&self) -> Exponent {
        if self.is_zero() {
            return (0, 0);
        }
        let t = self.terms.keys().map(|e| e.0).max().unwrap();
        let v = self.terms.keys().map(|e| e.1).max().unwrap();
        (t, v)
    }

    /// Multiplies by `sign · t^a v^b`.
    pub fn shift(&self, sign: i32, a: i32, b: i32) -> LaurentPoly {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(&(t, v), c)| ((t + a, v + b), if sign < 0 { -c } else { c.clone() }))
                .collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> LaurentPoly {
        LaurentPoly::from_terms(self.terms.iter().map(|(e, c)| (*e, c * k)))
    }

    /// Image under the ring automorphism `t ↦ t⁻¹`.
    pub fn invert_t(&self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(&(t, v), c)| ((-t, v), c.clone())).collect() }
    }

    pub fn pow(&self, k: u32) -> LaurentPoly {
        let mut out = LaurentPoly::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Unit-normalized associate: minimal exponent vector zero and the
    /// coefficient of the least term positive.
    pub fn normalized(&self) -> LaurentPoly {
        if self.is_zero() {
            return self.clone();
        }
        let (a, b) = self.min_exponents();
        let trailing_negative = self.terms.values().next().is_some_and(|c| c.is_negative());
        self.shift(if trailing_negative { -1 } else { 1 }, -a, -b)
    }

    pub fn is_normalized(&self) -> bool {
        *self == self.normalized()
    }

    /// Value at `t`, for univariate polynomials with `t` a unit of ℤ (±1),
    /// or generally at integer `t` when all exponents are non-negative.
    pub fn eval_t(&self, t: i64, v: i64) -> Option<BigInt> {
        let mut acc = BigInt::zero();
        for (&(a, b), c) in &self.terms {
            let ta = int_pow(t, a)?;
            let vb = int_pow(v, b)?;
            acc += c * ta * vb;
        }
        Some(acc)
    }
}

fn int_pow(base: i64, e: i32) -> Option<BigInt> {
    if e >= 0 {
        return Some(num_traits::pow(BigInt::from(base), e as usize));
    }
    match base {
        1 => Some(BigInt::one()),
        -1 => Some(if e % 2 == 0 { BigInt::one() } else { -BigInt::one() }),
        _ => None,
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c);
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&(a, b), c) in &self.terms {
            for (&(x, y), d) in &rhs.terms {
                out.add_term((a + x, b + y), c * d);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $f(self, rhs: LaurentPoly) -> LaurentPoly { (&self).$f(&rhs) }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $f(self, rhs: &LaurentPoly) -> LaurentPoly { (&self).$f(rhs) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

fn write_var(f: &mut fmt::Formatter<'_>, name: &str, e: i32, first: &mut bool) -> fmt::Result {
    if e == 0 {
        return Ok(());
    }
    if !*first {
        write!(f, "*")?;
    }
    *first = false;
    if e == 1 {
        write!(f, "{name}")
    } else {
        write!(f, "{name}^{e}")
    }
}

/// Terms in decreasing `t`-degree (then `v`-degree), e.g. `t^2-t+1`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (&(t, v), c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { "-" } else { "+" })?;
            }
            let mut first = true;
            if !mag.is_one() || (t == 0 && v == 0) {
                write!(f, "{mag}")?;
                first = false;
            }
            write_var(f, "t", t, &mut first)?;
            write_var(f, "v", v, &mut first)?;
        }
        Ok(())
    }
}

impl FromStr for LaurentPoly {
    type Err = PolyParseError;

    /// Sums of terms like `3`, `-t`, `2*t^-1`, `t^{2}v^-1`, `t*v`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |reason: &str| PolyParseError { text: s.to_string(), reason: reason.to_string() };
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace() && *c != '{' && *c != '}').collect();
        if chars.is_empty() {
            return Err(err("empty"));
        }
        let mut out = LaurentPoly::zero();
        let mut i = 0;
        while i < chars.len() {
            let mut sign = 1i64;
            while i < chars.len() && (chars[i] == '+' || chars[i] == '-') {
                if chars[i] == '-' {
                    sign = -sign;
                }
                i += 1;
            }
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let mut coeff: BigInt = if i > start {
                chars[start..i].iter().collect::<String>().parse().map_err(|_| err("bad coefficient"))?
            } else {
                BigInt::one()
            };
            let mut exps = (0, 0);
            let mut saw_factor = i > start;
            loop {
                if i < chars.len() && chars[i] == '*' {
                    i += 1;
                }
                if i >= chars.len() || (chars[i] != 't' && chars[i] != 'v') {
                    break;
                }
                let var = chars[i];
                i += 1;
                let mut e = 1i32;
                if i < chars.len() && chars[i] == '^' {
                    i += 1;
                    let es = i;
                    if i < chars.len() && (chars[i] == '-' || chars[i] == '+') {
                        i += 1;
                    }
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    e = chars[es..i].iter().collect::<String>().parse().map_err(|_| err("bad exponent"))?;
                }
                if var == 't' {
                    exps.0 += e;
                } else {
                    exps.1 += e;
                }
                saw_factor = true;
            }
            if !saw_factor {
                return Err(err("expected a term"));
            }
            if i < chars.len() && chars[i] != '+' && chars[i] != '-' {
                return Err(err("unexpected character"));
            }
            coeff *= sign;
            out.add_term(exps, coeff);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn display_and_parse() {
        assert_eq!(p("t^2-t+1").to_string(), "t^2-t+1");
        assert_eq!(p("1 + t - t^2").to_string(), "-t^2+t+1");
        assert_eq!(p("2-t^-1").to_string(), "2-t^-1");
        assert_eq!(p("3*t*v^-1 - v").to_string(), "3*t*v^-1-v");
        assert_eq!(p("t^{2}"), LaurentPoly::monomial(1, 2, 0));
        assert_eq!(p("t - t"), LaurentPoly::zero());
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert!("t^".parse::<LaurentPoly>().is_err());
        assert!("x".parse::<LaurentPoly>().is_err());
    }

    #[test]
    fn arithmetic() {
        assert_eq!(p("t-1") * p("t+1"), p("t^2-1"));
        assert_eq!(p("t^2-t+1").pow(2), p("t^4-2t^3+3t^2-2t+1"));
        assert_eq!(p("2-t^-1").normalized(), p("1-2t"));
        assert_eq!(p("1-2t").normalized(), p("1-2t"));
        assert_eq!(p("-t^3+t^2").normalized(), p("1-t"));
        assert_eq!(p("2-t").invert_t().normalized(), p("1-2t"));
        assert!(p("-t^-3").is_unit() && !p("2").is_unit());
        assert_eq!(p("t^2-3t+1").eval_t(1, 1), Some(BigInt::from(-1)));
    }
}
