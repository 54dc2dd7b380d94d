//! Sparse multivariate polynomials over exact rationals in the markers
//! `x`, `q`, `z`, `u`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Result, TamariError};

pub type Rational = BigRational;

/// Polynomial variables. `X` is the catalytic variable of the series
/// equations, `Q` the chain-length marker, `Z`/`U` the parametrization
/// variables of the `H_i` polynomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Marker {
    X = 0,
    Q = 1,
    Z = 2,
    U = 3,
}

impl Marker {
    pub const ALL: [Marker; 4] = [Marker::X, Marker::Q, Marker::Z, Marker::U];

    pub fn symbol(self) -> char {
        match self {
            Marker::X => 'x',
            Marker::Q => 'q',
            Marker::Z => 'z',
            Marker::U => 'u',
        }
    }

    fn from_symbol(c: char) -> Option<Self> {
        Some(match c {
            'x' => Marker::X,
            'q' => Marker::Q,
            'z' => Marker::Z,
            'u' => Marker::U,
            _ => return None,
        })
    }
}

/// Exponent vector over `(x, q, z, u)`. The derived order is lexicographic
/// with `x` most significant.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(pub [u32; 4]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; 4]);

    pub fn var(marker: Marker, exp: u32) -> Self {
        let mut e = [0; 4];
        e[marker as usize] = exp;
        Monomial(e)
    }

    pub fn exp(&self, marker: Marker) -> u32 {
        self.0[marker as usize]
    }

    pub fn with_exp(mut self, marker: Marker, exp: u32) -> Self {
        self.0[marker as usize] = exp;
        self
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0) {
            *a += b;
        }
        Monomial(e)
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0).all(|(a, b)| *a <= b)
    }
}

/// A polynomial with no stored zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct SparsePoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl SparsePoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(c, Monomial::ONE)
    }

    pub fn int(c: i64) -> Self {
        Self::constant(Rational::from_integer(c.into()))
    }

    pub fn term(c: Rational, mono: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(mono, c);
        }
        SparsePoly { terms }
    }

    /// `marker^exp`.
    pub fn var(marker: Marker, exp: u32) -> Self {
        Self::term(Rational::one(), Monomial::var(marker, exp))
    }

    pub fn x() -> Self {
        Self::var(Marker::X, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, mono: &Monomial) -> Rational {
        self.terms.get(mono).cloned().unwrap_or_else(Rational::zero)
    }

    /// The rational constant, if the polynomial has no non-constant term.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::ONE).cloned(),
            _ => None,
        }
    }

    pub fn degree_in(&self, marker: Marker) -> Option<u32> {
        self.terms.keys().map(|m| m.exp(marker)).max()
    }

    pub fn min_degree_in(&self, marker: Marker) -> Option<u32> {
        self.terms.keys().map(|m| m.exp(marker)).min()
    }

    pub fn add_term(&mut self, mono: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
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

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        SparsePoly { terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect() }
    }

    /// Multiplies by a monomial.
    pub fn shift(&self, mono: Monomial) -> Self {
        SparsePoly { terms: self.terms.iter().map(|(m, v)| (m.mul(&mono), v.clone())).collect() }
    }

    /// Exact division by a monomial; `None` if some term is not divisible.
    pub fn unshift(&self, mono: Monomial) -> Option<Self> {
        let mut terms = BTreeMap::new();
        for (m, v) in &self.terms {
            if !mono.divides(m) {
                return None;
            }
            let mut e = m.0;
            for (a, b) in e.iter_mut().zip(mono.0) {
                *a -= b;
            }
            terms.insert(Monomial(e), v.clone());
        }
        Some(SparsePoly { terms })
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Evaluates `marker` at the rational `value`.
    pub fn eval(&self, marker: Marker, value: &Rational) -> Self {
        let mut out = SparsePoly::zero();
        let mut powers: Vec<Rational> = vec![Rational::one()];
        for (m, c) in &self.terms {
            let e = m.exp(marker) as usize;
            while powers.len() <= e {
                let next = powers.last().unwrap() * value;
                powers.push(next);
            }
            out.add_term(m.with_exp(marker, 0), c * &powers[e]);
        }
        out
    }

    /// Evaluation at `marker = 1`.
    pub fn at_one(&self, marker: Marker) -> Self {
        let mut out = SparsePoly::zero();
        for (m, c) in &self.terms {
            out.add_term(m.with_exp(marker, 0), c.clone());
        }
        out
    }

    /// Sum of all coefficients.
    pub fn coefficient_sum(&self) -> Rational {
        self.terms.values().fold(Rational::zero(), |a, b| a + b)
    }

    /// Substitutes a polynomial for `marker`.
    pub fn substitute(&self, marker: Marker, value: &SparsePoly) -> Self {
        let mut out = SparsePoly::zero();
        let mut powers = vec![SparsePoly::one()];
        for (m, c) in &self.terms {
            let e = m.exp(marker) as usize;
            while powers.len() <= e {
                let next = powers.last().unwrap() * value;
                powers.push(next);
            }
            let rest = SparsePoly::term(c.clone(), m.with_exp(marker, 0));
            out += &(&rest * &powers[e]);
        }
        out
    }

    /// Splits into coefficients of powers of `marker`:
    /// `self = Σ_k marker^k · parts[k]`, with `marker` absent from the parts.
    pub fn coefficients_in(&self, marker: Marker) -> Vec<SparsePoly> {
        let deg = self.degree_in(marker).unwrap_or(0) as usize;
        let mut parts = vec![SparsePoly::zero(); if self.is_zero() { 0 } else { deg + 1 }];
        for (m, c) in &self.terms {
            parts[m.exp(marker) as usize].add_term(m.with_exp(marker, 0), c.clone());
        }
        parts
    }

    /// Exact division by `marker · r − 1`, where `r` is a monomial free of `marker`.
    ///
    /// Returns the remainder as an error when the division is not exact.
    pub fn div_linear(&self, marker: Marker, r: Monomial) -> std::result::Result<Self, SparsePoly> {
        debug_assert_eq!(r.exp(marker), 0);
        let parts = self.coefficients_in(marker);
        if parts.is_empty() {
            return Ok(SparsePoly::zero());
        }
        // (r·y − 1)·Σ Q_k y^k = Σ p_k y^k  ⇒  Q_k = r·Q_{k−1} − p_k, from the low end.
        let deg = parts.len() - 1;
        let mut quot: Vec<SparsePoly> = Vec::with_capacity(deg);
        let mut prev = SparsePoly::zero();
        for p in parts.iter().take(deg) {
            let qk = &prev.shift(r) - p;
            quot.push(qk.clone());
            prev = qk;
        }
        let remainder = &parts[deg] - &prev.shift(r);
        if !remainder.is_zero() {
            return Err(remainder);
        }
        let mut out = SparsePoly::zero();
        for (k, qk) in quot.into_iter().enumerate() {
            out += &qk.shift(Monomial::var(marker, k as u32));
        }
        Ok(out)
    }

    /// `(self − self|_{marker=1}) / (marker − 1)`, exact.
    pub fn divided_difference(&self, marker: Marker) -> Self {
        let num = self - &self.at_one(marker);
        num.div_linear(marker, Monomial::ONE)
            .unwrap_or_else(|r| panic!("non-zero remainder {r} in divided difference"))
    }

    /// True iff every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// True iff every coefficient is a nonnegative integer.
    pub fn is_nonnegative_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer() && !c.is_negative())
    }
}

impl From<i64> for SparsePoly {
    fn from(c: i64) -> Self {
        SparsePoly::int(c)
    }
}

impl From<BigInt> for SparsePoly {
    fn from(c: BigInt) -> Self {
        SparsePoly::constant(Rational::from_integer(c))
    }
}

impl AddAssign<&SparsePoly> for SparsePoly {
    fn add_assign(&mut self, rhs: &SparsePoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl SubAssign<&SparsePoly> for SparsePoly {
    fn sub_assign(&mut self, rhs: &SparsePoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c);
        }
    }
}

impl Add for &SparsePoly {
    type Output = SparsePoly;
    fn add(self, rhs: &SparsePoly) -> SparsePoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &SparsePoly {
    type Output = SparsePoly;
    fn sub(self, rhs: &SparsePoly) -> SparsePoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Add for SparsePoly {
    type Output = SparsePoly;
    fn add(mut self, rhs: SparsePoly) -> SparsePoly {
        self += &rhs;
        self
    }
}

impl Sub for SparsePoly {
    type Output = SparsePoly;
    fn sub(mut self, rhs: SparsePoly) -> SparsePoly {
        self -= &rhs;
        self
    }
}

impl Neg for &SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        SparsePoly { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }
}

impl Neg for SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        -&self
    }
}

impl Mul for &SparsePoly {
    type Output = SparsePoly;
    fn mul(self, rhs: &SparsePoly) -> SparsePoly {
        if self.is_zero() || rhs.is_zero() {
            return SparsePoly::zero();
        }
        let mut acc: std::collections::HashMap<Monomial, Rational> =
            std::collections::HashMap::with_capacity(self.len() + rhs.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let prod = ca * cb;
                acc.entry(ma.mul(mb))
                    .and_modify(|c| *c += &prod)
                    .or_insert(prod);
            }
        }
        SparsePoly { terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }
}

impl Mul for SparsePoly {
    type Output = SparsePoly;
    fn mul(self, rhs: SparsePoly) -> SparsePoly {
        &self * &rhs
    }
}

fn fmt_monomial(m: &Monomial, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    for marker in Marker::ALL {
        match m.exp(marker) {
            0 => {}
            1 => write!(f, "{}", marker.symbol())?,
            e => write!(f, "{}^{}", marker.symbol(), e)?,
        }
    }
    Ok(())
}

/// Canonical form: terms in decreasing lexicographic order of `(x, q, z, u)`
/// exponents, coefficients as exact `p/q` rationals, e.g. `3x^2+2x+1`.
impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            if neg {
                f.write_str("-")?;
            } else if i > 0 {
                f.write_str("+")?;
            }
            let a = c.abs();
            if *m == Monomial::ONE {
                write!(f, "{a}")?;
            } else {
                if !a.is_one() {
                    write!(f, "{a}")?;
                }
                fmt_monomial(m, f)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SparsePoly({self})")
    }
}

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ' | b'\t')) {
            self.pos += 1;
        }
    }

    fn digits(&mut self) -> Option<String> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        (self.pos > start).then(|| String::from_utf8_lossy(&self.s[start..self.pos]).into_owned())
    }

    fn err(&self, what: &str) -> TamariError {
        TamariError::Parse(format!("{what} at byte {} of polynomial", self.pos))
    }
}

const MAX_PARSED_EXP: u32 = 1 << 16;

/// Parses the canonical text form (`*` between factors and spaces are accepted).
impl FromStr for SparsePoly {
    type Err = TamariError;

    fn from_str(s: &str) -> Result<Self> {
        let mut cur = Cursor { s: s.as_bytes(), pos: 0 };
        let mut out = SparsePoly::zero();
        cur.skip_ws();
        if cur.peek().is_none() {
            return Err(cur.err("empty input"));
        }
        let mut first = true;
        loop {
            cur.skip_ws();
            let sign = match cur.peek() {
                Some(b'+') => {
                    cur.pos += 1;
                    1
                }
                Some(b'-') => {
                    cur.pos += 1;
                    -1
                }
                None => break,
                _ if first => 1,
                _ => return Err(cur.err("expected '+' or '-'")),
            };
            first = false;
            cur.skip_ws();
            let mut coeff = Rational::from_integer(sign.into());
            let mut saw_factor = false;
            if let Some(num) = cur.digits() {
                let num: BigInt = num.parse().unwrap();
                let mut c = Rational::from_integer(num);
                if cur.peek() == Some(b'/') {
                    cur.pos += 1;
                    let Some(den) = cur.digits() else {
                        return Err(cur.err("expected denominator"));
                    };
                    let den: BigInt = den.parse().unwrap();
                    if den.is_zero() {
                        return Err(cur.err("zero denominator"));
                    }
                    c /= Rational::from_integer(den);
                }
                coeff *= c;
                saw_factor = true;
            }
            let mut mono = Monomial::ONE;
            loop {
                cur.skip_ws();
                if cur.peek() == Some(b'*') {
                    cur.pos += 1;
                    cur.skip_ws();
                }
                let Some(marker) = cur.peek().and_then(|c| Marker::from_symbol(c as char)) else {
                    break;
                };
                cur.pos += 1;
                let mut e = 1u32;
                if cur.peek() == Some(b'^') {
                    cur.pos += 1;
                    e = cur
                        .digits()
                        .and_then(|d| d.parse().ok())
                        .filter(|&e| e <= MAX_PARSED_EXP)
                        .ok_or_else(|| cur.err("bad exponent"))?;
                }
                let total = mono.exp(marker) + e;
                if total > MAX_PARSED_EXP {
                    return Err(cur.err("exponent too large"));
                }
                mono = mono.with_exp(marker, total);
                saw_factor = true;
            }
            if !saw_factor {
                return Err(cur.err("expected a coefficient or variable"));
            }
            out.add_term(mono, coeff);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> SparsePoly {
        s.parse().unwrap()
    }

    #[test]
    fn display_roundtrip() {
        for s in ["3x^2+2x+1", "0", "-x", "1/2x^2q-3/4", "x^4q^2+x^3q+x^2", "z^2u^3-u"] {
            assert_eq!(p(s).to_string(), s);
        }
        assert_eq!(p("2 * x * x + 1 - 1").to_string(), "2x^2");
    }

    #[test]
    fn parse_errors() {
        for s in ["", "x^", "3/0", "2x+", "y", "x**2", "1 1"] {
            assert!(s.parse::<SparsePoly>().is_err(), "{s:?} should not parse");
        }
    }

    #[test]
    fn arithmetic() {
        assert_eq!(&p("x+1") * &p("x-1"), p("x^2-1"));
        assert_eq!(&p("x+q") - &p("q"), p("x"));
        assert_eq!(p("x+1").pow(3), p("x^3+3x^2+3x+1"));
        assert_eq!(p("x^2+3x").at_one(Marker::X), p("4"));
        assert_eq!(p("x^2q+x").at_one(Marker::X), p("q+1"));
        assert_eq!(p("u^2").substitute(Marker::U, &p("1-z")), p("z^2-2z+1"));
    }

    #[test]
    fn exact_divisions() {
        assert_eq!(p("x^2").divided_difference(Marker::X), p("x+1"));
        assert_eq!(p("7").divided_difference(Marker::X), p("0"));
        assert_eq!(p("x^3+2x").divided_difference(Marker::X), p("x^2+x+3"));
        let q = Monomial::var(Marker::Q, 1);
        assert_eq!(p("x^2q^2-1").div_linear(Marker::X, q).unwrap(), p("xq+1"));
        assert!(p("x^2").div_linear(Marker::X, Monomial::ONE).is_err());
    }

    #[test]
    fn unshift_requires_divisibility() {
        let x = Monomial::var(Marker::X, 1);
        assert_eq!(p("x^3+x").unshift(x), Some(p("x^2+1")));
        assert_eq!(p("x^3+1").unshift(x), None);
    }
}
