//! Truncated power series in `t` with [`SparsePoly`] coefficients.

mod solve;

pub use solve::{
    solve_constellations, solve_contacts, solve_greedy, solve_greedy_q, solve_greedy_system,
    solve_ordinary_system,
};

use std::fmt;

use num_traits::Zero;
use serde_json::{json, Value};

use crate::poly::{Marker, Monomial, Rational, SparsePoly};

/// `ΔF = (F − F(1)) / (x − 1)`.
pub fn delta(p: &SparsePoly) -> SparsePoly {
    p.divided_difference(Marker::X)
}

/// `Δ_q F = (F(xq) − F(1)) / (xq − 1)`, where `F(1)` sets `x = 1` and leaves `q` alone.
pub fn delta_q(p: &SparsePoly) -> SparsePoly {
    let mut shifted = SparsePoly::zero();
    for (m, c) in p.terms() {
        let e = m.exp(Marker::X);
        let mono = m.with_exp(Marker::Q, m.exp(Marker::Q) + e);
        shifted.add_term(mono, c.clone());
    }
    let num = &shifted - &p.at_one(Marker::X);
    num.div_linear(Marker::X, Monomial::var(Marker::Q, 1))
        .unwrap_or_else(|r| panic!("non-zero remainder {r} in q-divided difference"))
}

/// A power series in `t` known modulo `t^order`.
#[derive(Clone, PartialEq, Eq)]
pub struct TSeries {
    coeffs: Vec<SparsePoly>,
}

impl TSeries {
    pub fn zero(order: usize) -> Self {
        TSeries { coeffs: vec![SparsePoly::zero(); order] }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(SparsePoly::one(), order)
    }

    pub fn constant(c: SparsePoly, order: usize) -> Self {
        let mut s = Self::zero(order);
        if order > 0 {
            s.coeffs[0] = c;
        }
        s
    }

    /// `c · t^k`.
    pub fn monomial(c: SparsePoly, k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k < order {
            s.coeffs[k] = c;
        }
        s
    }

    /// The series `t`.
    pub fn t(order: usize) -> Self {
        Self::monomial(SparsePoly::one(), 1, order)
    }

    pub fn from_coeffs(coeffs: Vec<SparsePoly>) -> Self {
        TSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, n: usize) -> &SparsePoly {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[SparsePoly] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<SparsePoly> {
        self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order(), "cannot extend a truncated series");
        TSeries { coeffs: self.coeffs[..order].to_vec() }
    }

    /// Smallest `n` with a non-zero coefficient, if any.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn map(&self, f: impl Fn(&SparsePoly) -> SparsePoly) -> Self {
        TSeries { coeffs: self.coeffs.iter().map(f).collect() }
    }

    pub fn at_one(&self, marker: Marker) -> Self {
        self.map(|c| c.at_one(marker))
    }

    pub fn mul_poly(&self, p: &SparsePoly) -> Self {
        self.map(|c| c * p)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.map(|p| p.scale(c))
    }

    /// Multiplies by `t^k`, keeping the order.
    pub fn shift_t(&self, k: usize) -> Self {
        let mut out = Self::zero(self.order());
        for n in k..self.order() {
            out.coeffs[n] = self.coeffs[n - k].clone();
        }
        out
    }

    /// Multiplication by a monomial in the markers.
    pub fn shift(&self, mono: Monomial) -> Self {
        self.map(|c| c.shift(mono))
    }

    /// Exact division by a monomial; `None` unless every coefficient is divisible.
    pub fn unshift(&self, mono: Monomial) -> Option<Self> {
        self.coeffs.iter().map(|c| c.unshift(mono)).collect::<Option<Vec<_>>>().map(TSeries::from_coeffs)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.order());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Multiplicative inverse; the constant term must be a non-zero rational.
    pub fn inverse(&self) -> Self {
        let c0 = self.coeffs[0]
            .as_constant()
            .filter(|c| !c.is_zero())
            .expect("series inverse needs a non-zero rational constant term");
        let inv0 = c0.recip();
        let n = self.order();
        let mut out: Vec<SparsePoly> = Vec::with_capacity(n);
        out.push(SparsePoly::constant(inv0.clone()));
        for k in 1..n {
            let mut acc = SparsePoly::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    acc += &(&self.coeffs[j] * &out[k - j]);
                }
            }
            out.push(acc.scale(&-inv0.clone()));
        }
        TSeries { coeffs: out }
    }

    /// Integer power, negative exponents through [`TSeries::inverse`].
    pub fn powi(&self, k: i64) -> Self {
        if k >= 0 {
            self.pow(k as u32)
        } else {
            self.inverse().pow((-k) as u32)
        }
    }

    /// Evaluates a polynomial in the markers with some markers replaced by series.
    pub fn substitute(p: &SparsePoly, subs: &[(Marker, &TSeries)], order: usize) -> Self {
        let mut caches: Vec<Vec<TSeries>> = subs.iter().map(|_| vec![TSeries::one(order)]).collect();
        let mut out = TSeries::zero(order);
        for (mono, c) in p.terms() {
            let mut rest = *mono;
            let mut term = TSeries::one(order);
            for (k, (marker, s)) in subs.iter().enumerate() {
                let e = mono.exp(*marker) as usize;
                rest = rest.with_exp(*marker, 0);
                while caches[k].len() <= e {
                    let next = caches[k].last().unwrap() * *s;
                    caches[k].push(next);
                }
                if e > 0 {
                    term = &term * &caches[k][e];
                }
            }
            out += &term.mul_poly(&SparsePoly::term(c.clone(), rest));
        }
        out
    }

    /// True iff every coefficient has nonnegative integer coefficients.
    pub fn is_nonnegative_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_nonnegative_integral())
    }

    /// Coefficients as rationals, for series whose coefficients are constants.
    pub fn constants(&self) -> Option<Vec<Rational>> {
        self.coeffs.iter().map(|c| c.as_constant()).collect()
    }

    /// JSON form: one array per power of `t`, each holding `[exponents, "p/q"]` pairs
    /// with exponents over `(x, q, z, u)`.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.coeffs
                .iter()
                .map(|c| {
                    Value::Array(
                        c.terms()
                            .rev()
                            .map(|(m, r)| json!([m.0, rational_string(r)]))
                            .collect(),
                    )
                })
                .collect(),
        )
    }

    /// Inverse of [`TSeries::to_json`].
    pub fn from_json(v: &Value) -> crate::Result<Self> {
        let bad = |what: &str| crate::TamariError::Parse(format!("series JSON: {what}"));
        let rows = v.as_array().ok_or_else(|| bad("expected an array"))?;
        let mut coeffs = Vec::with_capacity(rows.len());
        for row in rows {
            let mut p = SparsePoly::zero();
            for pair in row.as_array().ok_or_else(|| bad("expected an array of terms"))? {
                let (exps, c) = match pair.as_array().map(|a| a.as_slice()) {
                    Some([e, c]) => (e, c),
                    _ => return Err(bad("expected [exponents, coefficient]")),
                };
                let exps: [u32; 4] = serde_json::from_value(exps.clone()).map_err(|_| bad("bad exponents"))?;
                if exps.iter().any(|&e| e > 1 << 16) {
                    return Err(bad("exponent too large"));
                }
                let c = c.as_str().ok_or_else(|| bad("coefficient must be a string"))?;
                let r: SparsePoly = c.parse().map_err(|_| bad("bad coefficient"))?;
                let r = r.as_constant().ok_or_else(|| bad("coefficient must be a rational"))?;
                p.add_term(Monomial(exps), r);
            }
            coeffs.push(p);
        }
        Ok(TSeries { coeffs })
    }
}

fn rational_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

impl std::ops::AddAssign<&TSeries> for TSeries {
    fn add_assign(&mut self, rhs: &TSeries) {
        assert_eq!(self.order(), rhs.order(), "series orders differ");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl std::ops::Add for &TSeries {
    type Output = TSeries;
    fn add(self, rhs: &TSeries) -> TSeries {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl std::ops::Sub for &TSeries {
    type Output = TSeries;
    fn sub(self, rhs: &TSeries) -> TSeries {
        assert_eq!(self.order(), rhs.order(), "series orders differ");
        TSeries { coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect() }
    }
}

impl std::ops::Neg for &TSeries {
    type Output = TSeries;
    fn neg(self) -> TSeries {
        self.map(|c| -c)
    }
}

impl std::ops::Mul for &TSeries {
    type Output = TSeries;
    fn mul(self, rhs: &TSeries) -> TSeries {
        assert_eq!(self.order(), rhs.order(), "series orders differ");
        let n = self.order();
        let mut out = vec![SparsePoly::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs[..n - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += &(a * b);
                }
            }
        }
        TSeries { coeffs: out }
    }
}

/// One line per power of `t`: `t^n: <polynomial>`.
impl fmt::Display for TSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, c) in self.coeffs.iter().enumerate() {
            writeln!(f, "t^{n}: {c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for TSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TSeries[")?;
        for (n, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                write!(f, " ({c})t^{n}")?;
            }
        }
        write!(f, " + O(t^{})]", self.order())
    }
}

/// `Σ_{k} a_k b_{n−k}` over the available coefficients.
pub(crate) fn convolve_at(a: &[SparsePoly], b: &[SparsePoly], n: usize) -> SparsePoly {
    let mut acc = SparsePoly::zero();
    for k in 0..=n {
        if let (Some(x), Some(y)) = (a.get(k), b.get(n - k)) {
            if !x.is_zero() && !y.is_zero() {
                acc += &(x * y);
            }
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> SparsePoly {
        s.parse().unwrap()
    }

    fn rational(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta(&p("x^2")), p("x+1"));
        assert_eq!(delta(&p("5")), p("0"));
        assert_eq!(delta(&p("x^3+2x")), p("x^2+x+3"));
    }

    #[test]
    fn delta_q_examples() {
        assert_eq!(delta_q(&p("x")), p("1"));
        assert_eq!(delta_q(&p("x^2")), p("xq+1"));
        for s in ["x^3+2x", "x^4q+x^2-3", "7"] {
            assert_eq!(delta_q(&p(s)).at_one(Marker::Q), delta(&p(s).at_one(Marker::Q)));
        }
    }

    #[test]
    fn inverse_of_one_minus_t() {
        let s = &TSeries::one(6) - &TSeries::t(6);
        let inv = s.inverse();
        assert_eq!(inv.constants().unwrap(), vec![rational(1); 6]);
        assert_eq!(&inv * &s, TSeries::one(6));
        assert_eq!(s.powi(-2).constants().unwrap(), (1..=6).map(rational).collect::<Vec<_>>());
    }

    #[test]
    fn json_roundtrip() {
        let s = TSeries::from_coeffs(vec![p("x"), p("1/2x^2q-3"), p("0")]);
        let v = s.to_json();
        assert_eq!(v.to_string(), r#"[[[[1,0,0,0],"1/1"]],[[[2,1,0,0],"1/2"],[[0,0,0,0],"-3/1"]],[]]"#);
        assert_eq!(TSeries::from_json(&v).unwrap(), s);
    }

    #[test]
    fn text_format() {
        let s = TSeries::from_coeffs(vec![p("0"), p("x^2"), p("3x^2+2x+1")]);
        assert_eq!(s.to_string(), "t^0: 0\nt^1: x^2\nt^2: 3x^2+2x+1\n");
    }
}
