//! Polynomial identities in `(z, u)` behind the parametric solution: the
//! polynomials `R^a_ℓ`, the operator `∇_m`, the family `H_i` and exact
//! symbolic checks of the identities relating them.

use crate::combinat::binomial;
use crate::poly::{Marker, Monomial, Rational, SparsePoly};
use crate::report::Report;

/// Polynomials in `z` and `u`, stored in the shared sparse representation.
pub type BivarPoly = SparsePoly;

fn u_pow(e: i64) -> SparsePoly {
    assert!(e >= 0, "negative power of u");
    SparsePoly::var(Marker::U, e as u32)
}

fn int(c: num_bigint::BigInt) -> Rational {
    Rational::from_integer(c)
}

/// `R^a_ℓ(u) = Σ_{e=0}^{a} C(e+ℓ, e) u^e`, zero for `a < 0` and one for `ℓ = −1`, `a ≥ 0`.
pub fn r_poly(a: i64, l: i64) -> BivarPoly {
    assert!(l >= -1, "R^a_l needs l >= -1");
    if a < 0 {
        return SparsePoly::zero();
    }
    if l == -1 {
        return SparsePoly::one();
    }
    let mut out = SparsePoly::zero();
    for e in 0..=a {
        out.add_term(Monomial::var(Marker::U, e as u32), int(binomial(e + l, e)));
    }
    out
}

/// `u^shift · P(1/u)` for a polynomial `P` in `u` of degree at most `shift`.
pub fn reversed(p: &BivarPoly, shift: u32) -> BivarPoly {
    let mut out = SparsePoly::zero();
    for (mono, c) in p.terms() {
        let e = mono.exp(Marker::U);
        assert!(e <= shift, "reversal needs shift >= degree in u");
        out.add_term(mono.with_exp(Marker::U, shift - e), c.clone());
    }
    out
}

/// `∇_m H = u (H − u^{m+1} H(1)) / (u − 1)`, with `H(1)` taken at `u = 1`.
pub fn nabla(m: u32, h: &BivarPoly) -> BivarPoly {
    let num = h - &(&u_pow(m as i64 + 1) * &h.at_one(Marker::U));
    let q = num
        .div_linear(Marker::U, Monomial::ONE)
        .unwrap_or_else(|r| panic!("non-zero remainder {r} in nabla"));
    q.shift(Monomial::var(Marker::U, 1))
}

/// `(−z)^k`.
fn neg_z_pow(k: i64) -> SparsePoly {
    let c = if k % 2 == 0 { 1 } else { -1 };
    SparsePoly::term(Rational::from_integer(c.into()), Monomial::var(Marker::Z, k as u32))
}

/// `H_i(z; u)` for `0 ≤ i ≤ m+1`, from the explicit double sums.
pub fn h_poly(m: u32, i: u32) -> BivarPoly {
    assert!(i <= m + 1, "H_i is defined for 0 <= i <= m+1");
    let (m, i) = (m as i64, i as i64);
    if i == m + 1 {
        let mut inner = SparsePoly::zero();
        for e in 0..=m {
            inner.add_term(Monomial::var(Marker::U, e as u32), Rational::from_integer((m + 1 - e).into()));
        }
        let bracket = &SparsePoly::one() - &(&SparsePoly::var(Marker::Z, 1) * &inner);
        return &u_pow(m + 2) * &bracket;
    }
    let mut bracket = SparsePoly::one();
    for k in 1..=i + 1 {
        let mut s = SparsePoly::zero();
        for e in 0..=m - i {
            s.add_term(Monomial::var(Marker::U, e as u32), int(binomial(e + k - 1, e)));
        }
        bracket += &(&neg_z_pow(k) * &s.scale(&int(binomial(i + 1, k))));
    }
    for k in 1..=i {
        let mut s = SparsePoly::zero();
        for e in 0..=i - k {
            s.add_term(Monomial::var(Marker::U, (m + 1 - k - e) as u32), int(binomial(e + k, e)));
        }
        bracket += &(&neg_z_pow(k) * &s.scale(&int(binomial(m + k - i - 1, k - 1))));
    }
    &u_pow(i + 1) * &bracket
}

/// `H_i` for `0 ≤ i ≤ m` through the `R` polynomials:
/// `Σ_k (−z)^k [C(i+1,k) u^{i+1} R^{m−i}_{k−1}(u) + C(m+k−i−1,k−1) u^{m+i+2−k} R^{i−k}_k(1/u)]`.
pub fn h_poly_grouped(m: u32, i: u32) -> BivarPoly {
    assert!(i <= m, "the grouped form covers 0 <= i <= m");
    let (m, i) = (m as i64, i as i64);
    let mut out = SparsePoly::zero();
    for k in 0..=i + 1 {
        let first = (&u_pow(i + 1) * &r_poly(m - i, k - 1)).scale(&int(binomial(i + 1, k)));
        let second = if i - k >= 0 {
            reversed(&r_poly(i - k, k), (m + i + 2 - k) as u32).scale(&int(binomial(m + k - i - 1, k - 1)))
        } else {
            SparsePoly::zero()
        };
        out += &(&neg_z_pow(k) * &(&first + &second));
    }
    out
}

/// Index ranges for the `∇_m`/`R` identities.
#[derive(Clone, Copy, Debug)]
pub struct NablaRanges {
    pub a_max: i64,
    pub b_max: i64,
    pub l_max: i64,
}

impl Default for NablaRanges {
    fn default() -> Self {
        NablaRanges { a_max: 4, b_max: 4, l_max: 4 }
    }
}

/// Checks, for `ℓ ≥ −1`, `a ≥ 0`, `b ≥ 1`:
/// `∇_m(u^{m+1−a} R^a_ℓ(u)) = −u^{m+2−a} R^{a−1}_{ℓ+1}(u)` and
/// `∇_m(u^{m+a+b} R^a_ℓ(1/u)) = u^{m+a+b} R^{a+b−2}_{ℓ+1}(1/u)`.
pub fn verify_nabla_on_r(m: u32, ranges: NablaRanges) -> Report {
    verify_nabla_on_r_with(m, ranges, &r_poly)
}

/// As [`verify_nabla_on_r`] with a substitute for `R^a_ℓ`.
///
/// When `a > m+1` the first identity involves a Laurent polynomial; both sides are
/// multiplied by `u^k`, `k = a−m−1`, using `u^k ∇_m(u^{−k} P) = ∇_{m+k}(P)`.
pub fn verify_nabla_on_r_with(m: u32, ranges: NablaRanges, r: &dyn Fn(i64, i64) -> BivarPoly) -> Report {
    let mut report = Report::new("nabla-on-r", m);
    let mi = m as i64;
    for l in -1..=ranges.l_max {
        for a in 0..=ranges.a_max {
            let k = (a - mi - 1).max(0);
            let lhs = nabla(m + k as u32, &(&u_pow(mi + 1 - a + k) * &r(a, l)));
            let rhs = -(&u_pow(mi + 2 - a + k) * &r(a - 1, l + 1));
            report.compare(0, format!("forward m={m} a={a} l={l}"), &lhs, &rhs);
            for b in 1..=ranges.b_max {
                let shift = (mi + a + b) as u32;
                let lhs = nabla(m, &reversed(&r(a, l), shift));
                let rhs = if a + b - 2 >= 0 { reversed(&r(a + b - 2, l + 1), shift) } else { SparsePoly::zero() };
                report.compare(0, format!("reversed m={m} a={a} b={b} l={l}"), &lhs, &rhs);
            }
        }
    }
    report
}

/// Checks `H_i = (u + z∇_m) H_{i−1}` for `1 ≤ i ≤ m+1`, the agreement of the two
/// expressions of `H_i`, the specialization `H_i(1−z) = (1−z)^{m+2} H_{i−1}(1)` and
/// the ordinary-order recurrence it implies.
pub fn verify_h_recurrence(m: u32) -> Report {
    verify_h_recurrence_with(m, &h_poly)
}

/// As [`verify_h_recurrence`] with a substitute for `H_i`.
pub fn verify_h_recurrence_with(m: u32, h: &dyn Fn(u32, u32) -> BivarPoly) -> Report {
    let mut report = Report::new("h-recurrence", m);
    let hs: Vec<BivarPoly> = (0..=m + 1).map(|i| h(m, i)).collect();
    let z = SparsePoly::var(Marker::Z, 1);
    let u = SparsePoly::var(Marker::U, 1);
    let one_minus_z = &SparsePoly::one() - &z;
    let c = one_minus_z.pow(m + 2);
    for i in 0..=m {
        report.compare(0, format!("grouped form m={m} i={i}"), &hs[i as usize], h_poly_grouped(m, i));
    }
    report.compare(0, format!("H_i(z=0) m={m} i=0"), hs[0].eval(Marker::Z, &Rational::from_integer(0.into())), u_pow(1));
    for i in 1..=m + 1 {
        let prev = &hs[i as usize - 1];
        let cur = &hs[i as usize];
        let step = &(&u * prev) + &(&z * &nabla(m, prev));
        report.compare(0, format!("recurrence m={m} i={i}"), cur, &step);

        let lhs = cur.substitute(Marker::U, &one_minus_z);
        let rhs = &c * &prev.at_one(Marker::U);
        report.compare(0, format!("specialization at u=1-z m={m} i={i}"), &lhs, &rhs);

        // With X = u(1 − z S(u)), S = Σ_{e≤m} u^e, the ordinary recurrence reads
        // c H_i (u−1+z) = c X H_{i−1} (u−1+z) + z u^{m+1} (c H_i − X H_i(1−z)).
        let s: SparsePoly = (0..=m).map(|e| SparsePoly::var(Marker::U, e)).fold(SparsePoly::zero(), |a, b| a + b);
        let x = &u * &(&SparsePoly::one() - &(&z * &s));
        let d = &(&u - &SparsePoly::one()) + &z;
        let lhs = &(&c * cur) * &d;
        let rhs = &(&(&c * &x) * &(prev * &d))
            + &(&(&z * &u_pow(m as i64 + 1)) * &(&(&c * cur) - &(&x * &cur.substitute(Marker::U, &one_minus_z))));
        report.compare(0, format!("ordinary recurrence m={m} i={i}"), &lhs, &rhs);
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> SparsePoly {
        s.parse().unwrap()
    }

    #[test]
    fn r_examples() {
        assert_eq!(r_poly(0, 3), p("1"));
        assert_eq!(r_poly(3, -1), p("1"));
        assert_eq!(r_poly(2, 1), p("3u^2+2u+1"));
        assert!(r_poly(-1, 2).is_zero());
        assert_eq!(reversed(&p("3u^2+2u+1"), 3), p("u^3+2u^2+3u"));
    }

    #[test]
    fn nabla_examples() {
        for m in 1..=4 {
            assert!(nabla(m, &u_pow(m as i64 + 1)).is_zero());
            let geo: SparsePoly = (1..=m + 1).map(|e| SparsePoly::var(Marker::U, e)).fold(SparsePoly::zero(), |a, b| a + b);
            assert_eq!(nabla(m, &SparsePoly::one()), -geo);
        }
        // ∇_2(u^2 R^1_0) = −u^3 R^0_1.
        assert_eq!(nabla(2, &(&u_pow(2) * &r_poly(1, 0))), -(&u_pow(3) * &r_poly(0, 1)));
    }

    #[test]
    fn h_examples() {
        assert_eq!(h_poly(1, 2), p("-zu^4-2zu^3+u^3"));
        for m in 1..=4 {
            assert_eq!(h_poly(m, 0), &u_pow(1) * &(&SparsePoly::one() - &(0..=m).map(|e| SparsePoly::var(Marker::Z, 1).shift(Monomial::var(Marker::U, e))).fold(SparsePoly::zero(), |a, b| a + b)));
            for i in 0..=m {
                assert_eq!(h_poly(m, i).eval(Marker::Z, &Rational::from_integer(0.into())), u_pow(i as i64 + 1));
            }
        }
    }

    #[test]
    fn identities_hold() {
        for m in 1..=3 {
            let r = verify_nabla_on_r(m, NablaRanges { a_max: 4, b_max: 2, l_max: 4 });
            assert!(r.passed(), "{r}");
            let r = verify_h_recurrence(m);
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn reversed_identity_breaks_at_b3() {
        // ∇_1(u^4) = u^4 + u^3, while u^4 R^1_1(1/u) = u^4 + 2u^3.
        assert_eq!(nabla(1, &reversed(&r_poly(0, 0), 4)), p("u^4+u^3"));
        assert_eq!(reversed(&r_poly(1, 1), 4), p("u^4+2u^3"));
        let r = verify_nabla_on_r(1, NablaRanges { a_max: 0, b_max: 3, l_max: 0 });
        let failed: Vec<_> = r.failures().map(|c| c.key.as_str()).collect();
        assert_eq!(failed, ["reversed m=1 a=0 b=3 l=0"]);
    }

    #[test]
    fn mutations_are_detected() {
        let bad_r = |a: i64, l: i64| {
            let mut r = r_poly(a, l);
            if (a, l) == (2, 1) {
                r.add_term(Monomial::ONE, Rational::from_integer(1.into()));
            }
            r
        };
        assert!(!verify_nabla_on_r_with(2, NablaRanges::default(), &bad_r).passed());
        let bad_h = |m: u32, i: u32| if i == 1 { &u_pow(1) * &h_poly(m, 0) } else { h_poly(m, i) };
        assert!(!verify_h_recurrence_with(2, &bad_h).passed());
    }
}
