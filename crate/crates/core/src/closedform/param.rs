//! Rational parametrizations `(Z, U)` and `(Z̄, Ū)` and the interval series
//! they produce.

use crate::identities::h_poly;
use crate::posets::Flavor;
use crate::poly::{Marker, Monomial, Rational, SparsePoly};
use crate::series::TSeries;

fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn cst(n: i64) -> SparsePoly {
    SparsePoly::int(n)
}

/// `(Z, U)` for the greedy order or `(Z̄, Ū)` for the ordinary one.
#[derive(Clone, Debug)]
pub struct ParamPair {
    pub m: u32,
    pub flavor: Flavor,
    pub z: TSeries,
    pub u: TSeries,
}

/// `1 − c·Z` as a series.
fn one_minus(z: &TSeries, c: i64) -> TSeries {
    &TSeries::one(z.order()) - &z.scale(&rat(c))
}

/// `Z = t / (1 − cZ)^k` by repeated substitution; each pass fixes one more coefficient.
fn revert(order: usize, c: i64, k: i64) -> TSeries {
    let t = TSeries::t(order);
    let mut z = TSeries::zero(order);
    for _ in 0..order {
        z = &t * &one_minus(&z, c).powi(-k);
    }
    z
}

/// `U = base + Z·Σ_{e=1}^{m+1} U^e`, solved order by order: `Z` has valuation one,
/// so `[t^n]` of the right side only involves `U` up to `t^{n−1}`.
fn solve_u(m: u32, base: &TSeries, z: &TSeries) -> TSeries {
    let order = base.order();
    let top = m as usize + 1;
    // powers[e][n] = [t^n] U^e for e = 1..=m+1; powers[0] is unused.
    let mut powers: Vec<Vec<SparsePoly>> = vec![Vec::with_capacity(order); top + 1];
    let zc = z.coeffs();
    for n in 0..order {
        let mut un = base.coeff(n).clone();
        for k in 1..=n {
            if zc[k].is_zero() {
                continue;
            }
            let mut w = SparsePoly::zero();
            for p in &powers[1..] {
                w += &p[n - k];
            }
            un += &(&zc[k] * &w);
        }
        powers[1].push(un);
        for e in 2..=top {
            let mut acc = SparsePoly::zero();
            for j in 0..=n {
                acc += &(&powers[1][j] * &powers[e - 1][n - j]);
            }
            powers[e].push(acc);
        }
    }
    TSeries::from_coeffs(powers.swap_remove(1))
}

/// `(Z, U)` with `t = Z(1 − (m+1)Z)^m` and `x = U/(1 − (m+1)Z) · (1 − Z Σ_{e≤m} U^e)`.
pub fn solve_param_greedy(m: u32, order: usize) -> ParamPair {
    assert!(m >= 1, "m must be positive");
    let mp = m as i64 + 1;
    let z = revert(order, mp, m as i64);
    let base = one_minus(&z, mp).mul_poly(&SparsePoly::x());
    let u = solve_u(m, &base, &z);
    ParamPair { m, flavor: Flavor::Greedy, z, u }
}

/// `(Z̄, Ū)` with `t = Z̄(1 − Z̄)^{m²+2m}` and `x = Ū/(1 − Z̄)^{m+2} · (1 − Z̄ Σ_{e≤m} Ū^e)`.
pub fn solve_param_ordinary(m: u32, order: usize) -> ParamPair {
    assert!(m >= 1, "m must be positive");
    let mi = m as i64;
    let z = revert(order, 1, mi * mi + 2 * mi);
    let base = one_minus(&z, 1).pow(m + 2).mul_poly(&SparsePoly::x());
    let u = solve_u(m, &base, &z);
    ParamPair { m, flavor: Flavor::Ordinary, z, u }
}

impl ParamPair {
    pub fn order(&self) -> usize {
        self.z.order()
    }

    /// `Σ_{e=0}^{m} U^e`.
    fn geometric(&self) -> TSeries {
        let mut acc = TSeries::one(self.order());
        let mut p = TSeries::one(self.order());
        for _ in 0..self.m {
            p = &p * &self.u;
            acc += &p;
        }
        acc
    }

    /// The scaling factor `1 − (m+1)Z` (greedy) or `(1 − Z̄)^{m+2}` (ordinary).
    fn x_factor(&self) -> TSeries {
        match self.flavor {
            Flavor::Greedy => one_minus(&self.z, self.m as i64 + 1),
            Flavor::Ordinary => one_minus(&self.z, 1).pow(self.m + 2),
        }
    }

    /// Named invariants and whether they hold to the truncation order.
    pub fn invariants(&self) -> Vec<(&'static str, bool)> {
        let order = self.order();
        let m = self.m as i64;
        let t = TSeries::t(order);
        let mut out = Vec::new();
        let z_consts = self.z.constants();
        out.push(("Z has constant coefficients", z_consts.is_some()));
        out.push(("Z has nonnegative integer coefficients", self.z.is_nonnegative_integral()));
        out.push((
            "Z = t + O(t^2)",
            order < 2 || (self.z.coeff(0).is_zero() && *self.z.coeff(1) == SparsePoly::one()),
        ));
        let t_back = match self.flavor {
            Flavor::Greedy => &self.z * &one_minus(&self.z, m + 1).pow(self.m),
            Flavor::Ordinary => &self.z * &one_minus(&self.z, 1).pow((m * m + 2 * m) as u32),
        };
        out.push(("t identity", t_back == t));
        let lhs = &self.u * &(&TSeries::one(order) - &(&self.z * &self.geometric()));
        let rhs = self.x_factor().mul_poly(&SparsePoly::x());
        out.push(("x identity", lhs == rhs));
        let u1 = self.u.at_one(Marker::X);
        let expected = match self.flavor {
            Flavor::Greedy => TSeries::one(order),
            Flavor::Ordinary => one_minus(&self.z, 1),
        };
        out.push(("U(1)", u1 == expected));
        if order >= 2 {
            // [t]U = x((x^{m+1} − 1)/(x − 1) − c) with c = m+1 or m+2.
            let c = match self.flavor {
                Flavor::Greedy => m + 1,
                Flavor::Ordinary => m + 2,
            };
            let geo: SparsePoly = (0..=self.m).map(|e| SparsePoly::var(Marker::X, e)).fold(SparsePoly::zero(), |a, b| a + b);
            let first = &SparsePoly::x() * &(&geo - &cst(c));
            out.push(("first-order term of U", *self.u.coeff(1) == first));
        }
        out
    }

    pub fn invariants_hold(&self) -> bool {
        self.invariants().iter().all(|(_, ok)| *ok)
    }

    /// `H_i(Z; U)` as a series.
    pub fn h_series(&self, i: u32) -> TSeries {
        TSeries::substitute(&h_poly(self.m, i), &[(Marker::Z, &self.z), (Marker::U, &self.u)], self.order())
    }
}

/// Series produced by the greedy parametrization.
#[derive(Clone, Debug)]
pub struct GreedyParamSeries {
    /// `x²I` from `Z U^{m+2} / (1 − m⁺Z)² · (1 − Z Σ_e U^e (m+1−e))`.
    pub hat_i: TSeries,
    /// `I(1) = Z / (1 − m⁺Z)² · (1 − C(m+2, 2) Z)`.
    pub i_at_one: TSeries,
    /// `J_0, …, J_{m+1}` from `J_i = x^{m−i−1} Z (1 − m⁺Z)^{m−i−1} H_i(Z; U)`.
    pub j: Vec<TSeries>,
    /// Both sides of `x²I · (U − 1)(1 − m⁺Z) = Z U^{m+2} (x − 1)`.
    pub quotient_form: (TSeries, TSeries),
}

/// Series produced by the ordinary parametrization.
#[derive(Clone, Debug)]
pub struct OrdinaryParamSeries {
    /// `x²Ī = Z̄ Ū^{m+2} / (1 − Z̄)^{2m+4} · (1 − Z̄ Σ_e Ū^e (m+1−e))`.
    pub hat_i: TSeries,
    /// `1 + Ī(1) = (1 − (m+1)Z̄) / (1 − Z̄)^{m+2}`.
    pub one_plus_i_at_one: TSeries,
    /// `J̄_0, …, J̄_{m+1}` from `J̄_i = x^{m−i−1} Z̄ (1 − Z̄)^{(m+2)(m−i−1)} H_i(Z̄; Ū)`.
    pub j: Vec<TSeries>,
    /// Both sides of `x J̄_m (Ū − 1 + Z̄) = (x − 1) Z̄ Ū^{m+1}`, with `J̄_m` from the `H_m` form.
    pub jm_form: (TSeries, TSeries),
}

fn weighted_sum(p: &ParamPair) -> TSeries {
    let order = p.order();
    let mut acc = TSeries::zero(order);
    let mut pw = TSeries::one(order);
    for e in 0..=p.m {
        acc += &pw.scale(&rat(p.m as i64 + 1 - e as i64));
        pw = &pw * &p.u;
    }
    acc
}

/// Multiplies `hat = J_i / x^{m−i−1}` back by `x^{m−i−1}`; fails if the
/// negative power does not divide.
fn unhat(hat: TSeries, m: u32, i: u32) -> Option<TSeries> {
    let e = m as i64 - i as i64 - 1;
    if e >= 0 {
        Some(hat.shift(Monomial::var(Marker::X, e as u32)))
    } else {
        hat.unshift(Monomial::var(Marker::X, (-e) as u32))
    }
}

fn j_family(p: &ParamPair, scale: impl Fn(i64) -> TSeries) -> Vec<TSeries> {
    (0..=p.m + 1)
        .map(|i| {
            let hat = &(&p.z * &scale(p.m as i64 - i as i64 - 1)) * &p.h_series(i);
            unhat(hat, p.m, i).unwrap_or_else(|| panic!("J_{i} is not a power series in x"))
        })
        .collect()
}

/// Evaluates the greedy parametric formulas at truncation `order`.
pub fn eval_greedy_param(m: u32, order: usize) -> GreedyParamSeries {
    let p = solve_param_greedy(m, order);
    let mp = m as i64 + 1;
    let d = one_minus(&p.z, mp);
    let d2inv = d.powi(-2);
    let u_pow = p.u.pow(m + 2);
    let bracket = &TSeries::one(order) - &(&p.z * &weighted_sum(&p));
    let hat_i = &(&(&p.z * &u_pow) * &d2inv) * &bracket;

    let c2 = rat((m as i64 + 2) * (m as i64 + 1) / 2);
    let i_at_one = &(&p.z * &d2inv) * &(&TSeries::one(order) - &p.z.scale(&c2));

    let x_minus_1 = &SparsePoly::x() - &SparsePoly::one();
    let lhs = &(&hat_i * &(&p.u - &TSeries::one(order))) * &d;
    let rhs = (&p.z * &u_pow).mul_poly(&x_minus_1);

    let j = j_family(&p, |e| d.powi(e));
    GreedyParamSeries { hat_i, i_at_one, j, quotient_form: (lhs, rhs) }
}

/// Evaluates the ordinary parametric formulas at truncation `order`.
pub fn eval_ordinary_param(m: u32, order: usize) -> OrdinaryParamSeries {
    let p = solve_param_ordinary(m, order);
    let mi = m as i64;
    let om = one_minus(&p.z, 1);
    let bracket = &TSeries::one(order) - &(&p.z * &weighted_sum(&p));
    let hat_i = &(&(&p.z * &p.u.pow(m + 2)) * &om.powi(-(2 * mi + 4))) * &bracket;
    let one_plus_i_at_one = &one_minus(&p.z, mi + 1) * &om.powi(-(mi + 2));
    let j = j_family(&p, |e| om.powi((mi + 2) * e));

    let x = SparsePoly::x();
    let x_minus_1 = &x - &SparsePoly::one();
    let lhs = (&j[m as usize] * &(&(&p.u - &TSeries::one(order)) + &p.z)).mul_poly(&x);
    let rhs = (&p.z * &p.u.pow(m + 1)).mul_poly(&x_minus_1);
    OrdinaryParamSeries { hat_i, one_plus_i_at_one, j, jm_form: (lhs, rhs) }
}
