//! Order-by-order solvers for the catalytic functional equations.
//!
//! Every right-hand side carries a factor `t` or a multiplier of valuation
//! at least one, so the coefficient of `t^n` of each unknown only needs
//! coefficients of lower order and each solver is a single forward pass.

use super::{convolve_at, delta, delta_q, TSeries};
use crate::poly::{Marker, Monomial, SparsePoly};

fn x_pow(e: u32) -> SparsePoly {
    SparsePoly::var(Marker::X, e)
}

/// `Î = x²I` from `Î = t (x + Î·D)^{(m+2)}(1)`, with `D` a divided-difference operator.
fn solve_hat_greedy(m: u32, order: usize, diff: fn(&SparsePoly) -> SparsePoly) -> Vec<SparsePoly> {
    let depth = m as usize + 2;
    let x = SparsePoly::x();
    let mut hat = vec![SparsePoly::zero(); order];
    // g[k][j]: coefficient of t^j in (x + Î·D)^{(k)}(1); dg caches D(g).
    let mut g: Vec<Vec<SparsePoly>> = vec![Vec::with_capacity(order); depth + 1];
    let mut dg: Vec<Vec<SparsePoly>> = vec![Vec::with_capacity(order); depth + 1];
    for (k, gk) in g.iter_mut().enumerate() {
        gk.push(x_pow(k as u32));
        dg[k].push(diff(&gk[0]));
    }
    for n in 1..order {
        hat[n] = g[depth][n - 1].clone();
        if n + 1 == order {
            break;
        }
        g[0].push(SparsePoly::zero());
        dg[0].push(SparsePoly::zero());
        for k in 1..=depth {
            let mut c = &x * &g[k - 1][n];
            c += &convolve_at(&hat, &dg[k - 1], n);
            dg[k].push(diff(&c));
            g[k].push(c);
        }
    }
    hat
}

fn strip_x2(hat: Vec<SparsePoly>) -> TSeries {
    let x2 = Monomial::var(Marker::X, 2);
    TSeries::from_coeffs(
        hat.into_iter()
            .map(|c| c.unshift(x2).expect("x²I is divisible by x²"))
            .collect(),
    )
}

/// Greedy intervals by size (`t`) and final descent of the upper path (`x`).
pub fn solve_greedy(m: u32, order: usize) -> TSeries {
    assert!(m >= 1, "m must be positive");
    strip_x2(solve_hat_greedy(m, order, delta))
}

/// As [`solve_greedy`] with `Δ_q`; `q` marks the longest chain from lower to upper.
pub fn solve_greedy_q(m: u32, order: usize) -> TSeries {
    assert!(m >= 1, "m must be positive");
    strip_x2(solve_hat_greedy(m, order, delta_q))
}

/// `(x F − x^c F(1)) / (x − 1)`.
fn lift(f: &SparsePoly, c: u32) -> SparsePoly {
    let num = &(f * &SparsePoly::x()) - &(&f.at_one(Marker::X) * &x_pow(c));
    num.div_linear(Marker::X, Monomial::ONE)
        .unwrap_or_else(|r| panic!("non-zero remainder {r} dividing by x-1"))
}

/// The greedy family `J_0, …, J_{m+1}` from
/// `J_i = J_{i−1} + I (x J_{i−1} − x^{m+1−i} J_{i−1}(1)) / (x − 1)` with `I = J_{m+1}`.
pub fn solve_greedy_system(m: u32, order: usize) -> Vec<TSeries> {
    assert!(m >= 1, "m must be positive");
    let levels = m as usize + 2;
    let top = m as usize + 1;
    let mut j: Vec<Vec<SparsePoly>> = vec![vec![SparsePoly::zero(); order]; levels];
    // lifted[i][n] = lift(J_{i-1}[n], m+1-i)
    let mut lifted: Vec<Vec<SparsePoly>> = vec![vec![SparsePoly::zero(); order]; levels];
    for n in 1..order {
        j[0][n] = if n == 1 { x_pow(m) } else { SparsePoly::zero() };
        for i in 1..levels {
            lifted[i][n] = lift(&j[i - 1][n], m + 1 - i as u32);
            let mut c = j[i - 1][n].clone();
            c += &convolve_at(&j[top][..n], &lifted[i][..n], n);
            j[i][n] = c;
        }
    }
    j.into_iter().map(TSeries::from_coeffs).collect()
}

/// The ordinary family `J̄_0, …, J̄_{m+1}` from
/// `J̄_i = J̄_{i−1} + J̄_m (x J̄_i − x^{m+1−i} J̄_i(1)) / (x − 1)`.
pub fn solve_ordinary_system(m: u32, order: usize) -> Vec<TSeries> {
    assert!(m >= 1, "m must be positive");
    let levels = m as usize + 2;
    let mid = m as usize;
    let mut j: Vec<Vec<SparsePoly>> = vec![vec![SparsePoly::zero(); order]; levels];
    // lifted[i][n] = lift(J̄_i[n], m+1-i), filled once J̄_i[n] is known.
    let mut lifted: Vec<Vec<SparsePoly>> = vec![vec![SparsePoly::zero(); order]; levels];
    for n in 1..order {
        j[0][n] = if n == 1 { x_pow(m) } else { SparsePoly::zero() };
        for i in 1..levels {
            let mut c = j[i - 1][n].clone();
            c += &convolve_at(&j[mid][..n], &lifted[i][..n], n);
            lifted[i][n] = lift(&c, m + 1 - i as u32);
            j[i][n] = c;
        }
    }
    j.into_iter().map(TSeries::from_coeffs).collect()
}

/// Ordinary intervals by size and `x^{contacts(v) + 2}` of the lower path `v`,
/// plus the term `x` for the empty interval: `T = x + x t (TΔ)^{(m+1)}(x)`.
pub fn solve_contacts(m: u32, order: usize) -> TSeries {
    assert!(m >= 1, "m must be positive");
    let depth = m as usize + 1;
    let x = SparsePoly::x();
    let mut t = vec![SparsePoly::zero(); order];
    if order == 0 {
        return TSeries::from_coeffs(t);
    }
    t[0] = x.clone();
    // g[k][j]: coefficient of t^j in (TΔ)^{(k)}(x).
    let mut g: Vec<Vec<SparsePoly>> = vec![Vec::with_capacity(order); depth + 1];
    let mut dg: Vec<Vec<SparsePoly>> = vec![Vec::with_capacity(order); depth + 1];
    g[0].push(x.clone());
    dg[0].push(SparsePoly::one());
    for k in 1..=depth {
        let c = &t[0] * &dg[k - 1][0];
        dg[k].push(delta(&c));
        g[k].push(c);
    }
    for n in 1..order {
        t[n] = &x * &g[depth][n - 1];
        if n + 1 == order {
            break;
        }
        g[0].push(SparsePoly::zero());
        dg[0].push(SparsePoly::zero());
        for k in 1..=depth {
            let c = convolve_at(&t, &dg[k - 1], n);
            dg[k].push(delta(&c));
            g[k].push(c);
        }
    }
    TSeries::from_coeffs(t)
}

/// `(m+1)`-constellations by polygons (`t`) and white root face degree over
/// `m+1` (`x`): `C = 1 + x t (C + Δ)^{(m+1)}(1)`.
pub fn solve_constellations(m: u32, order: usize) -> TSeries {
    assert!(m >= 1, "m must be positive");
    let depth = m as usize + 1;
    let x = SparsePoly::x();
    let mut c = vec![SparsePoly::zero(); order];
    if order == 0 {
        return TSeries::from_coeffs(c);
    }
    c[0] = SparsePoly::one();
    let mut g: Vec<Vec<SparsePoly>> = vec![vec![SparsePoly::one()]; depth + 1];
    for n in 1..order {
        c[n] = &x * &g[depth][n - 1];
        if n + 1 == order {
            break;
        }
        g[0].push(SparsePoly::zero());
        for k in 1..=depth {
            let mut v = convolve_at(&c, &g[k - 1], n);
            v += &delta(&g[k - 1][n]);
            g[k].push(v);
        }
    }
    TSeries::from_coeffs(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> SparsePoly {
        s.parse().unwrap()
    }

    #[test]
    fn greedy_low_orders() {
        let i = solve_greedy(2, 3);
        assert_eq!(i.coeff(0), &p("0"));
        assert_eq!(i.coeff(1), &p("x^2"));
        assert_eq!(i.coeff(2), &p("3x^4+2x^3+x^2"));
        assert_eq!(solve_greedy(1, 3).coeff(2), &p("2x^2+x"));
    }

    #[test]
    fn greedy_system_closes_on_greedy() {
        for m in 1..=3 {
            let js = solve_greedy_system(m, 8);
            assert_eq!(js[0].coeff(1), &x_pow(m));
            assert_eq!(js[0].valuation(), Some(1));
            assert_eq!(js[m as usize + 1], solve_greedy(m, 8));
        }
    }

    #[test]
    fn constellations_low_orders() {
        let c = solve_constellations(2, 4);
        assert_eq!(c.coeff(0), &p("1"));
        assert_eq!(c.coeff(1), &p("x"));
        assert_eq!(c.coeff(2), &p("3x^2+3x"));
        assert_eq!(c.coeff(3), &p("12x^3+20x^2+22x"));
    }

    #[test]
    fn contacts_constant_term() {
        let t = solve_contacts(2, 4);
        assert_eq!(t.coeff(0), &p("x"));
        assert_eq!(t.coeff(1), &p("x^2"));
    }

    #[test]
    fn q_series_specializes() {
        let iq = solve_greedy_q(2, 3);
        assert_eq!(iq.coeff(2), &p("x^4q^2+x^4q+x^4+x^3q+x^3+x^2"));
        assert_eq!(solve_greedy_q(2, 7).at_one(Marker::Q), solve_greedy(2, 7));
    }

    #[test]
    fn solvers_are_prefix_stable() {
        let long = solve_greedy(2, 9);
        assert_eq!(long.truncate(5), solve_greedy(2, 5));
        let long = solve_ordinary_system(1, 8);
        assert_eq!(long[2].truncate(4), solve_ordinary_system(1, 4)[2]);
        assert_eq!(solve_contacts(1, 8).truncate(3), solve_contacts(1, 3));
        assert_eq!(solve_constellations(3, 8).truncate(4), solve_constellations(3, 4));
    }
}
