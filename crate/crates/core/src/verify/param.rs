//! Parametric solutions against the order-by-order solvers.

use num_bigint::BigInt;

use crate::closedform::{
    eval_greedy_param, eval_ordinary_param, greedy_count, ordinary_count, solve_param_greedy,
    solve_param_ordinary, ParamPair,
};
use crate::poly::{Marker, Monomial, Rational};
use crate::report::Report;
use crate::series::{solve_greedy, solve_greedy_system, solve_ordinary_system, TSeries};

fn record_series(report: &mut Report, key: &str, lhs: &TSeries, rhs: &TSeries) {
    for n in 0..lhs.order().min(rhs.order()) {
        report.compare(n as u32, key, lhs.coeff(n), rhs.coeff(n));
    }
}

fn record_invariants(report: &mut Report, pair: &ParamPair) {
    let order = pair.order() as u32;
    for (name, holds) in pair.invariants() {
        report.assert(order, format!("invariant: {name}"), holds);
    }
}

fn x2(s: &TSeries) -> TSeries {
    s.shift(Monomial::var(Marker::X, 2))
}

fn counts_match(report: &mut Report, key: &str, series: &TSeries, count: impl Fn(u32) -> Option<BigInt>) {
    match series.constants() {
        Some(cs) => {
            for (n, c) in cs.iter().enumerate().skip(1) {
                let expected = count(n as u32).map_or_else(|| "?".into(), |v| Rational::from_integer(v).to_string());
                report.compare(n as u32, key, c, expected);
            }
        }
        None => {
            report.assert(0, format!("{key}: free of x"), false);
        }
    }
}

/// Greedy parametric series to `order` against the solvers and the count formula;
/// `(Z, U)` invariants to `invariant_order`.
pub fn verify_greedy_param(m: u32, order: usize, invariant_order: usize) -> Report {
    let mut report = Report::new("greedy-param", m);
    let g = eval_greedy_param(m, order);
    record_series(&mut report, "x^2 I", &g.hat_i, &x2(&solve_greedy(m, order)));
    record_series(&mut report, "quotient form", &g.quotient_form.0, &g.quotient_form.1);
    for (i, (p, s)) in g.j.iter().zip(solve_greedy_system(m, order)).enumerate() {
        record_series(&mut report, &format!("J_{i}"), p, &s);
    }
    counts_match(&mut report, "I(1)", &g.i_at_one, |n| greedy_count(m, n).ok().map(BigInt::from));
    record_series(&mut report, "I(1) vs I at x = 1", &g.i_at_one, &solve_greedy(m, order).at_one(Marker::X));
    record_invariants(&mut report, &solve_param_greedy(m, invariant_order));
    report
}

/// Ordinary parametric series to `order` against the solver system and the count
/// formula; the `J̄_m` closed form; `(Z̄, Ū)` invariants to `invariant_order`.
pub fn verify_ordinary_param(m: u32, order: usize, invariant_order: usize) -> Report {
    let mut report = Report::new("ordinary-param", m);
    let o = eval_ordinary_param(m, order);
    let sys = solve_ordinary_system(m, order);
    record_series(&mut report, "x^2 I", &o.hat_i, &x2(&sys[m as usize + 1]));
    for (i, (p, s)) in o.j.iter().zip(&sys).enumerate() {
        record_series(&mut report, &format!("J_{i}"), p, s);
    }
    record_series(&mut report, "J_m closed form", &o.jm_form.0, &o.jm_form.1);
    counts_match(&mut report, "1 + I(1)", &o.one_plus_i_at_one, |n| ordinary_count(m, n).ok().map(BigInt::from));
    report.compare(0, "1 + I(1) constant term", o.one_plus_i_at_one.coeff(0), "1");
    record_invariants(&mut report, &solve_param_ordinary(m, invariant_order));
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_orders_pass() {
        for m in 1..=2 {
            let r = verify_greedy_param(m, 6, 8);
            assert!(r.passed(), "{r}");
            let r = verify_ordinary_param(m, 6, 8);
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn invariants_are_listed() {
        let r = verify_greedy_param(1, 4, 6);
        assert!(r.checks.iter().any(|c| c.key == "invariant: Z has nonnegative integer coefficients"));
    }
}
