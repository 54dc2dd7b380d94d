//! Closed formulas and series solvers against brute-force enumeration.

use std::collections::BTreeMap;

use num_bigint::BigUint;

use super::{x_poly, xq_poly};
use crate::closedform::{greedy_count, labelled_ordinary_count, ordinary_count};
use crate::error::Result;
use crate::paths::Limits;
use crate::poly::{Marker, Monomial, SparsePoly};
use crate::posets::{classify, labelled_weight, CoverGraph, Flavor};
use crate::report::Report;
use crate::series::{
    solve_constellations, solve_contacts, solve_greedy, solve_greedy_q, solve_greedy_system,
    solve_ordinary_system, TSeries,
};

/// Interval counts by enumeration against the closed formula, for `1 ≤ n ≤ n_max`.
pub fn verify_counts(m: u32, n_max: u32, flavor: Flavor, limits: &Limits) -> Result<Report> {
    let mut report = Report::new(format!("{}-count", flavor.name()), m);
    for n in 1..=n_max {
        let g = CoverGraph::build_with(m, n, flavor, limits)?;
        let brute = g.interval_count()?;
        let formula = match flavor {
            Flavor::Greedy => greedy_count(m, n)?,
            Flavor::Ordinary => ordinary_count(m, n)?,
        };
        report.compare(n, "intervals", brute, formula);
    }
    Ok(report)
}

/// Final-descent polynomials of the intervals whose lower path lies in `J_i`, for every `i`.
fn j_level_polys(g: &CoverGraph, m: u32) -> Result<Vec<SparsePoly>> {
    let hist: BTreeMap<(usize, u32), u64> =
        g.histogram(false, |r| (classify(&r.lower).expect("non-empty path").j_level, r.d_upper))?;
    Ok((0..=m as usize + 1)
        .map(|i| {
            let level: BTreeMap<u32, u64> = hist
                .iter()
                .filter(|((j, _), _)| *j <= i)
                .fold(BTreeMap::new(), |mut acc, ((_, d), c)| {
                    *acc.entry(*d).or_insert(0) += c;
                    acc
                });
            x_poly(&level, 0)
        })
        .collect())
}

/// Solver coefficients against enumeration histograms for `1 ≤ n ≤ n_max`:
/// the greedy and ordinary `J_i` families by final descent, the ordinary
/// contacts series, the first-ascent series, and the printed small-`m` snippets.
pub fn verify_series(m: u32, n_max: u32, limits: &Limits) -> Result<Report> {
    let mut report = Report::new("series", m);
    let order = n_max as usize + 1;
    let greedy = solve_greedy(m, order);
    let gsys = solve_greedy_system(m, order);
    let osys = solve_ordinary_system(m, order);
    let contacts = solve_contacts(m, order);
    let constel = solve_constellations(m, order);
    let x = Monomial::var(Marker::X, 1);
    report.compare(0, "contacts constant term", contacts.coeff(0), "x");
    let mut greedy_contacts: Vec<SparsePoly> = vec![SparsePoly::zero()];
    for n in 1..=n_max {
        let g = CoverGraph::build_with(m, n, Flavor::Greedy, limits)?;
        let o = CoverGraph::build_with(m, n, Flavor::Ordinary, limits)?;
        let gj = j_level_polys(&g, m)?;
        let oj = j_level_polys(&o, m)?;
        report.compare(n, "greedy I by final descent", greedy.coeff(n as usize), &gj[m as usize + 1]);
        for (i, p) in gj.iter().enumerate() {
            report.compare(n, format!("greedy J_{i}"), gsys[i].coeff(n as usize), p);
        }
        for (i, p) in oj.iter().enumerate() {
            report.compare(n, format!("ordinary J_{i}"), osys[i].coeff(n as usize), p);
        }

        let by_contacts = o.histogram(false, |r| r.contacts_lower)?;
        report.compare(n, "ordinary contacts", contacts.coeff(n as usize), x_poly(&by_contacts, 2));
        if m == 1 {
            let shifted = contacts.coeff(n as usize).unshift(x);
            let rhs = shifted.map_or_else(|| "not divisible by x".to_string(), |p| p.to_string());
            report.compare(n, "ordinary I = T/x - 1", osys[2].coeff(n as usize), rhs);
        }
        greedy_contacts.push(x_poly(&g.histogram(false, |r| r.contacts_lower)?, 0));

        let by_first = g.histogram(false, |r| r.first_ascent_upper)?;
        report.compare(n, "greedy first ascent vs constellations", constel.coeff(n as usize), x_poly(&by_first, 0));
    }
    if m == 2 && n_max >= 3 {
        printed_snippets(&mut report, &greedy, &constel, &greedy_contacts);
    }
    Ok(report)
}

/// The coefficients displayed for `m = 2`, compared as strings.
fn printed_snippets(report: &mut Report, greedy: &TSeries, constel: &TSeries, greedy_contacts: &[SparsePoly]) {
    let x2 = Monomial::var(Marker::X, 2);
    let i2 = greedy.coeff(2).unshift(x2).map_or_else(|| "not divisible by x^2".into(), |p| p.to_string());
    report.compare(2, "printed: [t^2]I / x^m", i2, "3x^2+2x+1");
    report.compare(3, "printed: greedy contacts t^3", &greedy_contacts[3], "9x^2+23x+22");
    report.compare(2, "printed: [t^2]C", constel.coeff(2), "3x^2+3x");
    report.compare(3, "printed: [t^3]C", constel.coeff(3), "12x^3+20x^2+22x");
}

/// Greedy intervals by final descent and longest chain against the `q`-analogue,
/// and its specialization at `q = 1`.
pub fn verify_q_chains(m: u32, n_max: u32, limits: &Limits) -> Result<Report> {
    let mut report = Report::new("q-chains", m);
    let order = n_max as usize + 1;
    let iq = solve_greedy_q(m, order);
    let plain = solve_greedy(m, order);
    for n in 1..=n_max {
        let g = CoverGraph::build_with(m, n, Flavor::Greedy, limits)?;
        let hist = g.histogram(true, |r| (r.d_upper, r.chain_length.expect("chains requested")))?;
        report.compare(n, "final descent and longest chain", iq.coeff(n as usize), xq_poly(&hist));
        report.compare(n, "q = 1", iq.coeff(n as usize).at_one(Marker::Q), plain.coeff(n as usize));
    }
    Ok(report)
}

/// Ordinary intervals weighted by the increasing labellings of the upper path's
/// ascents against `(m+1)^n (mn+1)^{n−2}`; greedy weighted totals go to the notes.
pub fn verify_labelled(m: u32, n_max: u32, limits: &Limits) -> Result<Report> {
    let mut report = Report::new("labelled", m);
    let mut greedy_totals = Vec::new();
    for n in 1..=n_max {
        let weighted = |flavor| -> Result<BigUint> {
            let g = CoverGraph::build_with(m, n, flavor, limits)?;
            let total = g.par_fold_intervals(
                false,
                |recs| recs.iter().map(|r| labelled_weight(&r.upper)).sum::<BigUint>(),
                |a, b| a + b,
            )?;
            Ok(total.unwrap_or_default())
        };
        report.compare(n, "weighted ordinary intervals", weighted(Flavor::Ordinary)?, labelled_ordinary_count(m, n)?);
        greedy_totals.push(weighted(Flavor::Greedy)?.to_string());
    }
    report.note(format!("labelled greedy intervals, n = 1..{n_max}: {}", greedy_totals.join(", ")));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suites_pass() {
        let limits = Limits::default();
        for m in 1..=2 {
            for flavor in [Flavor::Greedy, Flavor::Ordinary] {
                let r = verify_counts(m, 3, flavor, &limits).unwrap();
                assert!(r.passed(), "{r}");
            }
            let r = verify_series(m, 3, &limits).unwrap();
            assert!(r.passed(), "{r}");
            assert!(verify_q_chains(m, 3, &limits).unwrap().passed());
            assert!(verify_labelled(m, 3, &limits).unwrap().passed());
        }
    }

    #[test]
    fn snippets_are_recorded_for_m2() {
        let r = verify_series(2, 3, &Limits::default()).unwrap();
        let printed: Vec<_> = r.checks.iter().filter(|c| c.key.starts_with("printed")).collect();
        assert_eq!(printed.len(), 4);
        assert!(printed.iter().all(|c| c.pass), "{r}");
    }

    #[test]
    fn labelled_m1_n2_is_four() {
        let r = verify_labelled(1, 2, &Limits::default()).unwrap();
        let c = r.checks.iter().find(|c| c.n == 2).unwrap();
        assert_eq!((c.lhs.as_str(), c.rhs.as_str()), ("4", "4"));
    }
}
