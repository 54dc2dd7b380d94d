//! Greedy intervals against `(m+1)`-constellations: the ascent-profile marginal
//! and the first-ascent (root face degree) marginal.

use std::collections::BTreeMap;

use num_bigint::BigUint;

use super::{constellation_profile_count, Profile};
use crate::error::Result;
use crate::paths::Limits;
use crate::poly::{Marker, Monomial};
use crate::posets::{CoverGraph, Flavor};
use crate::report::Report;
use crate::series::solve_constellations;

pub fn check_conjecture(m: u32, n_max: u32) -> Result<Report> {
    check_conjecture_with(m, n_max, &Limits::from_env())
}

/// For each `1 ≤ n ≤ n_max`, compares the greedy intervals counted by the ascent
/// profile of the upper path with the constellation profile formula, and the
/// intervals counted by the first ascent of the upper path with `[t^n x^ℓ](C − 1)`.
pub fn check_conjecture_with(m: u32, n_max: u32, limits: &Limits) -> Result<Report> {
    let mut report = Report::new("conjecture", m);
    let c = solve_constellations(m, n_max as usize + 1);
    for n in 1..=n_max {
        let g = CoverGraph::build_with(m, n, Flavor::Greedy, limits)?;
        let by_profile = g.histogram(false, |r| Profile::from_parts(&r.ascent_profile_upper))?;
        for p in Profile::all_of_size(n) {
            let lhs = BigUint::from(by_profile.get(&p).copied().unwrap_or(0));
            let rhs = constellation_profile_count(m, &p)?;
            report.compare(n, format!("profile {p}"), lhs, rhs);
        }
        let by_first: BTreeMap<u32, u64> = g.histogram(false, |r| r.first_ascent_upper)?;
        let cn = c.coeff(n as usize);
        for l in 1..=n {
            let lhs = by_first.get(&l).copied().unwrap_or(0);
            let rhs = cn.coeff(&Monomial::var(Marker::X, l));
            report.compare(n, format!("first ascent {l}"), lhs, rhs);
        }
        let outside = cn.terms().any(|(mono, _)| mono.exp(Marker::X) == 0 || mono.exp(Marker::X) > n);
        report.assert(n, "root degree support within 1..=n", !outside);
    }
    report.note(
        "the joint refinement by profile and first ascent is not checked: no closed \
         formula for the joint constellation count is available here, only the two marginals",
    );
    Ok(report)
}
