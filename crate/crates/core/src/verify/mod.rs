//! Verification suites: each compares two independent computations and
//! returns a [`Report`].

mod enumeration;
mod param;
mod structure;

pub use enumeration::{verify_counts, verify_labelled, verify_q_chains, verify_series};
pub use param::{verify_greedy_param, verify_ordinary_param};
pub use structure::{verify_bijections, verify_embedding, verify_monoid};

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::closedform::check_conjecture_with;
use crate::error::{Result, TamariError};
use crate::identities::{verify_h_recurrence, verify_nabla_on_r, NablaRanges};
use crate::paths::Limits;
use crate::poly::{Marker, Monomial, Rational, SparsePoly};
use crate::posets::Flavor;
use crate::report::Report;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Target {
    GreedyCount,
    OrdinaryCount,
    Series,
    QChains,
    GreedyParam,
    OrdinaryParam,
    Identities,
    Conjecture,
    Labelled,
    Monoid,
    Embedding,
    Bijections,
}

impl Target {
    pub const ALL: [Target; 12] = [
        Target::GreedyCount,
        Target::OrdinaryCount,
        Target::Series,
        Target::QChains,
        Target::GreedyParam,
        Target::OrdinaryParam,
        Target::Identities,
        Target::Conjecture,
        Target::Labelled,
        Target::Monoid,
        Target::Embedding,
        Target::Bijections,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Target::GreedyCount => "greedy-count",
            Target::OrdinaryCount => "ordinary-count",
            Target::Series => "series",
            Target::QChains => "q-chains",
            Target::GreedyParam => "greedy-param",
            Target::OrdinaryParam => "ordinary-param",
            Target::Identities => "identities",
            Target::Conjecture => "conjecture",
            Target::Labelled => "labelled",
            Target::Monoid => "monoid",
            Target::Embedding => "embedding",
            Target::Bijections => "bijections",
        }
    }

    /// Default enumeration size (or series order for the parametric targets) at step `m`.
    pub fn default_size(self, m: u32) -> u32 {
        match self {
            Target::GreedyCount | Target::OrdinaryCount => match m {
                1 => 8,
                2 => 6,
                3 => 4,
                _ => 3,
            },
            Target::Series | Target::QChains | Target::Monoid | Target::Embedding | Target::Bijections => {
                match m {
                    1 | 2 => 5,
                    3 => 4,
                    _ => 3,
                }
            }
            Target::GreedyParam => 12,
            Target::OrdinaryParam => 10,
            Target::Identities => 4,
            Target::Conjecture => 8u32.saturating_sub(m).max(1),
            Target::Labelled => match m {
                1 => 6,
                2 => 4,
                _ => 3,
            },
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Target {
    type Err = TamariError;

    fn from_str(s: &str) -> Result<Self> {
        Target::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| TamariError::Parse(format!("unknown verification target {s:?}")))
    }
}

/// Runs one suite. `size` is the largest enumerated size, the series order for
/// the parametric targets, and the grid bound for `identities`.
pub fn run(target: Target, m: u32, size: Option<u32>, limits: &Limits) -> Result<Report> {
    if m == 0 {
        return Err(TamariError::ZeroStep);
    }
    let size = size.unwrap_or_else(|| target.default_size(m));
    match target {
        Target::GreedyCount => verify_counts(m, size, Flavor::Greedy, limits),
        Target::OrdinaryCount => verify_counts(m, size, Flavor::Ordinary, limits),
        Target::Series => verify_series(m, size, limits),
        Target::QChains => verify_q_chains(m, size, limits),
        Target::GreedyParam => Ok(verify_greedy_param(m, size as usize, 20)),
        Target::OrdinaryParam => Ok(verify_ordinary_param(m, size as usize, 20)),
        Target::Identities => {
            let b = size as i64;
            let mut r = Report::new("identities", m);
            r.extend(verify_nabla_on_r(m, NablaRanges { a_max: b, b_max: b, l_max: b }));
            r.extend(verify_h_recurrence(m));
            Ok(r)
        }
        Target::Conjecture => check_conjecture_with(m, size, limits),
        Target::Labelled => verify_labelled(m, size, limits),
        Target::Monoid => verify_monoid(m, size, limits),
        Target::Embedding => verify_embedding(m, size, limits),
        Target::Bijections => verify_bijections(m, size, limits),
    }
}

/// `Σ_k count_k · x^{k + shift}`.
pub(crate) fn x_poly(hist: &BTreeMap<u32, u64>, shift: u32) -> SparsePoly {
    let mut p = SparsePoly::zero();
    for (&k, &c) in hist {
        p.add_term(Monomial::var(Marker::X, k + shift), Rational::from_integer(BigInt::from(c)));
    }
    p
}

/// `Σ count · x^d q^c` over `(d, c)` keys.
pub(crate) fn xq_poly(hist: &BTreeMap<(u32, u32), u64>) -> SparsePoly {
    let mut p = SparsePoly::zero();
    for (&(d, c), &n) in hist {
        p.add_term(Monomial::var(Marker::X, d).with_exp(Marker::Q, c), Rational::from_integer(BigInt::from(n)));
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn target_names_round_trip() {
        for t in Target::ALL {
            assert_eq!(t.name().parse::<Target>().unwrap(), t);
        }
        assert!("everything".parse::<Target>().is_err());
    }

    #[test]
    fn histogram_polys() {
        let h = BTreeMap::from([(2, 1), (3, 2), (4, 3)]);
        assert_eq!(x_poly(&h, 0).to_string(), "3x^4+2x^3+x^2");
        let hq = BTreeMap::from([((1, 0), 2), ((2, 1), 1)]);
        assert_eq!(xq_poly(&hq).to_string(), "x^2q+2x");
    }
}
