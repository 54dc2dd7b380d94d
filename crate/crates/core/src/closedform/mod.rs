//! Closed-form counts, ascent profiles, the rational parametrizations of the
//! interval series and the constellation comparison.

mod conjecture;
mod param;

pub use conjecture::{check_conjecture, check_conjecture_with};
pub use param::{
    eval_greedy_param, eval_ordinary_param, solve_param_greedy, solve_param_ordinary, GreedyParamSeries,
    OrdinaryParamSeries, ParamPair,
};

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed};

use crate::combinat::{binomial, factorial};
use crate::error::{Result, TamariError};
use crate::poly::Rational;

fn rat(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

fn rat_pow(base: i64, exp: i64) -> Rational {
    let b = rat(base);
    if exp >= 0 {
        num_traits::pow(b, exp as usize)
    } else {
        num_traits::pow(b.recip(), (-exp) as usize)
    }
}

fn to_natural(r: Rational, what: impl FnOnce() -> String) -> Result<BigUint> {
    if !r.is_integer() || r.is_negative() {
        return Err(TamariError::NonIntegral(format!("{} evaluates to {r}", what())));
    }
    Ok(r.to_integer().to_biguint().expect("nonnegative"))
}

fn check_mn(m: u32, n: u32) -> Result<()> {
    if m == 0 || n == 0 {
        return Err(TamariError::Precondition(format!("counts need m >= 1 and n >= 1, got m={m}, n={n}")));
    }
    Ok(())
}

/// Number of greedy intervals of size `n`:
/// `(m+2)(m+1)^{n−1} / ((mn+1)(mn+2)) · C((m+1)n, n)`.
pub fn greedy_count(m: u32, n: u32) -> Result<BigUint> {
    check_mn(m, n)?;
    let (m, n) = (m as i64, n as i64);
    let r = rat(m + 2) * rat_pow(m + 1, n - 1) * rat(binomial((m + 1) * n, n))
        / (rat(m * n + 1) * rat(m * n + 2));
    to_natural(r, || format!("greedy count at m={m}, n={n}"))
}

/// Number of ordinary intervals of size `n`: `(m+1) / (n(mn+1)) · C((m+1)²n + m, n−1)`.
pub fn ordinary_count(m: u32, n: u32) -> Result<BigUint> {
    check_mn(m, n)?;
    let (m, n) = (m as i64, n as i64);
    let r = rat(m + 1) * rat(binomial((m + 1) * (m + 1) * n + m, n - 1)) / (rat(n) * rat(m * n + 1));
    to_natural(r, || format!("ordinary count at m={m}, n={n}"))
}

/// Number of ordinary intervals whose upper path carries labels `1..n`
/// increasing along ascents: `(m+1)^n (mn+1)^{n−2}`.
pub fn labelled_ordinary_count(m: u32, n: u32) -> Result<BigUint> {
    check_mn(m, n)?;
    let (m, n) = (m as i64, n as i64);
    let r = rat_pow(m + 1, n) * rat_pow(m * n + 1, n - 2);
    to_natural(r, || format!("labelled count at m={m}, n={n}"))
}

/// Number of `(m+1)`-constellations with `n_i` white faces of degree `(m+1)i`:
/// `(m+1) m^{f−1} (mn)!/(mn−f+2)! Π_i C((m+1)i−1, i−1)^{n_i} / n_i!`.
pub fn constellation_profile_count(m: u32, profile: &Profile) -> Result<BigUint> {
    if m == 0 || profile.is_empty() {
        return Err(TamariError::Precondition("constellation counts need m >= 1 and a nonempty profile".into()));
    }
    let n = profile.size() as u64;
    let f = profile.faces() as u64;
    let mn = m as u64 * n;
    let mut r = rat(m + 1) * rat_pow(m as i64, f as i64 - 1) * Rational::new(factorial(mn).into(), factorial(mn + 2 - f).into());
    for &(i, ni) in profile.entries() {
        let b = binomial((m as i64 + 1) * i as i64 - 1, i as i64 - 1);
        r *= Rational::new(num_traits::pow(b, ni as usize), factorial(ni as u64).into());
    }
    to_natural(r, || format!("constellation count for {profile} at m={m}"))
}

/// A multiset of positive part lengths, stored as sorted `(length, multiplicity)` pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Profile {
    entries: Vec<(u32, u32)>,
}

impl Profile {
    /// Builds the profile of a list of part lengths in any order; zero parts are ignored.
    pub fn from_parts(parts: &[u32]) -> Self {
        let mut sorted: Vec<u32> = parts.iter().copied().filter(|&p| p > 0).collect();
        sorted.sort_unstable();
        let mut entries: Vec<(u32, u32)> = Vec::new();
        for p in sorted {
            match entries.last_mut() {
                Some((i, c)) if *i == p => *c += 1,
                _ => entries.push((p, 1)),
            }
        }
        Profile { entries }
    }

    pub fn entries(&self) -> &[(u32, u32)] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `n = Σ i·n_i`.
    pub fn size(&self) -> u32 {
        self.entries.iter().map(|(i, c)| i * c).sum()
    }

    /// `f = Σ n_i`.
    pub fn faces(&self) -> u32 {
        self.entries.iter().map(|(_, c)| c).sum()
    }

    /// Histogram key such as `1^2,3^1`; the empty profile is `-`.
    pub fn key(&self) -> String {
        self.to_string()
    }

    /// All profiles of total size `n`, i.e. the partitions of `n`, in key order.
    pub fn all_of_size(n: u32) -> Vec<Profile> {
        fn go(rest: u32, max: u32, parts: &mut Vec<u32>, out: &mut Vec<Profile>) {
            if rest == 0 {
                out.push(Profile::from_parts(parts));
                return;
            }
            for p in (1..=rest.min(max)).rev() {
                parts.push(p);
                go(rest - p, p, parts, out);
                parts.pop();
            }
        }
        let mut out = Vec::new();
        go(n, n, &mut Vec::new(), &mut out);
        out.sort_by_key(Profile::key);
        out
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return f.write_str("-");
        }
        for (k, (i, c)) in self.entries.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}^{c}")?;
        }
        Ok(())
    }
}

impl FromStr for Profile {
    type Err = TamariError;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || TamariError::Parse(format!("bad profile key {s:?}"));
        if s == "-" {
            return Ok(Profile::default());
        }
        let mut entries: Vec<(u32, u32)> = Vec::new();
        for part in s.split(',') {
            let (i, c) = part.split_once('^').ok_or_else(bad)?;
            let digits = |t: &str| -> Result<u32> {
                if t.is_empty() || t.starts_with('0') || !t.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(bad());
                }
                t.parse::<u32>().ok().filter(|&v| v > 0).ok_or_else(bad)
            };
            let (i, c) = (digits(i)?, digits(c)?);
            if entries.last().is_some_and(|&(prev, _)| prev >= i) {
                return Err(bad());
            }
            entries.push((i, c));
        }
        let p = Profile { entries };
        if p.entries.iter().try_fold(0u64, |acc, &(i, c)| acc.checked_add(i as u64 * c as u64)).is_none_or(|n| n > u32::MAX as u64) {
            return Err(bad());
        }
        Ok(p)
    }
}

/// `n! / Π ℓ!` over the ascent lengths `ℓ`: the labellings of the up steps
/// by `1..n` that increase along every ascent.
pub fn ascent_labellings(ascents: &Profile) -> BigUint {
    let mut den = BigUint::one();
    for &(i, c) in ascents.entries() {
        den *= num_traits::pow(factorial(i as u64), c as usize);
    }
    factorial(ascents.size() as u64) / den
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn greedy_counts() {
        assert_eq!(greedy_count(2, 2).unwrap(), u(6));
        assert_eq!(greedy_count(1, 1).unwrap(), u(1));
        let m1: Vec<_> = (1..=6).map(|n| greedy_count(1, n).unwrap()).collect();
        assert_eq!(m1, [1u64, 3, 12, 56, 288, 1584].map(u));
        assert!(greedy_count(0, 2).is_err());
    }

    #[test]
    fn ordinary_counts() {
        assert_eq!(ordinary_count(1, 3).unwrap(), u(13));
        assert_eq!(ordinary_count(1, 1).unwrap(), u(1));
        assert_eq!(ordinary_count(2, 2).unwrap(), u(6));
        let m1: Vec<_> = (1..=5).map(|n| ordinary_count(1, n).unwrap()).collect();
        assert_eq!(m1, [1u64, 3, 13, 68, 399].map(u));
    }

    #[test]
    fn labelled_counts() {
        assert_eq!(labelled_ordinary_count(1, 2).unwrap(), u(4));
        assert_eq!(labelled_ordinary_count(1, 1).unwrap(), u(1));
        assert_eq!(labelled_ordinary_count(2, 3).unwrap(), u(189));
    }

    #[test]
    fn counts_are_integral_and_ordered() {
        for m in 1..=4 {
            for n in 1..=20 {
                let g = greedy_count(m, n).unwrap();
                let o = ordinary_count(m, n).unwrap();
                assert!(g <= o, "m={m} n={n}");
                labelled_ordinary_count(m, n).unwrap();
            }
        }
    }

    #[test]
    fn constellation_profiles() {
        let p: Profile = "1^2".parse().unwrap();
        assert_eq!(constellation_profile_count(2, &p).unwrap(), u(3));
        let p: Profile = "2^1".parse().unwrap();
        assert_eq!(constellation_profile_count(2, &p).unwrap(), u(3));
        for m in 1..=2 {
            for n in 1..=5 {
                let total: BigUint = Profile::all_of_size(n)
                    .iter()
                    .map(|p| constellation_profile_count(m, p).unwrap())
                    .sum();
                assert_eq!(total, greedy_count(m, n).unwrap(), "m={m} n={n}");
            }
        }
    }

    #[test]
    fn profile_keys() {
        let p = Profile::from_parts(&[2, 1, 1, 3]);
        assert_eq!(p.key(), "1^2,2^1,3^1");
        assert_eq!((p.size(), p.faces()), (7, 4));
        assert_eq!(p.key().parse::<Profile>().unwrap(), p);
        assert_eq!(Profile::from_parts(&[]).key(), "-");
        assert_eq!("-".parse::<Profile>().unwrap(), Profile::default());
        for s in ["", "1", "1^0", "2^1,1^1", "1^1,1^1", "a^1", "1^+1", "01^1", "4294967295^2"] {
            assert!(s.parse::<Profile>().is_err(), "{s:?} should not parse");
        }
        assert_eq!(Profile::all_of_size(4).len(), 5);
    }

    #[test]
    fn labellings_of_ascents() {
        assert_eq!(ascent_labellings(&Profile::from_parts(&[2])), u(1));
        assert_eq!(ascent_labellings(&Profile::from_parts(&[1, 1])), u(2));
        assert_eq!(ascent_labellings(&Profile::from_parts(&[2, 1, 1])), u(12));
    }
}
