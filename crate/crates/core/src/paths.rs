//! m-Dyck paths: packed representation, enumeration, statistics, the
//! `D(w_1, …, w_{m+1})` decomposition and the rightmost-peak product.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::combinat::fuss_catalan;
use crate::error::{Result, TamariError};

/// Longest word that fits the packed representation.
pub const MAX_LEN: u64 = 128;

/// Default cap on the number of paths a single enumeration may produce.
pub const DEFAULT_MAX_PATHS: u64 = 10_000_000;

/// Resource caps shared by enumeration and poset construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_paths: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_paths: DEFAULT_MAX_PATHS }
    }
}

impl Limits {
    /// Default limits, with `TAMARI_MAX_NODES` overriding the path cap when set.
    pub fn from_env() -> Self {
        let max_paths = std::env::var("TAMARI_MAX_NODES")
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or(DEFAULT_MAX_PATHS);
        Limits { max_paths }
    }

    pub fn check_paths(&self, count: &BigUint) -> Result<()> {
        if *count > BigUint::from(self.max_paths) {
            return Err(TamariError::ResourceLimit {
                what: "paths",
                count: count.to_string(),
                cap: self.max_paths,
            });
        }
        Ok(())
    }
}

/// An m-Dyck word, bit-packed most-significant-first (1 = up step of rise m,
/// 0 = down step of drop 1).
///
/// Words of equal `(m, n)` compare lexicographically with `0 < 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DyckWord {
    m: u32,
    n: u32,
    bits: u128,
}

/// Statistics of a single path.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathStats {
    pub final_descent: u32,
    pub contacts: u32,
    pub first_ascent: u32,
    /// Lengths of the maximal runs of up steps, sorted increasingly.
    pub ascent_profile: Vec<u32>,
    pub is_prime: bool,
}

/// True iff `word` is an m-Dyck word.
pub fn is_valid(m: u32, word: &[bool]) -> bool {
    if m == 0 {
        return false;
    }
    let mut height: i64 = 0;
    for &up in word {
        height += if up { m as i64 } else { -1 };
        if height < 0 {
            return false;
        }
    }
    height == 0
}

fn parse_steps(s: &str) -> Result<Vec<bool>> {
    s.chars()
        .map(|c| match c {
            '1' => Ok(true),
            '0' => Ok(false),
            other => Err(TamariError::Parse(format!("unexpected character {other:?} in path word"))),
        })
        .collect()
}

impl DyckWord {
    pub fn new(m: u32, steps: &[bool]) -> Result<Self> {
        if m == 0 {
            return Err(TamariError::ZeroStep);
        }
        if steps.len() as u64 > MAX_LEN {
            return Err(TamariError::TooLong(steps.len() as u64));
        }
        if !is_valid(m, steps) {
            return Err(TamariError::InvalidWord { m, word: steps_to_string(steps) });
        }
        Ok(Self::from_steps_unchecked(m, steps))
    }

    /// Parses a word of '1'/'0' characters.
    pub fn parse(m: u32, s: &str) -> Result<Self> {
        Self::new(m, &parse_steps(s)?)
    }

    pub(crate) fn from_steps_unchecked(m: u32, steps: &[bool]) -> Self {
        debug_assert!(is_valid(m, steps));
        let mut bits = 0u128;
        let mut n = 0;
        for &s in steps {
            bits = (bits << 1) | s as u128;
            n += s as u32;
        }
        DyckWord { m, n, bits }
    }

    pub fn empty(m: u32) -> Self {
        DyckWord { m, n: 0, bits: 0 }
    }

    /// The single peak `10^m`.
    pub fn unit(m: u32) -> Self {
        DyckWord { m, n: 1, bits: 1 << m }
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Number of up steps.
    pub fn size(&self) -> u32 {
        self.n
    }

    pub fn len(&self) -> usize {
        ((self.m + 1) * self.n) as usize
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn is_unit(&self) -> bool {
        *self == Self::unit(self.m)
    }

    pub fn step(&self, i: usize) -> bool {
        (self.bits >> (self.len() - 1 - i)) & 1 == 1
    }

    pub fn steps(&self) -> impl ExactSizeIterator<Item = bool> + '_ {
        (0..self.len()).map(move |i| self.step(i))
    }

    pub fn to_steps(&self) -> Vec<bool> {
        self.steps().collect()
    }

    /// Vertex heights, `len() + 1` entries starting and ending at 0.
    pub fn heights(&self) -> Vec<u32> {
        let mut h = Vec::with_capacity(self.len() + 1);
        let mut cur = 0u32;
        h.push(0);
        for up in self.steps() {
            if up {
                cur += self.m;
            } else {
                cur -= 1;
            }
            h.push(cur);
        }
        h
    }

    /// Sum of vertex heights; strictly increases along cover relations.
    pub fn area(&self) -> u64 {
        self.heights().iter().map(|&h| h as u64).sum()
    }

    /// Length of the final run of down steps, `d(w)`.
    pub fn final_descent(&self) -> u32 {
        if self.is_empty() {
            0
        } else {
            self.bits.trailing_zeros()
        }
    }

    pub fn stats(&self) -> PathStats {
        stats(self)
    }
}

fn steps_to_string(steps: &[bool]) -> String {
    steps.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

impl fmt::Display for DyckWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for up in self.steps() {
            f.write_str(if up { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for DyckWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            write!(f, "∅[m={}]", self.m)
        } else {
            write!(f, "{}[m={}]", self, self.m)
        }
    }
}

#[derive(Serialize, Deserialize)]
struct WordJson {
    m: u32,
    word: String,
}

impl Serialize for DyckWord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        WordJson { m: self.m, word: self.to_string() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for DyckWord {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = WordJson::deserialize(d)?;
        DyckWord::parse(raw.m, &raw.word).map_err(serde::de::Error::custom)
    }
}

/// Parses `"<m>:<word>"`, the form used on the command line.
impl FromStr for DyckWord {
    type Err = TamariError;

    fn from_str(s: &str) -> Result<Self> {
        let (m, word) = s
            .split_once(':')
            .ok_or_else(|| TamariError::Parse(format!("expected <m>:<word>, got {s:?}")))?;
        let m: u32 = m.trim().parse().map_err(|_| TamariError::Parse(format!("bad step parameter {m:?}")))?;
        DyckWord::parse(m, word.trim())
    }
}

/// All m-Dyck words of size n in lexicographic order, using the default cap.
pub fn enumerate_paths(m: u32, n: u32) -> Result<Vec<DyckWord>> {
    enumerate_paths_with(m, n, &Limits::default())
}

pub fn enumerate_paths_with(m: u32, n: u32, limits: &Limits) -> Result<Vec<DyckWord>> {
    if m == 0 {
        return Err(TamariError::ZeroStep);
    }
    let len = (m as u64 + 1) * n as u64;
    if len > MAX_LEN {
        return Err(TamariError::TooLong(len));
    }
    let count = fuss_catalan(m, n);
    limits.check_paths(&count)?;
    let mut out = Vec::with_capacity(usize::try_from(&count).unwrap_or(0));
    let mut buf = Vec::with_capacity(len as usize);
    fill(m, n, 0, 0, &mut buf, &mut out);
    Ok(out)
}

fn fill(m: u32, n: u32, ups: u32, downs: u32, buf: &mut Vec<bool>, out: &mut Vec<DyckWord>) {
    if ups == n && downs == m * n {
        out.push(DyckWord::from_steps_unchecked(m, buf));
        return;
    }
    // 0 before 1 gives lexicographic order.
    if downs < m * ups {
        buf.push(false);
        fill(m, n, ups, downs + 1, buf, out);
        buf.pop();
    }
    if ups < n {
        buf.push(true);
        fill(m, n, ups + 1, downs, buf, out);
        buf.pop();
    }
}

pub fn stats(w: &DyckWord) -> PathStats {
    let heights = w.heights();
    let contacts = if heights.len() > 2 {
        heights[1..heights.len() - 1].iter().filter(|&&h| h == 0).count() as u32
    } else {
        0
    };
    let mut ascent_profile = Vec::new();
    let mut run = 0u32;
    for up in w.steps() {
        if up {
            run += 1;
        } else if run > 0 {
            ascent_profile.push(run);
            run = 0;
        }
    }
    if run > 0 {
        ascent_profile.push(run);
    }
    let first_ascent = w.steps().take_while(|&b| b).count() as u32;
    ascent_profile.sort_unstable();
    PathStats {
        final_descent: w.final_descent(),
        contacts,
        first_ascent,
        ascent_profile,
        is_prime: contacts == 0,
    }
}

/// Splits `w = 1 (w_1 0)(w_2 0)⋯(w_m 0) w_{m+1}` into its `m + 1` parts.
pub fn decompose(w: &DyckWord) -> Result<Vec<DyckWord>> {
    if w.is_empty() {
        return Err(TamariError::EmptyPath);
    }
    let m = w.m;
    let steps = w.to_steps();
    let mut parts = Vec::with_capacity(m as usize + 1);
    let mut height = m;
    let mut start = 1;
    // Cut at the first descent to each of the heights m-1, …, 0.
    for (i, &up) in steps.iter().enumerate().skip(1) {
        if up {
            height += m;
        } else {
            height -= 1;
            if height < m - parts.len() as u32 {
                parts.push(DyckWord::from_steps_unchecked(m, &steps[start..i]));
                start = i + 1;
                if parts.len() == m as usize {
                    break;
                }
            }
        }
    }
    parts.push(DyckWord::from_steps_unchecked(m, &steps[start..]));
    Ok(parts)
}

/// Inverse of [`decompose`]: builds `1 (w_1 0)⋯(w_m 0) w_{m+1}`.
pub fn compose(m: u32, parts: &[DyckWord]) -> Result<DyckWord> {
    if m == 0 {
        return Err(TamariError::ZeroStep);
    }
    if parts.len() != m as usize + 1 {
        return Err(TamariError::Arity { expected: m as usize + 1, got: parts.len() });
    }
    if let Some(p) = parts.iter().find(|p| p.m != m) {
        return Err(TamariError::StepMismatch(m, p.m));
    }
    let mut steps = vec![true];
    for (i, p) in parts.iter().enumerate() {
        steps.extend(p.steps());
        if i < m as usize {
            steps.push(false);
        }
    }
    if steps.len() as u64 > MAX_LEN {
        return Err(TamariError::TooLong(steps.len() as u64));
    }
    Ok(DyckWord::from_steps_unchecked(m, &steps))
}

/// Index of the last up step, i.e. the start of the rightmost peak.
fn last_up(w: &DyckWord) -> usize {
    w.len() - 1 - w.final_descent() as usize
}

/// Replaces the rightmost peak of `w1` by `w2`.
pub fn star(w1: &DyckWord, w2: &DyckWord) -> Result<DyckWord> {
    if w1.m != w2.m {
        return Err(TamariError::StepMismatch(w1.m, w2.m));
    }
    if w1.is_empty() || w2.is_empty() {
        return Err(TamariError::EmptyPath);
    }
    let m = w1.m as usize;
    let len = w1.len() + w2.len() - (m + 1);
    if len as u64 > MAX_LEN {
        return Err(TamariError::TooLong(len as u64));
    }
    let s1 = w1.to_steps();
    let p = last_up(w1);
    let mut steps = Vec::with_capacity(len);
    steps.extend_from_slice(&s1[..p]);
    steps.extend(w2.steps());
    steps.extend_from_slice(&s1[p + m + 1..]);
    Ok(DyckWord::from_steps_unchecked(w1.m, &steps))
}

/// Left fold of [`star`] over a non-empty sequence.
pub fn star_fold(factors: &[DyckWord]) -> Result<DyckWord> {
    let (first, rest) = factors.split_first().ok_or(TamariError::EmptyPath)?;
    rest.iter().try_fold(*first, |acc, f| star(&acc, f))
}

/// Unique factorization into generators `D(w_1, …, w_{i-1}, 10^m, ∅, …, ∅)`.
/// The unit factorizes as itself.
pub fn factorize(w: &DyckWord) -> Result<Vec<DyckWord>> {
    if w.is_empty() {
        return Err(TamariError::EmptyPath);
    }
    let m = w.m;
    let mut out = Vec::new();
    let mut cur = *w;
    while !cur.is_unit() {
        let mut parts = decompose(&cur)?;
        let i = parts.iter().rposition(|p| !p.is_empty()).expect("non-unit has a non-empty part");
        let rest = parts[i];
        parts[i] = DyckWord::unit(m);
        out.push(compose(m, &parts)?);
        cur = rest;
    }
    if out.is_empty() {
        out.push(cur);
    }
    Ok(out)
}

/// True iff `w` decomposes as `(w_1, …, w_{i-1}, 10^m, ∅, …, ∅)` for some `i`.
pub fn is_generator(w: &DyckWord) -> bool {
    if w.is_empty() || w.is_unit() {
        return false;
    }
    match decompose(w) {
        Ok(parts) => match parts.iter().rposition(|p| !p.is_empty()) {
            Some(i) => parts[i].is_unit(),
            None => false,
        },
        Err(_) => false,
    }
}

/// Replaces every up step by `m` unit up steps, giving a 1-Dyck word of size `m·n`.
pub fn embed_unit_steps(w: &DyckWord) -> DyckWord {
    let mut steps = Vec::with_capacity(2 * (w.m * w.n) as usize);
    for up in w.steps() {
        if up {
            steps.extend(std::iter::repeat_n(true, w.m as usize));
        } else {
            steps.push(false);
        }
    }
    DyckWord::from_steps_unchecked(1, &steps)
}

/// Starting height of the last up step.
pub fn last_peak_height(w: &DyckWord) -> Result<u32> {
    if w.is_empty() {
        return Err(TamariError::EmptyPath);
    }
    Ok(w.heights()[last_up(w)])
}

/// Removes the last peak (the last up step and the `m` down steps after it).
pub fn delete_last_peak(w: &DyckWord) -> Result<DyckWord> {
    if w.is_empty() {
        return Err(TamariError::EmptyPath);
    }
    let p = last_up(w);
    let mut steps = w.to_steps();
    steps.drain(p..p + w.m as usize + 1);
    Ok(DyckWord::from_steps_unchecked(w.m, &steps))
}

/// Inserts a peak `10^m` into the final descent so that its up step starts at `height`.
pub fn insert_peak(w: &DyckWord, height: u32) -> Result<DyckWord> {
    let d = w.final_descent();
    if height > d {
        return Err(TamariError::Precondition(format!(
            "peak height {height} exceeds final descent {d} of {w}"
        )));
    }
    if w.len() + w.m as usize + 1 > MAX_LEN as usize {
        return Err(TamariError::TooLong((w.len() + w.m as usize + 1) as u64));
    }
    let at = w.len() - height as usize;
    let mut steps = w.to_steps();
    let peak = std::iter::once(true).chain(std::iter::repeat_n(false, w.m as usize));
    steps.splice(at..at, peak);
    Ok(DyckWord::from_steps_unchecked(w.m, &steps))
}
