//! Greedy and ordinary m-Tamari cover relations, Hasse diagrams and
//! interval enumeration.

mod monoid;

pub use monoid::{
    classify, factorize_interval, interval_star, phi, phi_inverse, psi, psi_inverse, split_star,
    Classification, Interval, PosetFamily, PsiImage,
};

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::sync::OnceLock;

use fixedbitset::FixedBitSet;
use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::closedform::{ascent_labellings, Profile};
use crate::error::{Result, TamariError};
use crate::paths::{enumerate_paths_with, stats, DyckWord, Limits};

/// Largest poset for which descendant bitsets are materialized (≈ 450 MB).
pub const MAX_REACHABILITY_NODES: usize = 60_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    Greedy,
    Ordinary,
}

impl Flavor {
    pub fn name(self) -> &'static str {
        match self {
            Flavor::Greedy => "greedy",
            Flavor::Ordinary => "ordinary",
        }
    }
}

impl std::str::FromStr for Flavor {
    type Err = TamariError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "greedy" => Ok(Flavor::Greedy),
            "ordinary" => Ok(Flavor::Ordinary),
            _ => Err(TamariError::Parse(format!("unknown flavor {s:?}"))),
        }
    }
}

/// Swaps the down step of every valley with the Dyck factor that follows it:
/// the longest such factor for the greedy order, the shortest for the ordinary one.
pub fn covers(w: &DyckWord, flavor: Flavor) -> Vec<DyckWord> {
    let steps = w.to_steps();
    let heights = w.heights();
    let mut out = Vec::new();
    for p in 0..steps.len().saturating_sub(1) {
        if steps[p] || !steps[p + 1] {
            continue;
        }
        // The factor starts at vertex p+1, at height h.
        let h = heights[p + 1];
        let mut end = None;
        for (q, &hq) in heights.iter().enumerate().skip(p + 2) {
            if hq < h {
                break;
            }
            if hq == h {
                end = Some(q);
                if flavor == Flavor::Ordinary {
                    break;
                }
            }
        }
        let q = end.expect("a valley is followed by a return to its height");
        let mut next = Vec::with_capacity(steps.len());
        next.extend_from_slice(&steps[..p]);
        next.extend_from_slice(&steps[p + 1..q]);
        next.push(false);
        next.extend_from_slice(&steps[q..]);
        out.push(DyckWord::from_steps_unchecked(w.m(), &next));
    }
    out
}

pub fn greedy_covers(w: &DyckWord) -> Vec<DyckWord> {
    covers(w, Flavor::Greedy)
}

pub fn ordinary_covers(w: &DyckWord) -> Vec<DyckWord> {
    covers(w, Flavor::Ordinary)
}

/// Number of labellings of the up steps of `w` by `1..n` that increase along every ascent.
pub fn labelled_weight(w: &DyckWord) -> BigUint {
    ascent_labellings(&Profile::from_parts(&stats(w).ascent_profile))
}

/// One interval `[lower, upper]` with the statistics used throughout the crate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalRecord {
    pub lower: DyckWord,
    pub upper: DyckWord,
    pub d_upper: u32,
    pub contacts_lower: u32,
    pub first_ascent_upper: u32,
    pub ascent_profile_upper: Vec<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chain_length: Option<u32>,
}

impl IntervalRecord {
    pub fn new(lower: DyckWord, upper: DyckWord, chain_length: Option<u32>) -> Self {
        let su = stats(&upper);
        IntervalRecord {
            lower,
            upper,
            d_upper: su.final_descent,
            contacts_lower: stats(&lower).contacts,
            first_ascent_upper: su.first_ascent,
            ascent_profile_upper: su.ascent_profile,
            chain_length,
        }
    }

    pub fn statistic(&self, stat: Statistic) -> String {
        match stat {
            Statistic::FinalDescent => self.d_upper.to_string(),
            Statistic::Contacts => self.contacts_lower.to_string(),
            Statistic::FirstAscent => self.first_ascent_upper.to_string(),
            Statistic::AscentProfile => Profile::from_parts(&self.ascent_profile_upper).key(),
            Statistic::ChainQ => self.chain_length.map_or_else(|| "?".into(), |c| c.to_string()),
        }
    }
}

/// Interval statistics available for histograms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Statistic {
    FinalDescent,
    Contacts,
    FirstAscent,
    AscentProfile,
    ChainQ,
}

impl Statistic {
    pub fn name(self) -> &'static str {
        match self {
            Statistic::FinalDescent => "final-descent",
            Statistic::Contacts => "contacts",
            Statistic::FirstAscent => "first-ascent",
            Statistic::AscentProfile => "ascent-profile",
            Statistic::ChainQ => "chain-q",
        }
    }
}

impl std::str::FromStr for Statistic {
    type Err = TamariError;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "final-descent" => Statistic::FinalDescent,
            "contacts" => Statistic::Contacts,
            "first-ascent" => Statistic::FirstAscent,
            "ascent-profile" => Statistic::AscentProfile,
            "chain-q" => Statistic::ChainQ,
            _ => return Err(TamariError::Parse(format!("unknown statistic {s:?}"))),
        })
    }
}

/// Hasse diagram of `D_{m,n}` under one order flavor.
pub struct CoverGraph {
    m: u32,
    n: u32,
    flavor: Flavor,
    nodes: Vec<DyckWord>,
    index: HashMap<DyckWord, usize>,
    covers: Vec<Vec<usize>>,
    /// Node indices sorted by increasing area, a topological order.
    topo: Vec<usize>,
    upsets: OnceLock<Vec<FixedBitSet>>,
}

impl std::fmt::Debug for CoverGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CoverGraph")
            .field("m", &self.m)
            .field("n", &self.n)
            .field("flavor", &self.flavor)
            .field("nodes", &self.nodes.len())
            .field("edges", &self.edge_count())
            .finish()
    }
}

impl CoverGraph {
    pub fn build(m: u32, n: u32, flavor: Flavor) -> Result<Self> {
        Self::build_with(m, n, flavor, &Limits::default())
    }

    pub fn build_with(m: u32, n: u32, flavor: Flavor, limits: &Limits) -> Result<Self> {
        if n == 0 {
            return Err(TamariError::Precondition("posets are built for n >= 1".into()));
        }
        let nodes = enumerate_paths_with(m, n, limits)?;
        let index: HashMap<DyckWord, usize> = nodes.iter().enumerate().map(|(i, w)| (*w, i)).collect();
        let covers: Vec<Vec<usize>> = nodes
            .par_iter()
            .map(|w| {
                let mut up: Vec<usize> = covers(w, flavor).iter().map(|c| index[c]).collect();
                up.sort_unstable();
                up
            })
            .collect();
        let areas: Vec<u64> = nodes.iter().map(|w| w.area()).collect();
        let mut topo: Vec<usize> = (0..nodes.len()).collect();
        topo.sort_by_key(|&i| (areas[i], i));
        Ok(CoverGraph { m, n, flavor, nodes, index, covers, topo, upsets: OnceLock::new() })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn nodes(&self) -> &[DyckWord] {
        &self.nodes
    }

    pub fn covers_of(&self, i: usize) -> &[usize] {
        &self.covers[i]
    }

    pub fn edge_count(&self) -> usize {
        self.covers.iter().map(Vec::len).sum()
    }

    pub fn index_of(&self, w: &DyckWord) -> Result<usize> {
        self.index.get(w).copied().ok_or_else(|| {
            TamariError::Precondition(format!("{w} is not a node of D_{{{},{}}}", self.m, self.n))
        })
    }

    /// Descendant sets (including the node itself), built on first use.
    pub fn upsets(&self) -> Result<&[FixedBitSet]> {
        if self.nodes.len() > MAX_REACHABILITY_NODES {
            return Err(TamariError::ResourceLimit {
                what: "reachability nodes",
                count: self.nodes.len().to_string(),
                cap: MAX_REACHABILITY_NODES as u64,
            });
        }
        Ok(self.upsets.get_or_init(|| {
            let len = self.nodes.len();
            let mut sets = vec![FixedBitSet::with_capacity(len); len];
            for &v in self.topo.iter().rev() {
                let mut set = FixedBitSet::with_capacity(len);
                set.insert(v);
                for &w in &self.covers[v] {
                    set.union_with(&sets[w]);
                }
                sets[v] = set;
            }
            sets
        }))
    }

    pub fn le(&self, v: &DyckWord, w: &DyckWord) -> Result<bool> {
        let (i, j) = (self.index_of(v)?, self.index_of(w)?);
        Ok(self.upsets()?[i].contains(j))
    }

    /// All `w ≥ v`, in node order.
    pub fn upper_ideal(&self, v: &DyckWord) -> Result<Vec<DyckWord>> {
        let i = self.index_of(v)?;
        Ok(self.upsets()?[i].ones().map(|j| self.nodes[j]).collect())
    }

    /// Longest chain lengths from node `src` to every node above it.
    pub fn chain_lengths_from(&self, src: usize) -> Vec<Option<u32>> {
        let mut dist: Vec<Option<u32>> = vec![None; self.nodes.len()];
        dist[src] = Some(0);
        for &v in &self.topo {
            if let Some(d) = dist[v] {
                for &w in &self.covers[v] {
                    if dist[w].is_none_or(|dw| dw < d + 1) {
                        dist[w] = Some(d + 1);
                    }
                }
            }
        }
        dist
    }

    /// Maximum number of cover steps over saturated chains from `v` to `w`.
    pub fn longest_chain(&self, v: &DyckWord, w: &DyckWord) -> Result<u32> {
        let (i, j) = (self.index_of(v)?, self.index_of(w)?);
        self.chain_lengths_from(i)[j].ok_or_else(|| TamariError::NotComparable {
            lower: v.to_string(),
            upper: w.to_string(),
        })
    }

    /// Interval records with lower end `nodes[src]`.
    pub fn intervals_from(&self, src: usize, with_chains: bool) -> Result<Vec<IntervalRecord>> {
        let upset = &self.upsets()?[src];
        let chains = with_chains.then(|| self.chain_lengths_from(src));
        Ok(upset
            .ones()
            .map(|j| {
                let c = chains.as_ref().map(|c| c[j].expect("reachable node has a chain"));
                IntervalRecord::new(self.nodes[src], self.nodes[j], c)
            })
            .collect())
    }

    /// Streams every interval, grouped by lower end in node order.
    pub fn intervals(&self, with_chains: bool) -> Result<impl Iterator<Item = IntervalRecord> + '_> {
        self.upsets()?;
        Ok((0..self.nodes.len()).flat_map(move |i| self.intervals_from(i, with_chains).expect("upsets ready")))
    }

    pub fn interval_count(&self) -> Result<u64> {
        Ok(self.upsets()?.iter().map(|s| s.count_ones(..) as u64).sum())
    }

    /// Folds a per-lower-end computation in parallel and merges the results.
    pub fn par_fold_intervals<T, F, M>(&self, with_chains: bool, map: F, merge: M) -> Result<Option<T>>
    where
        T: Send,
        F: Fn(&[IntervalRecord]) -> T + Sync + Send,
        M: Fn(T, T) -> T + Sync + Send,
    {
        self.upsets()?;
        Ok((0..self.nodes.len())
            .into_par_iter()
            .map(|i| map(&self.intervals_from(i, with_chains).expect("upsets ready")))
            .reduce_with(merge))
    }

    /// Counts intervals by a key computed from each record.
    pub fn histogram<K, F>(&self, with_chains: bool, key: F) -> Result<BTreeMap<K, u64>>
    where
        K: Ord + Send,
        F: Fn(&IntervalRecord) -> K + Sync + Send,
    {
        let merged = self.par_fold_intervals(
            with_chains,
            |recs| {
                let mut h = BTreeMap::new();
                for r in recs {
                    *h.entry(key(r)).or_insert(0u64) += 1;
                }
                h
            },
            |mut a, b| {
                for (k, v) in b {
                    *a.entry(k).or_insert(0) += v;
                }
                a
            },
        )?;
        Ok(merged.unwrap_or_default())
    }

    /// Graphviz rendering of the Hasse diagram, minima at the bottom.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph \"{}_m{}_n{}\" {{", self.flavor.name(), self.m, self.n);
        let _ = writeln!(out, "  rankdir=BT;");
        let _ = writeln!(out, "  node [shape=box, fontname=\"monospace\"];");
        for (i, w) in self.nodes.iter().enumerate() {
            let _ = writeln!(out, "  n{i} [label=\"{w}\"];");
        }
        for (i, up) in self.covers.iter().enumerate() {
            for j in up {
                let _ = writeln!(out, "  n{i} -> n{j};");
            }
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(m: u32, s: &str) -> DyckWord {
        DyckWord::parse(m, s).unwrap()
    }

    #[test]
    fn cover_examples() {
        assert_eq!(greedy_covers(&w(2, "100100")), [w(2, "101000")]);
        assert!(greedy_covers(&w(2, "110000")).is_empty());
        assert_eq!(greedy_covers(&w(2, "101000")), [w(2, "110000")]);
        assert_eq!(ordinary_covers(&w(1, "101010")), [w(1, "110010"), w(1, "101100")]);
        assert!(ordinary_covers(&w(2, "110000")).is_empty());
        assert_eq!(ordinary_covers(&w(2, "100100")), [w(2, "101000")]);
    }

    #[test]
    fn greedy_takes_the_longest_factor() {
        // Valley at the first contact; the following factor 1010 returns twice.
        assert_eq!(greedy_covers(&w(1, "101010")), [w(1, "110100"), w(1, "101100")]);
    }

    #[test]
    fn small_posets() {
        let g = CoverGraph::build(2, 2, Flavor::Greedy).unwrap();
        assert_eq!((g.nodes().len(), g.edge_count()), (3, 2));
        assert_eq!(g.interval_count().unwrap(), 6);

        let g = CoverGraph::build(1, 3, Flavor::Greedy).unwrap();
        assert_eq!(g.nodes().len(), 5);
        assert_eq!(g.interval_count().unwrap(), 12);
        assert_eq!(CoverGraph::build(1, 3, Flavor::Ordinary).unwrap().interval_count().unwrap(), 13);

        for flavor in [Flavor::Greedy, Flavor::Ordinary] {
            let g = CoverGraph::build(1, 1, flavor).unwrap();
            assert_eq!((g.nodes().len(), g.edge_count()), (1, 0));
        }
        assert!(CoverGraph::build(1, 0, Flavor::Greedy).is_err());
    }

    #[test]
    fn chains() {
        let g = CoverGraph::build(2, 2, Flavor::Greedy).unwrap();
        let (u, v, top) = (w(2, "100100"), w(2, "101000"), w(2, "110000"));
        assert_eq!(g.longest_chain(&u, &u).unwrap(), 0);
        assert_eq!(g.longest_chain(&u, &top).unwrap(), 2);
        assert_eq!(g.longest_chain(&u, &v).unwrap(), 1);
        assert!(matches!(g.longest_chain(&top, &u), Err(TamariError::NotComparable { .. })));
    }

    #[test]
    fn interval_records() {
        let g = CoverGraph::build(2, 2, Flavor::Greedy).unwrap();
        let recs: Vec<_> = g.intervals(true).unwrap().collect();
        assert_eq!(recs.len(), 6);
        for r in &recs {
            assert_eq!(r.chain_length == Some(0), r.lower == r.upper);
            assert_eq!(r.d_upper, r.upper.final_descent());
        }
        let json = serde_json::to_string(&recs[1]).unwrap();
        let back: IntervalRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(back, recs[1]);
    }

    #[test]
    fn labelled_weights() {
        assert_eq!(labelled_weight(&w(1, "1100")), BigUint::from(1u32));
        assert_eq!(labelled_weight(&w(1, "1010")), BigUint::from(2u32));
        let g = CoverGraph::build(1, 2, Flavor::Ordinary).unwrap();
        let total: BigUint = g.intervals(false).unwrap().map(|r| labelled_weight(&r.upper)).sum();
        assert_eq!(total, BigUint::from(4u32));
    }

    #[test]
    fn histograms() {
        let g = CoverGraph::build(2, 2, Flavor::Greedy).unwrap();
        let h = g.histogram(false, |r| r.d_upper).unwrap();
        assert_eq!(h.into_iter().collect::<Vec<_>>(), [(2, 1), (3, 2), (4, 3)]);
    }

    #[test]
    fn dot_has_every_edge() {
        let g = CoverGraph::build(1, 3, Flavor::Greedy).unwrap();
        let dot = g.to_dot();
        assert_eq!(dot.matches("->").count(), g.edge_count());
        assert!(dot.contains("label=\"101010\""));
    }
}
