//! The monoid of intervals under the rightmost-peak product, the `J_i`/`K_i`
//! classification of lower paths, and the decomposition bijections `φ`, `ψ`.

use serde::{Deserialize, Serialize};

use super::{CoverGraph, Flavor};
use crate::error::{Result, TamariError};
use crate::paths::{
    decompose, delete_last_peak, factorize, insert_peak, last_peak_height, star, star_fold, DyckWord,
    Limits,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Interval {
    pub lower: DyckWord,
    pub upper: DyckWord,
}

impl Interval {
    pub fn new(lower: DyckWord, upper: DyckWord) -> Self {
        Interval { lower, upper }
    }

    pub fn unit(m: u32) -> Self {
        let u = DyckWord::unit(m);
        Interval { lower: u, upper: u }
    }

    pub fn size(&self) -> u32 {
        self.lower.size()
    }
}

/// Level of a lower path in the `J_i` filtration, and its `K_i` level if any.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Classification {
    /// Least `i` with `v = D(v_1, …, v_i, ∅, …, ∅)`.
    pub j_level: usize,
    /// The `i` with `v = D(v_1, …, v_{i−1}, 10^m, ∅, …, ∅)`. Only `i = j_level` can qualify,
    /// so the set of such levels has at most one element.
    pub k_level: Option<usize>,
}

pub fn classify(v: &DyckWord) -> Result<Classification> {
    let parts = decompose(v)?;
    match parts.iter().rposition(|p| !p.is_empty()) {
        None => Ok(Classification { j_level: 0, k_level: None }),
        Some(idx) => Ok(Classification {
            j_level: idx + 1,
            k_level: parts[idx].is_unit().then_some(idx + 1),
        }),
    }
}

/// `[v₁, w₁] * [v₂, w₂] = [v₁ * v₂, w₁ * w₂]`.
pub fn interval_star(a: &Interval, b: &Interval) -> Result<Interval> {
    Ok(Interval { lower: star(&a.lower, &b.lower)?, upper: star(&a.upper, &b.upper)? })
}

/// Splits `w = left * right` given the size of `right`.
pub fn split_star(w: &DyckWord, right_size: u32) -> Result<(DyckWord, DyckWord)> {
    let m = w.m();
    let n = w.size();
    if right_size == 0 || right_size > n {
        return Err(TamariError::Precondition(format!("cannot split {w} with right size {right_size}")));
    }
    if right_size == 1 {
        return Ok((*w, DyckWord::unit(m)));
    }
    if right_size == n {
        return Ok((DyckWord::unit(m), *w));
    }
    let gens = factorize(w)?;
    let mut size = 1u32;
    for j in (1..gens.len()).rev() {
        size += gens[j].size() - 1;
        if size == right_size {
            return Ok((star_fold(&gens[..j])?, star_fold(&gens[j..])?));
        }
        if size > right_size {
            break;
        }
    }
    Err(TamariError::Precondition(format!("{w} has no right factor of size {right_size}")))
}

/// Factorizes an interval into interval generators `[g, w_g]` following the
/// generator factorization of its lower path.
pub fn factorize_interval(iv: &Interval) -> Result<Vec<Interval>> {
    let gens = factorize(&iv.lower)?;
    let mut uppers = Vec::with_capacity(gens.len());
    let mut rest = iv.upper;
    for g in gens[1..].iter().rev() {
        let (left, r) = split_star(&rest, g.size())?;
        uppers.push(r);
        rest = left;
    }
    uppers.push(rest);
    uppers.reverse();
    Ok(gens.into_iter().zip(uppers).map(|(g, u)| Interval::new(g, u)).collect())
}

/// `φ([v,w]) = ([v′,w′], [v″,w″])` for `[v,w] ∈ J_i \ J_{i−1}` with `i ≥ 1`:
/// `[v′,w′]` is the first interval generator and `[v″,w″]` the remaining product.
pub fn phi(iv: &Interval) -> Result<(Interval, Interval)> {
    let c = classify(&iv.lower)?;
    if c.j_level == 0 {
        return Err(TamariError::Precondition("φ is undefined on the unit interval".into()));
    }
    let gens = factorize(&iv.lower)?;
    let first = gens[0];
    let rest_lower = if gens.len() > 1 { star_fold(&gens[1..])? } else { DyckWord::unit(iv.lower.m()) };
    let (w1, w2) = split_star(&iv.upper, rest_lower.size())?;
    if w1.size() != first.size() {
        return Err(TamariError::Precondition(format!("upper path {} does not split like {}", iv.upper, iv.lower)));
    }
    Ok((Interval::new(first, w1), Interval::new(rest_lower, w2)))
}

/// Inverse of [`phi`]; the first argument must have a `K_i` lower path.
pub fn phi_inverse(head: &Interval, tail: &Interval) -> Result<Interval> {
    if classify(&head.lower)?.k_level.is_none() {
        return Err(TamariError::Precondition(format!("{} is not a generator", head.lower)));
    }
    interval_star(head, tail)
}

/// Image of an interval of `K_i` under `ψ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PsiImage {
    pub level: usize,
    pub base: Interval,
    /// Starting height of the last up step of the upper path.
    pub height: u32,
}

/// Deletes the last peak of both ends of an interval of `K_i`.
pub fn psi(iv: &Interval) -> Result<PsiImage> {
    let m = iv.lower.m();
    let level = classify(&iv.lower)?
        .k_level
        .ok_or_else(|| TamariError::Precondition(format!("{} is not of K shape", iv.lower)))?;
    let base = Interval::new(delete_last_peak(&iv.lower)?, delete_last_peak(&iv.upper)?);
    let height = last_peak_height(&iv.upper)?;
    let low = m + 1 - level as u32;
    if height < low || height > base.upper.final_descent() {
        return Err(TamariError::Precondition(format!(
            "peak height {height} of {} outside [{low}, {}]",
            iv.upper,
            base.upper.final_descent()
        )));
    }
    Ok(PsiImage { level, base, height })
}

pub fn psi_inverse(img: &PsiImage) -> Result<Interval> {
    let m = img.base.lower.m();
    if img.level == 0 || img.level > m as usize + 1 {
        return Err(TamariError::Precondition(format!("level {} out of range", img.level)));
    }
    let low = m + 1 - img.level as u32;
    if img.height < low {
        return Err(TamariError::Precondition(format!("height {} below {low}", img.height)));
    }
    Ok(Interval::new(insert_peak(&img.base.lower, low)?, insert_peak(&img.base.upper, img.height)?))
}

/// Hasse diagrams of `D_{m,1}, …, D_{m,n_max}` for order queries across sizes.
#[derive(Debug)]
pub struct PosetFamily {
    m: u32,
    flavor: Flavor,
    graphs: Vec<CoverGraph>,
}

impl PosetFamily {
    pub fn build(m: u32, n_max: u32, flavor: Flavor) -> Result<Self> {
        Self::build_with(m, n_max, flavor, &Limits::default())
    }

    pub fn build_with(m: u32, n_max: u32, flavor: Flavor, limits: &Limits) -> Result<Self> {
        let graphs = (1..=n_max).map(|n| CoverGraph::build_with(m, n, flavor, limits)).collect::<Result<_>>()?;
        Ok(PosetFamily { m, flavor, graphs })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn n_max(&self) -> u32 {
        self.graphs.len() as u32
    }

    pub fn graph(&self, n: u32) -> Result<&CoverGraph> {
        n.checked_sub(1)
            .and_then(|i| self.graphs.get(i as usize))
            .ok_or_else(|| TamariError::Precondition(format!("size {n} outside the family")))
    }

    pub fn graphs(&self) -> &[CoverGraph] {
        &self.graphs
    }

    pub fn le(&self, v: &DyckWord, w: &DyckWord) -> Result<bool> {
        if v.size() != w.size() {
            return Ok(false);
        }
        self.graph(v.size())?.le(v, w)
    }

    pub fn is_interval(&self, iv: &Interval) -> Result<bool> {
        self.le(&iv.lower, &iv.upper)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(m: u32, s: &str) -> DyckWord {
        DyckWord::parse(m, s).unwrap()
    }

    #[test]
    fn classification() {
        assert_eq!(classify(&DyckWord::unit(2)).unwrap(), Classification { j_level: 0, k_level: None });
        assert_eq!(classify(&w(2, "110000")).unwrap(), Classification { j_level: 1, k_level: Some(1) });
        assert_eq!(classify(&w(2, "100100")).unwrap().j_level, 3);
        assert_eq!(classify(&w(2, "110011000000")).unwrap(), Classification { j_level: 1, k_level: None });
    }

    #[test]
    fn psi_hand_trace() {
        // [101000, 101000], m = 2: v = D(∅, 100, ∅) lies in K_2.
        let iv = Interval::new(w(2, "101000"), w(2, "101000"));
        let img = psi(&iv).unwrap();
        assert_eq!(img.level, 2);
        assert_eq!(img.base, Interval::new(w(2, "100"), w(2, "100")));
        assert_eq!(img.height, 1);
        assert_eq!(psi_inverse(&img).unwrap(), iv);

        let top = Interval::new(w(2, "101000"), w(2, "110000"));
        let img = psi(&top).unwrap();
        assert_eq!(img.height, 2);
        assert_eq!(psi_inverse(&img).unwrap(), top);

        assert!(psi(&Interval::new(w(2, "110011000000"), w(2, "110011000000"))).is_err());
    }

    #[test]
    fn phi_on_a_product() {
        let v = w(2, "110011000000");
        let (head, tail) = phi(&Interval::new(v, v)).unwrap();
        assert_eq!(head, Interval::new(w(2, "110000"), w(2, "110000")));
        assert_eq!(tail.lower, w(2, "100110000"));
        assert_eq!(phi_inverse(&head, &tail).unwrap(), Interval::new(v, v));
        // Unit-adjacent: a generator pairs with the unit interval.
        let g = Interval::new(w(2, "101000"), w(2, "110000"));
        let (head, tail) = phi(&g).unwrap();
        assert_eq!((head, tail), (g, Interval::unit(2)));
        assert_eq!(phi_inverse(&head, &tail).unwrap(), g);
    }

    #[test]
    fn split_star_recovers_factors() {
        let a = w(2, "110010000");
        let b = w(2, "110000");
        let ab = star(&a, &b).unwrap();
        assert_eq!(split_star(&ab, 2).unwrap(), (a, b));
        assert_eq!(split_star(&ab, 1).unwrap(), (ab, DyckWord::unit(2)));
        assert!(split_star(&ab, 0).is_err());
    }
}
