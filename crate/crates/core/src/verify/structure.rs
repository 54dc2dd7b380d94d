//! Exhaustive structural checks: free monoid factorizations, compatibility of
//! covers with the product, the unit-step embedding and the `φ`/`ψ` bijections.

use std::collections::{BTreeMap, BTreeSet};

use super::x_poly;
use crate::error::Result;
use crate::paths::{
    delete_last_peak, embed_unit_steps, enumerate_paths_with, factorize, is_generator, star, star_fold,
    stats, DyckWord, Limits,
};
use crate::poly::{Marker, Monomial, SparsePoly};
use crate::posets::{
    classify, covers, factorize_interval, greedy_covers, interval_star, phi, phi_inverse, psi, psi_inverse,
    CoverGraph, Flavor, Interval, PosetFamily, PsiImage,
};
use crate::report::Report;

fn intervals_of(g: &CoverGraph) -> Result<Vec<Interval>> {
    Ok(g.intervals(false)?.map(|r| Interval::new(r.lower, r.upper)).collect())
}

fn sorted(mut v: Vec<DyckWord>) -> Vec<DyckWord> {
    v.sort_unstable();
    v
}

/// Every way of writing `v = v1 * v2` with both factors of size at least two.
fn splits(v: &DyckWord) -> Result<Vec<(DyckWord, DyckWord)>> {
    let gens = factorize(v)?;
    if v.is_unit() {
        return Ok(Vec::new());
    }
    (1..gens.len()).map(|j| Ok((star_fold(&gens[..j])?, star_fold(&gens[j..])?))).collect()
}

/// Free monoid structure on paths and intervals, and compatibility of both
/// cover relations with the product, for sizes `1..=n_max`.
pub fn verify_monoid(m: u32, n_max: u32, limits: &Limits) -> Result<Report> {
    let mut report = Report::new("monoid", m);
    let greedy = PosetFamily::build_with(m, n_max, Flavor::Greedy, limits)?;
    let ordinary = PosetFamily::build_with(m, n_max, Flavor::Ordinary, limits)?;
    let by_size: Vec<Vec<Interval>> = greedy.graphs().iter().map(intervals_of).collect::<Result<_>>()?;

    for n in 1..=n_max {
        let nodes = greedy.graph(n)?.nodes();
        let mut round_trip = true;
        let mut generators = true;
        for w in nodes {
            let f = factorize(w)?;
            round_trip &= star_fold(&f)? == *w;
            generators &= w.is_unit() || f.iter().all(is_generator);
        }
        report.assert(n, "path factorization round trip", round_trip);
        report.assert(n, "path factors are generators", generators);

        let mut concatenates = true;
        for a in 2..n {
            let b = n + 1 - a;
            for v1 in greedy.graph(a)?.nodes() {
                for v2 in greedy.graph(b)?.nodes() {
                    let mut expected = factorize(v1)?;
                    expected.extend(factorize(v2)?);
                    concatenates &= factorize(&star(v1, v2)?)? == expected;
                }
            }
        }
        report.assert(n, "factorization of a product concatenates", concatenates);

        let mut iv_round_trip = true;
        let mut iv_generators = true;
        for iv in &by_size[n as usize - 1] {
            let f = factorize_interval(iv)?;
            let folded = f[1..].iter().try_fold(f[0], |acc, g| interval_star(&acc, g))?;
            iv_round_trip &= folded == *iv;
            for g in &f {
                iv_generators &= greedy.is_interval(g)? && (iv.lower.is_unit() || is_generator(&g.lower));
            }
        }
        report.assert(n, "interval factorization round trip", iv_round_trip);
        report.assert(n, "interval factors are generator intervals", iv_generators);

        let mut closed = true;
        for a in 2..n {
            let b = n + 1 - a;
            for x in &by_size[a as usize - 1] {
                for y in &by_size[b as usize - 1] {
                    closed &= greedy.is_interval(&interval_star(x, y)?)?;
                }
            }
        }
        report.assert(n, "products of intervals are intervals", closed);

        for (fam, flavor) in [(&greedy, Flavor::Greedy), (&ordinary, Flavor::Ordinary)] {
            let (cover_ok, ideal_ok) = compatibility(fam, n, flavor)?;
            report.assert(n, format!("{} covers split over products", flavor.name()), cover_ok);
            report.assert(n, format!("{} upper ideals split over products", flavor.name()), ideal_ok);
        }
    }
    report.note("ordinary compatibility is checked for factorizations whose right factor is prime");
    Ok(report)
}

fn compatibility(fam: &PosetFamily, n: u32, flavor: Flavor) -> Result<(bool, bool)> {
    let mut cover_ok = true;
    let mut ideal_ok = true;
    let g = fam.graph(n)?;
    for v in g.nodes() {
        for (v1, v2) in splits(v)? {
            if flavor == Flavor::Ordinary && !stats(&v2).is_prime {
                continue;
            }
            let mut combined = Vec::new();
            for w1 in covers(&v1, flavor) {
                combined.push(star(&w1, &v2)?);
            }
            for w2 in covers(&v2, flavor) {
                combined.push(star(&v1, &w2)?);
            }
            let combined = sorted(combined);
            let distinct = combined.windows(2).all(|p| p[0] != p[1]);
            cover_ok &= distinct && sorted(covers(v, flavor)) == combined;

            let mut products = BTreeSet::new();
            for w1 in fam.graph(v1.size())?.upper_ideal(&v1)? {
                for w2 in fam.graph(v2.size())?.upper_ideal(&v2)? {
                    products.insert(star(&w1, &w2)?);
                }
            }
            let ideal: BTreeSet<DyckWord> = g.upper_ideal(v)?.into_iter().collect();
            ideal_ok &= ideal == products;
        }
    }
    Ok((cover_ok, ideal_ok))
}

fn ascents_divisible(w: &DyckWord, m: u32) -> bool {
    stats(w).ascent_profile.iter().all(|a| a % m == 0)
}

/// Largest `m·n` for which `D_{1,mn}` is built for the direct comparison.
const DIRECT_EMBEDDING_MAX: u32 = 10;

/// The unit-step embedding into the greedy 1-Tamari poset, the small example
/// above `11001100`, and the greedy order refining the ordinary one.
pub fn verify_embedding(m: u32, n_max: u32, limits: &Limits) -> Result<Report> {
    let mut report = Report::new("embedding", m);
    for n in 1..=n_max {
        let g = CoverGraph::build_with(m, n, Flavor::Greedy, limits)?;
        let o = CoverGraph::build_with(m, n, Flavor::Ordinary, limits)?;
        let mut covers_match = true;
        let mut stays_inside = true;
        for w in g.nodes() {
            let e = embed_unit_steps(w);
            let up = greedy_covers(&e);
            stays_inside &= up.iter().all(|c| ascents_divisible(c, m));
            covers_match &= sorted(up) == sorted(greedy_covers(w).iter().map(embed_unit_steps).collect());
        }
        report.assert(n, "embedded covers are the covers of the embedding", covers_match);
        report.assert(n, "covers of embedded paths keep ascents divisible by m", stays_inside);

        if m * n <= DIRECT_EMBEDDING_MAX {
            let big = CoverGraph::build_with(1, m * n, Flavor::Greedy, limits)?;
            let image: BTreeSet<DyckWord> = g.nodes().iter().map(embed_unit_steps).collect();
            let divisible: BTreeSet<DyckWord> =
                big.nodes().iter().filter(|w| ascents_divisible(w, m)).copied().collect();
            report.assert(n, "image is the set of paths with ascents divisible by m", image == divisible);
            let mut up_closed = true;
            for w in &divisible {
                up_closed &= big.upper_ideal(w)?.iter().all(|u| divisible.contains(u));
            }
            report.assert(n, "image is an upper ideal", up_closed);
            let mut order_ok = true;
            for v in g.nodes() {
                for w in g.nodes() {
                    order_ok &= g.le(v, w)? == big.le(&embed_unit_steps(v), &embed_unit_steps(w))?;
                }
            }
            report.assert(n, "embedding preserves and reflects the order", order_ok);
        }

        let mut refines = true;
        for r in g.intervals(false)? {
            refines &= o.le(&r.lower, &r.upper)?;
        }
        report.assert(n, "greedy intervals are ordinary intervals", refines);
        let mut pointwise = true;
        for r in o.intervals(false)? {
            pointwise &= r.lower.heights().iter().zip(r.upper.heights()).all(|(a, b)| *a <= b);
        }
        report.assert(n, "ordinary intervals lie pointwise below", pointwise);
    }
    if m == 2 {
        small_example(&mut report, limits)?;
    }
    Ok(report)
}

/// In greedy `D_{1,4}`, the upper ideal of `11001100` is a 3-chain equal to the image of `D_{2,2}`.
fn small_example(report: &mut Report, limits: &Limits) -> Result<()> {
    let big = CoverGraph::build_with(1, 4, Flavor::Greedy, limits)?;
    let base = DyckWord::parse(1, "11001100")?;
    let mut ideal = big.upper_ideal(&base)?;
    ideal.sort_by_key(DyckWord::area);
    let chain = ideal.windows(2).map(|p| big.le(&p[0], &p[1])).collect::<Result<Vec<_>>>()?;
    report.compare(4, "size of the upper ideal of 11001100", ideal.len(), 3);
    report.assert(4, "upper ideal of 11001100 is a chain", chain.into_iter().all(|b| b));
    let image: BTreeSet<DyckWord> = enumerate_paths_with(2, 2, limits)?.iter().map(embed_unit_steps).collect();
    report.assert(4, "upper ideal of 11001100 is the image of D_{2,2}", image == ideal.into_iter().collect());
    Ok(())
}

fn lift(p: &SparsePoly, c: u32) -> SparsePoly {
    let num = &(p * &SparsePoly::x()) - &(&p.at_one(Marker::X) * &SparsePoly::var(Marker::X, c));
    num.div_linear(Marker::X, Monomial::ONE).unwrap_or_else(|r| r)
}

/// `φ` and `ψ` on greedy intervals: round trips, statistic bookkeeping, both
/// directions of each bijection, the peak deletion property of covers, and the
/// resulting identities between the `J_i`, `K_i` and `I` histograms.
pub fn verify_bijections(m: u32, n_max: u32, limits: &Limits) -> Result<Report> {
    let mut report = Report::new("bijections", m);
    let fam = PosetFamily::build_with(m, n_max, Flavor::Greedy, limits)?;
    let ordinary = PosetFamily::build_with(m, n_max, Flavor::Ordinary, limits)?;
    let levels = m as usize + 1;
    let by_size: Vec<Vec<Interval>> = fam.graphs().iter().map(intervals_of).collect::<Result<_>>()?;

    // hist[n][i]: final-descent histograms of J_i (i = 0..=m+1) and K_i (index levels + 1 + i).
    let mut j_hist: Vec<Vec<BTreeMap<u32, u64>>> = vec![vec![BTreeMap::new(); levels + 1]; n_max as usize + 1];
    let mut k_hist: Vec<Vec<BTreeMap<u32, u64>>> = vec![vec![BTreeMap::new(); levels + 1]; n_max as usize + 1];

    for n in 1..=n_max {
        let ivs = &by_size[n as usize - 1];
        let mut phi_ok = true;
        let mut psi_ok = true;
        let mut k_counts = vec![0u64; levels + 1];
        let mut jk_counts = vec![0u64; levels + 1];
        for iv in ivs {
            let c = classify(&iv.lower)?;
            let d = iv.upper.final_descent();
            for h in &mut j_hist[n as usize][c.j_level..=levels] {
                *h.entry(d).or_insert(0) += 1;
            }
            if c.j_level > 0 {
                jk_counts[c.j_level] += 1;
                let (head, tail) = phi(iv)?;
                phi_ok &= classify(&head.lower)?.k_level == Some(c.j_level)
                    && fam.is_interval(&head)?
                    && fam.is_interval(&tail)?
                    && head.size() + tail.size() == n + 1
                    && d + m == head.upper.final_descent() + tail.upper.final_descent()
                    && phi_inverse(&head, &tail)? == *iv;
            }
            if let Some(i) = c.k_level {
                k_counts[i] += 1;
                *k_hist[n as usize][i].entry(d).or_insert(0) += 1;
                let img = psi(iv)?;
                let low = m + 1 - i as u32;
                psi_ok &= img.level == i
                    && classify(&img.base.lower)?.j_level < i
                    && fam.is_interval(&img.base)?
                    && img.base.size() + 1 == n
                    && (low..=img.base.upper.final_descent()).contains(&img.height)
                    && d == m + img.height
                    && psi_inverse(&img)? == *iv;
            }
        }
        report.assert(n, "phi round trip and bookkeeping", phi_ok);
        report.assert(n, "psi round trip and bookkeeping", psi_ok);

        if n >= 2 {
            let mut phi_onto = vec![0u64; levels + 1];
            let mut phi_into = true;
            for a in 2..=n {
                for head in &by_size[a as usize - 1] {
                    let Some(i) = classify(&head.lower)?.k_level else { continue };
                    for tail in &by_size[(n + 1 - a) as usize - 1] {
                        let iv = phi_inverse(head, tail)?;
                        phi_into &= fam.is_interval(&iv)?
                            && classify(&iv.lower)?.j_level == i
                            && phi(&iv)? == (*head, *tail);
                        phi_onto[i] += 1;
                    }
                }
            }
            report.assert(n, "phi inverse lands in J_i minus J_(i-1)", phi_into);
            report.compare(n, "phi pairs per level", format!("{:?}", &phi_onto[1..]), format!("{:?}", &jk_counts[1..]));

            let mut psi_onto = vec![0u64; levels + 1];
            let mut psi_into = true;
            for base in &by_size[n as usize - 2] {
                let j = classify(&base.lower)?.j_level;
                for i in (j + 1).max(1)..=levels {
                    for h in (m + 1 - i as u32)..=base.upper.final_descent() {
                        let img = PsiImage { level: i, base: *base, height: h };
                        let iv = psi_inverse(&img)?;
                        psi_into &= fam.is_interval(&iv)? && classify(&iv.lower)?.k_level == Some(i) && psi(&iv)? == img;
                        psi_onto[i] += 1;
                    }
                }
            }
            report.assert(n, "psi inverse lands in K_i", psi_into);
            report.compare(n, "psi pairs per level", format!("{:?}", &psi_onto[1..]), format!("{:?}", &k_counts[1..]));

            for (fam, flavor) in [(&fam, Flavor::Greedy), (&ordinary, Flavor::Ordinary)] {
                let (g, below) = (fam.graph(n)?, fam.graph(n - 1)?);
                let mut holds = true;
                for v in g.nodes() {
                    let v1 = delete_last_peak(v)?;
                    for w in covers(v, flavor) {
                        let w1 = delete_last_peak(&w)?;
                        holds &= v1 == w1 || covers(&v1, flavor).contains(&w1);
                    }
                    holds &= below.index_of(&v1).is_ok();
                }
                report.assert(n, format!("{} peak deletion maps covers to covers or equalities", flavor.name()), holds);
            }
        }
    }

    let xm = Monomial::var(Marker::X, m);
    for n in 1..=n_max as usize {
        for i in 1..=levels {
            let jump = &x_poly(&j_hist[n][i], 0) - &x_poly(&j_hist[n][i - 1], 0);
            let mut product = SparsePoly::zero();
            for s in 2..=n {
                product += &(&x_poly(&k_hist[s][i], 0) * &x_poly(&j_hist[n + 1 - s][levels], 0));
            }
            report.compare(n as u32, format!("x^m (J_{i} - J_{}) = K_{i} * I / t", i - 1), jump.shift(xm), product);
            let k = x_poly(&k_hist[n][i], 0);
            let from_j = if n >= 2 {
                lift(&x_poly(&j_hist[n - 1][i - 1], 0), m + 1 - i as u32).shift(xm)
            } else {
                SparsePoly::zero()
            };
            report.compare(n as u32, format!("K_{i} from J_{}", i - 1), k, from_j);
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_structure_suites_pass() {
        let limits = Limits::default();
        for m in 1..=2 {
            let r = verify_monoid(m, 4, &limits).unwrap();
            assert!(r.passed(), "{r}");
            let r = verify_embedding(m, 4, &limits).unwrap();
            assert!(r.passed(), "{r}");
            let r = verify_bijections(m, 4, &limits).unwrap();
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn three_chain_example_is_checked() {
        let r = verify_embedding(2, 2, &Limits::default()).unwrap();
        assert!(r.checks.iter().any(|c| c.key == "upper ideal of 11001100 is a chain" && c.pass));
    }

    #[test]
    fn products_split_in_both_places() {
        let v = DyckWord::parse(1, "110100").unwrap();
        let s = splits(&v).unwrap();
        assert!(!s.is_empty());
        for (a, b) in s {
            assert_eq!(star(&a, &b).unwrap(), v);
        }
    }
}
