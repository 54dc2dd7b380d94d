use proptest::prelude::*;
use proptest::sample::select;
use tamari_core::closedform::{greedy_count, ordinary_count, Profile};
use tamari_core::identities::{nabla, r_poly, reversed};
use tamari_core::paths::{
    compose, decompose, delete_last_peak, enumerate_paths, factorize, insert_peak, star, star_fold,
};
use tamari_core::posets::{covers, factorize_interval, interval_star, Interval};
use tamari_core::{CoverGraph, DyckWord, Flavor, Marker, Monomial, Rational, Report, SparsePoly, TSeries};

fn paths(m: u32, max_n: u32) -> impl Strategy<Value = DyckWord> {
    (1..=max_n).prop_flat_map(move |n| select(enumerate_paths(m, n).unwrap()))
}

fn path_triple() -> impl Strategy<Value = (DyckWord, DyckWord, DyckWord)> {
    (1u32..=3).prop_flat_map(|m| (paths(m, 4), paths(m, 4), paths(m, 4)))
}

fn poly() -> impl Strategy<Value = SparsePoly> {
    prop::collection::vec((-5i64..=5, 1i64..=3, 0u32..3, 0u32..3, 0u32..3), 0..5).prop_map(|terms| {
        let mut p = SparsePoly::zero();
        for (num, den, x, z, u) in terms {
            let mono = Monomial::var(Marker::X, x).with_exp(Marker::Z, z).with_exp(Marker::U, u);
            p.add_term(mono, Rational::new(num.into(), den.into()));
        }
        p
    })
}

fn series(order: usize) -> impl Strategy<Value = TSeries> {
    prop::collection::vec(poly(), order).prop_map(TSeries::from_coeffs)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn star_is_associative((a, b, c) in path_triple()) {
        let left = star(&star(&a, &b).unwrap(), &c).unwrap();
        let right = star(&a, &star(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn factorization_is_free((a, b, _) in path_triple()) {
        let w = star(&a, &b).unwrap();
        prop_assert_eq!(star_fold(&factorize(&w).unwrap()).unwrap(), w);
        let mut expected: Vec<DyckWord> = factorize(&a).unwrap().into_iter().filter(|g| !g.is_unit()).collect();
        expected.extend(factorize(&b).unwrap().into_iter().filter(|g| !g.is_unit()));
        if expected.is_empty() {
            expected.push(DyckWord::unit(a.m()));
        }
        prop_assert_eq!(factorize(&w).unwrap(), expected);
    }

    #[test]
    fn decompose_compose_inverse(w in (1u32..=3).prop_flat_map(|m| paths(m, 5))) {
        let parts = decompose(&w).unwrap();
        prop_assert_eq!(parts.len(), w.m() as usize + 1);
        prop_assert_eq!(compose(w.m(), &parts).unwrap(), w);
    }

    #[test]
    fn peak_insertion_inverts_deletion(w in (1u32..=3).prop_flat_map(|m| paths(m, 5)), h in 0u32..8) {
        if h <= w.final_descent() {
            let bigger = insert_peak(&w, h).unwrap();
            prop_assert_eq!(delete_last_peak(&bigger).unwrap(), w);
            prop_assert_eq!(bigger.size(), w.size() + 1);
        } else {
            prop_assert!(insert_peak(&w, h).is_err());
        }
    }

    #[test]
    fn covers_increase_area(w in (1u32..=3).prop_flat_map(|m| paths(m, 5))) {
        for flavor in [Flavor::Greedy, Flavor::Ordinary] {
            for c in covers(&w, flavor) {
                prop_assert!(c.area() > w.area());
                prop_assert_eq!(c.size(), w.size());
            }
        }
    }

    #[test]
    fn interval_products_factorize_back((m, n1, n2, i, j) in (1u32..=2, 2u32..=3, 2u32..=3, any::<prop::sample::Index>(), any::<prop::sample::Index>())) {
        let ivs = |n| -> Vec<Interval> {
            CoverGraph::build(m, n, Flavor::Greedy).unwrap().intervals(false).unwrap().map(|r| Interval::new(r.lower, r.upper)).collect()
        };
        let (a, b) = (ivs(n1), ivs(n2));
        let (x, y) = (*i.get(&a), *j.get(&b));
        let p = interval_star(&x, &y).unwrap();
        let f = factorize_interval(&p).unwrap();
        let back = f[1..].iter().try_fold(f[0], |acc, g| interval_star(&acc, g)).unwrap();
        prop_assert_eq!(back, p);
        let mut expected = factorize_interval(&x).unwrap();
        expected.extend(factorize_interval(&y).unwrap());
        prop_assert_eq!(f, expected);
    }

    #[test]
    fn poly_display_parses_back(p in poly()) {
        let back: SparsePoly = p.to_string().parse().unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn poly_ring_laws(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn series_inverse(s in series(5)) {
        let mut coeffs = s.into_coeffs();
        coeffs[0] = SparsePoly::one();
        let s = TSeries::from_coeffs(coeffs);
        prop_assert_eq!(&s * &s.inverse(), TSeries::one(5));
    }

    #[test]
    fn series_json_round_trip(s in series(4)) {
        prop_assert_eq!(TSeries::from_json(&s.to_json()).unwrap(), s);
    }

    #[test]
    fn reversed_identity_holds_for_b_up_to_2(m in 1u32..=6, a in 0i64..=6, b in 1i64..=2, l in -1i64..=6) {
        let shift = (m as i64 + a + b) as u32;
        let lhs = nabla(m, &reversed(&r_poly(a, l), shift));
        let rhs = if a + b >= 2 { reversed(&r_poly(a + b - 2, l + 1), shift) } else { SparsePoly::zero() };
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn counts_are_ordered(m in 1u32..=6, n in 1u32..=30) {
        prop_assert!(greedy_count(m, n).unwrap() <= ordinary_count(m, n).unwrap());
    }

    #[test]
    fn profile_keys_round_trip(parts in prop::collection::vec(1u32..6, 0..6)) {
        let p = Profile::from_parts(&parts);
        prop_assert_eq!(p.key().parse::<Profile>().unwrap(), p.clone());
        prop_assert_eq!(p.size(), parts.iter().sum::<u32>());
    }

    #[test]
    fn parsers_never_panic(s in "\\PC{0,24}") {
        let _ = s.parse::<SparsePoly>();
        let _ = s.parse::<DyckWord>();
        let _ = DyckWord::parse(2, &s);
        let _ = s.parse::<Profile>();
        let _ = Report::from_json(&s);
        if let Ok(v) = serde_json::from_str::<serde_json::Value>(&s) {
            let _ = TSeries::from_json(&v);
        }
    }

    #[test]
    fn word_parser_accepts_exactly_dyck_words(bits in prop::collection::vec(any::<bool>(), 0..16), m in 1u32..=3) {
        let s: String = bits.iter().map(|&b| if b { '1' } else { '0' }).collect();
        let ok = tamari_core::paths::is_valid(m, &bits);
        prop_assert_eq!(DyckWord::parse(m, &s).is_ok(), ok);
        if let Ok(w) = DyckWord::parse(m, &s) {
            prop_assert_eq!(w.to_string(), s);
        }
    }
}
