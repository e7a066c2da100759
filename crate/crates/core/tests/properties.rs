use std::collections::BTreeSet;

use proptest::prelude::*;
use proptest::sample::Index;

use isg_core::frontend::corpus::generate_corpus;
use isg_core::frontend::parse::{parse_spec, print_spec, SemigroupSpec, SpecBody};
use isg_core::{CoverCandidate, InverseSemigroup};

fn instance() -> impl Strategy<Value = InverseSemigroup> {
    any::<u64>().prop_map(|seed| generate_corpus(seed, 1).pop().unwrap().semigroup)
}

fn pick(s: &InverseSemigroup, i: &Index) -> usize {
    i.index(s.len())
}

fn pick_idem(s: &InverseSemigroup, i: &Index) -> usize {
    s.idempotents()[i.index(s.idempotents().len())]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn natural_order_characterizations(s in instance(), a in any::<Index>(), b in any::<Index>()) {
        let (x, y) = (pick(&s, &a), pick(&s, &b));
        let by_definition = s.nat_leq(x, y);
        prop_assert_eq!(by_definition, x == s.mul(s.range_idem(x), y));
        prop_assert_eq!(by_definition, s.idempotents().iter().any(|&e| x == s.mul(y, e)));
    }

    #[test]
    fn natural_order_is_compatible(s in instance(), a in any::<Index>(), b in any::<Index>(), c in any::<Index>()) {
        let (x, y, u) = (pick(&s, &a), pick(&s, &b), pick(&s, &c));
        if s.nat_leq(x, y) {
            prop_assert!(s.nat_leq(s.mul(u, x), s.mul(u, y)));
            prop_assert!(s.nat_leq(s.mul(x, u), s.mul(y, u)));
            prop_assert!(s.nat_leq(s.star(x), s.star(y)));
        }
    }

    #[test]
    fn exy_depends_on_the_meet_of_x(s in instance(), xs in prop::collection::vec(any::<Index>(), 1..4), ys in prop::collection::vec(any::<Index>(), 0..3)) {
        let xs: Vec<usize> = xs.iter().map(|i| pick_idem(&s, i)).collect();
        let ys: Vec<usize> = ys.iter().map(|i| pick_idem(&s, i)).collect();
        let meet = xs.iter().skip(1).fold(xs[0], |m, &x| s.mul(m, x));
        prop_assert_eq!(s.exy_ideal(&xs, &ys).unwrap(), s.exy_ideal(&[meet], &ys).unwrap());
    }

    #[test]
    fn canonical_covers_cover(s in instance(), a in any::<Index>(), b in any::<Index>()) {
        let t = pick(&s, &a);
        let js = s.j_s(t);
        prop_assert!(s.is_cover(&s.canonical_cover(&js), &js));
        let e = pick_idem(&s, &b);
        let je = s.principal_ideal(e).unwrap();
        let expected: BTreeSet<usize> = if e == s.zero() { BTreeSet::new() } else { BTreeSet::from([e]) };
        let cover = s.canonical_cover(&je);
        prop_assert_eq!(cover.members(), &expected);
    }

    #[test]
    fn outer_covers_are_monotone(s in instance(), a in any::<Index>(), c in prop::collection::vec(any::<Index>(), 0..4), extra in any::<Index>()) {
        let j = s.principal_ideal(pick_idem(&s, &a)).unwrap();
        let small: Vec<usize> = c.iter().map(|i| pick_idem(&s, i)).collect();
        let mut large = small.clone();
        large.push(pick_idem(&s, &extra));
        let small = CoverCandidate::new(&s, small).unwrap();
        let large = CoverCandidate::new(&s, large).unwrap();
        if s.is_outer_cover(&small, &j) {
            prop_assert!(s.is_outer_cover(&large, &j));
        }
    }

    #[test]
    fn characters_round_trip(s in instance(), a in any::<Index>()) {
        for f in s.all_filters().unwrap() {
            let c = s.char_of(&f);
            prop_assert_eq!(s.filter_of(&c).unwrap(), f.clone());
            let t = pick(&s, &a);
            let by_filter = s.act_on_filter(t, &f).map(|g| s.char_of(&g));
            prop_assert_eq!(by_filter, s.beta_on_character(t, &c).ok());
        }
    }

    #[test]
    fn ultrafilters_have_basic_neighborhoods(s in instance(), xs in prop::collection::vec(any::<Index>(), 0..3), ys in prop::collection::vec(any::<Index>(), 0..3)) {
        for xi in s.ultrafilters().unwrap() {
            let inside: Vec<usize> = xs.iter().map(|i| xi.members()[i.index(xi.members().len())]).collect();
            let outside_pool: Vec<usize> = s.idempotents().iter().copied().filter(|&e| !xi.contains(e)).collect();
            let outside: Vec<usize> = if outside_pool.is_empty() {
                Vec::new()
            } else {
                ys.iter().map(|i| outside_pool[i.index(outside_pool.len())]).collect()
            };
            let e = s.basic_neighborhood(&xi, &inside, &outside).unwrap();
            prop_assert!(xi.contains(e));
            let around_e = s.basic_open(&[e], &[]);
            let target = s.basic_open(&inside, &outside);
            prop_assert!(around_e.iter().all(|f| target.contains(f)));
        }
    }

    #[test]
    fn tight_filters_are_the_ultrafilters(s in instance()) {
        let tight: Vec<usize> = s.tight_spectrum().unwrap().points().iter().map(|f| f.min()).collect();
        let ultra: Vec<usize> = s.ultrafilters().unwrap().iter().map(|f| f.min()).collect();
        prop_assert_eq!(tight, ultra);
    }
}

fn name() -> impl Strategy<Value = String> {
    "[A-Za-z][A-Za-z0-9_+]{0,8}"
}

fn spec() -> impl Strategy<Value = SemigroupSpec> {
    let table = (1usize..5).prop_flat_map(|n| {
        (Just(n), 0..n, prop::collection::vec(prop::collection::vec(0..n, n), n))
    });
    let gens = (1usize..5).prop_flat_map(|d| {
        (Just(d), prop::collection::vec(prop::collection::vec(prop::option::of(0..d), d), 0..4))
    });
    prop_oneof![
        (name(), table).prop_map(|(name, (n, zero, rows))| SemigroupSpec { name, body: SpecBody::Table { n, zero, rows } }),
        (name(), gens).prop_map(|(name, (degree, maps))| SemigroupSpec {
            name,
            body: SpecBody::Generators {
                degree,
                gens: maps.into_iter().enumerate().map(|(i, m)| (format!("g{i}"), m)).collect(),
            },
        }),
    ]
}

proptest! {
    #[test]
    fn printed_specs_parse_back(spec in spec()) {
        prop_assert_eq!(parse_spec(&print_spec(&spec)).unwrap(), spec);
    }
}
