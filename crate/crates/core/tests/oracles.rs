mod common;

use std::collections::BTreeSet;

use common::{OracleGroupoid, Set};
use isg_core::criteria::{
    hausdorff_criterion, locally_contracting_criterion, minimal_criterion, top_free_criterion,
};
use isg_core::{build_germ_groupoid, standard_action, InverseSemigroup};

fn members(f: &isg_core::Filter) -> Set {
    f.members().iter().copied().collect()
}

fn oracle_groupoid(s: &InverseSemigroup) -> OracleGroupoid {
    let points = common::tight_filters(s);
    common::germ_groupoid(s, &points)
}

/// Every `J_s` has some subset covering it, found by enumeration.
fn hausdorff_oracle(s: &InverseSemigroup) -> bool {
    let idems = common::idempotents(s);
    (0..s.len()).all(|t| {
        let js: Set = idems.iter().copied().filter(|&e| s.mul(t, e) == e).collect();
        let items: Vec<usize> = js.iter().copied().collect();
        common::subsets(&items).any(|z| common::is_cover(s, &z, &js))
    })
}

struct Truth {
    order: usize,
    idempotents: usize,
    spectrum: usize,
    arrows: usize,
    flags: [bool; 4],
}

fn truth(s: &InverseSemigroup) -> Truth {
    let g = oracle_groupoid(s);
    Truth {
        order: s.len(),
        idempotents: common::idempotents(s).len(),
        spectrum: g.points.len(),
        arrows: g.arrows(),
        flags: [hausdorff_oracle(s), g.is_principal(), g.is_minimal(), g.is_locally_contracting()],
    }
}

#[test]
fn fixture_ground_truth() {
    let expected = [
        ("I2", 7, 4, 2, 4, [true, true, true, false]),
        ("B2", 5, 3, 2, 4, [true, true, true, false]),
        ("Z2z", 3, 2, 1, 2, [true, false, true, false]),
        ("E4", 4, 4, 2, 2, [true, true, false, false]),
    ];
    for ((name, s), (ename, order, idems, spectrum, arrows, flags)) in common::fixtures().into_iter().zip(expected) {
        assert_eq!(name, ename);
        let t = truth(&s);
        assert_eq!(
            (t.order, t.idempotents, t.spectrum, t.arrows, t.flags),
            (order, idems, spectrum, arrows, flags),
            "oracle values for {name}"
        );
        let r = isg_core::full_report(&s).unwrap();
        let f = &r.cstar_flags;
        assert_eq!([f.a, f.b, f.c, f.d], flags, "library flags for {name}");
        assert_eq!((r.spectrum_size, r.arrows), (spectrum, arrows), "library sizes for {name}");
    }
}

#[test]
fn pair_groupoids_have_one_arrow_per_ordered_pair() {
    for s in [isg_core::frontend::fixtures::i2(), isg_core::frontend::fixtures::b2()] {
        let g = oracle_groupoid(&s);
        let pairs: BTreeSet<(usize, usize)> = (0..g.arrows()).map(|a| (g.src[a], g.rng[a])).collect();
        assert_eq!(pairs.len(), 4);
        assert_eq!(g.arrows(), 4);
    }
}

#[test]
fn filters_match_subset_scan() {
    for (name, s) in common::instances(11, 60) {
        if common::idempotents(&s).len() > 12 {
            continue;
        }
        let lib: Vec<Set> = s.all_filters().unwrap().iter().map(members).collect();
        let mut brute = common::filters(&s);
        let mut lib_sorted = lib;
        lib_sorted.sort();
        brute.sort();
        assert_eq!(lib_sorted, brute, "filters of {name}");
        let ultra: Vec<Set> = s.ultrafilters().unwrap().iter().map(members).collect();
        let mut brute_ultra = common::ultrafilters(&s);
        brute_ultra.sort();
        let mut ultra_sorted = ultra;
        ultra_sorted.sort();
        assert_eq!(ultra_sorted, brute_ultra, "ultrafilters of {name}");
    }
}

#[test]
fn standard_action_matches_filter_images() {
    for (name, s) in common::instances(12, 40) {
        let spec = s.tight_spectrum().unwrap();
        let theta = standard_action(&s, &spec).unwrap();
        for x in theta.points() {
            let xi = members(spec.point(x));
            for t in s.elements() {
                let expected = common::act(&s, t, &xi);
                let got = theta.apply(t, x).map(|y| members(spec.point(y)));
                assert_eq!(got, expected, "{name}: element {t} at point {x}");
            }
        }
    }
}

#[test]
fn germ_classes_match_the_relation() {
    for (name, s) in common::instances(13, 40) {
        let spec = s.tight_spectrum().unwrap();
        let theta = standard_action(&s, &spec).unwrap();
        let omega = s.elements().map(|t| theta.domain(t).len()).sum::<usize>();
        if omega > 150 {
            continue;
        }
        let g = build_germ_groupoid(&theta).unwrap();
        let points: Vec<Set> = spec.points().iter().map(members).collect();
        let o = common::germ_groupoid(&s, &points);
        assert_eq!(g.len(), o.arrows(), "arrow count of {name}");
        for (&(t, x), &c) in &o.class {
            for (&(u, y), &d) in &o.class {
                assert_eq!(g.germ(t, x) == g.germ(u, y), c == d, "{name}: ({t},{x}) vs ({u},{y})");
            }
        }
        let lib_units: BTreeSet<usize> = g.units();
        let oracle_units: BTreeSet<usize> = o.units.iter().map(|&c| {
            let (&(t, x), _) = o.class.iter().find(|(_, &d)| d == c).unwrap();
            g.germ(t, x).unwrap()
        }).collect();
        assert_eq!(lib_units, oracle_units, "units of {name}");
    }
}

#[test]
fn criteria_match_oracle_groupoid() {
    for (name, s) in common::instances(14, 40) {
        if common::idempotents(&s).len() > 8 {
            continue;
        }
        let o = oracle_groupoid(&s);
        assert!(hausdorff_criterion(&s).holds, "{name}");
        assert_eq!(top_free_criterion(&s).holds, o.is_principal(), "essential principality of {name}");
        assert_eq!(minimal_criterion(&s).holds, o.is_minimal(), "minimality of {name}");
        if o.arrows() <= 10 {
            assert!(!o.is_locally_contracting(), "{name}");
        }
        assert!(!locally_contracting_criterion(&s).holds, "{name}");
    }
}

#[test]
fn e4_tightness_witness_and_basic_opens() {
    let s = isg_core::frontend::fixtures::e4();
    let top = s.filter_from_min(3).unwrap();
    assert!(!common::is_tight_literal(&s, &members(&top)));
    assert!(!s.is_tight_filter(&top));
    let mins = |fs: Vec<isg_core::Filter>| fs.iter().map(|f| f.min()).collect::<Vec<_>>();
    assert_eq!(mins(s.basic_open(&[3], &[1])), vec![2, 3]);
    assert!(s.basic_open(&[1], &[3]).is_empty());
    assert_eq!(s.basic_open(&[], &[]).len(), 3);
}

#[test]
fn exy_matches_definition() {
    for (name, s) in common::instances(15, 20) {
        let idems = common::idempotents(&s);
        if idems.len() > 6 {
            continue;
        }
        for xs in common::subsets(&idems) {
            for ys in common::subsets(&idems) {
                let xv: Vec<usize> = xs.iter().copied().collect();
                let yv: Vec<usize> = ys.iter().copied().collect();
                let lib = s.exy_ideal(&xv, &yv).unwrap();
                assert_eq!(lib.members(), &common::exy(&s, &xs, &ys), "{name}: X={xs:?} Y={ys:?}");
            }
        }
    }
}
