use std::collections::HashSet;

use nilq::exactla::{AbelianInvariants, Int};
use nilq::permgrp::*;
use rand::SeedableRng;

fn p(deg: usize, s: &str) -> Permutation {
    Permutation::parse(deg, s).unwrap()
}

fn small_groups() -> Vec<(String, PermGroup)> {
    let mut v = small_catalog();
    v.push(("Alt5".into(), alternating(5)));
    v.push(("Sym5".into(), symmetric(5)));
    v.push(("PSL(2,7)".into(), psl2(7).unwrap()));
    v.push(("PSL(2,5)".into(), psl2(5).unwrap()));
    v.push(("C2xSym3".into(), direct_product(&cyclic(2), &symmetric(3))));
    v
}

#[test]
fn chain_order_matches_closure() {
    for (name, g) in small_groups() {
        let n = g.closure_elements().len();
        assert_eq!(g.order(), Int::from(n), "{name}");
        assert_eq!(g.elements().len(), n, "{name}");
        let distinct: HashSet<Permutation> = g.elements().into_iter().collect();
        assert_eq!(distinct.len(), n, "{name}");
    }
}

#[test]
fn membership_agrees_with_enumeration() {
    let s4 = symmetric(4);
    let a4 = alternating(4);
    let d8 = dihedral(4);
    let a4_elems = a4.closure_elements();
    let d8_elems = d8.closure_elements();
    for x in s4.elements() {
        assert_eq!(a4.contains(&x), a4_elems.contains(&x));
        assert_eq!(d8.contains(&x), d8_elems.contains(&x));
    }
}

#[test]
fn symmetric_orders_are_factorials() {
    let mut f = 1u64;
    for n in 1..=8 {
        f *= n as u64;
        assert_eq!(symmetric(n).order(), Int::from(f));
        if n >= 2 {
            assert_eq!(alternating(n).order(), Int::from(f / 2));
        }
    }
}

#[test]
fn psl2_orders_follow_the_formula() {
    for q in [
        3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61,
    ] {
        let g = psl2(q).unwrap();
        assert_eq!(g.degree() as u64, q + 1);
        assert_eq!(g.order(), Int::from(q * (q * q - 1) / 2), "q = {q}");
    }
    assert_eq!(psl2(29).unwrap().order(), Int::from(12180));
    assert!(psl2(2).is_err());
    assert!(psl2(9).is_err());
}

#[test]
fn trivial_group() {
    let g = PermGroup::new(3, vec![Permutation::identity(3)]).unwrap();
    assert_eq!(g.order(), Int::ONE);
    assert_eq!(conjugacy_classes(&g).unwrap().len(), 1);
    assert_eq!(subgroups_up_to_conjugacy(&g, 0).unwrap().classes.len(), 1);
}

#[test]
fn direct_products() {
    let g = direct_product(&cyclic(2), &cyclic(3));
    assert_eq!(g.order(), Int::from(6));
    assert!(g.is_abelian());
    let p = psl2(29).unwrap();
    assert_eq!(direct_product(&p, &p).order(), Int::from(12180i64 * 12180));
}

#[test]
fn sym3_classes() {
    let c = conjugacy_classes(&symmetric(3)).unwrap();
    let mut sizes = c.class_sizes.clone();
    sizes.sort();
    assert_eq!(sizes, vec![1, 2, 3]);
    assert_eq!(c.class_sizes[0], 1);
    for (s, z) in c.class_sizes.iter().zip(&c.centralizer_orders) {
        assert_eq!(s * z, 6);
    }
}

#[test]
fn psl2_29_classes_sum_to_order() {
    let c = conjugacy_classes(&psl2(29).unwrap()).unwrap();
    assert_eq!(c.group_order(), 12180);
    // (q+5)/2 classes for q ≡ 1 mod 4
    assert_eq!(c.len(), 17);
}

#[test]
fn coset_actions() {
    let s3 = symmetric(3);
    let (act, chi) = coset_action(&s3, &s3).unwrap();
    assert_eq!(act.degree(), 1);
    assert!(chi.values.iter().all(|&v| v == 1));

    let triv = PermGroup::trivial(3);
    let (act, chi) = coset_action(&s3, &triv).unwrap();
    assert_eq!(act.degree(), 6);
    assert_eq!(act.order(), Int::from(6));
    assert_eq!(chi.values, vec![6, 0, 0]);

    let not_sub = PermGroup::new(3, vec![p(3, "(1 2)")]).unwrap();
    assert!(coset_action(&alternating(3), &not_sub).is_err());
}

#[test]
fn coset_action_kernel_is_core() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    for (name, g) in small_groups() {
        if g.order() > Int::from(360) {
            continue;
        }
        let classes = conjugacy_classes(&g).unwrap();
        for _ in 0..3 {
            let h = g.subgroup(vec![g.random_element(&mut rng)]);
            let space = CosetSpace::new(&g, &h, DEFAULT_INDEX_BOUND).unwrap();
            let act = action_group(&space);
            assert!(act.is_transitive(), "{name}");
            // core = elements of H whose conjugates all lie in H
            let core = g
                .elements()
                .iter()
                .filter(|x| space.fixed_count(&h, x) as usize == space.index())
                .count();
            let expected = g.order().div_exact(&Int::from(core));
            assert_eq!(act.order(), expected, "{name}");
            let chi = PermChar::of_subgroup(&classes, &space, &h);
            assert_eq!(chi.values[0] as usize, space.index());
            assert_eq!(chi.orbit_count(&classes), 1);
        }
    }
}

#[test]
fn klein_fours_in_sym6() {
    let g = symmetric(6);
    let h1 = g.subgroup(vec![p(6, "(1 2)(3 4)"), p(6, "(1 3)(2 4)")]);
    let h2 = g.subgroup(vec![p(6, "(1 2)(3 4)"), p(6, "(1 2)(5 6)")]);
    assert_eq!(h1.orbit_length_multiset(), vec![1, 1, 4]);
    assert_eq!(h2.orbit_length_multiset(), vec![2, 2, 2]);
    assert!(is_conjugate_subgroups(&g, &h1, &h2).unwrap().is_none());
    assert_eq!(
        is_conjugate_subgroups(&g, &h1, &h1).unwrap(),
        Some(g.identity())
    );
}

#[test]
fn conjugates_are_found() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
    let g = symmetric(6);
    for _ in 0..10 {
        let h = g.subgroup(vec![g.random_element(&mut rng), g.random_element(&mut rng)]);
        let x = g.random_element(&mut rng);
        let hx = g.subgroup(h.generators().iter().map(|y| y.conjugate(&x)).collect());
        let w = is_conjugate_subgroups(&g, &h, &hx)
            .unwrap()
            .expect("conjugate");
        let hw = g.subgroup(h.generators().iter().map(|y| y.conjugate(&w)).collect());
        assert!(hw.same_group(&hx));
    }
}

#[test]
fn subgroup_class_counts() {
    let count = |g: &PermGroup| subgroups_up_to_conjugacy(g, 0).unwrap();
    let s3 = count(&symmetric(3));
    assert!(s3.complete);
    let mut orders: Vec<Int> = s3.classes.iter().map(|h| h.order()).collect();
    orders.sort();
    assert_eq!(orders, [1, 2, 3, 6].map(Int::from).to_vec());
    assert_eq!(count(&quaternion()).classes.len(), 6);
    assert_eq!(count(&symmetric(4)).classes.len(), 11);
    let a5 = count(&alternating(5));
    assert!(a5.complete);
    assert_eq!(a5.classes.len(), 9);
    let l27 = count(&psl2(7).unwrap());
    assert!(l27.complete);
    assert_eq!(l27.classes.len(), 15);
    assert_eq!(count(&symmetric(5)).classes.len(), 19);
}

#[test]
fn subgroup_classes_match_brute_force() {
    for (name, g) in small_groups() {
        if g.order() > Int::from(60) {
            continue;
        }
        let fast = subgroups_up_to_conjugacy(&g, 0).unwrap();
        let slow = subgroups_brute_force(&g).unwrap();
        assert_eq!(fast.classes.len(), slow.len(), "{name}");
        assert!(fast.complete, "{name}");
    }
}

#[test]
fn sym6_subgroup_classes() {
    let r = subgroups_up_to_conjugacy(&symmetric(6), 0).unwrap();
    assert_eq!(r.classes.len(), 56);
}

#[test]
fn abelianizations() {
    assert!(alternating(5).abelianization_finite().is_trivial());
    assert_eq!(alternating(5).derived_subgroup().order(), Int::from(60));
    assert_eq!(
        cyclic(12).abelianization_finite(),
        AbelianInvariants::new(0, vec![Int::from(12)])
    );
    assert_eq!(
        dihedral(4).abelianization_finite(),
        AbelianInvariants::new(0, vec![Int::from(2), Int::from(2)])
    );
    assert_eq!(
        symmetric(5).abelianization_finite(),
        AbelianInvariants::new(0, vec![Int::from(2)])
    );
    assert_eq!(
        quaternion().abelianization_finite(),
        AbelianInvariants::new(0, vec![Int::from(2), Int::from(2)])
    );
}

#[test]
fn lower_central_series_of_small_groups() {
    let d16 = dihedral(8);
    let orders: Vec<Int> = d16
        .lower_central_series()
        .iter()
        .map(|h| h.order())
        .collect();
    assert_eq!(orders, [16, 4, 2, 1].map(Int::from).to_vec());
    assert!(d16.is_nilpotent());
    assert!(!symmetric(3).is_nilpotent());
    let s3: Vec<Int> = symmetric(3)
        .lower_central_series()
        .iter()
        .map(|h| h.order())
        .collect();
    assert_eq!(s3, [6, 3].map(Int::from).to_vec());
}

#[test]
fn fano_stabilizers() {
    let (omega, pt, line) = fano_plane();
    assert_eq!(omega.order(), Int::from(168));
    assert_eq!(pt.order(), Int::from(24));
    assert_eq!(line.order(), Int::from(24));
    assert!(is_conjugate_subgroups(&omega, &pt, &line)
        .unwrap()
        .is_none());
}

#[test]
fn dicyclic_and_semidirect() {
    let q8 = quaternion();
    assert_eq!(q8.order(), Int::from(8));
    assert_eq!(q8.element_order_multiset(), vec![1, 2, 4, 4, 4, 4, 4, 4]);
    assert_eq!(dicyclic(3).order(), Int::from(12));
    let sd = semidirect_cyclic(8, 2, 3).unwrap();
    assert_eq!(sd.order(), Int::from(16));
    assert!(!sd.is_abelian());
    assert!(semidirect_cyclic(8, 2, 2).is_err());
}

#[test]
fn text_format_round_trip() {
    let g = PermGroup::parse("degree 5\n(1 2 3)(4 5)\n# comment\n()\n").unwrap();
    assert_eq!(g.generators().len(), 2);
    let h = PermGroup::parse(&g.to_text()).unwrap();
    assert_eq!(g.generators(), h.generators());
    assert!(PermGroup::parse("deg 3\n").is_err());
    assert!(PermGroup::parse("degree 3\n(1 4)\n").is_err());
}

#[test]
fn scott_pair_properties() {
    let (omega, l0, l1) = scott_pair().unwrap();
    assert_eq!(omega.order(), Int::from(12180));
    for l in [&l0, &l1] {
        assert_eq!(l.order(), Int::from(60));
        assert!(l.is_subgroup_of(&omega));
        // the only perfect group of order 60 is Alt(5)
        assert!(l.is_perfect());
        assert_eq!(omega.order().div_exact(&l.order()), Int::from(203));
    }
    assert!(is_conjugate_subgroups(&omega, &l0, &l1).unwrap().is_none());
    let (_, m0, m1) = scott_pair().unwrap();
    assert_eq!(l0.generators(), m0.generators());
    assert_eq!(l1.generators(), m1.generators());
}
