use nilq::exactla::{AbelianInvariants, Int};
use nilq::fpgrp::{FinitePresentation, FpHom};
use nilq::harness::*;
use nilq::nilquot::IsoVerdict;
use nilq::permgrp::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn pres(s: &str) -> FinitePresentation {
    FinitePresentation::parse(s).unwrap()
}

fn s6_pair() -> (PermGroup, PermGroup, PermGroup) {
    let s6 = symmetric(6);
    let p = |s: &str| Permutation::parse(6, s).unwrap();
    let g = s6.subgroup(vec![p("(1 2)(3 4)"), p("(1 3)(2 4)")]);
    let l = s6.subgroup(vec![p("(1 2)(3 4)"), p("(1 2)(5 6)")]);
    (s6, g, l)
}

fn conjugate(h: &PermGroup, x: &Permutation) -> PermGroup {
    PermGroup::new(
        h.degree(),
        h.generators().iter().map(|g| g.conjugate(x)).collect(),
    )
    .unwrap()
}

fn weight_five_hom() -> FpHom {
    let src = FinitePresentation::free(2);
    let tgt = pres("gens a b\n[[[[a,b],b],b],b]\n");
    FpHom::new(src.clone(), tgt, src.generators()).unwrap()
}

#[test]
fn stallings_identity_on_free_group() {
    let f2 = FinitePresentation::free(2);
    let r = verify_stallings(&FpHom::identity(&f2), 4, None).unwrap();
    assert_eq!(r.verdict, Verdict::ConsistentWithTheorem);
    assert_eq!(r.layers.len(), 4);
    assert!(r.layers.iter().all(|l| l.induced_isomorphism == Some(true)));
    let ranks: Vec<usize> = r.layers.iter().map(|l| l.left.free_rank).collect();
    assert_eq!(ranks, vec![2, 1, 2, 3]);
}

#[test]
fn stallings_weight_five_relator() {
    let r = verify_stallings(&weight_five_hom(), 4, None).unwrap();
    assert_eq!(
        r.hypothesis_status("H_1 isomorphism"),
        Some(Status::Verified)
    );
    assert_eq!(
        r.hypothesis_status("H_2 surjectivity"),
        Some(Status::Assumed)
    );
    assert!(r
        .layers
        .iter()
        .all(|l| l.induced_isomorphism == Some(true) && l.left == l.right));
    assert_eq!(r.verdict, Verdict::ConsistentWithTheorem);

    // at class 5 the relator is visible; with H_2 only assumed this is not a counterexample
    let r = verify_stallings(&weight_five_hom(), 5, None).unwrap();
    assert_eq!(r.layers[4].induced_isomorphism, Some(false));
    assert_eq!(r.verdict, Verdict::Inconclusive);
}

#[test]
fn stallings_square_map_fails_on_h1() {
    let f2 = FinitePresentation::free(2);
    let imgs = vec![f2.parse_word("a^2").unwrap(), f2.parse_word("b").unwrap()];
    let r = verify_stallings(&FpHom::new(f2.clone(), f2, imgs).unwrap(), 2, None).unwrap();
    assert_eq!(r.hypothesis_status("H_1 isomorphism"), Some(Status::Failed));
    assert!(r.layers.is_empty());
    assert_eq!(r.verdict, Verdict::HypothesisFailed);
}

#[test]
fn stallings_finite_groups_decide_h2() {
    let c6 = pres("gens a\na^6\n");
    let r = verify_stallings(&FpHom::identity(&c6), 3, None).unwrap();
    assert_eq!(
        r.hypothesis_status("H_2 surjectivity"),
        Some(Status::Verified)
    );
    assert_eq!(r.verdict, Verdict::ConsistentWithTheorem);

    // F_2 → Z^2 is an H_1 isomorphism but misses H_2(Z^2) = Z, and N_2 differs
    let z2 = pres("gens a b\n[a,b]\n");
    let f2 = FinitePresentation::free(2);
    let r = verify_stallings(
        &FpHom::new(f2.clone(), z2, f2.generators()).unwrap(),
        3,
        None,
    )
    .unwrap();
    assert_eq!(
        r.hypothesis_status("H_1 isomorphism"),
        Some(Status::Verified)
    );
    assert_eq!(r.layers[1].induced_isomorphism, Some(false));
    assert_ne!(r.verdict, Verdict::CounterexampleCandidate);
}

#[test]
fn diamond_on_equal_subgroups() {
    let g = symmetric(4);
    let h = g.subgroup(vec![Permutation::parse(4, "(1 2 3 4)").unwrap()]);
    let r = verify_diamond(&g, &h, &h, 3, &DiamondOptions::default()).unwrap();
    assert_eq!(r.verdict, Verdict::ConsistentWithTheorem);
    assert_eq!(
        r.hypothesis_status("Z-coset equivalence"),
        Some(Status::Verified)
    );
    assert!(r.layers.iter().all(|l| l.cross_check == Some(true)));
}

#[test]
fn diamond_on_the_s6_pair() {
    let (o, g, l) = s6_pair();
    let r = verify_diamond(&o, &g, &l, 3, &DiamondOptions::default()).unwrap();
    let v4 = AbelianInvariants::new(0, vec![Int::from(2), Int::from(2)]);
    assert_eq!(r.layers[0].left, v4);
    assert_eq!(r.layers[0].right, v4);
    assert!(r.layers[1..]
        .iter()
        .all(|l| l.left.is_trivial() && l.right.is_trivial()));
    assert!(r
        .layers
        .iter()
        .all(|l| matches!(l.isomorphism, Some(IsoVerdict::Yes { .. }))));
    assert_eq!(
        r.hypothesis_status("Gassmann equivalence"),
        Some(Status::Verified)
    );
    assert_eq!(
        r.hypothesis_status("Z-coset equivalence"),
        Some(Status::Failed)
    );
    assert_eq!(r.verdict, Verdict::ConsistentWithTheorem);
}

#[test]
fn diamond_on_the_scott_pair() {
    let (o, a, b) = scott_pair().unwrap();
    let r = verify_diamond(&o, &a, &b, 4, &DiamondOptions::default()).unwrap();
    assert!(r
        .layers
        .iter()
        .all(|l| l.left.is_trivial() && l.right.is_trivial()));
    assert_eq!(
        r.hypothesis_status("Gassmann equivalence"),
        Some(Status::Verified)
    );
    assert_eq!(
        r.hypothesis_status("Z-coset equivalence"),
        Some(Status::Verified)
    );
    assert_eq!(r.verdict, Verdict::ConsistentWithTheorem);
}

#[test]
fn diamond_on_random_conjugate_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let catalog: Vec<_> = small_catalog()
        .into_iter()
        .filter(|(_, g)| g.order() <= Int::from(120))
        .collect();
    for _ in 0..20 {
        let (name, g) = &catalog[rng.gen_range(0..catalog.len())];
        let subs = subgroups_up_to_conjugacy(g, 0).unwrap().classes;
        let h = &subs[rng.gen_range(0..subs.len())];
        let l = conjugate(h, &g.random_element(&mut rng));
        let r = verify_diamond(g, h, &l, 3, &DiamondOptions::default()).unwrap();
        assert_eq!(
            r.verdict,
            Verdict::ConsistentWithTheorem,
            "{name}\n{}",
            r.summary()
        );
        assert!(r.layers.iter().all(|l| l.cross_check == Some(true)));
    }
}

#[test]
fn diamond_rejects_non_subgroups() {
    let g = symmetric(3);
    let h = cyclic(3);
    let k = symmetric(4);
    assert!(matches!(
        verify_diamond(&g, &h, &k, 2, &DiamondOptions::default()),
        Err(HarnessError::NotASubgroup)
    ));
}

#[test]
fn rigidity_for_conjugate_nilpotent_subgroups() {
    let g = symmetric(4);
    let d8 = g.subgroup(vec![
        Permutation::parse(4, "(1 2 3 4)").unwrap(),
        Permutation::parse(4, "(1 3)").unwrap(),
    ]);
    let other = conjugate(&d8, &Permutation::parse(4, "(1 2)").unwrap());
    let r = corollary_rig_check(&g, &d8, &other, &DiamondOptions::default()).unwrap();
    assert_eq!(r.verdict, Verdict::ConsistentWithTheorem);
    assert_eq!(r.facts["isomorphic"], "yes");
}

#[test]
fn rigidity_on_the_s6_pair_is_vacuous() {
    let (o, g, l) = s6_pair();
    let r = corollary_rig_check(&o, &g, &l, &DiamondOptions::default()).unwrap();
    assert_eq!(r.verdict, Verdict::HypothesisFailed);
    assert!(r.notes.iter().any(|n| n.contains("vacuous")));
    assert_eq!(r.facts["isomorphic"], "yes");
}

#[test]
fn rigidity_needs_a_nilpotent_subgroup() {
    let g = symmetric(4);
    let s3 = g.subgroup(vec![
        Permutation::parse(4, "(1 2 3)").unwrap(),
        Permutation::parse(4, "(1 2)").unwrap(),
    ]);
    let r = corollary_rig_check(&g, &s3, &s3, &DiamondOptions::default()).unwrap();
    assert_eq!(r.verdict, Verdict::HypothesisFailed);
    assert_eq!(r.hypothesis_status("Λ nilpotent"), Some(Status::Failed));
}

#[test]
fn scott_demo_one_copy() {
    let r = scott_demo(1, 0).unwrap();
    assert_eq!(r.facts["psl_order"], "12180");
    assert_eq!(r.facts["index"], "203");
    assert_eq!(r.facts["factor_non_conjugate"], "true");
    assert_eq!(r.facts["L_(0) L_(1) gassmann"], "true");
    assert_eq!(r.facts["pairs_checked"], "1");
    assert_eq!(r.facts["local_checks_passed"], "true");
    assert_eq!(r.verdict, Verdict::ConsistentWithTheorem);
}

#[test]
fn scott_demo_two_copies() {
    let r = scott_demo(2, 0).unwrap();
    assert_eq!(
        r.facts["product_order"],
        (Int::from(12180) * Int::from(12180)).to_string()
    );
    assert_eq!(r.facts["pairs_checked"], "6");
    for key in ["L_(0,0)", "L_(0,1)", "L_(1,0)", "L_(1,1)"] {
        assert_eq!(r.facts[&format!("{key} index")], "41209");
    }
    assert_eq!(
        r.facts
            .keys()
            .filter(|k| k.starts_with("L_(") && k.ends_with("non_conjugate"))
            .count(),
        6
    );
    assert!(r
        .facts
        .iter()
        .filter(|(k, _)| k.ends_with("gassmann"))
        .all(|(_, v)| v == "true"));
    assert_eq!(r.facts["hall_diagonal_surjective"], "false");
    assert_eq!(r.verdict, Verdict::ConsistentWithTheorem);
    assert!(scott_demo(3, 0).is_err());
}
