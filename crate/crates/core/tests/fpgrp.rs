use nilq::exactla::{cokernel_invariants, Int, IntMatrix};
use nilq::fpgrp::*;
use nilq::permgrp::*;
use proptest::prelude::{
    prop_assert, prop_assert_eq, proptest, ProptestConfig, Strategy as PropStrategy,
};
use rand::{Rng, SeedableRng};

fn pres(s: &str) -> FinitePresentation {
    FinitePresentation::parse(s).unwrap()
}

fn perm(deg: usize, s: &str) -> Permutation {
    Permutation::parse(deg, s).unwrap()
}

/// Presentations with a faithful permutation realization of their generators.
fn realized() -> Vec<(&'static str, FinitePresentation, PermGroup)> {
    let a5 = PermGroup::new(5, vec![perm(5, "(1 2)(3 4)"), perm(5, "(1 3 5)")]).unwrap();
    let s4 = PermGroup::new(4, vec![perm(4, "(1 2)"), perm(4, "(2 3 4)")]).unwrap();
    let d8 = PermGroup::new(4, vec![perm(4, "(1 2 3 4)"), perm(4, "(2 4)")]).unwrap();
    let q8 = quaternion();
    let s3 = PermGroup::new(3, vec![perm(3, "(1 2)"), perm(3, "(1 2 3)")]).unwrap();
    vec![
        ("A5", pres("gens a b\na^2\nb^3\n(a*b)^5\n"), a5),
        ("S4", pres("gens a b\na^2\nb^3\n(a*b)^4\n"), s4),
        ("D8", pres("gens r s\nr^4\ns^2\n(r*s)^2\n"), d8),
        (
            "Q8",
            pres("gens a x\na^4\na^2 = x^2\nx^-1 a x = a^-1\n"),
            q8,
        ),
        ("S3", pres("gens a b\na^2\nb^3\n(a b)^2\n"), s3),
    ]
}

fn h1(p: &FinitePresentation) -> nilq::exactla::AbelianInvariants {
    cokernel_invariants(&p.abelianization_matrix(), p.n_gens()).unwrap()
}

#[test]
fn regular_enumeration_matches_group_order() {
    for (name, p, g) in realized() {
        let hom = PermHom::new(p.clone(), g.clone(), g.generators().to_vec()).unwrap();
        assert!(hom.is_surjective(), "{name}");
        let t = todd_coxeter(&p, &[], 10_000).unwrap();
        assert_eq!(Int::from(t.n_cosets()), perm_image(&hom).order(), "{name}");
        assert!(t.verify(&p, &[]));
    }
}

#[test]
fn whole_group_has_one_coset() {
    for (_, p, _) in realized() {
        let t = todd_coxeter(&p, &p.generators(), 100).unwrap();
        assert_eq!(t.n_cosets(), 1);
    }
}

#[test]
fn infinite_index_exhausts_budget() {
    let f2 = FinitePresentation::free(2);
    let err = todd_coxeter(&f2, &[Word::gen(0)], 500).unwrap_err();
    assert_eq!(err, FpError::CosetBudgetExceeded { max_cosets: 500 });
    let err = todd_coxeter_with(&f2, &[Word::gen(0)], 500, Strategy::Felsch).unwrap_err();
    assert_eq!(err, FpError::CosetBudgetExceeded { max_cosets: 500 });
}

#[test]
fn strategies_agree() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
    for (name, p, _) in realized() {
        for _ in 0..8 {
            let k = rng.gen_range(0..3);
            let sub: Vec<Word> = (0..k)
                .map(|_| {
                    Word::from_syllables(
                        (0..rng.gen_range(1..6))
                            .map(|_| (rng.gen_range(0..2), rng.gen_range(-2i64..=2))),
                    )
                })
                .collect();
            let a = todd_coxeter_with(&p, &sub, 10_000, Strategy::Hlt).unwrap();
            let b = todd_coxeter_with(&p, &sub, 10_000, Strategy::Felsch).unwrap();
            assert_eq!(a, b, "{name} {sub:?}");
            assert!(a.verify(&p, &sub));
        }
    }
}

#[test]
fn lookahead_recovers_from_a_tight_budget() {
    let p = pres("gens a b\na^2\nb^3\n(a*b)^5\n");
    let t = todd_coxeter(&p, &[], 64).unwrap();
    assert_eq!(t, todd_coxeter(&p, &[], 1_000_000).unwrap());
    assert!(todd_coxeter(&p, &[], 59).is_err());
}

/// Coset table of H ≤ G for the presentation whose generators map to G's.
fn table_of(g: &PermGroup, h: &PermGroup) -> CosetTable {
    let space = CosetSpace::new(g, h, DEFAULT_INDEX_BOUND).unwrap();
    let act = action_group(&space);
    CosetTable::from_permutations(act.generators())
}

#[test]
fn coset_tables_agree_with_coset_actions() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
    for (name, p, g) in realized() {
        let classes = subgroups_up_to_conjugacy(&g, 0).unwrap();
        for h in &classes.classes {
            let from_perm = table_of(&g, h);
            // the Schreier generators of that table generate the same subgroup
            let sp = reidemeister_schreier(&p, &from_perm).unwrap();
            let t = todd_coxeter(&p, &sp.generator_words, 10_000).unwrap();
            assert_eq!(t, from_perm, "{name} |H| = {}", h.order());
            // fixed points of random words agree with the permgrp action
            let hom = PermHom::new(p.clone(), g.clone(), g.generators().to_vec()).unwrap();
            let space = CosetSpace::new(&g, h, DEFAULT_INDEX_BOUND).unwrap();
            for _ in 0..10 {
                let w = Word::from_syllables(
                    (0..6).map(|_| (rng.gen_range(0..2), rng.gen_range(-3i64..=3))),
                );
                let fixed = (0..t.n_cosets())
                    .filter(|&c| t.act_word(c, &w) == c)
                    .count() as u64;
                assert_eq!(fixed, space.fixed_count(h, &hom.eval(&w)));
            }
        }
    }
}

#[test]
fn schreier_presentations_have_the_right_abelianization() {
    for (name, p, g) in realized() {
        for h in subgroups_up_to_conjugacy(&g, 0).unwrap().classes {
            let sp = reidemeister_schreier(&p, &table_of(&g, &h)).unwrap();
            assert_eq!(
                h1(&sp.presentation),
                h.abelianization_finite(),
                "{name} |H| = {}",
                h.order()
            );
        }
    }
}

#[test]
fn index_one_rewrite_keeps_abelianization() {
    for (_, p, _) in realized() {
        let t = todd_coxeter(&p, &p.generators(), 10).unwrap();
        let sp = reidemeister_schreier(&p, &t).unwrap();
        assert_eq!(h1(&sp.presentation), h1(&p));
    }
}

#[test]
fn nielsen_schreier_rank() {
    // kernel of F_2 -> Z/2, a -> 1, b -> 0
    let f2 = FinitePresentation::free(2);
    let t = todd_coxeter(
        &f2,
        &[
            Word::gen_pow(0, 2),
            Word::gen(1),
            Word::gen(1).conjugate(&Word::gen(0)),
        ],
        100,
    )
    .unwrap();
    assert_eq!(t.n_cosets(), 2);
    let sp = reidemeister_schreier(&f2, &t).unwrap();
    assert_eq!(sp.presentation.n_gens(), 3);
    assert!(sp.presentation.relators().is_empty());
    for e in [3usize, 4, 5] {
        let t = todd_coxeter(&f2, &[Word::gen_pow(0, e as i64), Word::gen(1)], 1000);
        // ⟨a^e, b⟩ has infinite index in F_2; use the normal closure instead
        assert!(t.is_err());
        let perms = [cyclic(e).generators()[0].clone(), Permutation::identity(e)];
        let t = CosetTable::from_permutations(&perms);
        let sp = reidemeister_schreier(&f2, &t).unwrap();
        assert_eq!(sp.presentation.n_gens(), e + 1);
    }
}

#[test]
fn a5_point_stabilizer_presentation() {
    let (_, p, g) = realized().into_iter().next().unwrap();
    let stab = g.subgroup(
        g.elements()
            .into_iter()
            .filter(|x| x.image(0) == 0)
            .collect(),
    );
    let stab = g.subgroup(stab.reduced_generators());
    assert_eq!(stab.order(), Int::from(12));
    let sp = reidemeister_schreier(&p, &table_of(&g, &stab)).unwrap();
    assert_eq!(h1(&sp.presentation), stab.abelianization_finite());
    assert_eq!(h1(&sp.presentation).to_string(), "Z/3");
}

#[test]
fn homomorphism_validation() {
    let f2 = FinitePresentation::free(2);
    let a5 = alternating(5);
    let h = PermHom::new(
        f2.clone(),
        a5.clone(),
        vec![perm(5, "(1 2)(3 4)"), perm(5, "(1 3 5)")],
    )
    .unwrap();
    assert_eq!(perm_image(&h).order(), Int::from(60));
    let triv = PermHom::new(f2, a5.clone(), vec![a5.identity(), a5.identity()]).unwrap();
    assert!(perm_image(&triv).order().is_one());
    let c2 = pres("gens a\na^2\n");
    let err = PermHom::new(c2.clone(), a5, vec![perm(5, "(1 2 3)")]).unwrap_err();
    assert_eq!(err, FpError::RelatorViolated { relator: 0 });

    // fp targets
    let z2 = pres("gens a b\n[a,b]\n");
    let ok = FpHom::new(
        pres("gens x y\n[y,x]\n"),
        z2.clone(),
        vec![Word::gen(0), Word::gen(1)],
    );
    assert!(ok.is_ok());
    let c6 = pres("gens a\na^6\n");
    assert!(FpHom::new(c2.clone(), c6.clone(), vec![Word::gen_pow(0, 3)]).is_ok());
    assert_eq!(
        FpHom::new(c2, c6, vec![Word::gen(0)]).unwrap_err(),
        FpError::RelatorViolated { relator: 0 }
    );
}

#[test]
fn cayley_presentations_present_the_group() {
    for g in [symmetric(4), alternating(5), quaternion(), dihedral(5)] {
        let (p, gens) = cayley_presentation(&g);
        let t = todd_coxeter(&p, &[], 10_000).unwrap();
        assert_eq!(Int::from(t.n_cosets()), g.order());
        let h = PermHom::new(p.clone(), g.clone(), gens).unwrap();
        assert!(h.is_surjective());
        assert_eq!(h1(&p), g.abelianization_finite());
    }
}

#[test]
fn abelianization_matrices() {
    assert!(abelianization_matrix(&pres("gens a b\n[a,b]\n")).is_zero());
    assert_eq!(
        abelianization_matrix(&pres("gens a\na^5\n")),
        IntMatrix::from_i64(&[&[5]])
    );
    let s = abelianization_matrix(&pres("gens a b c d\n[a,b][c,d]\n"));
    assert_eq!((s.rows(), s.cols()), (1, 4));
    assert!(s.is_zero());
}

fn word_strategy() -> impl PropStrategy<Value = Word> {
    proptest::collection::vec((0usize..3, -3i64..=3), 0..12).prop_map(Word::from_syllables)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn free_reduction_is_idempotent(w in word_strategy(), v in word_strategy()) {
        let again = Word::from_syllables(w.syllables());
        prop_assert_eq!(&again, &w);
        prop_assert_eq!(w.inverse().inverse(), w.clone());
        prop_assert!(w.mul(&w.inverse()).is_identity());
        prop_assert_eq!(w.mul(&v).inverse(), v.inverse().mul(&w.inverse()));
    }

    #[test]
    fn printed_words_parse_back(w in word_strategy()) {
        let names = default_names(3);
        prop_assert_eq!(parse_word(&w.display_with(&names), &names).unwrap(), w);
    }
}
