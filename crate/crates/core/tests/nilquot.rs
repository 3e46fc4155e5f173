use nilq::exactla::{AbelianInvariants, Int};
use nilq::fpgrp::{cayley_presentation, FinitePresentation};
use nilq::nilquot::*;
use nilq::permgrp::*;
use proptest::prelude::{prop_assert, prop_assert_eq, proptest, ProptestConfig};
use rand::{Rng, SeedableRng};

fn pres(s: &str) -> FinitePresentation {
    FinitePresentation::parse(s).unwrap()
}

fn nq(p: &FinitePresentation, c: usize) -> PcPresentation {
    nilpotent_quotient(p, c).unwrap()
}

fn mobius(n: u64) -> i64 {
    let (mut n, mut m, mut p) = (n, 1i64, 2u64);
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            m = -m;
        }
        p += 1;
    }
    if n > 1 {
        m = -m;
    }
    m
}

/// Rank of the weight-k layer of a free group of rank n.
fn witt(n: i64, k: u64) -> i64 {
    let s: i64 = (1..=k)
        .filter(|d| k.is_multiple_of(*d))
        .map(|d| mobius(d) * n.pow((k / d) as u32))
        .sum();
    s / k as i64
}

#[test]
fn free_group_layers_follow_witt() {
    assert_eq!(
        (1..=6).map(|k| witt(2, k)).collect::<Vec<_>>(),
        vec![2, 1, 2, 3, 6, 9]
    );
    assert_eq!(
        (1..=3).map(|k| witt(3, k)).collect::<Vec<_>>(),
        vec![3, 3, 8]
    );
    for (n, c) in [(2usize, 6usize), (3, 3)] {
        let pc = nq(&FinitePresentation::free(n), c);
        let layers = layer_invariants(&pc);
        assert_eq!(layers.len(), c);
        for (k, inv) in layers.iter().enumerate() {
            assert_eq!(
                *inv,
                AbelianInvariants::new(witt(n as i64, k as u64 + 1) as usize, vec![]),
                "F{n} weight {}",
                k + 1
            );
        }
        let h: i64 = (1..=c as u64).map(|k| witt(n as i64, k)).sum();
        assert_eq!(
            order_or_hirsch(&pc),
            GroupSize::Infinite {
                hirsch_length: h as usize,
                torsion: Int::ONE
            }
        );
        assert!(pc.is_consistent());
    }
}

#[test]
fn class_zero_is_trivial_and_class_one_is_abelianization() {
    let p = pres("gens a b c\na^6\nb^4 c^-2\n[a,b]\n");
    assert_eq!(nq(&p, 0).n_gens(), 0);
    let pc = nq(&p, 1);
    let h1 = nilq::exactla::cokernel_invariants(&p.abelianization_matrix(), 3).unwrap();
    assert_eq!(layer_invariants(&pc), vec![h1]);
}

#[test]
fn abelian_input_stops_growing() {
    let p = pres("gens a b\na^4\nb^6\n[a,b]\n");
    let pc = nq(&p, 5);
    assert_eq!(order_or_hirsch(&pc), GroupSize::Finite(Int::from(24)));
    let layers = layer_invariants(&pc);
    assert_eq!(layers.len(), 5);
    assert!(layers[1..]
        .iter()
        .all(|l| *l == AbelianInvariants::trivial()));
    assert_eq!(pc.n_gens(), nq(&p, 1).n_gens());
}

#[test]
fn perfect_group_has_trivial_quotients() {
    let a5 = pres("gens a b\na^2\nb^3\n(a*b)^5\n");
    for c in 0..4 {
        assert_eq!(nq(&a5, c).n_gens(), 0);
    }
}

/// Upper unitriangular 3x3 integer matrices as (x, y, z).
struct Heis;

impl GroupOps<[i64; 3]> for Heis {
    fn one(&self) -> [i64; 3] {
        [0, 0, 0]
    }
    fn mul(&self, a: &[i64; 3], b: &[i64; 3]) -> [i64; 3] {
        [a[0] + b[0], a[1] + b[1], a[2] + b[2] + a[0] * b[1]]
    }
    fn inv(&self, a: &[i64; 3]) -> [i64; 3] {
        [-a[0], -a[1], -a[2] + a[0] * a[1]]
    }
}

#[test]
fn heisenberg_group_matches_matrix_model() {
    let f2 = FinitePresentation::free(2);
    let pc = nq(&f2, 2);
    assert_eq!(pc.weights(), &[1, 1, 2]);
    let gens = pc.generator_images(&Heis, &[[1, 0, 0], [0, 1, 0]]);
    let to_matrix = |v: &[i64]| {
        let mut acc = Heis.one();
        for (g, &e) in v.iter().enumerate() {
            acc = Heis.mul(&acc, &Heis.pow(&gens[g], e));
        }
        acc
    };
    // the map to matrices is an isomorphism: injective on normal forms and multiplicative
    let mut rng = rand::rngs::StdRng::seed_from_u64(7);
    for _ in 0..300 {
        let a: Vec<i64> = (0..3).map(|_| rng.gen_range(-5..=5)).collect();
        let b: Vec<i64> = (0..3).map(|_| rng.gen_range(-5..=5)).collect();
        assert_eq!(
            to_matrix(&pc.multiply(&a, &b)),
            Heis.mul(&to_matrix(&a), &to_matrix(&b))
        );
        if a != b {
            assert_ne!(to_matrix(&a), to_matrix(&b));
        }
    }
    // the heisenberg presentation itself
    let h = pres("gens x y\n[[x,y],x]\n[[x,y],y]\n");
    for c in 2..5 {
        let hc = nq(&h, c);
        assert_eq!(layer_invariants(&hc)[..2], layer_invariants(&pc)[..]);
        assert_eq!(hc.n_gens(), 3);
    }
}

fn random_word(rng: &mut impl Rng, n: usize, len: usize) -> Vec<(usize, i64)> {
    (0..len)
        .map(|_| (rng.gen_range(0..n), rng.gen_range(-3..=3)))
        .filter(|s| s.1 != 0)
        .collect()
}

fn samples() -> Vec<(&'static str, PcPresentation)> {
    vec![
        ("F2 class 4", nq(&FinitePresentation::free(2), 4)),
        ("F3 class 3", nq(&FinitePresentation::free(3), 3)),
        ("D16", nq(&pres("gens r s\nr^8\ns^2\n(r*s)^2\n"), 3)),
        (
            "Q8",
            nq(&pres("gens a x\na^4\na^2 = x^2\nx^-1 a x = a^-1\n"), 2),
        ),
        (
            "B(2,4) class 3",
            nq(&pres("gens a b\na^4\nb^4\n(a b)^4\n(a b^-1)^4\n"), 3),
        ),
    ]
}

#[test]
fn collection_strategies_agree() {
    let mut rng = rand::rngs::StdRng::seed_from_u64(11);
    for (name, pc) in samples() {
        for _ in 0..200 {
            let w = random_word(&mut rng, pc.n_gens(), 12);
            assert_eq!(
                pc.collect_with(&w, CollectStrategy::FromTheLeft),
                pc.collect_with(&w, CollectStrategy::Outermost),
                "{name}"
            );
        }
    }
}

#[test]
fn group_axioms_hold() {
    let mut rng = rand::rngs::StdRng::seed_from_u64(3);
    for (name, pc) in samples() {
        let k = pc.n_gens();
        for _ in 0..100 {
            let [a, b, c] = [0; 3].map(|_| pc.collect(&random_word(&mut rng, k, 8)));
            assert_eq!(pc.multiply(&a, &pc.inverse(&a)), pc.identity(), "{name}");
            assert_eq!(pc.multiply(&pc.inverse(&a), &a), pc.identity(), "{name}");
            assert_eq!(
                pc.multiply(&pc.multiply(&a, &b), &c),
                pc.multiply(&a, &pc.multiply(&b, &c)),
                "{name}"
            );
        }
    }
}

#[test]
fn grading_is_respected() {
    for (name, pc) in samples() {
        let w = pc.weights();
        for j in 0..pc.n_gens() {
            for i in 0..j {
                let t = pc.commutator_tail(j, i);
                assert!(
                    t.iter()
                        .enumerate()
                        .all(|(h, &e)| e == 0 || w[h] >= w[i] + w[j]),
                    "{name} [{j},{i}]"
                );
            }
            if pc.relative_orders()[j] > 0 {
                assert!(
                    pc.power_tail(j)
                        .iter()
                        .enumerate()
                        .all(|(h, &e)| e == 0 || w[h] > w[j]),
                    "{name} {j}"
                );
            }
        }
    }
}

#[test]
fn quotient_of_a_nilpotent_quotient_is_itself() {
    for (name, pc) in samples() {
        let fp = to_finite_presentation(&pc);
        let again = nq(&fp, pc.class());
        assert_eq!(order_or_hirsch(&pc), order_or_hirsch(&again), "{name}");
        assert_eq!(layer_invariants(&pc), layer_invariants(&again), "{name}");
    }
}

#[test]
fn truncation_matches_smaller_class() {
    let p = pres("gens a b\na^4\nb^4\n(a b)^4\n(a b^-1)^4\n");
    let big = nq(&p, 4);
    for c in 0..4 {
        let t = big.truncate(c);
        let small = nq(&p, c);
        assert_eq!(order_or_hirsch(&t), order_or_hirsch(&small), "class {c}");
        assert_eq!(layer_invariants(&t), layer_invariants(&small), "class {c}");
    }
}

#[test]
fn orders_match_lower_central_series() {
    for (name, g) in small_catalog() {
        if g.order() > Int::from(360) {
            continue;
        }
        let (p, _) = cayley_presentation(&g);
        let lcs = g.lower_central_series();
        for c in 0..4 {
            let gamma = &lcs[c.min(lcs.len() - 1)];
            let expected = g.order().div_floor(&gamma.order());
            assert_eq!(
                order_or_hirsch(&nq(&p, c)),
                GroupSize::Finite(expected),
                "{name} class {c}"
            );
        }
    }
}

#[test]
fn images_of_sources_generate() {
    // the quotient map from the permutation group is well defined and onto
    let d8 = dihedral(4);
    let (p, gens) = cayley_presentation(&d8);
    let pc = nq(&p, 2);
    assert_eq!(order_or_hirsch(&pc), GroupSize::Finite(Int::from(8)));
    let imgs: Vec<Permutation> = pc.generator_images(&d8, &gens);
    let sub = d8.subgroup(imgs);
    assert_eq!(sub.order(), Int::from(8));
    for (l, w) in p.generators().iter().enumerate() {
        assert_eq!(pc.image_of(w), pc.images()[l]);
    }
}

#[test]
fn isomorphism_verdicts() {
    let z4 = nq(&pres("gens a\na^4\n"), 2);
    let v4 = nq(&pres("gens a b\na^2\nb^2\n[a,b]\n"), 2);
    let d8 = nq(&pres("gens r s\nr^4\ns^2\n(r*s)^2\n"), 3);
    let q8 = nq(&pres("gens a x\na^4\na^2 = x^2\nx^-1 a x = a^-1\n"), 3);
    assert!(isomorphic_nilpotent(&d8, &d8, 1000).is_yes());
    assert!(isomorphic_nilpotent(&z4, &v4, 1000).is_no());
    match isomorphic_nilpotent(&d8, &q8, 100_000) {
        IsoVerdict::No { invariant, .. } => assert_eq!(invariant, "element orders"),
        v => panic!("{v:?}"),
    }
    // same group, different presentations
    let d8b = nq(&pres("gens x y\nx^2\ny^2\n(x y)^4\n"), 3);
    match isomorphic_nilpotent(&d8, &d8b, 100_000) {
        IsoVerdict::Yes { images } => assert!(verify_isomorphism(&d8, &d8b, &images)),
        v => panic!("{v:?}"),
    }
    // infinite groups with equal invariants are left open
    let f2 = nq(&FinitePresentation::free(2), 2);
    let f2b = nq(&pres("gens u v\n"), 2);
    assert!(!isomorphic_nilpotent(&f2, &f2b, 10).is_no());
}

#[test]
fn budget_is_enforced() {
    let err = nilpotent_quotient_with(&FinitePresentation::free(3), 4, 20).unwrap_err();
    assert_eq!(err, NqError::GeneratorBudget { max_generators: 20 });
}

#[test]
fn text_dump_is_stable() {
    let pc = nq(&pres("gens a x\na^4\na^2 = x^2\nx^-1 a x = a^-1\n"), 2);
    let t = pc.to_text();
    assert!(t.starts_with("class 2\n"), "{t}");
    assert_eq!(t, format!("{pc}"));
    assert_eq!(order_or_hirsch(&pc), GroupSize::Finite(Int::from(8)));
}

#[test]
fn explicit_presentation_is_validated() {
    // Z/4 as a^2 = b with b central
    let ok = PcPresentation::new(
        vec![1, 2],
        vec![2, 2],
        vec![vec![0, 1], vec![0, 0]],
        vec![vec![], vec![vec![0, 0]]],
    );
    let pc = ok.unwrap();
    assert_eq!(order_or_hirsch(&pc), GroupSize::Finite(Int::from(4)));
    assert_eq!(pc.element_order(&pc.generator(0)), Some(4));
    let bad = PcPresentation::new(
        vec![1, 1],
        vec![2, 2],
        vec![vec![0, 0], vec![0, 0]],
        vec![vec![], vec![vec![0, 1]]],
    );
    assert!(bad.is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normal_forms_are_canonical(w in proptest::collection::vec((0usize..5, -4i64..=4), 0..15)) {
        let pc = nq(&pres("gens a b\na^4\nb^4\n(a b)^4\n(a b^-1)^4\n"), 3);
        let k = pc.n_gens();
        let w: Vec<(usize, i64)> = w.into_iter().map(|(g, e)| (g % k, e)).collect();
        let v = pc.collect(&w);
        for (g, &e) in v.iter().enumerate() {
            let m = pc.relative_orders()[g];
            prop_assert!(m == 0 || (0..m).contains(&e));
        }
        let inv: Vec<(usize, i64)> = w.iter().rev().map(|&(g, e)| (g, -e)).collect();
        let mut both = w.clone();
        both.extend(inv);
        prop_assert_eq!(pc.collect(&both), pc.identity());
    }
}
