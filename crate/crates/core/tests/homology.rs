use std::collections::HashMap;

use nilq::exactla::modp::rank_mod_p;
use nilq::exactla::{AbelianInvariants, Int, IntMatrix};
use nilq::fpgrp::{cayley_presentation, reidemeister_schreier, todd_coxeter, FinitePresentation};
use nilq::homology::*;
use nilq::permgrp::*;

fn inv(free: usize, torsion: &[i64]) -> AbelianInvariants {
    AbelianInvariants::new(free, torsion.iter().map(|&t| Int::from(t)).collect())
}

fn pres(s: &str) -> FinitePresentation {
    FinitePresentation::parse(s).unwrap()
}

#[test]
fn h1_of_presentations() {
    let surface = pres("gens a b c d\n[a,b] [c,d]\n");
    assert_eq!(h1_fp(&surface), inv(4, &[]));
    assert_eq!(h1_fp(&pres("gens a\na^6\n")), inv(0, &[6]));
    assert_eq!(h1_fp(&pres("gens a b\na^2 b^-3\n")), inv(1, &[]));
}

#[test]
fn h1_round_trip_through_rewriting() {
    for (name, g) in small_catalog() {
        if g.order() > Int::from(60) {
            continue;
        }
        let (p, _) = cayley_presentation(&g);
        let table = todd_coxeter(&p, &p.generators(), 1000).unwrap();
        let sub = reidemeister_schreier(&p, &table).unwrap();
        assert_eq!(h1_fp(&sub.presentation), h1_perm(&g), "{name}");
        assert_eq!(h1_fp(&p), h1_perm(&g), "{name}");
    }
}

/// dim H^2(G; F_p) from cochains on all of G^k, by ranks over F_p.
fn cochain_h2_dim(g: &PermGroup, p: u64) -> usize {
    let els = g.elements();
    let n = els.len();
    let idx: HashMap<&Permutation, usize> = els.iter().enumerate().map(|(i, x)| (x, i)).collect();
    let mul = |a: usize, b: usize| idx[&els[a].mul(&els[b])];
    // δ1 as an n^2 x n matrix, δ2 as n^3 x n^2
    let mut d1 = IntMatrix::zero(n * n, n);
    for a in 0..n {
        for b in 0..n {
            let r = a * n + b;
            for (c, s) in [(b, 1), (mul(a, b), -1), (a, 1)] {
                let v = d1.get(r, c) + &Int::from(s);
                d1.set(r, c, v);
            }
        }
    }
    let mut d2 = IntMatrix::zero(n * n * n, n * n);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let r = (a * n + b) * n + c;
                let terms = [(b, c, 1), (mul(a, b), c, -1), (a, mul(b, c), 1), (a, b, -1)];
                for (x, y, s) in terms {
                    let col = x * n + y;
                    let v = d2.get(r, col) + &Int::from(s);
                    d2.set(r, col, v);
                }
            }
        }
    }
    n * n - rank_mod_p(&d2, p) - rank_mod_p(&d1, p)
}

fn p_rank(a: &AbelianInvariants, p: i64) -> usize {
    a.free_rank + a.torsion.iter().filter(|t| Int::from(p).divides(t)).count()
}

#[test]
fn schur_multipliers_of_small_groups() {
    for n in 1..=6 {
        assert_eq!(
            h2_finite_bar(&cyclic(n)).unwrap(),
            AbelianInvariants::trivial(),
            "C{n}"
        );
    }
    assert_eq!(h2_finite_bar(&klein_four()).unwrap(), inv(0, &[2]));
    assert_eq!(h2_finite_bar(&dihedral(4)).unwrap(), inv(0, &[2]));
    assert_eq!(
        h2_finite_bar(&quaternion()).unwrap(),
        AbelianInvariants::trivial()
    );
    assert_eq!(
        h2_finite_bar(&symmetric(3)).unwrap(),
        AbelianInvariants::trivial()
    );
    assert_eq!(
        h2_finite_bar(&direct_power(&cyclic(2), 3)).unwrap(),
        inv(0, &[2, 2, 2])
    );
    assert_eq!(
        h2_finite_bar(&direct_product(&cyclic(4), &cyclic(4))).unwrap(),
        inv(0, &[4])
    );
    assert_eq!(h2_finite_bar(&alternating(4)).unwrap(), inv(0, &[2]));
    assert_eq!(h2_finite_bar(&symmetric(4)).unwrap(), inv(0, &[2]));
}

#[test]
fn normalized_and_unnormalized_agree() {
    for (name, g) in small_catalog() {
        if g.order() > Int::from(12) {
            continue;
        }
        assert_eq!(
            h2_finite_bar(&g).unwrap(),
            h2_unnormalized(&g, 12).unwrap(),
            "{name}"
        );
    }
}

#[test]
fn universal_coefficients_oracle() {
    for (name, g) in small_catalog() {
        if g.order() > Int::from(8) {
            continue;
        }
        let h1 = h1_perm(&g);
        let h2 = h2_finite_bar(&g).unwrap();
        for p in [2u64, 3] {
            let expect = p_rank(&h2, p as i64) + p_rank(&h1, p as i64);
            assert_eq!(cochain_h2_dim(&g, p), expect, "{name} p={p}");
        }
    }
}

/// |Z^2 / B^2| for normalized cochains G x G → Z/m, by enumerating all of them.
fn brute_force_h2_count(g: &PermGroup, m: u64) -> u64 {
    let t = GroupTable::new(g, 10).unwrap();
    let n = t.order();
    let pairs: Vec<(u32, u32)> = (1..n as u32)
        .flat_map(|a| (1..n as u32).map(move |b| (a, b)))
        .collect();
    let val = |f: &[u64], a: u32, b: u32| -> u64 {
        if a == 0 || b == 0 {
            0
        } else {
            f[(a as usize - 1) * (n - 1) + b as usize - 1]
        }
    };
    let total = m.pow(pairs.len() as u32);
    let mut cocycles = std::collections::HashSet::new();
    for code in 0..total {
        let mut f = vec![0u64; pairs.len()];
        let mut c = code;
        for x in f.iter_mut() {
            *x = c % m;
            c /= m;
        }
        let ok = (0..n as u32).all(|a| {
            (0..n as u32).all(|b| {
                (0..n as u32).all(|c| {
                    let lhs = val(&f, b, c) + val(&f, a, t.mul(b, c));
                    let rhs = val(&f, t.mul(a, b), c) + val(&f, a, b);
                    lhs % m == rhs % m
                })
            })
        });
        if ok {
            cocycles.insert(f);
        }
    }
    let mut coboundaries = std::collections::HashSet::new();
    let hs = m.pow(n as u32 - 1);
    for code in 0..hs {
        let mut h = vec![0u64; n];
        let mut c = code;
        for x in h.iter_mut().skip(1) {
            *x = c % m;
            c /= m;
        }
        let f: Vec<u64> = pairs
            .iter()
            .map(|&(a, b)| (h[b as usize] + h[a as usize] + m - h[t.mul(a, b) as usize]) % m)
            .collect();
        coboundaries.insert(f);
    }
    cocycles.len() as u64 / coboundaries.len() as u64
}

#[test]
fn cyclic_multipliers_by_enumeration() {
    // H^2(C_n; Z/m) = Hom(H_2, Z/m) + Ext(Z/n, Z/m), so trivial H_2 means gcd(n, m) classes
    for n in [2usize, 3] {
        for m in [2u64, 3, 4] {
            let gcd = num_gcd(n as u64, m);
            assert_eq!(brute_force_h2_count(&cyclic(n), m), gcd, "C{n} mod {m}");
        }
        assert!(h2_finite_bar(&cyclic(n)).unwrap().is_trivial());
    }
}

fn num_gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        num_gcd(b, a % b)
    }
}

#[test]
fn bar_boundaries_compose_to_zero() {
    for (_, g) in small_catalog() {
        if g.order() > Int::from(12) {
            continue;
        }
        for normalized in [true, false] {
            let b = BarComplexSlice::new(&g, 12, normalized).unwrap();
            assert!(b.boundary_squared_is_zero());
            assert_eq!(b.h1(), h1_perm(&g));
        }
    }
}

#[test]
fn order_bound_is_enforced() {
    let err = h2_finite_bar(&symmetric(5)).unwrap_err();
    assert!(matches!(err, HomologyError::OrderBound { .. }));
}

#[test]
fn n_mod_commutators_examples() {
    let c4 = cyclic(4);
    assert_eq!(n_mod_commutators(&c4, &c4).unwrap().0, inv(0, &[4]));
    let q8 = quaternion();
    assert_eq!(
        n_mod_commutators(&q8, &q8.center()).unwrap().0,
        inv(0, &[2])
    );
    let s3 = symmetric(3);
    let a3 = alternating(3);
    assert!(n_mod_commutators(&s3, &a3).unwrap().0.is_trivial());
    let s3 = symmetric(3);
    let t = s3.subgroup(vec![Permutation::parse(3, "(1 2)").unwrap()]);
    assert_eq!(
        n_mod_commutators(&s3, &t).unwrap_err(),
        HomologyError::NotNormal
    );
}

#[test]
fn five_term_examples() {
    let q8 = quaternion();
    let r = five_term_check(&q8, &q8.center()).unwrap();
    assert_eq!(
        r.groups,
        [
            inv(0, &[]),
            inv(0, &[2]),
            inv(0, &[2]),
            inv(0, &[2, 2]),
            inv(0, &[2, 2])
        ]
    );
    assert!(r.is_exact());

    let c4 = cyclic(4);
    let c2 = c4.subgroup(vec![c4.generators()[0].pow(2)]);
    let r = five_term_check(&c4, &c2).unwrap();
    assert_eq!(
        r.groups,
        [
            inv(0, &[]),
            inv(0, &[]),
            inv(0, &[2]),
            inv(0, &[4]),
            inv(0, &[2])
        ]
    );
    assert!(r.is_exact());

    let d8 = dihedral(4);
    let r = five_term_check(&d8, &PermGroup::trivial(d8.degree())).unwrap();
    assert_eq!(r.groups[0], r.groups[1]);
    assert!(r.groups[2].is_trivial());
    assert!(r.is_exact());
    assert_eq!(r.quotient_order, 8);
}

#[test]
fn transgression_is_independent_of_section() {
    let cases = [
        (quaternion(), true),
        (dihedral(4), true),
        (direct_product(&cyclic(2), &cyclic(4)), false),
    ];
    for (g, center) in cases {
        let n = if center {
            g.center()
        } else {
            g.derived_subgroup()
        };
        let n = if n.is_trivial() { g.center() } else { n };
        let base = transgression_images(&g, &n, 0).unwrap();
        for seed in 1..=5 {
            assert_eq!(transgression_images(&g, &n, seed).unwrap(), base);
        }
    }
}

#[test]
fn five_term_sweep_small_catalog() {
    let mut checked = 0;
    for (name, g) in small_catalog() {
        if g.order() > Int::from(16) {
            continue;
        }
        let classes = subgroups_up_to_conjugacy(&g, 0).unwrap();
        for n in classes.classes.iter().filter(|n| n.is_normal_in(&g)) {
            let r = five_term_check(&g, n).unwrap();
            assert!(r.is_exact(), "{name} N of order {}: {:?}", n.order(), r);
            checked += 1;
        }
    }
    assert!(checked > 100, "{checked}");
}
