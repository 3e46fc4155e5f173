//! Standard groups and constructions.

use std::collections::HashSet;

use super::cosets::is_conjugate_subgroups;
use super::group::PermGroup;
use super::perm::Permutation;
use super::PermError;
use crate::exactla::modp::{inv_mod, is_prime};

fn cycle(degree: usize, pts: &[usize]) -> Permutation {
    Permutation::from_cycles(degree, &[pts.to_vec()]).expect("valid cycle")
}

fn group(degree: usize, gens: Vec<Permutation>) -> PermGroup {
    PermGroup::new(degree, gens).expect("degrees agree")
}

/// Cyclic group of order n acting regularly on n points.
pub fn cyclic(n: usize) -> PermGroup {
    let n = n.max(1);
    let pts: Vec<usize> = (0..n).collect();
    if n == 1 {
        return PermGroup::trivial(1);
    }
    group(n, vec![cycle(n, &pts)])
}

pub fn symmetric(n: usize) -> PermGroup {
    let n = n.max(1);
    if n == 1 {
        return PermGroup::trivial(1);
    }
    let pts: Vec<usize> = (0..n).collect();
    if n == 2 {
        return group(2, vec![cycle(2, &pts)]);
    }
    group(n, vec![cycle(n, &[0, 1]), cycle(n, &pts)])
}

pub fn alternating(n: usize) -> PermGroup {
    let n = n.max(1);
    if n < 3 {
        return PermGroup::trivial(n);
    }
    if n == 3 {
        return group(3, vec![cycle(3, &[0, 1, 2])]);
    }
    let long: Vec<usize> = if n % 2 == 1 {
        (0..n).collect()
    } else {
        (1..n).collect()
    };
    group(n, vec![cycle(n, &[0, 1, 2]), cycle(n, &long)])
}

/// Dihedral group of order 2n acting on the n vertices of a polygon
/// (n >= 3); n = 2 gives the Klein four-group on 4 points.
pub fn dihedral(n: usize) -> PermGroup {
    match n {
        0 | 1 => cyclic(2),
        2 => klein_four(),
        _ => {
            let rot: Vec<usize> = (0..n).collect();
            let refl: Vec<u32> = (0..n).map(|i| ((n - i) % n) as u32).collect();
            group(
                n,
                vec![cycle(n, &rot), Permutation::from_images(refl).unwrap()],
            )
        }
    }
}

pub fn klein_four() -> PermGroup {
    group(
        4,
        vec![
            cycle(4, &[0, 1]).mul(&cycle(4, &[2, 3])),
            cycle(4, &[0, 2]).mul(&cycle(4, &[1, 3])),
        ],
    )
}

/// Regular right representation of a group on {0..order-1} given by its
/// multiplication, generated by the listed elements.
pub fn regular_from_mul(
    order: usize,
    mul: impl Fn(usize, usize) -> usize,
    gens: &[usize],
) -> PermGroup {
    let perms = gens
        .iter()
        .map(|&g| {
            Permutation::from_images((0..order).map(|x| mul(x, g) as u32).collect())
                .expect("group law")
        })
        .collect();
    group(order, perms)
}

/// Dicyclic group of order 4n: ⟨a, x | a^{2n}, x² = aⁿ, x⁻¹ax = a⁻¹⟩.
/// n = 2 is the quaternion group Q8, n = 4 is Q16, n = 3 is Dic3.
pub fn dicyclic(n: usize) -> PermGroup {
    let m = 2 * n;
    // element a^k x^e has index k + m e
    let mul = |p: usize, q: usize| {
        let (k, e) = (p % m, p / m);
        let (l, f) = (q % m, q / m);
        if e == 0 {
            (k + l) % m + m * f
        } else if f == 0 {
            (k + m - l) % m + m
        } else {
            (k + m - l + n) % m
        }
    };
    regular_from_mul(2 * m, mul, &[1, m])
}

pub fn quaternion() -> PermGroup {
    dicyclic(2)
}

/// C_m ⋊ C_n with b⁻¹ab = a^r, regular representation (requires r^n ≡ 1 mod m
/// and gcd(r, m) = 1).
pub fn semidirect_cyclic(m: usize, n: usize, r: usize) -> Result<PermGroup, PermError> {
    let mut rn = 1usize;
    for _ in 0..n {
        rn = rn * r % m;
    }
    if num_integer::gcd(r, m) != 1 || rn != 1 % m {
        return Err(PermError::InvalidAction);
    }
    // s = r^{-1} mod m so that b a = a^s b; powers of s
    let s = (1..=m).find(|&s| s * r % m == 1 % m).unwrap();
    let mut spow = vec![1 % m; n];
    for j in 1..n {
        spow[j] = spow[j - 1] * s % m;
    }
    // a^i b^j has index i + m j
    let mul = |p: usize, q: usize| {
        let (i, j) = (p % m, p / m);
        let (k, l) = (q % m, q / m);
        (i + k * spow[j]) % m + m * ((j + l) % n)
    };
    Ok(regular_from_mul(m * n, mul, &[1 % (m * n), m % (m * n)]))
}

/// Natural action on the disjoint union of the two domains.
pub fn direct_product(g: &PermGroup, h: &PermGroup) -> PermGroup {
    let d = g.degree() + h.degree();
    let mut gens: Vec<Permutation> = g.generators().iter().map(|x| x.shifted(0, d)).collect();
    gens.extend(h.generators().iter().map(|x| x.shifted(g.degree(), d)));
    group(d, gens)
}

pub fn direct_power(g: &PermGroup, s: usize) -> PermGroup {
    let mut out = PermGroup::trivial(0);
    for _ in 0..s {
        out = direct_product(&out, g);
    }
    out
}

/// PSL(2, q) acting on the projective line {0, …, q-1, ∞}; ∞ is point q.
pub fn psl2(q: u64) -> Result<PermGroup, PermError> {
    if q == 2 || !is_prime(q) {
        return Err(PermError::NotAnOddPrime(q));
    }
    let n = (q + 1) as usize;
    let inf = q as u32;
    let t: Vec<u32> = (0..=q)
        .map(|x| if x == q { inf } else { ((x + 1) % q) as u32 })
        .collect();
    let w: Vec<u32> = (0..=q)
        .map(|x| {
            if x == q {
                0
            } else if x == 0 {
                inf
            } else {
                ((q - inv_mod(x, q)) % q) as u32
            }
        })
        .collect();
    Ok(group(
        n,
        vec![Permutation::from_images(t)?, Permutation::from_images(w)?],
    ))
}

/// The collineation group of the Fano plane (order 168) on its 7 points,
/// together with a point stabilizer and a line stabilizer.
pub fn fano_plane() -> (PermGroup, PermGroup, PermGroup) {
    // points are nonzero vectors of F_2^3, numbered v - 1
    let apply = |m: [u8; 3]| -> Permutation {
        let img: Vec<u32> = (1u8..8)
            .map(|v| {
                let mut w = 0u8;
                for (i, row) in m.iter().enumerate() {
                    if (row & v).count_ones() % 2 == 1 {
                        w |= 1 << i;
                    }
                }
                (w - 1) as u32
            })
            .collect();
        Permutation::from_images(img).expect("invertible matrix")
    };
    // rows as bitmasks: x_i' = parity(row_i & x)
    let g1 = apply([0b011, 0b010, 0b100]);
    let g2 = apply([0b010, 0b100, 0b001]);
    let g3 = apply([0b001, 0b011, 0b100]);
    let omega = group(7, vec![g1, g2, g3]);
    let elems = omega.elements();
    let point: Vec<Permutation> = elems.iter().filter(|g| g.image(0) == 0).cloned().collect();
    // line {1, 2, 3} = points {0, 1, 2}
    let line_set = [0usize, 1, 2];
    let line: Vec<Permutation> = elems
        .iter()
        .filter(|g| line_set.iter().all(|&p| line_set.contains(&g.image(p))))
        .cloned()
        .collect();
    let p = omega.subgroup(point);
    let l = omega.subgroup(line);
    let p = omega.subgroup(p.reduced_generators());
    let l = omega.subgroup(l.reduced_generators());
    (omega, p, l)
}

/// Ω = PSL(2, 29) and two non-conjugate subgroups isomorphic to Alt(5).
///
/// Every Alt(5) contains an involution and all involutions of Ω are
/// conjugate, so it suffices to fix the least involution a and run over
/// elements b of order 3 with ab of order 5. The subgroups found are sorted
/// into conjugacy classes; in each class the generating pair with the least
/// sorted images wins, and the classes are ordered by that pair.
pub fn scott_pair() -> Result<(PermGroup, PermGroup, PermGroup), PermError> {
    let omega = psl2(29)?;
    let elems = omega.elements();
    let a = elems
        .iter()
        .filter(|x| x.order() == 2)
        .min()
        .cloned()
        .ok_or(PermError::SearchFailed)?;
    let mut seen: HashSet<Vec<Permutation>> = HashSet::new();
    // (class representative subgroup, best key, generators)
    let mut classes: Vec<(PermGroup, Vec<Permutation>)> = Vec::new();
    let mut bs: Vec<&Permutation> = elems.iter().filter(|b| b.order() == 3).collect();
    bs.sort();
    for b in bs {
        if a.mul(b).order() != 5 {
            continue;
        }
        let h = omega.subgroup(vec![a.clone(), b.clone()]);
        if h.order_u64() != Some(60) {
            continue;
        }
        let mut key_elems = h.elements();
        key_elems.sort();
        if !seen.insert(key_elems) {
            continue;
        }
        let mut key = vec![a.clone(), b.clone()];
        key.sort();
        let mut placed = false;
        for (rep, best) in classes.iter_mut() {
            if is_conjugate_subgroups(&omega, rep, &h)?.is_some() {
                if key < *best {
                    *best = key.clone();
                }
                placed = true;
                break;
            }
        }
        if !placed {
            classes.push((h, key));
        }
    }
    if classes.len() != 2 {
        return Err(PermError::SearchFailed);
    }
    classes.sort_by(|x, y| x.1.cmp(&y.1));
    let l0 = omega.subgroup(classes[0].1.clone());
    let l1 = omega.subgroup(classes[1].1.clone());
    Ok((omega, l0, l1))
}

/// Named groups of small order used by the pair search and the tests.
pub fn small_catalog() -> Vec<(String, PermGroup)> {
    let mut v: Vec<(String, PermGroup)> = Vec::new();
    for n in [2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 16] {
        v.push((format!("C{n}"), cyclic(n)));
    }
    for n in [3, 4, 5, 6, 8] {
        v.push((format!("D{}", 2 * n), dihedral(n)));
    }
    v.push(("V4".into(), klein_four()));
    v.push(("Q8".into(), quaternion()));
    v.push(("Q16".into(), dicyclic(4)));
    v.push(("Dic3".into(), dicyclic(3)));
    v.push(("C2xC4".into(), direct_product(&cyclic(2), &cyclic(4))));
    v.push(("C2^3".into(), direct_power(&cyclic(2), 3)));
    v.push(("C4xC4".into(), direct_product(&cyclic(4), &cyclic(4))));
    v.push(("C2xQ8".into(), direct_product(&cyclic(2), &quaternion())));
    v.push(("C2xD8".into(), direct_product(&cyclic(2), &dihedral(4))));
    v.push((
        "C4:C4".into(),
        semidirect_cyclic(4, 4, 3).expect("valid action"),
    ));
    v.push((
        "M16".into(),
        semidirect_cyclic(8, 2, 5).expect("valid action"),
    ));
    v.push((
        "SD16".into(),
        semidirect_cyclic(8, 2, 3).expect("valid action"),
    ));
    v.push(("Sym3".into(), symmetric(3)));
    v.push(("Sym4".into(), symmetric(4)));
    v.push(("Alt4".into(), alternating(4)));
    v
}
