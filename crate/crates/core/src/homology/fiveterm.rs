//! N/[G,N] and the five-term sequence
//! H_2(G) → H_2(Q) → N/[G,N] → H_1(G) → H_1(Q) for Q = G/N.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::bar::{BarComplexSlice, H2Cycles, DEFAULT_BAR_BOUND};
use super::HomologyError;
use crate::exactla::{lattice_basis, AbelianHom, AbelianInvariants, AbelianQuotient, Int};
use crate::permgrp::{action_group, CosetSpace, GroupTable, PermGroup, Permutation};

/// The abelian quotient N/K of permutation groups K ≤ N (N/K abelian), with
/// coordinates of elements of N on the generators of N.
#[derive(Clone, Debug)]
pub struct AbelianSection {
    pub sub: PermGroup,
    space: CosetSpace,
    coset_coords: Vec<Vec<Int>>,
    pub quotient: AbelianQuotient,
}

impl AbelianSection {
    /// Requires K normal in N with N/K abelian.
    pub fn new(n: &PermGroup, k: &PermGroup) -> Result<Self, HomologyError> {
        let space = CosetSpace::new(n, k, 1 << 20).map_err(HomologyError::Perm)?;
        let s = n.generators().len();
        let idx = space.index();
        let mut coords: Vec<Option<Vec<Int>>> = vec![None; idx];
        coords[0] = Some(vec![Int::ZERO; s]);
        let mut queue = vec![0usize];
        let mut head = 0;
        while head < queue.len() {
            let i = queue[head];
            head += 1;
            for g in 0..s {
                let j = space.action[g][i] as usize;
                if coords[j].is_none() {
                    let mut v = coords[i].clone().unwrap();
                    v[g] += &Int::ONE;
                    coords[j] = Some(v);
                    queue.push(j);
                }
            }
        }
        let coset_coords: Vec<Vec<Int>> = coords
            .into_iter()
            .map(|c| c.expect("generators act transitively"))
            .collect();
        let mut rels = Vec::with_capacity(idx * s);
        for i in 0..idx {
            for g in 0..s {
                let j = space.action[g][i] as usize;
                let mut r = coset_coords[i].clone();
                r[g] += &Int::ONE;
                for (x, y) in r.iter_mut().zip(&coset_coords[j]) {
                    *x -= y;
                }
                if r.iter().any(|x| !x.is_zero()) {
                    rels.push(r);
                }
            }
        }
        let quotient = AbelianQuotient::from_relations(s, &lattice_basis(s, &rels));
        Ok(AbelianSection {
            sub: k.clone(),
            space,
            coset_coords,
            quotient,
        })
    }

    /// Coordinates of x ∈ N on the generators of N.
    pub fn coords(&self, x: &Permutation) -> Vec<Int> {
        self.coset_coords[self.space.coset_of(&self.sub, x)].clone()
    }

    pub fn invariants(&self) -> AbelianInvariants {
        self.quotient.invariants()
    }
}

/// N/[G,N] for N normal in G, with coordinates.
pub fn n_mod_commutators(
    g: &PermGroup,
    n: &PermGroup,
) -> Result<(AbelianInvariants, AbelianSection), HomologyError> {
    if !n.is_subgroup_of(g) {
        return Err(HomologyError::NotASubgroup);
    }
    if !n.is_normal_in(g) {
        return Err(HomologyError::NotNormal);
    }
    let k = g.commutator_with(n);
    let sec = AbelianSection::new(n, &k)?;
    Ok((sec.invariants(), sec))
}

/// H_1 of a finite group as G/[G,G], with coordinates.
pub fn h1_section(g: &PermGroup) -> Result<AbelianSection, HomologyError> {
    AbelianSection::new(g, &g.derived_subgroup())
}

#[derive(Clone, Debug, Serialize)]
pub struct FiveTermReport {
    /// H_2(G), H_2(Q), N/[G,N], H_1(G), H_1(Q).
    pub groups: [AbelianInvariants; 5],
    /// Each map as images of the source's cyclic generators in the target's
    /// reduced coordinates.
    pub maps: [Vec<Vec<Int>>; 4],
    /// Exactness at H_2(Q), N/[G,N] and H_1(G).
    pub exact: [bool; 3],
    pub compositions_zero: bool,
    pub quotient_order: u64,
}

impl FiveTermReport {
    pub fn is_exact(&self) -> bool {
        self.exact.iter().all(|&e| e) && self.compositions_zero
    }
}

/// The five-term sequence of 1 → N → G → G/N → 1 with integer coefficients.
pub fn five_term_check(g: &PermGroup, n: &PermGroup) -> Result<FiveTermReport, HomologyError> {
    five_term_check_with(g, n, DEFAULT_BAR_BOUND, None)
}

struct Projection {
    gt: GroupTable,
    qt: GroupTable,
    pi: Vec<u32>,
    section: Vec<u32>,
}

fn projection(
    g: &PermGroup,
    n: &PermGroup,
    bound: u64,
    seed: Option<u64>,
) -> Result<(Projection, PermGroup), HomologyError> {
    let too_big = || HomologyError::OrderBound {
        order: g.order().to_string(),
        bound,
    };
    let gt = GroupTable::new(g, bound).map_err(|_| too_big())?;
    let space = CosetSpace::new(g, n, bound as usize).map_err(HomologyError::Perm)?;
    let q = action_group(&space);
    let qt = GroupTable::new(&q, bound).map_err(|_| too_big())?;
    let pi: Vec<u32> = gt
        .elements
        .iter()
        .map(|x| {
            let images: Vec<u32> = space
                .reps
                .iter()
                .map(|r| space.coset_of(n, &r.mul(x)) as u32)
                .collect();
            qt.index_of(&Permutation::from_images(images).expect("coset action"))
                .expect("element of Q")
        })
        .collect();
    let mut fibres: Vec<Vec<u32>> = vec![Vec::new(); qt.order()];
    for (x, &p) in pi.iter().enumerate() {
        fibres[p as usize].push(x as u32);
    }
    let mut rng = seed.map(ChaCha8Rng::seed_from_u64);
    let section = fibres
        .iter()
        .enumerate()
        .map(|(qx, f)| match (&mut rng, qx) {
            (_, 0) => 0,
            (Some(r), _) => f[r.gen_range(0..f.len())],
            (None, _) => f[0],
        })
        .collect();
    Ok((
        Projection {
            gt,
            qt,
            pi,
            section,
        },
        q,
    ))
}

/// As `five_term_check`, with an order bound and, if `section_seed` is
/// given, a random set-theoretic section G/N → G (identity to identity).
pub fn five_term_check_with(
    g: &PermGroup,
    n: &PermGroup,
    bound: u64,
    section_seed: Option<u64>,
) -> Result<FiveTermReport, HomologyError> {
    let (nmod_inv, nmod) = n_mod_commutators(g, n)?;
    let (pr, q) = projection(g, n, bound, section_seed)?;
    let bar_g = BarComplexSlice::from_table(pr.gt.clone(), true);
    let bar_q = BarComplexSlice::from_table(pr.qt.clone(), true);
    let h2g = bar_g.h2_cycles();
    let h2q = bar_q.h2_cycles();
    let h1g = h1_section(g)?;
    let h1q = h1_section(&q)?;

    // inflation
    let infl_imgs: Vec<Vec<Int>> = h2g
        .cycles
        .iter()
        .map(|z| {
            let mut img = vec![Int::ZERO; bar_q.c2_rank()];
            for (i, c) in z.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let (a, b) = bar_g.pair_of(i);
                if let Some(j) = bar_q.pair_index(pr.pi[a as usize], pr.pi[b as usize]) {
                    img[j] += c;
                }
            }
            h2q.coords(&img)
        })
        .collect();
    // transgression
    let trans_imgs: Vec<Vec<Int>> = h2q
        .cycles
        .iter()
        .map(|z| transgress(&pr, &bar_q, &nmod, z))
        .collect();
    // inclusion N → G
    let incl_imgs: Vec<Vec<Int>> = n.generators().iter().map(|x| h1g.coords(x)).collect();
    // projection G → Q
    let proj_imgs: Vec<Vec<Int>> = g
        .generators()
        .iter()
        .map(|x| h1q.coords(&pr.qt.elements[pr.pi[pr.gt.index_of(x).unwrap() as usize] as usize]))
        .collect();

    let f1 = AbelianHom::from_ambient(&h2g.group, &h2q.group, &infl_imgs);
    let f2 = AbelianHom::from_ambient(&h2q.group, &nmod.quotient, &trans_imgs);
    let f3 = AbelianHom::from_ambient(&nmod.quotient, &h1g.quotient, &incl_imgs);
    let f4 = AbelianHom::from_ambient(&h1g.quotient, &h1q.quotient, &proj_imgs);
    let exact = [
        f1.image() == f2.kernel(),
        f2.image() == f3.kernel(),
        f3.image() == f4.kernel(),
    ];
    let compositions_zero = [(&f1, &f2), (&f2, &f3), (&f3, &f4)].iter().all(|(a, b)| {
        let z = b.target.zero_subgroup();
        a.image().0.row_vecs().iter().all(|v| {
            let img = compose(b, v);
            b.target.subgroup(&[img]) == z
        })
    });
    Ok(FiveTermReport {
        groups: [
            h2g.invariants(),
            h2q.invariants(),
            nmod_inv,
            h1g.invariants(),
            h1q.invariants(),
        ],
        maps: [
            f1.images.clone(),
            f2.images.clone(),
            f3.images.clone(),
            f4.images.clone(),
        ],
        exact,
        compositions_zero,
        quotient_order: pr.qt.order() as u64,
    })
}

/// Image under `f` of an element in the source's reduced coordinates.
fn compose(f: &AbelianHom<'_>, v: &[Int]) -> Vec<Int> {
    let mut acc = vec![Int::ZERO; f.target.ngens()];
    for (c, img) in v.iter().zip(&f.images) {
        for (a, b) in acc.iter_mut().zip(img) {
            *a += &(c * b);
        }
    }
    acc
}

/// Σ n_i (a_i|b_i) ↦ Σ n_i [s(a_i) s(b_i) s(a_i b_i)⁻¹] in N/[G,N].
fn transgress(
    pr: &Projection,
    bar_q: &BarComplexSlice,
    nmod: &AbelianSection,
    z: &[Int],
) -> Vec<Int> {
    let mut acc = vec![Int::ZERO; nmod.quotient.ambient()];
    for (i, c) in z.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let (a, b) = bar_q.pair_of(i);
        let ab = pr.qt.mul(a, b);
        let (sa, sb, sab) = (
            pr.section[a as usize],
            pr.section[b as usize],
            pr.section[ab as usize],
        );
        let x = pr.gt.mul(pr.gt.mul(sa, sb), pr.gt.inv(sab));
        for (t, v) in acc.iter_mut().zip(nmod.coords(&pr.gt.elements[x as usize])) {
            *t += &(c * &v);
        }
    }
    acc
}

/// The transgression images of the cycle generators of H_2(Q), reduced in
/// N/[G,N], for a random section; for checking independence of the section.
pub fn transgression_images(
    g: &PermGroup,
    n: &PermGroup,
    seed: u64,
) -> Result<Vec<Vec<Int>>, HomologyError> {
    let (_, nmod) = n_mod_commutators(g, n)?;
    let (pr, _) = projection(g, n, DEFAULT_BAR_BOUND, Some(seed))?;
    let bar_q = BarComplexSlice::from_table(pr.qt.clone(), true);
    let h2q: H2Cycles = bar_q.h2_cycles();
    Ok(h2q
        .cycles
        .iter()
        .map(|z| nmod.quotient.reduce(&transgress(&pr, &bar_q, &nmod, z)))
        .collect())
}
