//! Right cosets, coset actions and conjugacy of subgroups.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use super::classes::ConjClasses;
use super::group::PermGroup;
use super::perm::Permutation;
use super::PermError;

pub const DEFAULT_INDEX_BOUND: usize = 100_000;

/// Canonical representative of the right coset H·g: at each level of H's
/// stabilizer chain, the orbit point with the least image under g is moved
/// to the base.
pub fn canonical_rep(h: &PermGroup, g: &Permutation) -> Permutation {
    let mut x = g.clone();
    for l in &h.chain().levels {
        let o = *l
            .orbit
            .iter()
            .min_by_key(|&&o| x.image(o as usize))
            .unwrap();
        if o as usize != l.base {
            x = l.transversal[o as usize].as_ref().unwrap().mul(&x);
        }
    }
    x
}

/// The right cosets of H in G with the action of G's generators.
#[derive(Clone, Debug)]
pub struct CosetSpace {
    /// Canonical representatives; index 0 is H itself.
    pub reps: Vec<Permutation>,
    lookup: HashMap<Permutation, usize>,
    /// action[s][i] = index of coset (H reps[i]) * gen_s
    pub action: Vec<Vec<u32>>,
}

impl CosetSpace {
    pub fn new(g: &PermGroup, h: &PermGroup, bound: usize) -> Result<Self, PermError> {
        if !h.is_subgroup_of(g) {
            return Err(PermError::NotASubgroup);
        }
        let index = g.order().div_exact(&h.order());
        if index > crate::exactla::Int::from(bound) {
            return Err(PermError::IndexBoundExceeded {
                index: index.to_string(),
                bound,
            });
        }
        let id = canonical_rep(h, &g.identity());
        let mut reps = vec![id.clone()];
        let mut lookup = HashMap::new();
        lookup.insert(id, 0usize);
        let ngens = g.generators().len();
        let mut action: Vec<Vec<u32>> = vec![Vec::new(); ngens];
        let mut i = 0;
        while i < reps.len() {
            for (s, gen) in g.generators().iter().enumerate() {
                let y = canonical_rep(h, &reps[i].mul(gen));
                let t = match lookup.get(&y) {
                    Some(&t) => t,
                    None => {
                        lookup.insert(y.clone(), reps.len());
                        reps.push(y);
                        reps.len() - 1
                    }
                };
                action[s].push(t as u32);
            }
            i += 1;
        }
        Ok(CosetSpace {
            reps,
            lookup,
            action,
        })
    }

    pub fn index(&self) -> usize {
        self.reps.len()
    }

    /// Index of the coset H·x.
    pub fn coset_of(&self, h: &PermGroup, x: &Permutation) -> usize {
        self.lookup[&canonical_rep(h, x)]
    }

    /// Number of cosets fixed by x.
    pub fn fixed_count(&self, h: &PermGroup, x: &Permutation) -> u64 {
        self.reps
            .iter()
            .filter(|r| h.contains(&r.mul(x).mul(&r.inverse())))
            .count() as u64
    }
}

/// Fixed-point counts of a coset action, one per conjugacy class.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PermChar {
    pub values: Vec<u64>,
}

impl PermChar {
    pub fn of_subgroup(classes: &ConjClasses, space: &CosetSpace, h: &PermGroup) -> PermChar {
        PermChar {
            values: classes
                .representatives
                .iter()
                .map(|x| space.fixed_count(h, x))
                .collect(),
        }
    }

    /// Number of orbits by Burnside's lemma.
    pub fn orbit_count(&self, classes: &ConjClasses) -> u64 {
        let total: u128 = self
            .values
            .iter()
            .zip(&classes.class_sizes)
            .map(|(&v, &s)| v as u128 * s as u128)
            .sum();
        let n: u128 = classes.class_sizes.iter().map(|&s| s as u128).sum();
        (total / n) as u64
    }
}

/// The action of G on the right cosets of H, as a permutation group on
/// [G:H] points, together with its permutation character.
pub fn coset_action(g: &PermGroup, h: &PermGroup) -> Result<(PermGroup, PermChar), PermError> {
    let space = CosetSpace::new(g, h, DEFAULT_INDEX_BOUND)?;
    let classes = super::classes::conjugacy_classes(g)?;
    let chi = PermChar::of_subgroup(&classes, &space, h);
    Ok((action_group(&space), chi))
}

pub fn action_group(space: &CosetSpace) -> PermGroup {
    let gens = space
        .action
        .iter()
        .map(|a| Permutation::from_images_unchecked(a.clone()))
        .collect();
    PermGroup::new(space.index(), gens).expect("degrees agree")
}

/// Canonical right-coset representatives of H in G.
pub fn right_transversal(g: &PermGroup, h: &PermGroup) -> Vec<Permutation> {
    CosetSpace::new(g, h, usize::MAX).expect("subgroup").reps
}

/// Some x in G with x⁻¹ H1 x = H2, or None.
pub fn is_conjugate_subgroups(
    g: &PermGroup,
    h1: &PermGroup,
    h2: &PermGroup,
) -> Result<Option<Permutation>, PermError> {
    if !h1.is_subgroup_of(g) || !h2.is_subgroup_of(g) {
        return Err(PermError::NotASubgroup);
    }
    if h1.order() != h2.order() {
        return Ok(None);
    }
    if h1.same_group(h2) {
        return Ok(Some(g.identity()));
    }
    if h1.orbit_length_multiset() != h2.orbit_length_multiset() {
        return Ok(None);
    }
    if h1.order_u64().is_some_and(|n| n <= 100_000)
        && h1.element_order_multiset() != h2.element_order_multiset()
    {
        return Ok(None);
    }
    let space = CosetSpace::new(g, h1, DEFAULT_INDEX_BOUND)?;
    let found = space
        .reps
        .par_iter()
        .find_first(|x| h1.generators().iter().all(|y| h2.contains(&y.conjugate(x))))
        .cloned();
    Ok(found)
}
