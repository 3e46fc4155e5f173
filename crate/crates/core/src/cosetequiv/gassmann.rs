//! Gassmann equivalence: equal permutation characters.

use serde::Serialize;

use super::{CosetError, Obstruction};
use crate::exactla::Int;
use crate::permgrp::{
    conjugacy_classes, subgroups_up_to_conjugacy, ConjClasses, CosetSpace, PermChar, PermGroup,
    DEFAULT_INDEX_BOUND,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum Gassmann {
    Equivalent { character: Vec<u64> },
    Inequivalent { obstruction: Obstruction },
}

impl Gassmann {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, Gassmann::Equivalent { .. })
    }
}

pub fn permutation_character(
    classes: &ConjClasses,
    omega: &PermGroup,
    h: &PermGroup,
) -> Result<PermChar, CosetError> {
    let space = CosetSpace::new(omega, h, DEFAULT_INDEX_BOUND).map_err(CosetError::Perm)?;
    Ok(PermChar::of_subgroup(classes, &space, h))
}

/// Compares the permutation characters of Ω on Ω/Γ and Ω/Λ class by class.
pub fn gassmann_equivalent(
    omega: &PermGroup,
    gamma: &PermGroup,
    lambda: &PermGroup,
) -> Result<Gassmann, CosetError> {
    let classes = conjugacy_classes(omega).map_err(CosetError::Perm)?;
    gassmann_with_classes(&classes, omega, gamma, lambda)
}

pub fn gassmann_with_classes(
    classes: &ConjClasses,
    omega: &PermGroup,
    gamma: &PermGroup,
    lambda: &PermGroup,
) -> Result<Gassmann, CosetError> {
    if !gamma.is_subgroup_of(omega) || !lambda.is_subgroup_of(omega) {
        return Err(CosetError::NotASubgroup);
    }
    if gamma.order() != lambda.order() {
        let index = |h: &PermGroup| {
            omega
                .order()
                .div_exact(&h.order())
                .to_i64()
                .unwrap_or(i64::MAX) as u64
        };
        return Ok(Gassmann::Inequivalent {
            obstruction: Obstruction::CharacterMismatch {
                class: 0,
                representative: classes.representatives[0].to_string(),
                left: index(gamma),
                right: index(lambda),
            },
        });
    }
    let a = permutation_character(classes, omega, gamma)?;
    let b = permutation_character(classes, omega, lambda)?;
    match (0..classes.len()).find(|&c| a.values[c] != b.values[c]) {
        None => Ok(Gassmann::Equivalent {
            character: a.values,
        }),
        Some(c) => Ok(Gassmann::Inequivalent {
            obstruction: Obstruction::CharacterMismatch {
                class: c,
                representative: classes.representatives[c].to_string(),
                left: a.values[c],
                right: b.values[c],
            },
        }),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GassmannPair {
    pub gamma: PermGroup,
    pub lambda: PermGroup,
    pub order: Int,
    pub index: Int,
}

#[derive(Clone, Debug, Serialize)]
pub struct CatalogEntry {
    pub name: String,
    pub order: Int,
    pub subgroup_classes: usize,
    pub complete: bool,
    pub pairs: Vec<GassmannPair>,
    pub skipped: Option<String>,
}

/// All unordered pairs of distinct conjugacy classes of subgroups with equal
/// permutation characters, for every group of the catalog. Groups whose
/// subgroup classes cannot be enumerated are skipped with a reason.
pub fn gassmann_pair_search(catalog: &[(String, PermGroup)], seed: u64) -> Vec<CatalogEntry> {
    catalog
        .iter()
        .map(|(name, omega)| {
            let mut entry = CatalogEntry {
                name: name.clone(),
                order: omega.order(),
                subgroup_classes: 0,
                complete: false,
                pairs: Vec::new(),
                skipped: None,
            };
            let classes = match subgroups_up_to_conjugacy(omega, seed) {
                Ok(c) => c,
                Err(e) => {
                    entry.skipped = Some(e.to_string());
                    return entry;
                }
            };
            entry.subgroup_classes = classes.classes.len();
            entry.complete = classes.complete;
            let cc = match conjugacy_classes(omega) {
                Ok(c) => c,
                Err(e) => {
                    entry.skipped = Some(e.to_string());
                    return entry;
                }
            };
            let chars: Vec<(Int, PermChar)> = classes
                .classes
                .iter()
                .map(|h| {
                    (
                        h.order(),
                        permutation_character(&cc, omega, h).expect("subgroup of bounded index"),
                    )
                })
                .collect();
            for i in 0..chars.len() {
                for j in i + 1..chars.len() {
                    if chars[i] == chars[j] {
                        let (gamma, lambda) = (&classes.classes[i], &classes.classes[j]);
                        entry.pairs.push(GassmannPair {
                            gamma: gamma.clone(),
                            lambda: lambda.clone(),
                            order: gamma.order(),
                            index: omega.order().div_exact(&gamma.order()),
                        });
                    }
                }
            }
            entry
        })
        .collect()
}
