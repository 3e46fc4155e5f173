//! Coset equivalence of subgroups: Gassmann (rational) equivalence by
//! permutation characters, integral equivalence by unimodular combinations
//! of Hecke operators, and surjectivity of product homomorphisms.

mod gassmann;
mod hall;
mod hecke;
mod zcert;

pub use gassmann::{
    gassmann_equivalent, gassmann_pair_search, gassmann_with_classes, permutation_character,
    CatalogEntry, Gassmann, GassmannPair,
};
pub use hall::{hall_product_surjective, product_image_order};
pub use hecke::{double_cosets, DoubleCosetSummary, DoubleCosets, DEFAULT_HECKE_INDEX_BOUND};
pub use zcert::{
    verify_certificate, z_coset_certify, z_coset_certify_with, EquivCertificate, LocalCheck,
    SearchTranscript, ZOptions, ZOutcome, DEFAULT_EFFORT, DEFAULT_LOCAL_PRIMES,
};

use serde::Serialize;
use thiserror::Error;

use crate::permgrp::PermError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CosetError {
    #[error("not a subgroup")]
    NotASubgroup,
    #[error("homomorphisms do not share source and target")]
    Mismatched,
    #[error(transparent)]
    Perm(PermError),
}

/// A re-checkable reason why two subgroups are not coset equivalent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Obstruction {
    /// The fixed-point counts of `representative` on the two coset spaces differ.
    CharacterMismatch {
        class: usize,
        representative: String,
        left: u64,
        right: u64,
    },
    /// Every F_p-combination of the Hecke operators is singular.
    LocalAtP { prime: u64, witness: LocalWitness },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "method", rename_all = "snake_case")]
pub enum LocalWitness {
    /// Each Hecke operator has constant row sum equal to its double coset's
    /// number of Λ-cosets; all of these are divisible by p, so every
    /// combination kills the all-ones vector mod p.
    RowSums { orbit_lengths: Vec<usize> },
    /// All nonzero vectors of F_p^r were tried.
    Exhaustive { combinations: u64 },
}

impl std::fmt::Display for Obstruction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Obstruction::CharacterMismatch {
                representative,
                left,
                right,
                ..
            } => {
                write!(f, "fixed points of {representative}: {left} vs {right}")
            }
            Obstruction::LocalAtP {
                prime,
                witness: LocalWitness::RowSums { .. },
            } => {
                write!(
                    f,
                    "every double coset size is divisible by {prime} times the subgroup order"
                )
            }
            Obstruction::LocalAtP {
                prime,
                witness: LocalWitness::Exhaustive { combinations },
            } => {
                write!(f, "all {combinations} combinations singular mod {prime}")
            }
        }
    }
}
