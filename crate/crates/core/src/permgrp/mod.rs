//! Finite permutation groups: stabilizer chains, classes, cosets and a
//! small catalog of groups. Points are 0-based internally and 1-based in
//! every text format.

pub mod catalog;
mod chain;
mod classes;
mod cosets;
mod group;
mod perm;
mod subgroups;

pub use catalog::{
    alternating, cyclic, dicyclic, dihedral, direct_power, direct_product, fano_plane, klein_four,
    psl2, quaternion, regular_from_mul, scott_pair, semidirect_cyclic, small_catalog, symmetric,
};
pub use classes::{conjugacy_classes, conjugacy_classes_bounded, ConjClasses, DEFAULT_ORDER_BOUND};
pub use cosets::{
    action_group, canonical_rep, coset_action, is_conjugate_subgroups, right_transversal,
    CosetSpace, PermChar, DEFAULT_INDEX_BOUND,
};
pub use group::PermGroup;
pub use perm::Permutation;
pub use subgroups::{
    subgroups_brute_force, subgroups_up_to_conjugacy, GroupTable, SubgroupClasses,
    BRUTE_FORCE_BOUND, SUBGROUP_ORDER_BOUND,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("not a bijection")]
    NotABijection,
    #[error("point {point} outside 1..={degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0} is not an odd prime")]
    NotAnOddPrime(u64),
    #[error("group order {order} exceeds bound {bound}")]
    OrderBoundExceeded { order: String, bound: u64 },
    #[error("index {index} exceeds bound {bound}")]
    IndexBoundExceeded { index: String, bound: usize },
    #[error("not a subgroup")]
    NotASubgroup,
    #[error("action data does not define an automorphism")]
    InvalidAction,
    #[error("search for the Alt(5) pair failed")]
    SearchFailed,
}
