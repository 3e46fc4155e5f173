//! Integral homology in low degrees: H_1 of finitely presented groups, H_1
//! and H_2 of finite permutation groups via the bar complex, N/[G,N], and
//! the five-term exact sequence of a group extension.

mod bar;
mod fiveterm;

pub use bar::{
    h2_finite_bar, h2_finite_bar_with, h2_unnormalized, BarComplexSlice, H2Cycles,
    DEFAULT_BAR_BOUND, DENSE_ORDER_LIMIT,
};
pub use fiveterm::{
    five_term_check, five_term_check_with, h1_section, n_mod_commutators, transgression_images,
    AbelianSection, FiveTermReport,
};

use thiserror::Error;

use crate::exactla::{cokernel_invariants, AbelianInvariants};
use crate::fpgrp::FinitePresentation;
use crate::permgrp::{PermError, PermGroup};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error("group order {order} exceeds the bound {bound}")]
    OrderBound { order: String, bound: u64 },
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("not a subgroup")]
    NotASubgroup,
    #[error(transparent)]
    Perm(PermError),
}

/// H_1 of a finitely presented group: the cokernel of the exponent-sum
/// matrix.
pub fn h1_fp(pres: &FinitePresentation) -> AbelianInvariants {
    cokernel_invariants(&pres.abelianization_matrix(), pres.n_gens())
        .expect("matrix has one column per generator")
}

/// H_1 of a finite permutation group.
pub fn h1_perm(g: &PermGroup) -> AbelianInvariants {
    g.abelianization_finite()
}
