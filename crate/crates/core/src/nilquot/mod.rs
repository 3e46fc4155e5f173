//! Nilpotent quotients Γ/Γ_j as weighted polycyclic presentations, their
//! lower central layers, and isomorphism tests between them.
//!
//! Indexing: Γ_0 = Γ and Γ_{j+1} = [Γ, Γ_j], so Γ/Γ_1 is the abelianization
//! and Γ/Γ_j has nilpotency class at most j.

mod collector;
mod iso;
mod pc;
mod quotient;

pub use collector::CollectStrategy;
pub use iso::{
    is_homomorphism, isomorphic_nilpotent, layer_isomorphisms, verify_isomorphism, IsoVerdict,
    EXHAUSTIVE_ORDER_BOUND,
};
pub use pc::{
    layer_invariants, order_or_hirsch, to_finite_presentation, ExpVec, GroupSize, PcPresentation,
};
pub use quotient::{nilpotent_quotient, nilpotent_quotient_with, DEFAULT_MAX_GENERATORS};

use thiserror::Error;

use crate::permgrp::{PermGroup, Permutation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NqError {
    #[error("more than {max_generators} pc generators needed")]
    GeneratorBudget { max_generators: usize },
    #[error("invalid pc presentation: {0}")]
    Invalid(String),
    #[error("pc presentation is not consistent")]
    Inconsistent,
}

/// Group operations on a concrete element type, enough to evaluate words.
pub trait GroupOps<T: Clone> {
    fn one(&self) -> T;
    fn mul(&self, a: &T, b: &T) -> T;
    fn inv(&self, a: &T) -> T;

    fn pow(&self, a: &T, n: i64) -> T {
        let mut base = if n < 0 { self.inv(a) } else { a.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }
}

impl GroupOps<Permutation> for PermGroup {
    fn one(&self) -> Permutation {
        self.identity()
    }

    fn mul(&self, a: &Permutation, b: &Permutation) -> Permutation {
        a.mul(b)
    }

    fn inv(&self, a: &Permutation) -> Permutation {
        a.inverse()
    }
}
