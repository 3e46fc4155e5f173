//! Finitely presented groups: words, presentations, homomorphisms, coset
//! enumeration and Reidemeister–Schreier rewriting.

mod coset;
mod hom;
mod parse;
mod presentation;
mod rs;
mod word;

pub use coset::{todd_coxeter, todd_coxeter_with, CosetTable, Strategy};
pub use hom::{FpHom, GroupHom, PermHom, VALIDATION_MAX_COSETS};
pub use parse::parse_word;
pub use presentation::{default_names, FinitePresentation};
pub use rs::{reidemeister_schreier, SubgroupPresentation};
pub use word::Word;

use thiserror::Error;

use crate::exactla::IntMatrix;
use crate::permgrp::{PermGroup, Permutation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FpError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("relator {relator} uses a generator out of range")]
    GeneratorOutOfRange { relator: usize },
    #[error("coset enumeration exceeded {max_cosets} cosets (index unknown or larger)")]
    CosetBudgetExceeded { max_cosets: usize },
    #[error("coset table does not match the presentation")]
    IncompatibleTable,
    #[error("expected {expected} generator images, found {found}")]
    WrongImageCount { expected: usize, found: usize },
    #[error("generator image outside the target")]
    ImageOutsideTarget,
    #[error("relator {relator} does not map to the identity")]
    RelatorViolated { relator: usize },
    #[error("could not decide whether relator {relator} maps to the identity")]
    ValidationUndetermined { relator: usize },
}

/// Relators × generators matrix of exponent sums.
pub fn abelianization_matrix(pres: &FinitePresentation) -> IntMatrix {
    pres.abelianization_matrix()
}

/// The subgroup of the target generated by the images of a homomorphism.
pub fn perm_image(hom: &PermHom) -> PermGroup {
    hom.perm_image()
}

/// Presentation of a finite permutation group read off a spanning tree of
/// its Cayley graph on the given generators: one generator per permutation
/// and one relator per non-tree edge.
pub fn cayley_presentation(g: &PermGroup) -> (FinitePresentation, Vec<Permutation>) {
    let gens: Vec<Permutation> = g.reduced_generators();
    let n = gens.len();
    let mut index = std::collections::HashMap::new();
    let id = g.identity();
    index.insert(id.clone(), 0usize);
    let mut elems = vec![id];
    let mut words = vec![Word::identity()];
    let mut relators = Vec::new();
    let mut i = 0;
    while i < elems.len() {
        for (k, s) in gens.iter().enumerate() {
            let y = elems[i].mul(s);
            let w = words[i].mul(&Word::gen(k));
            match index.get(&y) {
                Some(&j) => {
                    let r = w.mul(&words[j].inverse());
                    if !r.is_identity() {
                        relators.push(r);
                    }
                }
                None => {
                    index.insert(y.clone(), elems.len());
                    elems.push(y);
                    words.push(w);
                }
            }
        }
        i += 1;
    }
    let pres = FinitePresentation::new(n, relators)
        .expect("generators in range")
        .tidied();
    (pres, gens)
}
