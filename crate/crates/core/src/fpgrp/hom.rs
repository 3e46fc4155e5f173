use super::coset::todd_coxeter;
use super::presentation::FinitePresentation;
use super::word::Word;
use super::FpError;
use crate::permgrp::{PermGroup, Permutation};

/// Budget for the coset enumeration used to check relator images in a
/// finitely presented target.
pub const VALIDATION_MAX_COSETS: usize = 100_000;

/// A homomorphism from a finitely presented group to a permutation group.
#[derive(Clone, Debug)]
pub struct PermHom {
    source: FinitePresentation,
    target: PermGroup,
    images: Vec<Permutation>,
}

impl PermHom {
    pub fn new(
        source: FinitePresentation,
        target: PermGroup,
        images: Vec<Permutation>,
    ) -> Result<Self, FpError> {
        if images.len() != source.n_gens() {
            return Err(FpError::WrongImageCount {
                expected: source.n_gens(),
                found: images.len(),
            });
        }
        for x in &images {
            if x.degree() != target.degree() || !target.contains(x) {
                return Err(FpError::ImageOutsideTarget);
            }
        }
        let h = PermHom {
            source,
            target,
            images,
        };
        for (i, r) in h.source.relators().iter().enumerate() {
            if !h.eval(r).is_identity() {
                return Err(FpError::RelatorViolated { relator: i });
            }
        }
        Ok(h)
    }

    pub fn source(&self) -> &FinitePresentation {
        &self.source
    }

    pub fn target(&self) -> &PermGroup {
        &self.target
    }

    pub fn images(&self) -> &[Permutation] {
        &self.images
    }

    pub fn eval(&self, w: &Word) -> Permutation {
        let mut acc = self.target.identity();
        for (g, e) in w.syllables() {
            acc = acc.mul(&self.images[g].pow(e));
        }
        acc
    }

    /// The subgroup of the target generated by the images.
    pub fn perm_image(&self) -> PermGroup {
        self.target.subgroup(self.images.clone())
    }

    pub fn is_surjective(&self) -> bool {
        self.perm_image().order() == self.target.order()
    }
}

/// A homomorphism between finitely presented groups.
#[derive(Clone, Debug)]
pub struct FpHom {
    source: FinitePresentation,
    target: FinitePresentation,
    images: Vec<Word>,
}

impl FpHom {
    /// Validates that every source relator maps to the identity. A relator
    /// image is accepted when it freely reduces to 1, is a cyclic conjugate
    /// of a target relator or its inverse, or acts trivially on the regular
    /// coset table of a finite target. Anything else is rejected.
    pub fn new(
        source: FinitePresentation,
        target: FinitePresentation,
        images: Vec<Word>,
    ) -> Result<Self, FpError> {
        if images.len() != source.n_gens() {
            return Err(FpError::WrongImageCount {
                expected: source.n_gens(),
                found: images.len(),
            });
        }
        if images
            .iter()
            .any(|w| w.max_generator().is_some_and(|g| g >= target.n_gens()))
        {
            return Err(FpError::ImageOutsideTarget);
        }
        let h = FpHom {
            source,
            target,
            images,
        };
        let tidy = h.target.tidied();
        let mut regular = None;
        for (i, r) in h.source.relators().iter().enumerate() {
            let w = h.eval(r).cyclically_reduced();
            if w.is_identity() || is_cyclic_relator(&w, tidy.relators()) {
                continue;
            }
            if regular.is_none() {
                regular = Some(todd_coxeter(&h.target, &[], VALIDATION_MAX_COSETS));
            }
            match regular.as_ref().unwrap() {
                Ok(t) => {
                    if t.act_word(0, &w) != 0 {
                        return Err(FpError::RelatorViolated { relator: i });
                    }
                }
                Err(_) => return Err(FpError::ValidationUndetermined { relator: i }),
            }
        }
        Ok(h)
    }

    pub fn identity(p: &FinitePresentation) -> Self {
        FpHom {
            source: p.clone(),
            target: p.clone(),
            images: p.generators(),
        }
    }

    pub fn source(&self) -> &FinitePresentation {
        &self.source
    }

    pub fn target(&self) -> &FinitePresentation {
        &self.target
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn eval(&self, w: &Word) -> Word {
        w.substitute(&self.images)
    }
}

fn is_cyclic_relator(w: &Word, relators: &[Word]) -> bool {
    let letters = |w: &Word| -> Vec<(usize, i64)> { w.letters().collect() };
    let target = letters(w);
    relators.iter().any(|r| {
        [letters(r), letters(&r.inverse())].iter().any(|v| {
            v.len() == target.len()
                && (0..v.len()).any(|k| v[k..].iter().chain(&v[..k]).eq(target.iter()))
        })
    })
}

/// Either kind of homomorphism.
#[derive(Clone, Debug)]
pub enum GroupHom {
    Perm(PermHom),
    Fp(FpHom),
}

impl GroupHom {
    pub fn source(&self) -> &FinitePresentation {
        match self {
            GroupHom::Perm(h) => h.source(),
            GroupHom::Fp(h) => h.source(),
        }
    }
}
