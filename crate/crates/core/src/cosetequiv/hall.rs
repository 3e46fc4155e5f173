//! Surjectivity of a product of homomorphisms F → T^s.

use super::CosetError;
use crate::exactla::Int;
use crate::fpgrp::PermHom;
use crate::permgrp::{PermGroup, Permutation};

/// Order of the image of x ↦ (φ_1(x), …, φ_s(x)), computed on the disjoint
/// union of the s copies of the target's permutation domain.
pub fn product_image_order(homs: &[PermHom]) -> Result<Int, CosetError> {
    let Some(first) = homs.first() else {
        return Ok(Int::ONE);
    };
    let target = first.target();
    for h in &homs[1..] {
        if h.source() != first.source() || !h.target().same_group(target) {
            return Err(CosetError::Mismatched);
        }
    }
    let d = target.degree();
    let total = d * homs.len();
    let gens: Vec<Permutation> = (0..first.source().n_gens())
        .map(|k| {
            let mut images = Vec::with_capacity(total);
            for (i, h) in homs.iter().enumerate() {
                images.extend(h.images()[k].images().iter().map(|&x| x + (i * d) as u32));
            }
            Permutation::from_images(images).expect("block images form a permutation")
        })
        .collect();
    let image = PermGroup::new(total, gens).map_err(CosetError::Perm)?;
    Ok(image.order())
}

/// True iff the product homomorphism into target^s is onto.
pub fn hall_product_surjective(homs: &[PermHom]) -> Result<bool, CosetError> {
    let Some(first) = homs.first() else {
        return Ok(true);
    };
    let order = product_image_order(homs)?;
    let mut full = Int::ONE;
    let t = first.target().order();
    for _ in homs {
        full = &full * &t;
    }
    Ok(order == full)
}
