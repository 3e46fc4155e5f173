use std::collections::HashMap;

use super::group::PermGroup;
use super::perm::Permutation;
use super::PermError;

pub const DEFAULT_ORDER_BOUND: u64 = 10_000_000;

/// Conjugacy classes by orbit enumeration. The identity class comes first;
/// the rest follow the order in which the chain enumerates elements.
#[derive(Clone, Debug)]
pub struct ConjClasses {
    pub representatives: Vec<Permutation>,
    pub class_sizes: Vec<u64>,
    pub centralizer_orders: Vec<u64>,
    class_of: HashMap<Permutation, u32>,
}

impl ConjClasses {
    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }

    /// Index of the class containing x (x must lie in the group).
    pub fn class_of(&self, x: &Permutation) -> Option<usize> {
        self.class_of.get(x).map(|&c| c as usize)
    }

    pub fn group_order(&self) -> u64 {
        self.class_sizes.iter().sum()
    }
}

pub fn conjugacy_classes(g: &PermGroup) -> Result<ConjClasses, PermError> {
    conjugacy_classes_bounded(g, DEFAULT_ORDER_BOUND)
}

pub fn conjugacy_classes_bounded(g: &PermGroup, bound: u64) -> Result<ConjClasses, PermError> {
    let n = g.order_bounded(bound)?;
    let elems = g.elements();
    let mut class_of: HashMap<Permutation, u32> = HashMap::with_capacity(elems.len());
    let mut representatives = Vec::new();
    let mut class_sizes = Vec::new();
    for x in &elems {
        if class_of.contains_key(x) {
            continue;
        }
        let c = representatives.len() as u32;
        representatives.push(x.clone());
        class_of.insert(x.clone(), c);
        let mut orbit = vec![x.clone()];
        let mut i = 0;
        while i < orbit.len() {
            for s in g.generators() {
                let y = orbit[i].conjugate(s);
                if !class_of.contains_key(&y) {
                    class_of.insert(y.clone(), c);
                    orbit.push(y);
                }
            }
            i += 1;
        }
        class_sizes.push(orbit.len() as u64);
    }
    let centralizer_orders = class_sizes.iter().map(|s| n / s).collect();
    Ok(ConjClasses {
        representatives,
        class_sizes,
        centralizer_orders,
        class_of,
    })
}
