//! Conjugacy classes of subgroups of small groups.
//!
//! Works on a multiplication table; subgroups are sorted vectors of element
//! indices, and each conjugacy class is keyed by its order and its
//! lexicographically least member.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::group::PermGroup;
use super::perm::Permutation;
use super::PermError;

pub const SUBGROUP_ORDER_BOUND: u64 = 2000;
pub const BRUTE_FORCE_BOUND: u64 = 720;

/// Multiplication table of a small group. Element 0 is the identity.
#[derive(Clone, Debug)]
pub struct GroupTable {
    pub elements: Vec<Permutation>,
    index: HashMap<Permutation, u32>,
    mul: Vec<u32>,
    inv: Vec<u32>,
}

impl GroupTable {
    pub fn new(g: &PermGroup, bound: u64) -> Result<Self, PermError> {
        let n = g.order_bounded(bound)? as usize;
        let elements = g.elements();
        debug_assert_eq!(elements.len(), n);
        let index: HashMap<Permutation, u32> = elements
            .iter()
            .enumerate()
            .map(|(i, x)| (x.clone(), i as u32))
            .collect();
        let mut mul = vec![0u32; n * n];
        for (i, x) in elements.iter().enumerate() {
            for (j, y) in elements.iter().enumerate() {
                mul[i * n + j] = index[&x.mul(y)];
            }
        }
        let inv = (0..n)
            .map(|i| (0..n).find(|&j| mul[i * n + j] == 0).unwrap() as u32)
            .collect();
        Ok(GroupTable {
            elements,
            index,
            mul,
            inv,
        })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.elements.len() + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    pub fn index_of(&self, x: &Permutation) -> Option<u32> {
        self.index.get(x).copied()
    }

    /// g⁻¹ a g
    #[inline]
    pub fn conj(&self, a: u32, g: u32) -> u32 {
        self.mul(self.mul(self.inv(g), a), g)
    }

    /// Sorted element set of the subgroup generated by `gens`.
    pub fn closure(&self, gens: &[u32]) -> Vec<u32> {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut out = vec![0u32];
        let mut i = 0;
        while i < out.len() {
            for &g in gens {
                let y = self.mul(out[i], g);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    out.push(y);
                }
            }
            i += 1;
        }
        out.sort_unstable();
        out
    }

    fn conjugate_set(&self, set: &[u32], g: u32) -> Vec<u32> {
        let mut v: Vec<u32> = set.iter().map(|&a| self.conj(a, g)).collect();
        v.sort_unstable();
        v
    }

    /// All distinct conjugates of a subgroup.
    pub fn conjugates(&self, set: &[u32]) -> Vec<Vec<u32>> {
        let mut seen: HashSet<Vec<u32>> = HashSet::new();
        let mut out = Vec::new();
        for g in 0..self.order() as u32 {
            let c = self.conjugate_set(set, g);
            if seen.insert(c.clone()) {
                out.push(c);
            }
        }
        out
    }

    fn normalizer(&self, set: &[u32]) -> Vec<u32> {
        let members: HashSet<u32> = set.iter().copied().collect();
        (0..self.order() as u32)
            .filter(|&g| set.iter().all(|&a| members.contains(&self.conj(a, g))))
            .collect()
    }

    /// Whether ⟨gens⟩ (with element set `set`) equals its derived subgroup.
    fn is_perfect(&self, set: &[u32], gens: &[u32]) -> bool {
        let mut comms = Vec::new();
        for (i, &a) in gens.iter().enumerate() {
            for &b in &gens[i + 1..] {
                let c = self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b));
                comms.extend(set.iter().map(|&s| self.conj(c, s)));
            }
        }
        comms.sort_unstable();
        comms.dedup();
        self.closure(&comms).len() == set.len()
    }

    fn to_group(&self, g: &PermGroup, set: &[u32]) -> PermGroup {
        // greedy generators
        let mut gens: Vec<u32> = Vec::new();
        let mut cur = vec![0u32];
        for &x in set {
            if cur.binary_search(&x).is_err() {
                gens.push(x);
                cur = self.closure(&gens);
                if cur.len() == set.len() {
                    break;
                }
            }
        }
        g.subgroup(
            gens.iter()
                .map(|&i| self.elements[i as usize].clone())
                .collect(),
        )
    }
}

fn is_prime_small(n: usize) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Conjugacy class representatives of subgroups together with a flag saying
/// whether the list is known to be complete.
#[derive(Clone, Debug)]
pub struct SubgroupClasses {
    pub classes: Vec<PermGroup>,
    pub complete: bool,
}

/// Cyclic extension: every subgroup U of a solvable group arises from a
/// normal subgroup of prime index in it, so starting from the trivial group
/// and adjoining elements of N(U) of prime order modulo U reaches every
/// class. For non-solvable groups the start set also contains perfect
/// subgroups found by random 2-generation.
pub fn subgroups_up_to_conjugacy(g: &PermGroup, seed: u64) -> Result<SubgroupClasses, PermError> {
    let t = GroupTable::new(g, SUBGROUP_ORDER_BOUND)?;
    let solvable = g.is_solvable();
    let mut starts: Vec<Vec<u32>> = vec![vec![0]];
    if !solvable {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = t.order() as u32;
        let mut tried: HashSet<Vec<u32>> = HashSet::new();
        for _ in 0..(40 * t.order()).min(20_000) {
            let a = rng.gen_range(0..n);
            let b = rng.gen_range(0..n);
            let s = t.closure(&[a, b]);
            if s.len() > 1 && tried.insert(s.clone()) && t.is_perfect(&s, &[a, b]) {
                starts.push(s);
            }
        }
    }
    let found = cyclic_extension(&t, starts);
    let mut complete = solvable;
    if !solvable && (t.order() as u64) <= BRUTE_FORCE_BOUND {
        let brute = brute_force_keys(&t);
        complete = brute.len() == found.len() && brute.keys().all(|k| found.contains_key(k));
    }
    let classes = found.values().map(|s| t.to_group(g, s)).collect();
    Ok(SubgroupClasses { classes, complete })
}

struct ClassStore {
    /// keyed by (order, least conjugate)
    classes: BTreeMap<(usize, Vec<u32>), Vec<u32>>,
    /// every conjugate of every stored class
    seen: HashSet<Vec<u32>>,
}

impl ClassStore {
    fn new() -> Self {
        ClassStore {
            classes: BTreeMap::new(),
            seen: HashSet::new(),
        }
    }

    /// Records the class of `v`; true if it was new.
    fn insert(&mut self, t: &GroupTable, v: &[u32]) -> bool {
        if self.seen.contains(v) {
            return false;
        }
        let conj = t.conjugates(v);
        let key = conj.iter().min().unwrap().clone();
        self.seen.extend(conj);
        self.classes.insert((v.len(), key), v.to_vec());
        true
    }
}

fn cyclic_extension(
    t: &GroupTable,
    starts: Vec<Vec<u32>>,
) -> BTreeMap<(usize, Vec<u32>), Vec<u32>> {
    let mut store = ClassStore::new();
    let mut queue: VecDeque<Vec<u32>> = VecDeque::new();
    for s in starts {
        if store.insert(t, &s) {
            queue.push_back(s);
        }
    }
    while let Some(u) = queue.pop_front() {
        let members: HashSet<u32> = u.iter().copied().collect();
        for g in t.normalizer(&u) {
            if members.contains(&g) {
                continue;
            }
            // order of g modulo U
            let mut k = 1usize;
            let mut x = g;
            while !members.contains(&x) {
                x = t.mul(x, g);
                k += 1;
            }
            if !is_prime_small(k) {
                continue;
            }
            let mut v: Vec<u32> = Vec::with_capacity(u.len() * k);
            let mut p = 0u32;
            for _ in 0..k {
                v.extend(u.iter().map(|&a| t.mul(a, p)));
                p = t.mul(p, g);
            }
            v.sort_unstable();
            if store.insert(t, &v) {
                queue.push_back(v);
            }
        }
    }
    store.classes
}

/// All classes by joining class representatives with single elements.
fn brute_force_keys(t: &GroupTable) -> BTreeMap<(usize, Vec<u32>), Vec<u32>> {
    let mut store = ClassStore::new();
    store.insert(t, &[0]);
    let mut queue: VecDeque<Vec<u32>> = VecDeque::from([vec![0u32]]);
    while let Some(u) = queue.pop_front() {
        let members: HashSet<u32> = u.iter().copied().collect();
        for g in 0..t.order() as u32 {
            if members.contains(&g) {
                continue;
            }
            let mut gens = u.clone();
            gens.push(g);
            let v = t.closure(&gens);
            if store.insert(t, &v) {
                queue.push_back(v);
            }
        }
    }
    store.classes
}

/// Brute-force class representatives; a test oracle for small groups.
pub fn subgroups_brute_force(g: &PermGroup) -> Result<Vec<PermGroup>, PermError> {
    let t = GroupTable::new(g, BRUTE_FORCE_BOUND)?;
    Ok(brute_force_keys(&t)
        .values()
        .map(|s| t.to_group(g, s))
        .collect())
}
