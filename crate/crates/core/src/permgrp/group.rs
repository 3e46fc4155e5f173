use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::OnceLock;

use rand::Rng;

use super::chain::StabChain;
use super::perm::Permutation;
use super::PermError;
use crate::exactla::{AbelianInvariants, Int};

/// A permutation group given by generators. The stabilizer chain is built
/// on first use and cached.
#[derive(Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: OnceLock<StabChain>,
}

impl Clone for PermGroup {
    fn clone(&self) -> Self {
        let chain = OnceLock::new();
        if let Some(c) = self.chain.get() {
            let _ = chain.set(c.clone());
        }
        PermGroup {
            degree: self.degree,
            generators: self.generators.clone(),
            chain,
        }
    }
}

impl serde::Serialize for PermGroup {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let gens: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
        let mut st = s.serialize_struct("PermGroup", 2)?;
        st.serialize_field("degree", &self.degree)?;
        st.serialize_field("generators", &gens)?;
        st.end()
    }
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self, PermError> {
        for g in &generators {
            if g.degree() != degree {
                return Err(PermError::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        Ok(PermGroup {
            degree,
            generators,
            chain: OnceLock::new(),
        })
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup {
            degree,
            generators: Vec::new(),
            chain: OnceLock::new(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    pub(crate) fn chain(&self) -> &StabChain {
        self.chain
            .get_or_init(|| StabChain::build(self.degree, &self.generators))
    }

    pub fn base(&self) -> Vec<usize> {
        self.chain().base()
    }

    /// Fundamental orbit lengths along the base.
    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.chain().levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn order(&self) -> Int {
        self.chain()
            .levels
            .iter()
            .map(|l| Int::from(l.orbit.len()))
            .product()
    }

    /// Order as u64, when it fits.
    pub fn order_u64(&self) -> Option<u64> {
        self.chain()
            .levels
            .iter()
            .try_fold(1u64, |acc, l| acc.checked_mul(l.orbit.len() as u64))
    }

    pub(crate) fn order_bounded(&self, bound: u64) -> Result<u64, PermError> {
        match self.order_u64() {
            Some(n) if n <= bound => Ok(n),
            _ => Err(PermError::OrderBoundExceeded {
                order: self.order().to_string(),
                bound,
            }),
        }
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && self.chain().contains(g)
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.iter().all(Permutation::is_identity)
    }

    pub fn is_subgroup_of(&self, g: &PermGroup) -> bool {
        self.degree == g.degree && self.generators.iter().all(|x| g.contains(x))
    }

    pub fn same_group(&self, other: &PermGroup) -> bool {
        self.is_subgroup_of(other) && other.is_subgroup_of(self)
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.generators;
        (0..g.len()).all(|i| (i + 1..g.len()).all(|j| g[i].mul(&g[j]) == g[j].mul(&g[i])))
    }

    pub fn subgroup(&self, gens: Vec<Permutation>) -> PermGroup {
        PermGroup {
            degree: self.degree,
            generators: gens,
            chain: OnceLock::new(),
        }
    }

    /// All elements, in the order given by the stabilizer chain. The
    /// identity comes first.
    pub fn elements(&self) -> Vec<Permutation> {
        let chain = self.chain();
        let mut out = vec![self.identity()];
        for l in chain.levels.iter().rev() {
            let mut next = Vec::with_capacity(out.len() * l.orbit.len());
            for &b in &l.orbit {
                let u = l.transversal[b as usize].as_ref().unwrap();
                for h in &out {
                    next.push(h.mul(u));
                }
            }
            out = next;
        }
        out
    }

    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Permutation {
        let mut g = self.identity();
        for l in self.chain().levels.iter().rev() {
            let b = l.orbit[rng.gen_range(0..l.orbit.len())];
            g = g.mul(l.transversal[b as usize].as_ref().unwrap());
        }
        g
    }

    /// Orbits of the group on its points, each sorted, ordered by least point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for s in 0..self.degree {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut orb = vec![s];
            let mut i = 0;
            while i < orb.len() {
                for g in &self.generators {
                    let c = g.image(orb[i]);
                    if !seen[c] {
                        seen[c] = true;
                        orb.push(c);
                    }
                }
                i += 1;
            }
            orb.sort_unstable();
            out.push(orb);
        }
        out
    }

    pub fn orbit_length_multiset(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.orbits().iter().map(Vec::len).collect();
        v.sort_unstable();
        v
    }

    pub fn is_transitive(&self) -> bool {
        self.orbits().len() <= 1
    }

    /// Smallest subgroup of `self` containing `gens` and normalized by
    /// `self`.
    pub fn normal_closure(&self, gens: &[Permutation]) -> PermGroup {
        let mut ngens: Vec<Permutation> = Vec::new();
        let mut n = self.subgroup(Vec::new());
        let mut queue: VecDeque<Permutation> = gens.iter().cloned().collect();
        while let Some(x) = queue.pop_front() {
            if n.contains(&x) {
                continue;
            }
            ngens.push(x.clone());
            n = self.subgroup(ngens.clone());
            for g in &self.generators {
                queue.push_back(x.conjugate(g));
            }
        }
        n
    }

    /// [self, self]
    pub fn derived_subgroup(&self) -> PermGroup {
        let g = &self.generators;
        let mut comms = Vec::new();
        for i in 0..g.len() {
            for j in i + 1..g.len() {
                comms.push(Permutation::commutator(&g[i], &g[j]));
            }
        }
        self.normal_closure(&comms)
    }

    /// [N, self] for a normal subgroup N of self.
    pub fn commutator_with(&self, n: &PermGroup) -> PermGroup {
        let mut comms = Vec::new();
        for x in n.generators() {
            for g in &self.generators {
                comms.push(Permutation::commutator(x, g));
            }
        }
        self.normal_closure(&comms)
    }

    /// γ_1 = G, γ_{i+1} = [γ_i, G], until it stabilizes.
    pub fn lower_central_series(&self) -> Vec<PermGroup> {
        let mut series = vec![self.clone()];
        loop {
            let last = series.last().unwrap();
            let next = self.commutator_with(last);
            if next.order() == last.order() {
                break;
            }
            let done = next.is_trivial() || next.order().is_one();
            series.push(next);
            if done {
                break;
            }
        }
        series
    }

    pub fn derived_series(&self) -> Vec<PermGroup> {
        let mut series = vec![self.clone()];
        loop {
            let last = series.last().unwrap();
            let next = last.derived_subgroup();
            if next.order() == last.order() {
                break;
            }
            series.push(next);
        }
        series
    }

    pub fn is_solvable(&self) -> bool {
        self.derived_series().last().unwrap().order().is_one()
    }

    pub fn is_nilpotent(&self) -> bool {
        self.lower_central_series().last().unwrap().order().is_one()
    }

    pub fn is_perfect(&self) -> bool {
        self.derived_subgroup().order() == self.order()
    }

    pub fn is_normal_in(&self, g: &PermGroup) -> bool {
        self.generators
            .iter()
            .all(|x| g.generators.iter().all(|y| self.contains(&x.conjugate(y))))
    }

    /// Greedy reduction of the generating set: a generator is kept only if
    /// it is not already in the group generated by the earlier ones.
    pub fn reduced_generators(&self) -> Vec<Permutation> {
        let mut kept: Vec<Permutation> = Vec::new();
        let mut h = self.subgroup(Vec::new());
        for g in &self.generators {
            if !h.contains(g) {
                kept.push(g.clone());
                h = self.subgroup(kept.clone());
            }
        }
        kept
    }

    /// Invariants of G/[G,G].
    pub fn abelianization_finite(&self) -> AbelianInvariants {
        let d = self.derived_subgroup();
        abelian_invariants_of_quotient(self, &d)
    }

    /// Element orders with multiplicity, sorted.
    pub fn element_order_multiset(&self) -> Vec<u64> {
        let mut v: Vec<u64> = self.elements().iter().map(Permutation::order).collect();
        v.sort_unstable();
        v
    }

    /// The center, by enumeration.
    pub fn center(&self) -> PermGroup {
        let gens: Vec<Permutation> = self
            .elements()
            .into_iter()
            .filter(|x| self.generators.iter().all(|g| x.mul(g) == g.mul(x)))
            .collect();
        let h = self.subgroup(gens);
        self.subgroup(h.reduced_generators())
    }

    /// Normalizer of H in self, by enumeration.
    pub fn normalizer(&self, h: &PermGroup) -> PermGroup {
        let gens: Vec<Permutation> = self
            .elements()
            .into_iter()
            .filter(|x| h.generators.iter().all(|y| h.contains(&y.conjugate(x))))
            .collect();
        let n = self.subgroup(gens);
        self.subgroup(n.reduced_generators())
    }

    /// Membership test by exhaustive closure; used as an oracle in tests.
    pub fn closure_elements(&self) -> HashSet<Permutation> {
        let mut seen: HashSet<Permutation> = HashSet::new();
        let id = self.identity();
        seen.insert(id.clone());
        let mut queue = vec![id];
        while let Some(x) = queue.pop() {
            for g in &self.generators {
                let y = x.mul(g);
                if seen.insert(y.clone()) {
                    queue.push(y);
                }
            }
        }
        seen
    }

    /// Parses the text format: `degree n`, then one generator per line.
    pub fn parse(text: &str) -> Result<PermGroup, PermError> {
        let mut lines = text
            .lines()
            .map(|l| l.split('#').next().unwrap().trim())
            .filter(|l| !l.is_empty());
        let first = lines
            .next()
            .ok_or_else(|| PermError::Parse("empty input".into()))?;
        let mut parts = first.split_whitespace();
        if parts.next() != Some("degree") {
            return Err(PermError::Parse("first line must be `degree n`".into()));
        }
        let degree: usize = parts
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| PermError::Parse("bad degree".into()))?;
        let gens: Result<Vec<Permutation>, PermError> =
            lines.map(|l| Permutation::parse(degree, l)).collect();
        PermGroup::new(degree, gens?)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("degree {}\n", self.degree);
        for g in &self.generators {
            s.push_str(&g.to_string());
            s.push('\n');
        }
        s
    }
}

/// Invariants of the abelian quotient G/N: Z^k modulo the Schreier relations
/// of a spanning tree of the Cayley graph of G/N.
pub(crate) fn abelian_invariants_of_quotient(g: &PermGroup, n: &PermGroup) -> AbelianInvariants {
    use crate::exactla::{cokernel_invariants, IntMatrix};
    let k = g.generators().len();
    let canon = |x: &Permutation| super::cosets::canonical_rep(n, x);
    let mut index: HashMap<Permutation, usize> = HashMap::new();
    let mut coord: Vec<Vec<i64>> = Vec::new();
    let mut elems: Vec<Permutation> = Vec::new();
    let id = canon(&g.identity());
    index.insert(id.clone(), 0);
    coord.push(vec![0; k]);
    elems.push(id);
    let mut rels: Vec<Vec<Int>> = Vec::new();
    let mut i = 0;
    while i < elems.len() {
        for (j, s) in g.generators().iter().enumerate() {
            let y = canon(&elems[i].mul(s));
            let mut c = coord[i].clone();
            c[j] += 1;
            match index.get(&y) {
                Some(&t) => {
                    let r: Vec<Int> = c
                        .iter()
                        .zip(&coord[t])
                        .map(|(a, b)| Int::from(a - b))
                        .collect();
                    if r.iter().any(|x| !x.is_zero()) {
                        rels.push(r);
                    }
                }
                None => {
                    index.insert(y.clone(), elems.len());
                    elems.push(y);
                    coord.push(c);
                }
            }
        }
        i += 1;
    }
    let m = IntMatrix::from_rows(k, &rels);
    cokernel_invariants(&m, k).expect("consistent dimensions")
}
