//! Weighted polycyclic presentations of nilpotent groups.

use std::fmt::{self, Write as _};

use serde::Serialize;

use super::collector::{syllables, CollectStrategy, Collector};
use super::{GroupOps, NqError};
use crate::exactla::{cokernel_invariants, AbelianInvariants, Int, IntMatrix};
use crate::fpgrp::{FinitePresentation, Word};

/// Exponent vector of a normal form a_1^{e_1} ... a_k^{e_k}; entries of
/// finite generators lie in [0, m_i).
pub type ExpVec = Vec<i64>;

/// A building block of a generator definition: an element of the source
/// group written through earlier pc generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Source {
    /// x_l.
    Generator(usize),
    /// a_g^m · rhs^{-1}.
    Power { g: usize, m: i64, rhs: ExpVec },
    /// [a_j, a_g] · rhs^{-1}.
    Commutator { j: usize, g: usize, rhs: ExpVec },
    /// rhs^{-1} · x_l.
    Image { l: usize, rhs: ExpVec },
}

/// Each pc generator as a product of powers of sources.
pub(crate) type Definition = Vec<(Source, i64)>;

fn eval_word<T: Clone, G: GroupOps<T>>(ops: &G, b: &[T], v: &[i64]) -> T {
    let mut acc = ops.one();
    for (h, e) in syllables(v) {
        acc = ops.mul(&acc, &ops.pow(&b[h], e));
    }
    acc
}

pub(crate) fn eval_source<T: Clone, G: GroupOps<T>>(ops: &G, src: &Source, b: &[T], x: &[T]) -> T {
    match src {
        Source::Generator(l) => x[*l].clone(),
        Source::Power { g, m, rhs } => {
            ops.mul(&ops.pow(&b[*g], *m), &ops.inv(&eval_word(ops, b, rhs)))
        }
        Source::Commutator { j, g, rhs } => {
            let c = ops.mul(&ops.inv(&ops.mul(&b[*g], &b[*j])), &ops.mul(&b[*j], &b[*g]));
            ops.mul(&c, &ops.inv(&eval_word(ops, b, rhs)))
        }
        Source::Image { l, rhs } => ops.mul(&ops.inv(&eval_word(ops, b, rhs)), &x[*l]),
    }
}

/// Images of the pc generators, given images of the source generators.
pub(crate) fn evaluate_definitions<T: Clone, G: GroupOps<T>>(
    ops: &G,
    defs: &[Definition],
    x: &[T],
) -> Vec<T> {
    let mut b: Vec<T> = Vec::with_capacity(defs.len());
    for def in defs {
        let mut acc = ops.one();
        for (src, coef) in def {
            let v = eval_source(ops, src, &b, x);
            acc = ops.mul(&acc, &ops.pow(&v, *coef));
        }
        b.push(acc);
    }
    b
}

/// Order of a polycyclic group, or its Hirsch length when infinite.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupSize {
    Finite(Int),
    Infinite {
        hirsch_length: usize,
        /// Product of the finite relative orders.
        torsion: Int,
    },
}

impl fmt::Display for GroupSize {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSize::Finite(n) => write!(f, "order {n}"),
            GroupSize::Infinite {
                hirsch_length,
                torsion,
            } => {
                write!(f, "Hirsch length {hirsch_length}")?;
                if !torsion.is_one() {
                    write!(f, ", finite relative orders multiply to {torsion}")?;
                }
                Ok(())
            }
        }
    }
}

/// Weighted pc presentation. Generators are sorted by weight; a generator of
/// weight w lies in the (w-1)-th term of the lower central series, counted
/// from the group itself as term 0. Commutators are [x, y] = x⁻¹y⁻¹xy.
#[derive(Clone, Debug, Serialize)]
pub struct PcPresentation {
    names: Vec<String>,
    weights: Vec<usize>,
    relative_orders: Vec<i64>,
    /// Normal form of a_i^{m_i}; zero for infinite generators.
    powers: Vec<ExpVec>,
    /// commutators[j][i] = normal form of [a_j, a_i] for i < j.
    commutators: Vec<Vec<ExpVec>>,
    source_names: Vec<String>,
    images: Vec<ExpVec>,
    class: usize,
    #[serde(skip)]
    definitions: Vec<Definition>,
    #[serde(skip)]
    collector: Collector,
}

impl PartialEq for PcPresentation {
    fn eq(&self, other: &Self) -> bool {
        self.weights == other.weights
            && self.relative_orders == other.relative_orders
            && self.powers == other.powers
            && self.commutators == other.commutators
            && self.images == other.images
            && self.class == other.class
    }
}

fn pc_names(k: usize) -> Vec<String> {
    (1..=k).map(|i| format!("a{i}")).collect()
}

impl PcPresentation {
    /// A pc presentation on its own generators (each source generator is the
    /// corresponding pc generator). Checks shapes, the weight grading and
    /// consistency.
    pub fn new(
        weights: Vec<usize>,
        relative_orders: Vec<i64>,
        powers: Vec<ExpVec>,
        commutators: Vec<Vec<ExpVec>>,
    ) -> Result<Self, NqError> {
        let k = weights.len();
        let bad = |s: &str| Err(NqError::Invalid(s.to_string()));
        if relative_orders.len() != k || powers.len() != k || commutators.len() != k {
            return bad("length mismatch");
        }
        if weights.contains(&0) || weights.windows(2).any(|p| p[0] > p[1]) {
            return bad("weights must be positive and nondecreasing");
        }
        if relative_orders.iter().any(|&m| m < 0 || m == 1) {
            return bad("relative orders must be 0 or at least 2");
        }
        let in_range = |v: &ExpVec| {
            v.len() == k
                && v.iter()
                    .zip(&relative_orders)
                    .all(|(&e, &m)| m == 0 || (0..m).contains(&e))
        };
        for i in 0..k {
            if relative_orders[i] > 0 {
                let p = &powers[i];
                if !in_range(p)
                    || p.iter()
                        .enumerate()
                        .any(|(h, &e)| e != 0 && weights[h] <= weights[i])
                {
                    return bad("power tails must lie in higher weight");
                }
            } else if powers[i].iter().any(|&e| e != 0) {
                return bad("infinite generators have no power relation");
            }
            if commutators[i].len() != i {
                return bad("commutator table must be lower triangular");
            }
            for j in 0..i {
                let c = &commutators[i][j];
                if !in_range(c)
                    || c.iter()
                        .enumerate()
                        .any(|(h, &e)| e != 0 && weights[h] < weights[i] + weights[j])
                {
                    return bad("commutator tails must respect the weight grading");
                }
            }
        }
        let definitions = (0..k).map(|i| vec![(Source::Generator(i), 1)]).collect();
        let images = (0..k)
            .map(|i| {
                let mut v = vec![0; k];
                v[i] = 1;
                v
            })
            .collect();
        let class = weights.last().copied().unwrap_or(0);
        let pc = Self::from_parts(
            weights,
            relative_orders,
            powers,
            commutators,
            pc_names(k),
            images,
            definitions,
            class,
        );
        if !pc.is_consistent() {
            return Err(NqError::Inconsistent);
        }
        Ok(pc)
    }

    #[allow(clippy::too_many_arguments)]
    pub(crate) fn from_parts(
        weights: Vec<usize>,
        relative_orders: Vec<i64>,
        powers: Vec<ExpVec>,
        commutators: Vec<Vec<ExpVec>>,
        source_names: Vec<String>,
        images: Vec<ExpVec>,
        definitions: Vec<Definition>,
        class: usize,
    ) -> Self {
        let collector = Collector::new(relative_orders.clone(), &powers, &commutators);
        PcPresentation {
            names: pc_names(weights.len()),
            weights,
            relative_orders,
            powers,
            commutators,
            source_names,
            images,
            class,
            definitions,
            collector,
        }
    }

    /// The trivial group as a quotient of a group on the given generators.
    pub fn trivial(source_names: Vec<String>) -> Self {
        let images = vec![Vec::new(); source_names.len()];
        Self::from_parts(
            vec![],
            vec![],
            vec![],
            vec![],
            source_names,
            images,
            vec![],
            0,
        )
    }

    pub fn n_gens(&self) -> usize {
        self.weights.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn weights(&self) -> &[usize] {
        &self.weights
    }

    pub fn relative_orders(&self) -> &[i64] {
        &self.relative_orders
    }

    /// Normal form of a_i^{m_i}.
    pub fn power_tail(&self, i: usize) -> &[i64] {
        &self.powers[i]
    }

    /// Normal form of [a_j, a_i], i < j.
    pub fn commutator_tail(&self, j: usize, i: usize) -> &[i64] {
        assert!(i < j, "commutator tails are stored for i < j");
        &self.commutators[j][i]
    }

    /// The nilpotency class bound this presentation was computed for.
    pub fn class(&self) -> usize {
        self.class
    }

    pub fn source_names(&self) -> &[String] {
        &self.source_names
    }

    /// Images of the source generators.
    pub fn images(&self) -> &[ExpVec] {
        &self.images
    }

    /// Indices of the generators of weight w.
    pub fn layer(&self, w: usize) -> std::ops::Range<usize> {
        let start = self.weights.partition_point(|&x| x < w);
        let end = self.weights.partition_point(|&x| x <= w);
        start..end
    }

    pub fn identity(&self) -> ExpVec {
        vec![0; self.n_gens()]
    }

    pub fn generator(&self, i: usize) -> ExpVec {
        let mut v = self.identity();
        v[i] = 1;
        v
    }

    /// Normal form of a word in the pc generators.
    pub fn collect(&self, word: &[(usize, i64)]) -> ExpVec {
        self.collect_with(word, CollectStrategy::FromTheLeft)
    }

    pub fn collect_with(&self, word: &[(usize, i64)], strategy: CollectStrategy) -> ExpVec {
        assert!(
            word.iter().all(|&(g, _)| g < self.n_gens()),
            "generator index out of range"
        );
        match strategy {
            CollectStrategy::FromTheLeft => self.collector.collect(word),
            CollectStrategy::Outermost => self.collector.collect_outermost(word),
        }
    }

    pub fn multiply(&self, a: &[i64], b: &[i64]) -> ExpVec {
        self.collector.mul(&a.to_vec(), &b.to_vec())
    }

    pub fn inverse(&self, a: &[i64]) -> ExpVec {
        self.collector.inv(&a.to_vec())
    }

    pub fn power(&self, a: &[i64], n: i64) -> ExpVec {
        self.collector.pow(&a.to_vec(), n)
    }

    pub fn commutator(&self, a: &[i64], b: &[i64]) -> ExpVec {
        let ab = self.multiply(a, b);
        let ba = self.multiply(b, a);
        self.multiply(&self.inverse(&ba), &ab)
    }

    /// Order of an element, None when infinite.
    pub fn element_order(&self, a: &[i64]) -> Option<u64> {
        // the leading exponent decides finiteness layer by layer
        let mut x = a.to_vec();
        let mut order: u64 = 1;
        while let Some(g) = x.iter().position(|&e| e != 0) {
            let m = self.relative_orders[g];
            if m == 0 {
                return None;
            }
            let k = (m / gcd(x[g].rem_euclid(m), m)) as u64;
            order = order.checked_mul(k)?;
            x = self.power(&x, k as i64);
        }
        Some(order)
    }

    /// Image of a word in the source generators.
    pub fn image_of(&self, w: &Word) -> ExpVec {
        let mut acc = self.identity();
        for (l, e) in w.syllables() {
            acc = self.multiply(&acc, &self.power(&self.images[l], e));
        }
        acc
    }

    /// Images of the pc generators under the homomorphism sending the source
    /// generators to `x` in any group.
    pub fn generator_images<T: Clone, G: GroupOps<T>>(&self, ops: &G, x: &[T]) -> Vec<T> {
        assert_eq!(
            x.len(),
            self.source_names.len(),
            "one image per source generator"
        );
        evaluate_definitions(ops, &self.definitions, x)
    }

    /// All consistency tests pass.
    pub fn is_consistent(&self) -> bool {
        self.collector
            .consistency_pairs(self.n_gens())
            .into_iter()
            .all(|(a, b)| a == b)
    }

    /// The quotient by the generators of weight greater than `class`.
    pub fn truncate(&self, class: usize) -> PcPresentation {
        let k = self.weights.partition_point(|&w| w <= class);
        let cut = |v: &ExpVec| v[..k].to_vec();
        let powers = self.powers[..k].iter().map(cut).collect();
        let commutators = self.commutators[..k]
            .iter()
            .map(|row| row.iter().map(cut).collect())
            .collect();
        let images = self
            .images
            .iter()
            .map(|v| v[..k.min(v.len())].to_vec())
            .collect();
        Self::from_parts(
            self.weights[..k].to_vec(),
            self.relative_orders[..k].to_vec(),
            powers,
            commutators,
            self.source_names.clone(),
            images,
            self.definitions[..k].to_vec(),
            class.min(self.class),
        )
    }

    /// The pc relations as a finite presentation on the pc generators.
    pub fn to_finite_presentation(&self) -> FinitePresentation {
        let k = self.n_gens();
        let word = |v: &[i64]| Word::from_syllables(syllables(v));
        let mut relators = Vec::new();
        for i in 0..k {
            if self.relative_orders[i] > 0 {
                relators.push(
                    Word::gen_pow(i, self.relative_orders[i]).mul(&word(&self.powers[i]).inverse()),
                );
            }
        }
        for j in 0..k {
            for i in 0..j {
                let c = Word::commutator(&Word::gen(j), &Word::gen(i));
                relators.push(c.mul(&word(&self.commutators[j][i]).inverse()));
            }
        }
        FinitePresentation::with_names(self.names.clone(), relators).expect("generators in range")
    }

    fn fmt_vec(v: &[i64]) -> String {
        let parts: Vec<String> = v.iter().map(|e| e.to_string()).collect();
        format!("({})", parts.join(","))
    }

    /// Stable text dump: generators with weights and relative orders, then
    /// the nontrivial relations with exponent-vector right-hand sides, then
    /// the images of the source generators.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let k = self.n_gens();
        writeln!(s, "class {}", self.class).unwrap();
        writeln!(s, "generators {k}").unwrap();
        for i in 0..k {
            writeln!(
                s,
                "{} weight {} order {}",
                self.names[i], self.weights[i], self.relative_orders[i]
            )
            .unwrap();
        }
        writeln!(s, "relations").unwrap();
        for i in 0..k {
            if self.relative_orders[i] > 0 {
                writeln!(
                    s,
                    "{}^{} = {}",
                    self.names[i],
                    self.relative_orders[i],
                    Self::fmt_vec(&self.powers[i])
                )
                .unwrap();
            }
        }
        for j in 0..k {
            for i in 0..j {
                let c = &self.commutators[j][i];
                if c.iter().any(|&e| e != 0) {
                    writeln!(
                        s,
                        "[{},{}] = {}",
                        self.names[j],
                        self.names[i],
                        Self::fmt_vec(c)
                    )
                    .unwrap();
                }
            }
        }
        writeln!(s, "images").unwrap();
        for (name, v) in self.source_names.iter().zip(&self.images) {
            writeln!(s, "{name} -> {}", Self::fmt_vec(v)).unwrap();
        }
        s
    }
}

impl fmt::Display for PcPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl GroupOps<ExpVec> for PcPresentation {
    fn one(&self) -> ExpVec {
        self.identity()
    }

    fn mul(&self, a: &ExpVec, b: &ExpVec) -> ExpVec {
        self.multiply(a, b)
    }

    fn inv(&self, a: &ExpVec) -> ExpVec {
        self.inverse(a)
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Relation matrix of the weight-w layer on its own generators.
pub(crate) fn layer_relations(pc: &PcPresentation, w: usize) -> IntMatrix {
    let r = pc.layer(w);
    let mut rows = Vec::new();
    for g in r.clone() {
        let m = pc.relative_orders[g];
        if m > 0 {
            let mut row: Vec<Int> = r.clone().map(|h| Int::from(-pc.powers[g][h])).collect();
            row[g - r.start] += Int::from(m);
            rows.push(row);
        }
    }
    IntMatrix::from_rows(r.len(), &rows)
}

/// Invariants of the layers of weight 1, ..., class.
pub fn layer_invariants(pc: &PcPresentation) -> Vec<AbelianInvariants> {
    (1..=pc.class())
        .map(|w| {
            let m = layer_relations(pc, w);
            cokernel_invariants(&m, m.cols()).expect("square layer matrix")
        })
        .collect()
}

pub fn order_or_hirsch(pc: &PcPresentation) -> GroupSize {
    let hirsch = pc.relative_orders.iter().filter(|&&m| m == 0).count();
    let torsion: Int = pc
        .relative_orders
        .iter()
        .filter(|&&m| m > 0)
        .map(|&m| Int::from(m))
        .product();
    if hirsch == 0 {
        GroupSize::Finite(torsion)
    } else {
        GroupSize::Infinite {
            hirsch_length: hirsch,
            torsion,
        }
    }
}

pub fn to_finite_presentation(pc: &PcPresentation) -> FinitePresentation {
    pc.to_finite_presentation()
}
