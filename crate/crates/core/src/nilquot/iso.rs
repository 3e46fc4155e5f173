//! Isomorphism tests between nilpotent pc groups.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use super::pc::{
    layer_invariants, layer_relations, order_or_hirsch, ExpVec, GroupSize, PcPresentation,
};
use crate::exactla::{AbelianHom, AbelianInvariants, AbelianQuotient, Int};

/// Groups up to this order are searched exhaustively for isomorphisms.
pub const EXHAUSTIVE_ORDER_BOUND: u64 = 1 << 14;

/// Outcome of an isomorphism test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum IsoVerdict {
    /// Images of the pc generators of the first group in the second; the map
    /// has been checked to be a bijective homomorphism.
    Yes { images: Vec<ExpVec> },
    /// An invariant that differs.
    No {
        invariant: String,
        left: String,
        right: String,
    },
    /// Invariants that agree; the search for a map was not conclusive.
    Unknown { matched: Vec<String> },
}

impl IsoVerdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, IsoVerdict::Yes { .. })
    }

    pub fn is_no(&self) -> bool {
        matches!(self, IsoVerdict::No { .. })
    }
}

fn eval(b: &PcPresentation, imgs: &[ExpVec], v: &[i64]) -> ExpVec {
    let mut acc = b.identity();
    for (h, &e) in v.iter().enumerate() {
        if e != 0 {
            acc = b.multiply(&acc, &b.power(&imgs[h], e));
        }
    }
    acc
}

/// Whether sending the pc generators of `a` to `images` respects every
/// power and commutator relation of `a`.
pub fn is_homomorphism(a: &PcPresentation, b: &PcPresentation, images: &[ExpVec]) -> bool {
    let k = a.n_gens();
    if images.len() != k {
        return false;
    }
    for i in 0..k {
        let m = a.relative_orders()[i];
        if m > 0 && b.power(&images[i], m) != eval(b, images, a.power_tail(i)) {
            return false;
        }
        for j in i + 1..k {
            if b.commutator(&images[j], &images[i]) != eval(b, images, a.commutator_tail(j, i)) {
                return false;
            }
        }
    }
    true
}

/// For a homomorphism given on pc generators, whether the induced map on
/// each weight layer is an isomorphism (weights 1..=max class). A map that
/// does not respect the weight filtration fails at the first offending
/// layer. The map is bijective exactly when every entry is true.
pub fn layer_isomorphisms(a: &PcPresentation, b: &PcPresentation, images: &[ExpVec]) -> Vec<bool> {
    let top = a.class().max(b.class());
    (1..=top)
        .map(|w| {
            let ra = a.layer(w);
            let rb = b.layer(w);
            let mut amb = Vec::with_capacity(ra.len());
            for g in ra.clone() {
                let v = &images[g];
                if v[..rb.start].iter().any(|&e| e != 0) {
                    return false;
                }
                amb.push(
                    v[rb.clone()]
                        .iter()
                        .map(|&e| Int::from(e))
                        .collect::<Vec<_>>(),
                );
            }
            let qa = AbelianQuotient::from_relations(ra.len(), &layer_relations(a, w));
            let qb = AbelianQuotient::from_relations(rb.len(), &layer_relations(b, w));
            AbelianHom::from_ambient(&qa, &qb, &amb).is_isomorphism()
        })
        .collect()
}

/// Checks an isomorphism witness.
pub fn verify_isomorphism(a: &PcPresentation, b: &PcPresentation, images: &[ExpVec]) -> bool {
    is_homomorphism(a, b, images) && layer_isomorphisms(a, b, images).into_iter().all(|x| x)
}

fn all_elements(pc: &PcPresentation) -> Vec<ExpVec> {
    let mut out = vec![pc.identity()];
    for (g, &m) in pc.relative_orders().iter().enumerate() {
        let mut next = Vec::with_capacity(out.len() * m as usize);
        for v in &out {
            for e in 0..m {
                let mut u = v.clone();
                u[g] = e;
                next.push(u);
            }
        }
        out = next;
    }
    out
}

fn order_profile(pc: &PcPresentation, elems: &[ExpVec]) -> (Vec<u64>, u64) {
    let mut orders: Vec<u64> = elems
        .iter()
        .map(|x| pc.element_order(x).expect("finite group"))
        .collect();
    let exponent = orders.iter().fold(1u64, |l, &o| l / gcd(l, o) * o);
    orders.sort_unstable();
    (orders, exponent)
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn summary(orders: &[u64]) -> String {
    let mut counts: Vec<(u64, usize)> = Vec::new();
    for &o in orders {
        match counts.last_mut() {
            Some((p, c)) if *p == o => *c += 1,
            _ => counts.push((o, 1)),
        }
    }
    counts
        .iter()
        .map(|(o, c)| format!("{c}x{o}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn padded(mut v: Vec<AbelianInvariants>, len: usize) -> Vec<AbelianInvariants> {
    v.resize(len, AbelianInvariants::trivial());
    v
}

/// Decides whether two nilpotent pc groups are isomorphic. "No" is backed
/// by a differing invariant; "yes" by a verified generator map, searched
/// exhaustively over images of the weight-1 generators for finite groups of
/// order at most 2^14, trying at most `effort` image tuples. Weights are
/// assumed to follow the lower central series, as they do for presentations
/// computed by `nilpotent_quotient`.
pub fn isomorphic_nilpotent(a: &PcPresentation, b: &PcPresentation, effort: u64) -> IsoVerdict {
    let identity: Vec<ExpVec> = (0..a.n_gens()).map(|i| a.generator(i)).collect();
    if a.weights() == b.weights()
        && a.relative_orders() == b.relative_orders()
        && verify_isomorphism(a, b, &identity)
    {
        return IsoVerdict::Yes { images: identity };
    }
    let mut matched = Vec::new();
    let (sa, sb) = (order_or_hirsch(a), order_or_hirsch(b));
    if sa != sb {
        return IsoVerdict::No {
            invariant: "order".into(),
            left: sa.to_string(),
            right: sb.to_string(),
        };
    }
    matched.push("order".to_string());
    let len = a.class().max(b.class());
    let (la, lb) = (
        padded(layer_invariants(a), len),
        padded(layer_invariants(b), len),
    );
    for w in 0..len {
        if la[w] != lb[w] {
            return IsoVerdict::No {
                invariant: format!("layer {}", w + 1),
                left: la[w].to_string(),
                right: lb[w].to_string(),
            };
        }
    }
    matched.push("layer invariants".to_string());
    let GroupSize::Finite(order) = sa else {
        return IsoVerdict::Unknown { matched };
    };
    if order > Int::from(EXHAUSTIVE_ORDER_BOUND) {
        return IsoVerdict::Unknown { matched };
    }
    let (ea, eb) = (all_elements(a), all_elements(b));
    let ((oa, xa), (ob, xb)) = (order_profile(a, &ea), order_profile(b, &eb));
    if xa != xb {
        return IsoVerdict::No {
            invariant: "exponent".into(),
            left: xa.to_string(),
            right: xb.to_string(),
        };
    }
    matched.push("exponent".to_string());
    if oa != ob {
        return IsoVerdict::No {
            invariant: "element orders".into(),
            left: summary(&oa),
            right: summary(&ob),
        };
    }
    matched.push("element orders".to_string());
    match search(a, b, &eb, effort) {
        Some(images) => IsoVerdict::Yes { images },
        None => {
            matched.push("search budget exhausted".to_string());
            IsoVerdict::Unknown { matched }
        }
    }
}

/// Words in the weight-1 generators for every pc generator of `a`.
fn generator_words(a: &PcPresentation) -> Vec<Vec<(usize, i64)>> {
    let gens: Vec<usize> = a.layer(1).collect();
    let k = a.n_gens();
    let mut words: HashMap<ExpVec, Vec<(usize, i64)>> = HashMap::new();
    words.insert(a.identity(), Vec::new());
    let mut queue = VecDeque::from([a.identity()]);
    let mut found = 0;
    let mut out: Vec<Option<Vec<(usize, i64)>>> = vec![None; k];
    while let Some(x) = queue.pop_front() {
        if found == k {
            break;
        }
        for &g in &gens {
            let y = a.multiply(&x, &a.generator(g));
            if words.contains_key(&y) {
                continue;
            }
            let mut w = words[&x].clone();
            match w.last_mut() {
                Some(last) if last.0 == g => last.1 += 1,
                _ => w.push((g, 1)),
            }
            if let Some(i) = (0..k).find(|&i| y == a.generator(i)) {
                if out[i].is_none() {
                    out[i] = Some(w.clone());
                    found += 1;
                }
            }
            words.insert(y.clone(), w);
            queue.push_back(y);
        }
    }
    out.into_iter()
        .map(|w| w.expect("weight-1 generators generate"))
        .collect()
}

fn search(
    a: &PcPresentation,
    b: &PcPresentation,
    eb: &[ExpVec],
    effort: u64,
) -> Option<Vec<ExpVec>> {
    let gens: Vec<usize> = a.layer(1).collect();
    if gens.is_empty() {
        return (b.n_gens() == 0).then(Vec::new);
    }
    let words = generator_words(a);
    let b_orders: Vec<Option<u64>> = eb.iter().map(|x| b.element_order(x)).collect();
    let candidates: Vec<Vec<&ExpVec>> = gens
        .iter()
        .map(|&g| {
            let o = a.element_order(&a.generator(g));
            eb.iter()
                .zip(&b_orders)
                .filter(|(_, &ob)| ob == o)
                .map(|(x, _)| x)
                .collect()
        })
        .collect();
    if candidates.iter().any(|c| c.is_empty()) {
        return None;
    }
    let ra = a.layer(1);
    let rb = b.layer(1);
    let qa = AbelianQuotient::from_relations(ra.len(), &layer_relations(a, 1));
    let qb = AbelianQuotient::from_relations(rb.len(), &layer_relations(b, 1));
    let mut idx = vec![0usize; gens.len()];
    let mut tried = 0u64;
    loop {
        if tried >= effort {
            return None;
        }
        tried += 1;
        let chosen: Vec<&ExpVec> = idx.iter().zip(&candidates).map(|(&i, c)| c[i]).collect();
        let top: Vec<Vec<Int>> = chosen
            .iter()
            .map(|v| v[rb.clone()].iter().map(|&e| Int::from(e)).collect())
            .collect();
        if AbelianHom::from_ambient(&qa, &qb, &top).is_isomorphism() {
            let images: Vec<ExpVec> = words
                .iter()
                .map(|w| {
                    let mut acc = b.identity();
                    for &(g, e) in w {
                        acc = b.multiply(&acc, &b.power(chosen[g - ra.start], e));
                    }
                    acc
                })
                .collect();
            if verify_isomorphism(a, b, &images) {
                return Some(images);
            }
        }
        // next tuple
        let mut p = 0;
        loop {
            if p == idx.len() {
                return None;
            }
            idx[p] += 1;
            if idx[p] < candidates[p].len() {
                break;
            }
            idx[p] = 0;
            p += 1;
        }
    }
}

impl IsoVerdict {
    /// Short human-readable form.
    pub fn describe(&self) -> String {
        match self {
            IsoVerdict::Yes { .. } => "isomorphic".into(),
            IsoVerdict::No {
                invariant,
                left,
                right,
            } => format!("not isomorphic ({invariant}: {left} vs {right})"),
            IsoVerdict::Unknown { matched } => format!("unknown (matched: {})", matched.join(", ")),
        }
    }
}
