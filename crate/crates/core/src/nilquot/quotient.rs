//! The nilpotent quotient algorithm (tails method).
//!
//! From a consistent presentation of Γ/Γ_c with generators a_i, every power
//! and commutator relation receives a new central tail generator, and every
//! source generator x_l a central generator s_l with x_l ↦ u_l·s_l. The
//! consistency tests give the relations among the tails. The subgroup C
//! generated by the images of the x_l is then the universal central
//! extension relative to the source generators; its central part is spanned
//! by the relations of Γ/Γ_c evaluated at exact lifts of the a_i, and
//! factoring out the images of the defining relators leaves Γ_c/Γ_{c+1}.

use std::collections::HashMap;

use super::collector::Collector;
use super::pc::{eval_source, evaluate_definitions, Definition, ExpVec, PcPresentation, Source};
use super::{GroupOps, NqError};
use crate::exactla::{kernel_basis, lattice_basis, snf, solve_integer, Int, IntMatrix};
use crate::fpgrp::FinitePresentation;

/// Default cap on the number of pc generators.
pub const DEFAULT_MAX_GENERATORS: usize = 1000;

struct State {
    weights: Vec<usize>,
    rel: Vec<i64>,
    powers: Vec<ExpVec>,
    comms: Vec<Vec<ExpVec>>,
    images: Vec<ExpVec>,
    defs: Vec<Definition>,
}

/// Γ/Γ_class as a weighted pc presentation, where Γ_0 = Γ and
/// Γ_{j+1} = [Γ, Γ_j]; class 1 is the abelianization and class 0 the trivial
/// group.
pub fn nilpotent_quotient(
    pres: &FinitePresentation,
    class: usize,
) -> Result<PcPresentation, NqError> {
    nilpotent_quotient_with(pres, class, DEFAULT_MAX_GENERATORS)
}

pub fn nilpotent_quotient_with(
    pres: &FinitePresentation,
    class: usize,
    max_generators: usize,
) -> Result<PcPresentation, NqError> {
    let n = pres.n_gens();
    let mut st = State {
        weights: vec![],
        rel: vec![],
        powers: vec![],
        comms: vec![],
        images: vec![Vec::new(); n],
        defs: vec![],
    };
    for w in 1..=class {
        if !extend(&mut st, pres, w, max_generators)? {
            // Γ_{w-1} = Γ_w, so the series is stationary from here on
            break;
        }
    }
    let pc = PcPresentation::from_parts(
        st.weights,
        st.rel,
        st.powers,
        st.comms,
        pres.names().to_vec(),
        st.images,
        st.defs,
        class,
    );
    debug_assert!(pc.is_consistent());
    Ok(pc)
}

fn to_int(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&e| Int::from(e)).collect()
}

fn small(x: &Int) -> i64 {
    x.to_i64().expect("exponent does not fit in 64 bits")
}

/// Adds the layer of weight `w`. Returns whether it is nontrivial.
fn extend(
    st: &mut State,
    pres: &FinitePresentation,
    w: usize,
    max_generators: usize,
) -> Result<bool, NqError> {
    let k = st.rel.len();
    let n = pres.n_gens();

    // tail generators
    let mut power_tail = HashMap::new();
    let mut comm_tail = HashMap::new();
    let mut q = 0;
    for g in 0..k {
        if st.rel[g] > 0 {
            power_tail.insert(g, q);
            q += 1;
        }
    }
    for j in 0..k {
        for i in 0..j {
            comm_tail.insert((j, i), q);
            q += 1;
        }
    }
    let total = k + q + n;
    let ext = |v: &ExpVec| {
        let mut u = v.clone();
        u.resize(total, 0);
        u
    };
    let mut rel_e = st.rel.clone();
    rel_e.resize(total, 0);
    let mut powers_e: Vec<ExpVec> = Vec::with_capacity(total);
    for g in 0..k {
        let mut p = ext(&st.powers[g]);
        if let Some(&t) = power_tail.get(&g) {
            p[k + t] = 1;
        }
        powers_e.push(p);
    }
    powers_e.resize(total, Vec::new());
    let comms_e: Vec<Vec<ExpVec>> = (0..k)
        .map(|j| {
            (0..j)
                .map(|i| {
                    let mut c = ext(&st.comms[j][i]);
                    c[k + comm_tail[&(j, i)]] = 1;
                    c
                })
                .collect()
        })
        .collect();
    let coll = Collector::new(rel_e, &powers_e, &comms_e);

    // relations among the tails
    let mut cons: Vec<Vec<Int>> = Vec::new();
    for (a, b) in coll.consistency_pairs(k) {
        assert_eq!(a[..k], b[..k], "quotient presentation is inconsistent");
        if a[k..] != b[k..] {
            cons.push((k..total).map(|i| Int::from(a[i] - b[i])).collect());
        }
    }

    // exact lifts of the a_i inside C
    let y: Vec<ExpVec> = (0..n)
        .map(|l| {
            let mut v = ext(&st.images[l]);
            v[k + q + l] = 1;
            v
        })
        .collect();
    let b = evaluate_definitions(&coll, &st.defs, &y);
    debug_assert!((0..k).all(|i| b[i][..k]
        .iter()
        .enumerate()
        .all(|(h, &e)| e == i64::from(h == i))));

    // generators of the central part of C
    let mut sources = Vec::new();
    for g in 0..k {
        if st.rel[g] > 0 {
            sources.push(Source::Power {
                g,
                m: st.rel[g],
                rhs: st.powers[g].clone(),
            });
        }
    }
    for j in 0..k {
        for i in 0..j {
            sources.push(Source::Commutator {
                j,
                g: i,
                rhs: st.comms[j][i].clone(),
            });
        }
    }
    for l in 0..n {
        sources.push(Source::Image {
            l,
            rhs: st.images[l].clone(),
        });
    }
    let central = |v: ExpVec| -> Vec<Int> {
        assert!(v[..k].iter().all(|&e| e == 0), "expected a central element");
        to_int(&v[k..])
    };
    let mut rows: Vec<Vec<Int>> = sources
        .iter()
        .map(|s| central(eval_source(&coll, s, &b, &y)))
        .collect();
    let nm = rows.len();
    let cons_basis = lattice_basis(q + n, &cons);
    rows.extend(cons_basis.row_vecs());
    let gcount = rows.len();
    let gmat = IntMatrix::from_rows(q + n, &rows);
    let gt = gmat.transpose();

    // relations of the layer in the coordinates of `rows`
    let mut relations = kernel_basis(&gt);
    for t in nm..gcount {
        let mut e = vec![Int::from(0); gcount];
        e[t] = Int::from(1);
        relations.push(e);
    }
    for r in pres.relators() {
        let mut acc = coll.one();
        for (l, e) in r.syllables() {
            acc = coll.mul(&acc, &coll.pow(&y[l], e));
        }
        let v = central(acc);
        let x = solve_integer(&gt, &v)
            .expect("dimensions agree")
            .expect("relator image lies in the central part");
        relations.push(x);
    }
    let rmat = IntMatrix::from_rows(gcount, &relations);
    let s = snf(&rmat);
    let d: Vec<Int> = (0..gcount)
        .map(|i| s.divisors.get(i).cloned().unwrap_or_else(|| Int::from(0)))
        .collect();
    let kept: Vec<usize> = (0..gcount).filter(|&i| !d[i].is_one()).collect();
    let p = kept.len();
    if k + p > max_generators {
        return Err(NqError::GeneratorBudget { max_generators });
    }
    let orders: Vec<i64> = kept.iter().map(|&i| small(&d[i])).collect();
    let coords = |row: usize| -> Vec<i64> {
        kept.iter()
            .zip(&orders)
            .map(|(&c, &m)| {
                let v = small(s.right.get(row, c));
                if m > 0 {
                    v.rem_euclid(m)
                } else {
                    v
                }
            })
            .collect()
    };

    // extend the presentation
    let kk = k + p;
    let grow = |v: &mut ExpVec, tail: &[i64]| {
        v.resize(k, 0);
        v.extend_from_slice(tail);
    };
    let mut idx = 0;
    for g in 0..k {
        let tail = if st.rel[g] > 0 {
            let t = coords(idx);
            idx += 1;
            t
        } else {
            vec![0; p]
        };
        grow(&mut st.powers[g], &tail);
    }
    for j in 0..k {
        for i in 0..j {
            let t = coords(idx);
            idx += 1;
            grow(&mut st.comms[j][i], &t);
        }
    }
    for l in 0..n {
        let t = coords(idx);
        idx += 1;
        grow(&mut st.images[l], &t);
    }
    for (i, &c) in kept.iter().enumerate() {
        st.weights.push(w);
        st.rel.push(orders[i]);
        st.powers.push(vec![0; kk]);
        st.comms.push(vec![vec![0; kk]; k + i]);
        let def: Definition = (0..nm)
            .filter_map(|r| {
                let coef = s.right_inv.get(c, r);
                (!coef.is_zero()).then(|| (sources[r].clone(), small(coef)))
            })
            .collect();
        st.defs.push(def);
    }
    for row in st.comms.iter_mut().take(k) {
        for v in row.iter_mut() {
            v.resize(kk, 0);
        }
    }
    Ok(p > 0)
}
