//! Reidemeister–Schreier rewriting.

use std::collections::HashMap;

use super::coset::CosetTable;
use super::presentation::FinitePresentation;
use super::word::Word;
use super::FpError;

/// A presentation of a finite-index subgroup on Schreier generators, with
/// each generator's expression in the parent group's generators.
#[derive(Clone, Debug)]
pub struct SubgroupPresentation {
    pub presentation: FinitePresentation,
    pub generator_words: Vec<Word>,
}

/// Presentation of the subgroup whose coset table is given. The Schreier
/// transversal is the breadth-first spanning tree of the table; Schreier
/// generators on tree edges are trivial and dropped.
pub fn reidemeister_schreier(
    pres: &FinitePresentation,
    table: &CosetTable,
) -> Result<SubgroupPresentation, FpError> {
    let n = pres.n_gens();
    if table.n_gens() != n {
        return Err(FpError::IncompatibleTable);
    }
    let m = table.n_cosets();
    // transversal words and tree edges (coset, column)
    let mut rep: Vec<Option<Word>> = vec![None; m];
    rep[0] = Some(Word::identity());
    let mut tree = std::collections::HashSet::new();
    let mut order = vec![0usize];
    let mut i = 0;
    while i < order.len() {
        let c = order[i];
        for col in 0..2 * n {
            let d = table.image(c, col);
            if d >= m {
                return Err(FpError::IncompatibleTable);
            }
            if rep[d].is_none() {
                let (g, e) = if col < n { (col, 1) } else { (col - n, -1) };
                rep[d] = Some(rep[c].as_ref().unwrap().mul(&Word::gen_pow(g, e)));
                // record the positive-generator edge
                if e > 0 {
                    tree.insert((c, g));
                } else {
                    tree.insert((d, g));
                }
                order.push(d);
            }
        }
        i += 1;
    }
    if order.len() != m {
        return Err(FpError::IncompatibleTable);
    }
    let rep: Vec<Word> = rep.into_iter().map(Option::unwrap).collect();
    // Schreier generators s_{c,g} = rep(c) g rep(c·g)⁻¹
    let mut index: HashMap<(usize, usize), usize> = HashMap::new();
    let mut words = Vec::new();
    for c in 0..m {
        for g in 0..n {
            if tree.contains(&(c, g)) {
                continue;
            }
            let d = table.image(c, g);
            index.insert((c, g), words.len());
            words.push(rep[c].mul(&Word::gen(g)).mul(&rep[d].inverse()));
        }
    }
    let mut relators = Vec::new();
    for c in 0..m {
        for r in pres.relators() {
            let mut w = Word::identity();
            let mut cur = c;
            for (g, e) in r.letters() {
                if e > 0 {
                    if let Some(&k) = index.get(&(cur, g)) {
                        w.push(k, 1);
                    }
                    cur = table.image(cur, g);
                } else {
                    let prev = table.image(cur, g + n);
                    if let Some(&k) = index.get(&(prev, g)) {
                        w.push(k, -1);
                    }
                    cur = prev;
                }
            }
            if cur != c {
                return Err(FpError::IncompatibleTable);
            }
            relators.push(w);
        }
    }
    let names = (0..words.len()).map(|k| format!("s{}", k + 1)).collect();
    let presentation = FinitePresentation::with_names(names, relators)?.tidied();
    Ok(SubgroupPresentation {
        presentation,
        generator_words: words,
    })
}
