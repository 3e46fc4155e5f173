//! Todd–Coxeter coset enumeration.
//!
//! Columns are the generators followed by their inverses. Cosets are
//! numbered from 0 internally; coset 0 is the subgroup. Finished tables are
//! renumbered breadth-first in (coset, column) scan order.

use serde::Serialize;

use super::presentation::FinitePresentation;
use super::word::Word;
use super::FpError;
use crate::permgrp::Permutation;

const NONE: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub enum Strategy {
    /// Relator-based (HLT) with lookahead when the table fills.
    #[default]
    Hlt,
    /// Definition-ordered with deduction processing.
    Felsch,
}

/// A complete coset table: `image(c, col)` for columns 0..2n.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CosetTable {
    n_gens: usize,
    n_cosets: usize,
    table: Vec<u32>,
}

impl CosetTable {
    pub fn n_cosets(&self) -> usize {
        self.n_cosets
    }

    pub fn n_gens(&self) -> usize {
        self.n_gens
    }

    pub fn n_cols(&self) -> usize {
        2 * self.n_gens
    }

    #[inline]
    pub fn image(&self, coset: usize, col: usize) -> usize {
        self.table[coset * 2 * self.n_gens + col] as usize
    }

    /// Column for generator g with sign e.
    pub fn col(&self, g: usize, e: i64) -> usize {
        if e > 0 {
            g
        } else {
            g + self.n_gens
        }
    }

    pub fn act_word(&self, coset: usize, w: &Word) -> usize {
        let mut c = coset;
        for (g, e) in w.letters() {
            c = self.image(c, self.col(g, e));
        }
        c
    }

    /// The permutation by which generator g acts on cosets.
    pub fn generator_permutation(&self, g: usize) -> Permutation {
        Permutation::from_images(
            (0..self.n_cosets)
                .map(|c| self.image(c, g) as u32)
                .collect(),
        )
        .expect("complete table")
    }

    /// Checks completeness, compatibility, transitivity, relators trivial at
    /// every coset and subgroup generators fixing coset 0.
    pub fn verify(&self, pres: &FinitePresentation, subgroup: &[Word]) -> bool {
        let n = self.n_gens;
        for c in 0..self.n_cosets {
            for g in 0..n {
                let d = self.image(c, g);
                if d >= self.n_cosets || self.image(d, g + n) != c {
                    return false;
                }
            }
        }
        let mut seen = vec![false; self.n_cosets];
        seen[0] = true;
        let mut stack = vec![0usize];
        while let Some(c) = stack.pop() {
            for col in 0..2 * n {
                let d = self.image(c, col);
                if !seen[d] {
                    seen[d] = true;
                    stack.push(d);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return false;
        }
        let rel_ok =
            (0..self.n_cosets).all(|c| pres.relators().iter().all(|r| self.act_word(c, r) == c));
        rel_ok && subgroup.iter().all(|w| self.act_word(0, w) == 0)
    }

    /// Builds a table from generator permutations of a transitive action
    /// with point 0 as the base coset, renumbered canonically.
    pub fn from_permutations(perms: &[Permutation]) -> CosetTable {
        let n_gens = perms.len();
        let n = perms.first().map_or(1, Permutation::degree);
        let mut table = vec![0u32; n * 2 * n_gens];
        for (g, p) in perms.iter().enumerate() {
            for c in 0..n {
                let d = p.image(c);
                table[c * 2 * n_gens + g] = d as u32;
                table[d * 2 * n_gens + g + n_gens] = c as u32;
            }
        }
        standardize(n_gens, &table, n)
    }
}

/// Breadth-first renumbering from coset 0 over live, complete rows.
fn standardize(n_gens: usize, table: &[u32], n_rows: usize) -> CosetTable {
    let ncols = 2 * n_gens;
    let mut new_of = vec![NONE; n_rows];
    let mut order = vec![0u32];
    new_of[0] = 0;
    let mut i = 0;
    while i < order.len() {
        let c = order[i] as usize;
        for col in 0..ncols {
            let d = table[c * ncols + col] as usize;
            if new_of[d] == NONE {
                new_of[d] = order.len() as u32;
                order.push(d as u32);
            }
        }
        i += 1;
    }
    let n = order.len();
    let mut out = vec![0u32; n * ncols];
    for (k, &c) in order.iter().enumerate() {
        for col in 0..ncols {
            out[k * ncols + col] = new_of[table[c as usize * ncols + col] as usize];
        }
    }
    CosetTable {
        n_gens,
        n_cosets: n,
        table: out,
    }
}

struct Enumerator {
    n_gens: usize,
    ncols: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    live: usize,
    max_cosets: usize,
    /// relators and subgroup generators as column sequences
    relators: Vec<Vec<u32>>,
    subgroup: Vec<Vec<u32>>,
    deductions: Vec<(u32, u32)>,
    track_deductions: bool,
}

#[derive(Debug)]
struct Full;

impl Enumerator {
    fn new(pres: &FinitePresentation, subgroup: &[Word], max_cosets: usize, track: bool) -> Self {
        let n = pres.n_gens();
        let to_cols = |w: &Word| -> Vec<u32> {
            w.letters()
                .map(|(g, e)| if e > 0 { g as u32 } else { (g + n) as u32 })
                .collect()
        };
        let mut e = Enumerator {
            n_gens: n,
            ncols: 2 * n,
            table: Vec::new(),
            parent: Vec::new(),
            live: 0,
            max_cosets,
            relators: pres
                .relators()
                .iter()
                .map(|r| to_cols(&r.cyclically_reduced()))
                .filter(|r| !r.is_empty())
                .collect(),
            subgroup: subgroup
                .iter()
                .map(to_cols)
                .filter(|r| !r.is_empty())
                .collect(),
            deductions: Vec::new(),
            track_deductions: track,
        };
        e.new_row();
        e
    }

    #[inline]
    fn inv(&self, col: u32) -> u32 {
        if (col as usize) < self.n_gens {
            col + self.n_gens as u32
        } else {
            col - self.n_gens as u32
        }
    }

    #[inline]
    fn get(&self, c: u32, col: u32) -> u32 {
        self.table[c as usize * self.ncols + col as usize]
    }

    #[inline]
    fn set(&mut self, c: u32, col: u32, d: u32) {
        self.table[c as usize * self.ncols + col as usize] = d;
    }

    fn alive(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn new_row(&mut self) -> u32 {
        let c = self.parent.len() as u32;
        self.parent.push(c);
        self.table.extend(std::iter::repeat_n(NONE, self.ncols));
        self.live += 1;
        c
    }

    fn define(&mut self, c: u32, col: u32) -> Result<u32, Full> {
        if self.live >= self.max_cosets {
            return Err(Full);
        }
        let d = self.new_row();
        self.set(c, col, d);
        let ic = self.inv(col);
        self.set(d, ic, c);
        if self.track_deductions {
            self.deductions.push((c, col));
        }
        Ok(d)
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut r = c;
        while self.parent[r as usize] != r {
            r = self.parent[r as usize];
        }
        let mut x = c;
        while self.parent[x as usize] != r {
            let next = self.parent[x as usize];
            self.parent[x as usize] = r;
            x = next;
        }
        r
    }

    fn merge(&mut self, a: u32, b: u32, queue: &mut Vec<u32>) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (keep, kill) = if a < b { (a, b) } else { (b, a) };
        self.parent[kill as usize] = keep;
        self.live -= 1;
        queue.push(kill);
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        let mut queue = Vec::new();
        self.merge(a, b, &mut queue);
        let mut i = 0;
        while i < queue.len() {
            let e = queue[i];
            i += 1;
            for col in 0..self.ncols as u32 {
                let f = self.get(e, col);
                if f == NONE {
                    continue;
                }
                let ic = self.inv(col);
                self.set(f, ic, NONE);
                let e1 = self.rep(e);
                let f1 = self.rep(f);
                let x = self.get(e1, col);
                if x != NONE {
                    self.merge(f1, x, &mut queue);
                } else {
                    let y = self.get(f1, ic);
                    if y != NONE {
                        self.merge(e1, y, &mut queue);
                    } else {
                        self.set(e1, col, f1);
                        self.set(f1, ic, e1);
                        if self.track_deductions {
                            self.deductions.push((e1, col));
                        }
                    }
                }
            }
        }
    }

    /// Scans `w` from coset c, filling gaps when `fill` is set. Returns
    /// Err(Full) if a definition was needed but the budget is exhausted.
    fn scan(&mut self, c: u32, w: &[u32], fill: bool) -> Result<(), Full> {
        let n = w.len();
        loop {
            let mut f = c;
            let mut i = 0;
            while i < n {
                let x = self.get(f, w[i]);
                if x == NONE {
                    break;
                }
                f = x;
                i += 1;
            }
            if i == n {
                if f != c {
                    self.coincidence(f, c);
                }
                return Ok(());
            }
            let mut b = c;
            let mut j = n;
            while j > i {
                let x = self.get(b, self.inv(w[j - 1]));
                if x == NONE {
                    break;
                }
                b = x;
                j -= 1;
            }
            if j == i {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i + 1 {
                self.set(f, w[i], b);
                let ic = self.inv(w[i]);
                self.set(b, ic, f);
                if self.track_deductions {
                    self.deductions.push((f, w[i]));
                }
                return Ok(());
            }
            if !fill {
                return Ok(());
            }
            self.define(f, w[i])?;
        }
    }

    fn first_live_from(&self, c: u32) -> Option<u32> {
        (c as usize..self.parent.len())
            .find(|&x| self.parent[x] == x as u32)
            .map(|x| x as u32)
    }

    /// Scans every relator at every live coset without defining new cosets.
    fn lookahead(&mut self) {
        let rels = self.relators.clone();
        let mut c = 0u32;
        while let Some(x) = self.first_live_from(c) {
            for r in &rels {
                if !self.alive(x) {
                    break;
                }
                let _ = self.scan(x, r, false);
            }
            c = x + 1;
        }
        for s in self.subgroup.clone() {
            let _ = self.scan(0, &s, false);
        }
    }

    fn compact(&mut self) -> Vec<u32> {
        let n = self.parent.len();
        let mut new_of = vec![NONE; n];
        let mut k = 0u32;
        for (c, slot) in new_of.iter_mut().enumerate() {
            if self.parent[c] == c as u32 {
                *slot = k;
                k += 1;
            }
        }
        let mut table = Vec::with_capacity(k as usize * self.ncols);
        for c in 0..n {
            if new_of[c] == NONE {
                continue;
            }
            for col in 0..self.ncols {
                let d = self.table[c * self.ncols + col];
                table.push(if d == NONE { NONE } else { new_of[d as usize] });
            }
        }
        self.table = table;
        self.parent = (0..k).collect();
        self.live = k as usize;
        self.deductions.clear();
        new_of
    }

    fn complete(&self) -> bool {
        (0..self.parent.len())
            .filter(|&c| self.parent[c] == c as u32)
            .all(|c| (0..self.ncols).all(|col| self.table[c * self.ncols + col] != NONE))
    }

    /// Full pass: all relators at all live cosets and subgroup generators at
    /// coset 0, deducing only. Returns false if the table changed.
    fn closed(&mut self) -> bool {
        let before = (self.live, self.table.iter().filter(|&&x| x != NONE).count());
        self.lookahead();
        let after = (self.live, self.table.iter().filter(|&&x| x != NONE).count());
        before == after
    }

    fn hlt(&mut self) -> Result<(), FpError> {
        for s in self.subgroup.clone() {
            self.scan_or_lookahead(0, &s)?;
        }
        let rels = self.relators.clone();
        let mut c = 0u32;
        'outer: while let Some(x) = self.first_live_from(c) {
            for r in &rels {
                if !self.alive(x) {
                    c = x + 1;
                    continue 'outer;
                }
                if self.scan(x, r, true).is_err() {
                    c = self.relieve(x)?;
                    continue 'outer;
                }
            }
            if self.alive(x) {
                for col in 0..self.ncols as u32 {
                    if self.get(x, col) == NONE && self.define(x, col).is_err() {
                        c = self.relieve(x)?;
                        continue 'outer;
                    }
                }
            }
            c = x + 1;
        }
        Ok(())
    }

    fn scan_or_lookahead(&mut self, c: u32, w: &[u32]) -> Result<(), FpError> {
        loop {
            if self.scan(c, w, true).is_ok() {
                return Ok(());
            }
            self.relieve(c)?;
        }
    }

    /// Lookahead and compaction; returns the position to resume from (the
    /// first live coset at or after `at`, renumbered), or an error if no
    /// space was freed.
    fn relieve(&mut self, at: u32) -> Result<u32, FpError> {
        self.lookahead();
        let resume = self.first_live_from(at);
        let new_of = self.compact();
        if self.live >= self.max_cosets {
            return Err(FpError::CosetBudgetExceeded {
                max_cosets: self.max_cosets,
            });
        }
        Ok(resume.map_or(self.parent.len() as u32, |r| new_of[r as usize]))
    }

    fn felsch(&mut self) -> Result<(), FpError> {
        // relator cyclic conjugates (and inverses) grouped by first column
        let mut by_col: Vec<Vec<Vec<u32>>> = vec![Vec::new(); self.ncols];
        for r in &self.relators {
            let inv: Vec<u32> = r.iter().rev().map(|&c| self.inv(c)).collect();
            for v in [r.clone(), inv] {
                for k in 0..v.len() {
                    let rot: Vec<u32> = v[k..].iter().chain(&v[..k]).copied().collect();
                    if !by_col[rot[0] as usize].contains(&rot) {
                        by_col[rot[0] as usize].push(rot);
                    }
                }
            }
        }
        for s in self.subgroup.clone() {
            self.scan_or_lookahead(0, &s)?;
        }
        self.process_deductions(&by_col);
        loop {
            // first undefined entry in scan order
            let mut next = None;
            'find: for c in 0..self.parent.len() as u32 {
                if !self.alive(c) {
                    continue;
                }
                for col in 0..self.ncols as u32 {
                    if self.get(c, col) == NONE {
                        next = Some((c, col));
                        break 'find;
                    }
                }
            }
            let Some((c, col)) = next else {
                if self.closed() {
                    return Ok(());
                }
                self.process_deductions(&by_col);
                continue;
            };
            if self.define(c, col).is_err() {
                self.relieve(c)?;
                continue;
            }
            self.process_deductions(&by_col);
        }
    }

    fn process_deductions(&mut self, by_col: &[Vec<Vec<u32>>]) {
        let subgroup = self.subgroup.clone();
        while let Some((c, col)) = self.deductions.pop() {
            if self.deductions.len() > 100_000 {
                self.deductions.clear();
                self.lookahead();
                break;
            }
            let c = self.rep(c);
            let d = self.get(c, col);
            for r in &by_col[col as usize] {
                if !self.alive(c) {
                    break;
                }
                let _ = self.scan(c, r, false);
            }
            if d != NONE {
                let d = self.rep(d);
                let ic = self.inv(col);
                for r in &by_col[ic as usize] {
                    if !self.alive(d) {
                        break;
                    }
                    let _ = self.scan(d, r, false);
                }
            }
            for s in &subgroup {
                let _ = self.scan(0, s, false);
            }
        }
    }

    fn finish(mut self) -> CosetTable {
        self.compact();
        standardize(self.n_gens, &self.table, self.parent.len())
    }
}

/// Enumerates the cosets of ⟨subgroup⟩ in the group presented by `pres`.
pub fn todd_coxeter(
    pres: &FinitePresentation,
    subgroup: &[Word],
    max_cosets: usize,
) -> Result<CosetTable, FpError> {
    todd_coxeter_with(pres, subgroup, max_cosets, Strategy::Hlt)
}

pub fn todd_coxeter_with(
    pres: &FinitePresentation,
    subgroup: &[Word],
    max_cosets: usize,
    strategy: Strategy,
) -> Result<CosetTable, FpError> {
    if max_cosets == 0 {
        return Err(FpError::CosetBudgetExceeded { max_cosets });
    }
    for w in subgroup {
        if w.max_generator().is_some_and(|g| g >= pres.n_gens()) {
            return Err(FpError::UnknownGenerator(w.to_string()));
        }
    }
    if pres.n_gens() == 0 {
        return Ok(CosetTable {
            n_gens: 0,
            n_cosets: 1,
            table: Vec::new(),
        });
    }
    let mut e = Enumerator::new(pres, subgroup, max_cosets, strategy == Strategy::Felsch);
    match strategy {
        Strategy::Hlt => {
            e.hlt()?;
            // HLT can leave coincidences undiscovered only if a row was
            // never rescanned after merging; a final closed pass settles it.
            while !e.closed() || !e.complete() {
                e.hlt()?;
            }
        }
        Strategy::Felsch => e.felsch()?,
    }
    let t = e.finish();
    debug_assert!(t.verify(pres, subgroup));
    Ok(t)
}
