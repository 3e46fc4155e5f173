//! Collection in polycyclic presentations given by relative orders, power
//! tails and commutator tails. The collector does not assume consistency:
//! every rewriting step is an identity of the presented group, which is what
//! the tails computation relies on.

use super::GroupOps;

pub(crate) type Syllables = Vec<(usize, i64)>;

#[derive(Clone, Debug)]
struct ConjWords {
    /// a_j^{a_g} and a_j^{a_g^{-1}} (the latter only for infinite a_g).
    by: [Syllables; 2],
    inv: [Syllables; 2],
}

#[derive(Clone, Debug)]
pub(crate) struct Collector {
    n: usize,
    rel: Vec<i64>,
    central: Vec<bool>,
    power: Vec<Syllables>,
    power_inv: Vec<Syllables>,
    /// a_g^{-1} = a_g^{m-1} (a_g^m)^{-1} for finite a_g.
    neg: Vec<Syllables>,
    /// conj[j][g] for g < j; None when a_j and a_g commute. Rows past the
    /// end are trivial.
    conj: Vec<Vec<Option<ConjWords>>>,
    /// One past the last non-central generator.
    active: usize,
}

/// Which collection procedure to use.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum CollectStrategy {
    /// Exponent-vector collection from the left with a stack of pending words.
    #[default]
    FromTheLeft,
    /// Word rewriting that always resolves the leftmost out-of-order pair.
    Outermost,
}

enum Frame<'a> {
    Syl(usize, i64),
    Word {
        w: &'a [(usize, i64)],
        pos: usize,
        reps: u64,
    },
}

pub(crate) fn syllables(v: &[i64]) -> Syllables {
    v.iter()
        .enumerate()
        .filter(|(_, &e)| e != 0)
        .map(|(g, &e)| (g, e))
        .collect()
}

fn invert(w: &[(usize, i64)]) -> Syllables {
    w.iter().rev().map(|&(g, e)| (g, -e)).collect()
}

fn add(a: i64, b: i64) -> i64 {
    a.checked_add(b)
        .expect("exponent overflow during collection")
}

impl Collector {
    /// `power[g]` is the normal form of a_g^{m_g} (ignored when m_g = 0) and
    /// `comm[j][g]`, g < j, the normal form of [a_j, a_g], which must only
    /// involve generators after j. Missing rows of `comm` and empty vectors
    /// stand for trivial commutators.
    pub(crate) fn new(rel: Vec<i64>, power: &[Vec<i64>], comm: &[Vec<Vec<i64>>]) -> Self {
        let n = rel.len();
        let mut central = vec![true; n];
        let mut conj: Vec<Vec<Option<ConjWords>>> = Vec::with_capacity(comm.len());
        for (j, crow) in comm.iter().enumerate() {
            let mut row = Vec::with_capacity(j);
            for (g, c) in crow.iter().enumerate().take(j) {
                if c.iter().all(|&e| e == 0) {
                    row.push(None);
                } else {
                    debug_assert!(
                        c[..=j].iter().all(|&e| e == 0),
                        "commutator tail must follow a_{j}"
                    );
                    central[j] = false;
                    central[g] = false;
                    let mut by = vec![(j, 1)];
                    by.extend(syllables(c));
                    let inv = invert(&by);
                    row.push(Some(ConjWords {
                        by: [by, Vec::new()],
                        inv: [inv, Vec::new()],
                    }));
                }
            }
            conj.push(row);
        }
        let mut power_w = Vec::with_capacity(n);
        let mut power_inv = Vec::with_capacity(n);
        let mut neg = Vec::with_capacity(n);
        for g in 0..n {
            if rel[g] > 0 {
                let w = syllables(&power[g]);
                let wi = invert(&w);
                let mut ng = vec![(g, rel[g] - 1)];
                ng.extend(wi.iter().copied());
                power_w.push(w);
                power_inv.push(wi);
                neg.push(ng);
            } else {
                power_w.push(Vec::new());
                power_inv.push(Vec::new());
                neg.push(Vec::new());
            }
        }
        let active = central.iter().rposition(|&c| !c).map_or(0, |p| p + 1);
        let mut c = Collector {
            n,
            rel,
            central,
            power: power_w,
            power_inv,
            neg,
            conj,
            active,
        };
        // conjugates by inverses of infinite generators, highest first
        for g in (0..n).rev() {
            if c.rel[g] != 0 {
                continue;
            }
            for j in (g + 1..c.conj.len()).rev() {
                let Some(cw) = c.conj(j, g) else { continue };
                // a_j^{a_g} = a_j u  =>  a_j^{a_g^{-1}} = a_j (u^{-1})^{a_g^{-1}}
                let mut word = vec![(j, 1)];
                for &(l, e) in invert(&cw.by[0][1..]).iter() {
                    match c.conj(l, g) {
                        None => word.push((l, e)),
                        Some(lw) => {
                            let piece = if e > 0 { &lw.by[1] } else { &lw.inv[1] };
                            for _ in 0..e.unsigned_abs() {
                                word.extend(piece.iter().copied());
                            }
                        }
                    }
                }
                let v = c.collect(&word);
                let by1 = syllables(&v);
                let inv1 = invert(&by1);
                let cw = c.conj[j][g].as_mut().expect("nontrivial conjugate");
                cw.by[1] = by1;
                cw.inv[1] = inv1;
            }
        }
        c
    }

    fn conj(&self, j: usize, g: usize) -> Option<&ConjWords> {
        self.conj.get(j).and_then(|row| row[g].as_ref())
    }

    pub(crate) fn collect(&self, word: &[(usize, i64)]) -> Vec<i64> {
        let mut ev = vec![0; self.n];
        self.collect_into(&mut ev, word);
        ev
    }

    /// Multiplies the normal form `ev` on the right by `word`.
    pub(crate) fn collect_into(&self, ev: &mut [i64], word: &[(usize, i64)]) {
        let mut stack = vec![Frame::Word {
            w: word,
            pos: 0,
            reps: 1,
        }];
        while let Some(top) = stack.last_mut() {
            let (g, e) = match top {
                Frame::Syl(g, e) => {
                    let s = (*g, *e);
                    stack.pop();
                    s
                }
                Frame::Word { w, pos, reps } => {
                    if *pos == w.len() {
                        *reps -= 1;
                        if *reps == 0 {
                            stack.pop();
                        } else {
                            *pos = 0;
                        }
                        continue;
                    }
                    let s = w[*pos];
                    *pos += 1;
                    s
                }
            };
            if e != 0 {
                self.mul_gen(ev, g, e, &mut stack);
            }
        }
    }

    fn add_reduce<'a>(&'a self, ev: &mut [i64], g: usize, e: i64, stack: &mut Vec<Frame<'a>>) {
        ev[g] = add(ev[g], e);
        let m = self.rel[g];
        if m > 0 {
            let q = ev[g].div_euclid(m);
            ev[g] = ev[g].rem_euclid(m);
            if q > 0 {
                stack.push(Frame::Word {
                    w: &self.power[g],
                    pos: 0,
                    reps: q as u64,
                });
            } else if q < 0 {
                stack.push(Frame::Word {
                    w: &self.power_inv[g],
                    pos: 0,
                    reps: q.unsigned_abs(),
                });
            }
        }
    }

    fn mul_gen<'a>(&'a self, ev: &mut [i64], g: usize, e: i64, stack: &mut Vec<Frame<'a>>) {
        let m = self.rel[g];
        if m > 0 && e < 0 {
            stack.push(Frame::Word {
                w: &self.neg[g],
                pos: 0,
                reps: e.unsigned_abs(),
            });
            return;
        }
        if self.central[g] {
            self.add_reduce(ev, g, e, stack);
            return;
        }
        let n = self.active;
        let blocking =
            (g + 1..n).any(|j| ev[j] != 0 && !self.central[j] && self.conj(j, g).is_some());
        if !blocking {
            let new = add(ev[g], e);
            if m == 0 || (0..m).contains(&new) {
                ev[g] = new;
                return;
            }
            if !(g + 1..n).any(|j| ev[j] != 0 && !self.central[j]) {
                self.add_reduce(ev, g, e, stack);
                return;
            }
        }
        if e.abs() > 1 {
            stack.push(Frame::Syl(g, e - e.signum()));
            stack.push(Frame::Syl(g, e.signum()));
            return;
        }
        // move the non-central part of the tail past a_g^{±1}
        let side = usize::from(e < 0);
        let mut moved = Vec::new();
        for (j, x) in ev.iter_mut().enumerate().take(n).skip(g + 1) {
            if *x != 0 && !self.central[j] {
                moved.push((j, *x));
                *x = 0;
            }
        }
        ev[g] += e;
        for &(j, z) in moved.iter().rev() {
            match self.conj(j, g) {
                None => stack.push(Frame::Syl(j, z)),
                Some(c) => {
                    let w = if z > 0 { &c.by[side] } else { &c.inv[side] };
                    stack.push(Frame::Word {
                        w,
                        pos: 0,
                        reps: z.unsigned_abs(),
                    });
                }
            }
        }
        if m > 0 && ev[g] == m {
            ev[g] = 0;
            stack.push(Frame::Word {
                w: &self.power[g],
                pos: 0,
                reps: 1,
            });
        }
    }

    /// Collection by rewriting the word itself.
    pub(crate) fn collect_outermost(&self, word: &[(usize, i64)]) -> Vec<i64> {
        let mut w: Syllables = word.iter().copied().filter(|&(_, e)| e != 0).collect();
        loop {
            self.normalize(&mut w);
            let Some(p) = (0..w.len().saturating_sub(1)).find(|&p| w[p].0 > w[p + 1].0) else {
                break;
            };
            let (j, e) = w[p];
            let (i, f) = w[p + 1];
            let s = f.signum();
            let side = usize::from(s < 0);
            let mut rep = vec![(i, s)];
            match self.conj(j, i) {
                None => rep.push((j, e)),
                Some(c) => {
                    let piece = if e > 0 { &c.by[side] } else { &c.inv[side] };
                    for _ in 0..e.unsigned_abs() {
                        rep.extend(piece.iter().copied());
                    }
                }
            }
            if f != s {
                rep.push((i, f - s));
            }
            w.splice(p..p + 2, rep);
        }
        let mut ev = vec![0; self.n];
        for (g, e) in w {
            ev[g] = e;
        }
        ev
    }

    /// Merges equal neighbours and brings exponents of finite generators
    /// into range, until nothing changes.
    fn normalize(&self, w: &mut Syllables) {
        loop {
            let mut changed = false;
            let mut out: Syllables = Vec::with_capacity(w.len());
            for &(g, e) in w.iter() {
                match out.last_mut() {
                    Some(last) if last.0 == g => {
                        last.1 = add(last.1, e);
                        changed = true;
                    }
                    _ => out.push((g, e)),
                }
                if out.last().is_some_and(|s| s.1 == 0) {
                    out.pop();
                }
            }
            if let Some(p) = out
                .iter()
                .position(|&(g, e)| self.rel[g] > 0 && !(0..self.rel[g]).contains(&e))
            {
                let (g, e) = out[p];
                let m = self.rel[g];
                let (q, r) = (e.div_euclid(m), e.rem_euclid(m));
                let mut rep = Vec::new();
                if r != 0 {
                    rep.push((g, r));
                }
                let piece = if q > 0 {
                    &self.power[g]
                } else {
                    &self.power_inv[g]
                };
                for _ in 0..q.unsigned_abs() {
                    rep.extend(piece.iter().copied());
                }
                out.splice(p..p + 1, rep);
                changed = true;
            }
            *w = out;
            if !changed {
                return;
            }
        }
    }

    pub(crate) fn unit(&self, g: usize) -> Vec<i64> {
        let mut v = vec![0; self.n];
        v[g] = 1;
        v
    }

    /// Pairs of collections that agree exactly when the presentation on the
    /// first `upto` generators is consistent.
    pub(crate) fn consistency_pairs(&self, upto: usize) -> Vec<(Vec<i64>, Vec<i64>)> {
        let mut out = Vec::new();
        let from = |start: Vec<i64>, w: &[(usize, i64)]| {
            let mut ev = start;
            self.collect_into(&mut ev, w);
            ev
        };
        let m = |g: usize| self.rel[g];
        for i in 0..upto {
            for j in i + 1..upto {
                let ji = syllables(&self.collect(&[(j, 1), (i, 1)]));
                for k in j + 1..upto {
                    out.push((
                        from(self.unit(k), &ji),
                        self.collect(&[(k, 1), (j, 1), (i, 1)]),
                    ));
                }
                if m(j) > 0 {
                    let mut start = vec![0; self.n];
                    start[j] = m(j) - 1;
                    out.push((self.collect(&[(j, m(j)), (i, 1)]), from(start, &ji)));
                }
                if m(i) > 0 {
                    let pi = syllables(&self.collect(&[(i, m(i))]));
                    out.push((
                        from(self.unit(j), &pi),
                        self.collect(&[(j, 1), (i, 1), (i, m(i) - 1)]),
                    ));
                } else {
                    out.push((self.unit(j), self.collect(&[(j, 1), (i, -1), (i, 1)])));
                }
            }
            if m(i) > 0 {
                let pi = syllables(&self.collect(&[(i, m(i))]));
                out.push((from(self.unit(i), &pi), self.collect(&[(i, m(i)), (i, 1)])));
            }
        }
        out
    }
}

impl GroupOps<Vec<i64>> for Collector {
    fn one(&self) -> Vec<i64> {
        vec![0; self.n]
    }

    fn mul(&self, a: &Vec<i64>, b: &Vec<i64>) -> Vec<i64> {
        let mut ev = a.clone();
        self.collect_into(&mut ev, &syllables(b));
        ev
    }

    fn inv(&self, a: &Vec<i64>) -> Vec<i64> {
        self.collect(&invert(&syllables(a)))
    }
}
