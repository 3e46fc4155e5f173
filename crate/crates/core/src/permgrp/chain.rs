//! Deterministic Schreier–Sims.

use super::perm::Permutation;

#[derive(Clone, Debug)]
pub(crate) struct Level {
    pub base: usize,
    pub gens: Vec<Permutation>,
    pub orbit: Vec<u32>,
    /// transversal[b] maps the base point to b
    pub transversal: Vec<Option<Permutation>>,
}

impl Level {
    fn new(degree: usize, base: usize, gens: Vec<Permutation>) -> Self {
        let mut l = Level {
            base,
            gens,
            orbit: Vec::new(),
            transversal: Vec::new(),
        };
        l.recompute(degree);
        l
    }

    fn recompute(&mut self, degree: usize) {
        let mut tr: Vec<Option<Permutation>> = vec![None; degree];
        tr[self.base] = Some(Permutation::identity(degree));
        let mut orbit = vec![self.base as u32];
        let mut i = 0;
        while i < orbit.len() {
            let b = orbit[i] as usize;
            for s in &self.gens {
                let c = s.image(b);
                if tr[c].is_none() {
                    tr[c] = Some(tr[b].as_ref().unwrap().mul(s));
                    orbit.push(c as u32);
                }
            }
            i += 1;
        }
        self.orbit = orbit;
        self.transversal = tr;
    }
}

#[derive(Clone, Debug)]
pub(crate) struct StabChain {
    pub levels: Vec<Level>,
}

impl StabChain {
    /// Sifts `g` through levels `from..`; returns the residue and the level
    /// at which sifting stopped (`levels.len()` if it went all the way).
    pub fn strip_from(&self, g: &Permutation, from: usize) -> (Permutation, usize) {
        let mut h = g.clone();
        for (j, l) in self.levels.iter().enumerate().skip(from) {
            let b = h.image(l.base);
            match &l.transversal[b] {
                None => return (h, j),
                Some(u) => h = h.mul(&u.inverse()),
            }
        }
        (h, self.levels.len())
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        let (r, _) = self.strip_from(g, 0);
        r.is_identity()
    }

    pub fn build(degree: usize, gens: &[Permutation]) -> StabChain {
        let gens: Vec<Permutation> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
        let mut base: Vec<usize> = Vec::new();
        for g in &gens {
            if base.iter().all(|&b| g.image(b) == b) {
                base.push(g.smallest_moved_point().unwrap());
            }
        }
        let mut levels: Vec<Level> = Vec::new();
        for (i, &b) in base.iter().enumerate() {
            let s: Vec<Permutation> = gens
                .iter()
                .filter(|g| base[..i].iter().all(|&p| g.image(p) == p))
                .cloned()
                .collect();
            levels.push(Level::new(degree, b, s));
        }
        let mut chain = StabChain { levels };
        if chain.levels.is_empty() {
            return chain;
        }
        let mut i = chain.levels.len() as isize - 1;
        'outer: while i >= 0 {
            let iu = i as usize;
            let orbit = chain.levels[iu].orbit.clone();
            let sgens = chain.levels[iu].gens.clone();
            for &b in &orbit {
                let ub = chain.levels[iu].transversal[b as usize].clone().unwrap();
                for s in &sgens {
                    let us = ub.mul(s);
                    let c = s.image(b as usize);
                    let uc = chain.levels[iu].transversal[c].as_ref().unwrap();
                    if &us == uc {
                        continue;
                    }
                    let h = us.mul(&uc.inverse());
                    let (res, j) = chain.strip_from(&h, iu + 1);
                    if res.is_identity() {
                        continue;
                    }
                    if j == chain.levels.len() {
                        let p = res.smallest_moved_point().unwrap();
                        chain.levels.push(Level::new(degree, p, Vec::new()));
                    }
                    for l in iu + 1..=j {
                        chain.levels[l].gens.push(res.clone());
                        chain.levels[l].recompute(degree);
                    }
                    i = j as isize;
                    continue 'outer;
                }
            }
            i -= 1;
        }
        chain
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }
}
