use std::fmt;

use serde::Serialize;

/// A freely reduced word, stored as syllables (generator, nonzero exponent)
/// with adjacent syllables on distinct generators.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Word {
    syllables: Vec<(u32, i64)>,
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    pub fn gen(g: usize) -> Self {
        Word {
            syllables: vec![(g as u32, 1)],
        }
    }

    pub fn gen_pow(g: usize, e: i64) -> Self {
        let mut w = Word::identity();
        w.push(g, e);
        w
    }

    /// Builds a word from arbitrary syllables, reducing freely.
    pub fn from_syllables(syl: impl IntoIterator<Item = (usize, i64)>) -> Self {
        let mut w = Word::identity();
        for (g, e) in syl {
            w.push(g, e);
        }
        w
    }

    /// From letters: generator g as +(g+1), its inverse as -(g+1).
    pub fn from_letters(letters: &[i32]) -> Self {
        Word::from_syllables(
            letters
                .iter()
                .map(|&l| ((l.unsigned_abs() - 1) as usize, l.signum() as i64)),
        )
    }

    pub fn syllables(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.syllables.iter().map(|&(g, e)| (g as usize, e))
    }

    pub fn num_syllables(&self) -> usize {
        self.syllables.len()
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Number of letters.
    pub fn len(&self) -> usize {
        self.syllables
            .iter()
            .map(|&(_, e)| e.unsigned_abs() as usize)
            .sum()
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Letters as (generator, ±1).
    pub fn letters(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.syllables.iter().flat_map(|&(g, e)| {
            std::iter::repeat_n((g as usize, e.signum()), e.unsigned_abs() as usize)
        })
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.syllables.iter().map(|&(g, _)| g as usize).max()
    }

    /// Appends g^e, reducing.
    pub fn push(&mut self, g: usize, e: i64) {
        if e == 0 {
            return;
        }
        let g = g as u32;
        if let Some(last) = self.syllables.last_mut() {
            if last.0 == g {
                last.1 += e;
                if last.1 == 0 {
                    self.syllables.pop();
                }
                return;
            }
        }
        self.syllables.push((g, e));
    }

    pub fn mul(&self, other: &Word) -> Word {
        let mut w = self.clone();
        for &(g, e) in &other.syllables {
            w.push(g as usize, e);
        }
        w
    }

    pub fn inverse(&self) -> Word {
        Word {
            syllables: self.syllables.iter().rev().map(|&(g, e)| (g, -e)).collect(),
        }
    }

    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut w = Word::identity();
        for _ in 0..k.unsigned_abs() {
            w = w.mul(&base);
        }
        w
    }

    /// [a, b] = a⁻¹b⁻¹ab
    pub fn commutator(a: &Word, b: &Word) -> Word {
        a.inverse().mul(&b.inverse()).mul(a).mul(b)
    }

    /// g⁻¹ self g
    pub fn conjugate(&self, g: &Word) -> Word {
        g.inverse().mul(self).mul(g)
    }

    pub fn exponent_sums(&self, ngens: usize) -> Vec<i64> {
        let mut v = vec![0i64; ngens];
        for &(g, e) in &self.syllables {
            v[g as usize] += e;
        }
        v
    }

    /// Removes matching first/last syllables so the word is cyclically
    /// reduced.
    pub fn cyclically_reduced(&self) -> Word {
        let mut s = self.syllables.clone();
        while s.len() >= 2 && s[0].0 == s[s.len() - 1].0 {
            let (_, e) = s.pop().unwrap();
            s[0].1 += e;
            if s[0].1 == 0 {
                s.remove(0);
            }
        }
        Word { syllables: s }
    }

    /// Substitutes `images[g]` for each generator g.
    pub fn substitute(&self, images: &[Word]) -> Word {
        let mut w = Word::identity();
        for &(g, e) in &self.syllables {
            w = w.mul(&images[g as usize].pow(e));
        }
        w
    }

    pub fn display_with(&self, names: &[String]) -> String {
        if self.syllables.is_empty() {
            return "1".to_string();
        }
        let parts: Vec<String> = self
            .syllables
            .iter()
            .map(|&(g, e)| {
                let n = names
                    .get(g as usize)
                    .cloned()
                    .unwrap_or_else(|| format!("x{}", g + 1));
                if e == 1 {
                    n
                } else {
                    format!("{n}^{e}")
                }
            })
            .collect();
        parts.join("*")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(&[]))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction() {
        let w = Word::from_syllables([(0, 2), (1, 1), (1, -1), (0, -2), (1, 3)]);
        assert_eq!(w, Word::gen_pow(1, 3));
        assert_eq!(w.inverse().inverse(), w);
        assert_eq!(w.mul(&w.inverse()), Word::identity());
        let c = Word::commutator(&Word::gen(0), &Word::gen(1));
        assert_eq!(c.len(), 4);
        assert_eq!(c.exponent_sums(2), vec![0, 0]);
        let x = Word::from_syllables([(0, 1), (1, 2), (0, -1)]);
        assert_eq!(x.cyclically_reduced(), Word::gen_pow(1, 2));
    }
}
