use std::fmt;

use serde::Serialize;

use super::parse::parse_word;
use super::word::Word;
use super::FpError;
use crate::exactla::{Int, IntMatrix};

/// A finite presentation ⟨x_1, …, x_n | relators⟩.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FinitePresentation {
    n_gens: usize,
    relators: Vec<Word>,
    names: Vec<String>,
}

pub fn default_names(n: usize) -> Vec<String> {
    if n <= 26 {
        (0..n)
            .map(|i| ((b'a' + i as u8) as char).to_string())
            .collect()
    } else {
        (0..n).map(|i| format!("x{}", i + 1)).collect()
    }
}

impl FinitePresentation {
    pub fn new(n_gens: usize, relators: Vec<Word>) -> Result<Self, FpError> {
        Self::with_names(default_names(n_gens), relators)
    }

    pub fn with_names(names: Vec<String>, relators: Vec<Word>) -> Result<Self, FpError> {
        let n_gens = names.len();
        for (i, r) in relators.iter().enumerate() {
            if r.max_generator().is_some_and(|g| g >= n_gens) {
                return Err(FpError::GeneratorOutOfRange { relator: i });
            }
        }
        Ok(FinitePresentation {
            n_gens,
            relators,
            names,
        })
    }

    pub fn free(n: usize) -> Self {
        FinitePresentation {
            n_gens: n,
            relators: Vec::new(),
            names: default_names(n),
        }
    }

    pub fn n_gens(&self) -> usize {
        self.n_gens
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn generators(&self) -> Vec<Word> {
        (0..self.n_gens).map(Word::gen).collect()
    }

    pub fn parse_word(&self, s: &str) -> Result<Word, FpError> {
        parse_word(s, &self.names)
    }

    /// Text format: `gens a b ...` on the first line, then one relator per
    /// line. `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self, FpError> {
        let mut lines = text
            .lines()
            .map(|l| l.split('#').next().unwrap().trim())
            .filter(|l| !l.is_empty());
        let first = lines
            .next()
            .ok_or_else(|| FpError::Parse("empty presentation".into()))?;
        let mut parts = first.split_whitespace();
        if parts.next() != Some("gens") {
            return Err(FpError::Parse("first line must be `gens ...`".into()));
        }
        let names: Vec<String> = parts.map(str::to_string).collect();
        for (i, n) in names.iter().enumerate() {
            if !n
                .chars()
                .next()
                .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                || !n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
            {
                return Err(FpError::Parse(format!("bad generator name {n:?}")));
            }
            if names[..i].contains(n) {
                return Err(FpError::Parse(format!("duplicate generator name {n:?}")));
            }
        }
        let relators: Result<Vec<Word>, FpError> = lines.map(|l| parse_word(l, &names)).collect();
        Self::with_names(names, relators?)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("gens {}\n", self.names.join(" "));
        for r in &self.relators {
            s.push_str(&r.display_with(&self.names));
            s.push('\n');
        }
        s
    }

    pub fn add_relators(&self, extra: impl IntoIterator<Item = Word>) -> Result<Self, FpError> {
        let mut rels = self.relators.clone();
        rels.extend(extra);
        Self::with_names(self.names.clone(), rels)
    }

    /// Relators × generators matrix of exponent sums.
    pub fn abelianization_matrix(&self) -> IntMatrix {
        let rows: Vec<Vec<Int>> = self
            .relators
            .iter()
            .map(|r| {
                r.exponent_sums(self.n_gens)
                    .into_iter()
                    .map(Int::from)
                    .collect()
            })
            .collect();
        IntMatrix::from_rows(self.n_gens, &rows)
    }

    /// Drops trivial relators, cyclically reduces the rest and removes
    /// duplicates (up to cyclic permutation and inversion).
    pub fn tidied(&self) -> Self {
        let mut seen = std::collections::HashSet::new();
        let mut rels = Vec::new();
        for r in &self.relators {
            let c = r.cyclically_reduced();
            if c.is_identity() {
                continue;
            }
            if seen.insert(cyclic_key(&c)) {
                rels.push(c);
            }
        }
        FinitePresentation {
            n_gens: self.n_gens,
            relators: rels,
            names: self.names.clone(),
        }
    }
}

/// Least rotation of the letter sequence of w or its inverse.
fn cyclic_key(w: &Word) -> Vec<i64> {
    let enc = |w: &Word| -> Vec<i64> { w.letters().map(|(g, e)| (g as i64 + 1) * e).collect() };
    let mut best: Option<Vec<i64>> = None;
    for v in [enc(w), enc(&w.inverse())] {
        for k in 0..v.len() {
            let rot: Vec<i64> = v[k..].iter().chain(&v[..k]).copied().collect();
            if best.as_ref().is_none_or(|b| rot < *b) {
                best = Some(rot);
            }
        }
    }
    best.unwrap_or_default()
}

impl fmt::Display for FinitePresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self
            .relators
            .iter()
            .map(|r| r.display_with(&self.names))
            .collect();
        write!(f, "< {} | {} >", self.names.join(", "), rels.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_matrix() {
        let p = FinitePresentation::parse("gens a b\n[a,b]\n").unwrap();
        assert!(p.abelianization_matrix().is_zero());
        assert_eq!(p.abelianization_matrix().rows(), 1);
        let q = FinitePresentation::parse("gens a\na^5\n").unwrap();
        assert_eq!(q.abelianization_matrix(), IntMatrix::from_i64(&[&[5]]));
        let s = FinitePresentation::parse("gens a b c d\n[a,b][c,d]\n").unwrap();
        assert!(s.abelianization_matrix().is_zero());
        assert_eq!(s.abelianization_matrix().cols(), 4);
        let back = FinitePresentation::parse(&s.to_text()).unwrap();
        assert_eq!(back, s);
        assert!(FinitePresentation::parse("gens a a\n").is_err());
        assert!(FinitePresentation::parse("a b\n").is_err());
    }

    #[test]
    fn tidy() {
        let p = FinitePresentation::parse("gens a b\na^2\nb a^2 b^-1\n1\nb^3\nb^-3\n").unwrap();
        assert_eq!(p.tidied().relators().len(), 2);
    }
}
