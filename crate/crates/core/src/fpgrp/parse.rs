//! Word syntax: generator names with optional `^k`, `*` or juxtaposition for
//! products, `[x,y]` = x⁻¹y⁻¹xy (left-normed for more entries), parentheses,
//! `1` for the identity and `lhs = rhs` for the relator lhs·rhs⁻¹.

use super::word::Word;
use super::FpError;

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    names: &'a [String],
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> FpError {
        FpError::Parse(format!(
            "{msg} at column {} in {:?}",
            self.pos + 1,
            String::from_utf8_lossy(self.s)
        ))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<(), FpError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", c as char)))
        }
    }

    fn integer(&mut self) -> Result<i64, FpError> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.s.get(self.pos), Some(b'-') | Some(b'+')) {
            self.pos += 1;
        }
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("expected an integer"))
    }

    fn relation(&mut self) -> Result<Word, FpError> {
        let lhs = self.product()?;
        if self.peek() == Some(b'=') {
            self.pos += 1;
            let rhs = self.product()?;
            return Ok(lhs.mul(&rhs.inverse()));
        }
        Ok(lhs)
    }

    fn product(&mut self) -> Result<Word, FpError> {
        let mut w = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    w = w.mul(&self.power()?);
                }
                Some(c) if c == b'(' || c == b'[' || c.is_ascii_alphanumeric() => {
                    w = w.mul(&self.power()?);
                }
                _ => return Ok(w),
            }
        }
    }

    fn power(&mut self) -> Result<Word, FpError> {
        let mut w = self.atom()?;
        while self.peek() == Some(b'^') {
            self.pos += 1;
            let k = if self.peek() == Some(b'(') {
                self.pos += 1;
                let k = self.integer()?;
                self.expect(b')')?;
                k
            } else {
                self.integer()?
            };
            w = w.pow(k);
        }
        Ok(w)
    }

    fn atom(&mut self) -> Result<Word, FpError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let w = self.product()?;
                self.expect(b')')?;
                Ok(w)
            }
            Some(b'[') => {
                self.pos += 1;
                let mut w = self.product()?;
                let mut count = 1;
                while self.peek() == Some(b',') {
                    self.pos += 1;
                    let v = self.product()?;
                    w = Word::commutator(&w, &v);
                    count += 1;
                }
                if count < 2 {
                    return Err(self.err("commutator needs two entries"));
                }
                self.expect(b']')?;
                Ok(w)
            }
            Some(b'1') => {
                self.pos += 1;
                Ok(Word::identity())
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.s.len()
                    && (self.s[self.pos].is_ascii_alphanumeric() || self.s[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let ident = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
                if let Some(i) = self.names.iter().position(|n| n == ident) {
                    return Ok(Word::gen(i));
                }
                // juxtaposed single-letter names, e.g. `ab`
                let mut w = Word::identity();
                for ch in ident.chars() {
                    let i = self
                        .names
                        .iter()
                        .position(|n| n.len() == 1 && n.starts_with(ch))
                        .ok_or_else(|| FpError::UnknownGenerator(ident.to_string()))?;
                    w.push(i, 1);
                }
                Ok(w)
            }
            _ => Err(self.err("unexpected input")),
        }
    }
}

/// Parses a word or relation over the given generator names.
pub fn parse_word(s: &str, names: &[String]) -> Result<Word, FpError> {
    let mut p = Parser {
        s: s.as_bytes(),
        pos: 0,
        names,
    };
    let w = p.relation()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names() -> Vec<String> {
        ["a", "b", "c"].iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn syntax() {
        let n = names();
        let a = Word::gen(0);
        let b = Word::gen(1);
        assert_eq!(parse_word("a^2", &n).unwrap(), a.pow(2));
        assert_eq!(parse_word("a*b^-1", &n).unwrap(), a.mul(&b.inverse()));
        assert_eq!(parse_word("ab", &n).unwrap(), a.mul(&b));
        assert_eq!(parse_word("(a b)^5", &n).unwrap(), a.mul(&b).pow(5));
        assert_eq!(parse_word("[a,b]", &n).unwrap(), Word::commutator(&a, &b));
        assert_eq!(
            parse_word("[a,b,b]", &n).unwrap(),
            Word::commutator(&Word::commutator(&a, &b), &b)
        );
        assert!(parse_word("a^b", &n).is_err());
        assert_eq!(
            parse_word("a*b = b*a", &n).unwrap(),
            a.mul(&b).mul(&a.inverse()).mul(&b.inverse())
        );
        assert_eq!(parse_word("1", &n).unwrap(), Word::identity());
        assert_eq!(parse_word("a^(-2)", &n).unwrap(), a.pow(-2));
        assert!(parse_word("d", &n).is_err());
        assert!(parse_word("a)", &n).is_err());
    }
}
