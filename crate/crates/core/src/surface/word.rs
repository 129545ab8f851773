use super::{Generator, GeneratorKind};
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: Generator,
    pub inverse: bool,
}

impl Letter {
    pub const fn pos(generator: Generator) -> Self {
        Letter { generator, inverse: false }
    }

    pub const fn neg(generator: Generator) -> Self {
        Letter { generator, inverse: true }
    }

    pub fn inv(self) -> Self {
        Letter { inverse: !self.inverse, ..self }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.generator)?;
        if self.inverse {
            f.write_str("^-1")?;
        }
        Ok(())
    }
}

/// A word in the generators, read left to right. Composition follows the
/// convention that ψ of a word is the left-to-right product of the letter
/// matrices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    pub fn pow(&self, k: u32) -> Word {
        Word(self.0.iter().copied().cycle().take(self.0.len() * k as usize).collect())
    }

    /// Cancels adjacent `x x⁻¹` pairs until none remain.
    pub fn free_reduce(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            if out.last() == Some(&l.inv()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    /// `x y x⁻¹ y⁻¹`
    pub fn commutator(x: &Word, y: &Word) -> Word {
        x.concat(y).concat(&x.inverse()).concat(&y.inverse())
    }
}

impl From<Generator> for Word {
    fn from(g: Generator) -> Self {
        Word(vec![Letter::pos(g)])
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(" "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse {token:?}: {reason}")]
pub struct ParseWordError {
    pub token: String,
    pub reason: &'static str,
}

/// Parses space-separated tokens such as `a1 a2 u1^-1 e2^3`; `1` is the
/// empty word.
impl FromStr for Word {
    type Err = ParseWordError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut letters = Vec::new();
        for tok in s.split_whitespace() {
            if tok == "1" {
                continue;
            }
            let err = |reason| ParseWordError { token: tok.to_string(), reason };
            let (base, power) = match tok.split_once('^') {
                Some((b, p)) => {
                    let p = p.trim_start_matches('{').trim_end_matches('}');
                    (b, p.parse::<i32>().map_err(|_| err("bad exponent"))?)
                }
                None => (tok, 1),
            };
            let mut chars = base.chars();
            let kind = chars.next().and_then(GeneratorKind::from_letter).ok_or_else(|| err("unknown generator family"))?;
            let digits = chars.as_str().trim_start_matches('_');
            let index: u32 = digits.parse().map_err(|_| err("missing or bad index"))?;
            if power == 0 {
                return Err(err("zero exponent"));
            }
            let l = Letter { generator: Generator::new(kind, index), inverse: power < 0 };
            letters.extend(std::iter::repeat_n(l, power.unsigned_abs() as usize));
        }
        Ok(Word(letters))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let w: Word = "a1 a2 u1^-1".parse().unwrap();
        assert_eq!(w.len(), 3);
        assert_eq!(w.to_string(), "a1 a2 u1^-1");
        let w: Word = "a1^3 e2^{-2}".parse().unwrap();
        assert_eq!(w.to_string(), "a1 a1 a1 e2^-1 e2^-1");
        assert_eq!("1".parse::<Word>().unwrap(), Word::identity());
        assert!("x1".parse::<Word>().is_err());
        assert!("a".parse::<Word>().is_err());
        assert!("a1^0".parse::<Word>().is_err());
    }

    #[test]
    fn reduction() {
        let w: Word = "a1 a2 a2^-1 a1^-1 u1".parse().unwrap();
        assert_eq!(w.free_reduce().to_string(), "u1");
        let w: Word = "a1 u1".parse().unwrap();
        assert!(w.concat(&w.inverse()).free_reduce().is_empty());
    }
}
