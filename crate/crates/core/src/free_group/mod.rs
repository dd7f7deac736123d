//! Words in the free group F_r, automorphisms of F_r, and the letters used
//! to spell automorphisms.
//!
//! Free generators a_1..a_r are 1-based throughout, matching the text
//! grammar `a2 a1 a2^-1`.

mod autmap;
mod letter;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub use autmap::{magnus_ia_generators, magnus_k_ij, magnus_k_ijk, AutMap, MagnusGenerator};
pub use letter::{GeneratorWord, Letter};

/// a_index or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FreeLetter {
    pub index: usize,
    pub inverse: bool,
}

impl FreeLetter {
    pub fn gen(index: usize) -> Self {
        FreeLetter { index, inverse: false }
    }

    pub fn inv(index: usize) -> Self {
        FreeLetter { index, inverse: true }
    }

    pub fn inverted(self) -> Self {
        FreeLetter { index: self.index, inverse: !self.inverse }
    }

    pub fn exponent(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

impl fmt::Display for FreeLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverse {
            write!(f, "a{}^-1", self.index)
        } else {
            write!(f, "a{}", self.index)
        }
    }
}

/// A freely reduced word. Construction always reduces.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<FreeLetter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn gen(index: usize) -> Self {
        Word(vec![FreeLetter::gen(index)])
    }

    pub fn inv(index: usize) -> Self {
        Word(vec![FreeLetter::inv(index)])
    }

    /// Free reduction with a stack: cancels every adjacent x x^-1 pair.
    pub fn reduce(letters: impl IntoIterator<Item = FreeLetter>) -> Self {
        let mut out: Vec<FreeLetter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inverted()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    pub fn letters(&self) -> &[FreeLetter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word::reduce(self.0.iter().chain(other.0.iter()).copied())
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverted()).collect())
    }

    /// Exponent sum of a_index.
    pub fn exponent_sum(&self, index: usize) -> i64 {
        self.0.iter().filter(|l| l.index == index).map(|l| l.exponent()).sum()
    }

    pub fn max_index(&self) -> usize {
        self.0.iter().map(|l| l.index).max().unwrap_or(0)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Space-separated `a<k>` / `a<k>^-1` tokens; `1` or blank is the empty word.
    fn from_str(s: &str) -> Result<Self> {
        let mut letters = Vec::new();
        let mut offset = 0;
        for token in s.split(char::is_whitespace) {
            let at = offset;
            offset += token.len() + 1;
            if token.is_empty() || (token == "1" && s.trim() == "1") {
                continue;
            }
            let body = token
                .strip_prefix('a')
                .ok_or_else(|| Error::parse(at, format!("expected a<k> or a<k>^-1, found {token:?}")))?;
            let (digits, inverse) = match body.strip_suffix("^-1") {
                Some(d) => (d, true),
                None => (body, false),
            };
            let index: usize = digits
                .parse()
                .map_err(|_| Error::parse(at + 1, format!("bad generator index in {token:?}")))?;
            if index == 0 {
                return Err(Error::parse(at + 1, "generator indices start at 1"));
            }
            letters.push(FreeLetter { index, inverse });
        }
        Ok(Word::reduce(letters))
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
