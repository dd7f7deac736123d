use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// One generator of Aut(F_r), indices 1-based.
///
/// `R(i,j)`: a_j ↦ a_j a_i, `L(i,j)`: a_j ↦ a_i a_j, `Rinv`/`Linv` multiply by
/// a_i^-1 instead, `Swap(i,j)` exchanges a_i and a_j, `Invert(i)`: a_i ↦ a_i^-1.
/// All other generators are fixed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Letter {
    R(usize, usize),
    Rinv(usize, usize),
    L(usize, usize),
    Linv(usize, usize),
    Swap(usize, usize),
    Invert(usize),
}

impl Letter {
    pub fn validate(&self, r: usize) -> Result<()> {
        let in_range = |x: usize| (1..=r).contains(&x);
        match *self {
            Letter::R(i, j)
            | Letter::Rinv(i, j)
            | Letter::L(i, j)
            | Letter::Linv(i, j)
            | Letter::Swap(i, j) => {
                if i == j {
                    return Err(Error::InvalidLetter(format!("{self}: indices must differ")));
                }
                if !in_range(i) || !in_range(j) {
                    return Err(Error::InvalidLetter(format!("{self}: indices must lie in 1..={r}")));
                }
            }
            Letter::Invert(i) => {
                if !in_range(i) {
                    return Err(Error::InvalidLetter(format!("{self}: index must lie in 1..={r}")));
                }
            }
        }
        Ok(())
    }

    pub fn inverse(self) -> Letter {
        match self {
            Letter::R(i, j) => Letter::Rinv(i, j),
            Letter::Rinv(i, j) => Letter::R(i, j),
            Letter::L(i, j) => Letter::Linv(i, j),
            Letter::Linv(i, j) => Letter::L(i, j),
            s @ (Letter::Swap(..) | Letter::Invert(_)) => s,
        }
    }

    /// Every valid letter for rank r, in a fixed order.
    pub fn all(r: usize) -> Vec<Letter> {
        let mut out = Vec::new();
        for i in 1..=r {
            for j in 1..=r {
                if i != j {
                    out.extend([Letter::R(i, j), Letter::Rinv(i, j), Letter::L(i, j), Letter::Linv(i, j)]);
                    if i < j {
                        out.push(Letter::Swap(i, j));
                    }
                }
            }
            out.push(Letter::Invert(i));
        }
        out
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::R(i, j) => write!(f, "R({i},{j})"),
            Letter::Rinv(i, j) => write!(f, "Ri({i},{j})"),
            Letter::L(i, j) => write!(f, "L({i},{j})"),
            Letter::Linv(i, j) => write!(f, "Li({i},{j})"),
            Letter::Swap(i, j) => write!(f, "s({i},{j})"),
            Letter::Invert(i) => write!(f, "v({i})"),
        }
    }
}

/// A word l_1 l_2 … l_m in the letters, read as the automorphism
/// l_1 ∘ l_2 ∘ … ∘ l_m (the rightmost letter is applied to a free group word
/// first). On homology the letters therefore act left to right.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GeneratorWord(pub Vec<Letter>);

impl GeneratorWord {
    pub fn empty() -> Self {
        GeneratorWord(Vec::new())
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

    pub fn validate(&self, r: usize) -> Result<()> {
        self.0.iter().try_for_each(|l| l.validate(r))
    }

    pub fn concat(&self, other: &GeneratorWord) -> GeneratorWord {
        GeneratorWord(self.0.iter().chain(&other.0).copied().collect())
    }

    pub fn inverse(&self) -> GeneratorWord {
        GeneratorWord(self.0.iter().rev().map(|l| l.inverse()).collect())
    }
}

impl From<Vec<Letter>> for GeneratorWord {
    fn from(v: Vec<Letter>) -> Self {
        GeneratorWord(v)
    }
}

impl fmt::Display for GeneratorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(Letter::to_string).collect();
        f.write_str(&parts.join(" "))
    }
}

impl FromStr for GeneratorWord {
    type Err = Error;

    /// Tokens `R(i,j)`, `Ri(i,j)`, `L(i,j)`, `Li(i,j)`, `s(i,j)`, `v(i)`
    /// separated by whitespace. An empty string is the identity.
    fn from_str(s: &str) -> Result<Self> {
        let bytes = s.as_bytes();
        let mut pos = 0;
        let mut out = Vec::new();
        let skip_ws = |pos: &mut usize| {
            while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
                *pos += 1;
            }
        };
        loop {
            skip_ws(&mut pos);
            if pos >= bytes.len() {
                break;
            }
            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_alphabetic() {
                pos += 1;
            }
            let name = &s[start..pos];
            if !matches!(name, "R" | "Ri" | "L" | "Li" | "s" | "v") {
                return Err(Error::parse(
                    start,
                    format!("unknown letter {name:?}; expected R, Ri, L, Li, s or v"),
                ));
            }
            skip_ws(&mut pos);
            if bytes.get(pos) != Some(&b'(') {
                return Err(Error::parse(pos, "expected '('"));
            }
            pos += 1;
            let mut args = Vec::new();
            loop {
                skip_ws(&mut pos);
                let num_start = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                let n: usize = s[num_start..pos]
                    .parse()
                    .map_err(|_| Error::parse(num_start, "expected an index"))?;
                args.push(n);
                skip_ws(&mut pos);
                match bytes.get(pos) {
                    Some(b',') => pos += 1,
                    Some(b')') => {
                        pos += 1;
                        break;
                    }
                    _ => return Err(Error::parse(pos, "expected ',' or ')'")),
                }
            }
            let letter = match (name, args.as_slice()) {
                ("R", &[i, j]) => Letter::R(i, j),
                ("Ri", &[i, j]) => Letter::Rinv(i, j),
                ("L", &[i, j]) => Letter::L(i, j),
                ("Li", &[i, j]) => Letter::Linv(i, j),
                ("s", &[i, j]) => Letter::Swap(i, j),
                ("v", &[i]) => Letter::Invert(i),
                _ => {
                    return Err(Error::parse(
                        start,
                        format!("wrong number of indices for {name}"),
                    ))
                }
            };
            out.push(letter);
        }
        Ok(GeneratorWord(out))
    }
}

impl Serialize for GeneratorWord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for GeneratorWord {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
