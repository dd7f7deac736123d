use std::fmt;

use serde::{Deserialize, Serialize};

use super::{FreeLetter, GeneratorWord, Letter, Word};
use crate::error::{Error, Result};
use crate::int::Int;
use crate::linalg::IntMatrix;

/// An endomorphism of F_r given by the images of a_1..a_r.
///
/// Construction only checks that the abelianization has determinant ±1; a
/// tuple that passes this but is not actually invertible in Aut(F_r) is the
/// caller's responsibility.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AutMap {
    images: Vec<Word>,
}

#[derive(Serialize, Deserialize)]
struct AutMapJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    schema: Option<u32>,
    r: usize,
    images: Vec<Word>,
}

impl AutMap {
    pub fn new(r: usize, images: Vec<Word>) -> Result<Self> {
        if images.len() != r {
            return Err(Error::RankMismatch { expected: r, found: images.len() });
        }
        if let Some(w) = images.iter().find(|w| w.max_index() > r) {
            return Err(Error::IndexOutOfRange(format!("image {w} uses a generator beyond a{r}")));
        }
        let map = AutMap { images };
        let det = map.abelianization_matrix().det();
        if !det.abs().is_one() {
            return Err(Error::NotInvertible { det });
        }
        Ok(map)
    }

    fn unchecked(images: Vec<Word>) -> Self {
        AutMap { images }
    }

    pub fn identity(r: usize) -> Self {
        AutMap::unchecked((1..=r).map(Word::gen).collect())
    }

    pub fn from_letter(letter: Letter, r: usize) -> Result<Self> {
        letter.validate(r)?;
        let mut images: Vec<Word> = (1..=r).map(Word::gen).collect();
        let a = FreeLetter::gen;
        let ai = FreeLetter::inv;
        match letter {
            Letter::R(i, j) => images[j - 1] = Word::reduce([a(j), a(i)]),
            Letter::L(i, j) => images[j - 1] = Word::reduce([a(i), a(j)]),
            Letter::Rinv(i, j) => images[j - 1] = Word::reduce([a(j), ai(i)]),
            Letter::Linv(i, j) => images[j - 1] = Word::reduce([ai(i), a(j)]),
            Letter::Swap(i, j) => images.swap(i - 1, j - 1),
            Letter::Invert(i) => images[i - 1] = Word::inv(i),
        }
        Ok(AutMap::unchecked(images))
    }

    /// l_1 ∘ l_2 ∘ … ∘ l_m.
    pub fn from_word(word: &GeneratorWord, r: usize) -> Result<Self> {
        word.validate(r)?;
        let mut acc = AutMap::identity(r);
        for &l in word.letters() {
            acc = acc.compose(&AutMap::from_letter(l, r)?);
        }
        Ok(acc)
    }

    pub fn r(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn image(&self, index: usize) -> &Word {
        &self.images[index - 1]
    }

    /// Substitutes the images into `w` and reduces.
    pub fn apply(&self, w: &Word) -> Word {
        Word::reduce(w.letters().iter().flat_map(|l| {
            let img = &self.images[l.index - 1];
            let letters: Vec<FreeLetter> = if l.inverse {
                img.inverse().letters().to_vec()
            } else {
                img.letters().to_vec()
            };
            letters
        }))
    }

    /// self ∘ other: apply `other` first, then `self`.
    pub fn compose(&self, other: &AutMap) -> AutMap {
        assert_eq!(self.r(), other.r(), "composing maps of different rank");
        AutMap::unchecked(other.images.iter().map(|w| self.apply(w)).collect())
    }

    /// M[l][m] = exponent sum of a_{l+1} in the image of a_{m+1}. Columns are
    /// the abelianized images.
    pub fn abelianization_matrix(&self) -> IntMatrix {
        let r = self.r();
        let mut m = IntMatrix::zeros(r, r);
        for (col, img) in self.images.iter().enumerate() {
            for l in img.letters() {
                let entry = &mut m[(l.index - 1, col)];
                *entry += &Int::from(l.exponent());
            }
        }
        m
    }

    /// Member of IA_r: acts trivially on the abelianization.
    pub fn is_ia(&self) -> bool {
        self.abelianization_matrix().is_identity()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(AutMapJson { schema: Some(1), r: self.r(), images: self.images.clone() })
            .expect("AutMap serializes")
    }

    /// `{"r":2, "images":["a2 a1 a2^-1","a2"]}`; a `"schema"` field is
    /// accepted and must be 1 if present.
    pub fn from_json(src: &str) -> Result<Self> {
        let raw: AutMapJson = serde_json::from_str(src).map_err(|e| Error::Json(e.to_string()))?;
        if let Some(v) = raw.schema {
            if v != 1 {
                return Err(Error::Json(format!("unsupported schema version {v}")));
            }
        }
        AutMap::new(raw.r, raw.images)
    }
}

impl fmt::Debug for AutMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images.iter().map(Word::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl fmt::Display for AutMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A Magnus generator of IA_r together with a factorization into letters.
#[derive(Debug, Clone)]
pub struct MagnusGenerator {
    pub name: String,
    pub map: AutMap,
    pub factorization: GeneratorWord,
}

/// K_ij: a_i ↦ a_j a_i a_j^-1. Factorization L(j,i) Ri(j,i).
pub fn magnus_k_ij(r: usize, i: usize, j: usize) -> MagnusGenerator {
    let mut images: Vec<Word> = (1..=r).map(Word::gen).collect();
    images[i - 1] = Word::reduce([FreeLetter::gen(j), FreeLetter::gen(i), FreeLetter::inv(j)]);
    MagnusGenerator {
        name: format!("K{i},{j}"),
        map: AutMap::unchecked(images),
        factorization: GeneratorWord(vec![Letter::L(j, i), Letter::Rinv(j, i)]),
    }
}

/// K_ijk: a_i ↦ a_i a_j a_k a_j^-1 a_k^-1. Factorization
/// R(j,i) R(k,i) Ri(j,i) Ri(k,i).
pub fn magnus_k_ijk(r: usize, i: usize, j: usize, k: usize) -> MagnusGenerator {
    let mut images: Vec<Word> = (1..=r).map(Word::gen).collect();
    images[i - 1] = Word::reduce([
        FreeLetter::gen(i),
        FreeLetter::gen(j),
        FreeLetter::gen(k),
        FreeLetter::inv(j),
        FreeLetter::inv(k),
    ]);
    MagnusGenerator {
        name: format!("K{i},{j},{k}"),
        map: AutMap::unchecked(images),
        factorization: GeneratorWord(vec![
            Letter::R(j, i),
            Letter::R(k, i),
            Letter::Rinv(j, i),
            Letter::Rinv(k, i),
        ]),
    }
}

/// All K_ij (i ≠ j) followed by all K_ijk (distinct, j < k).
pub fn magnus_ia_generators(r: usize) -> Vec<MagnusGenerator> {
    let mut out = Vec::new();
    for i in 1..=r {
        for j in 1..=r {
            if i != j {
                out.push(magnus_k_ij(r, i, j));
            }
        }
    }
    for i in 1..=r {
        for j in 1..=r {
            for k in j + 1..=r {
                if i != j && i != k {
                    out.push(magnus_k_ijk(r, i, j, k));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn gw(s: &str) -> GeneratorWord {
        s.parse().unwrap()
    }

    fn map(r: usize, imgs: &[&str]) -> AutMap {
        AutMap::new(r, imgs.iter().map(|s| w(s)).collect()).unwrap()
    }

    #[test]
    fn letter_maps() {
        assert_eq!(AutMap::from_letter(Letter::R(1, 2), 3).unwrap(), map(3, &["a1", "a2 a1", "a3"]));
        assert_eq!(AutMap::from_letter(Letter::L(1, 2), 2).unwrap(), map(2, &["a1", "a1 a2"]));
        assert_eq!(AutMap::from_letter(Letter::Rinv(3, 1), 3).unwrap(), map(3, &["a1 a3^-1", "a2", "a3"]));
        assert_eq!(AutMap::from_letter(Letter::Linv(3, 1), 3).unwrap(), map(3, &["a3^-1 a1", "a2", "a3"]));
        assert_eq!(AutMap::from_letter(Letter::Swap(1, 2), 2).unwrap(), map(2, &["a2", "a1"]));
        assert_eq!(AutMap::from_letter(Letter::Invert(2), 2).unwrap(), map(2, &["a1", "a2^-1"]));
        assert!(AutMap::from_letter(Letter::R(2, 2), 2).is_err());
    }

    #[test]
    fn inverse_pairs_compose_to_identity() {
        for l in Letter::all(3) {
            let f = AutMap::from_letter(l, 3).unwrap();
            let g = AutMap::from_letter(l.inverse(), 3).unwrap();
            assert_eq!(f.compose(&g), AutMap::identity(3), "{l}");
            assert_eq!(g.compose(&f), AutMap::identity(3), "{l}");
        }
    }

    #[test]
    fn word_examples() {
        assert_eq!(AutMap::from_word(&GeneratorWord::empty(), 3).unwrap(), AutMap::identity(3));
        let k12 = AutMap::from_word(&gw("L(2,1) Ri(2,1)"), 2).unwrap();
        assert_eq!(k12, map(2, &["a2 a1 a2^-1", "a2"]));
        assert_eq!(AutMap::from_word(&gw("s(1,2) s(1,2)"), 2).unwrap(), AutMap::identity(2));
        assert_eq!(k12.apply(&w("a1")), w("a2 a1 a2^-1"));
        assert_eq!(AutMap::identity(2).apply(&w("a1 a2^-1 a1")), w("a1 a2^-1 a1"));
    }

    #[test]
    fn abelianization_examples() {
        let r12 = AutMap::from_letter(Letter::R(1, 2), 2).unwrap();
        assert_eq!(r12.abelianization_matrix(), IntMatrix::from_i64_rows(&[&[1, 1], &[0, 1]]));
        assert!(!r12.is_ia());
        assert!(AutMap::identity(4).abelianization_matrix().is_identity());
        assert!(magnus_k_ij(2, 1, 2).map.abelianization_matrix().is_identity());
    }

    #[test]
    fn magnus_generators() {
        let g2 = magnus_ia_generators(2);
        assert_eq!(g2.iter().map(|g| g.name.as_str()).collect::<Vec<_>>(), vec!["K1,2", "K2,1"]);
        assert_eq!(magnus_ia_generators(3).len(), 9);
        for r in 2..=5 {
            let gens = magnus_ia_generators(r);
            assert_eq!(gens.len(), r * (r - 1) + r * (r - 1) * (r - 2) / 2);
            for g in gens {
                assert!(g.map.is_ia(), "{}", g.name);
                // the supplied factorization really spells the generator
                assert_eq!(AutMap::from_word(&g.factorization, r).unwrap(), g.map, "{}", g.name);
            }
        }
    }

    #[test]
    fn construction_checks() {
        assert!(matches!(
            AutMap::new(2, vec![w("a1 a1"), w("a2")]),
            Err(Error::NotInvertible { .. })
        ));
        assert!(matches!(AutMap::new(2, vec![w("a1")]), Err(Error::RankMismatch { .. })));
        assert!(matches!(AutMap::new(2, vec![w("a1"), w("a3")]), Err(Error::IndexOutOfRange(_))));
    }

    #[test]
    fn json_roundtrip() {
        let f = AutMap::from_json(r#"{"r":2, "images":["a2 a1 a2^-1","a2"]}"#).unwrap();
        assert!(f.is_ia());
        let again = AutMap::from_json(&f.to_json().to_string()).unwrap();
        assert_eq!(again, f);
        assert!(matches!(
            AutMap::from_json(r#"{"schema":2,"r":1,"images":["a1"]}"#),
            Err(Error::Json(_))
        ));
    }
}
