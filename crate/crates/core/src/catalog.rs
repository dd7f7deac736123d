//! Compact semisimple groups reduced to the odd sphere degrees that carry their
//! rational homology, and the Poincaré polynomials of their powers.
//!
//! A simple factor contributes one odd degree per unit of rank; a semisimple
//! group is a list of factors and its degree sequence is the concatenation of
//! the per-factor sequences, in the order the factors are given. That order is
//! part of the basis contract of the Grassmann engine, so nothing here sorts.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    G2,
    F4,
    E6,
    E7,
    E8,
}

impl Family {
    pub const ALL: [Family; 9] = [
        Family::A,
        Family::B,
        Family::C,
        Family::D,
        Family::G2,
        Family::F4,
        Family::E6,
        Family::E7,
        Family::E8,
    ];

    pub fn is_classical(self) -> bool {
        matches!(self, Family::A | Family::B | Family::C | Family::D)
    }

    /// Smallest admissible rank. Low-rank coincidences (B1 = C1 = A1,
    /// D2 = A1xA1) must be entered under their A-type names.
    pub fn min_rank(self) -> usize {
        match self {
            Family::A => 1,
            Family::B | Family::C => 2,
            Family::D => 3,
            _ => self.fixed_rank().unwrap(),
        }
    }

    fn fixed_rank(self) -> Option<usize> {
        match self {
            Family::G2 => Some(2),
            Family::F4 => Some(4),
            Family::E6 => Some(6),
            Family::E7 => Some(7),
            Family::E8 => Some(8),
            _ => None,
        }
    }
}

// Degrees 2m+1 over the exponents m of the exceptional Lie algebras.
const G2_DEGREES: &[u32] = &[3, 11];
const F4_DEGREES: &[u32] = &[3, 11, 15, 23];
const E6_DEGREES: &[u32] = &[3, 9, 11, 15, 17, 23];
const E7_DEGREES: &[u32] = &[3, 11, 15, 19, 23, 27, 35];
const E8_DEGREES: &[u32] = &[3, 15, 23, 27, 35, 39, 47, 59];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SimpleFactor {
    family: Family,
    rank: usize,
}

impl SimpleFactor {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        if let Some(fixed) = family.fixed_rank() {
            if rank != fixed {
                return Err(Error::InvalidFactor {
                    factor: format!("{family:?}"),
                    reason: format!("exceptional factor has fixed rank {fixed}, got {rank}"),
                });
            }
        } else if rank < family.min_rank() {
            return Err(Error::InvalidFactor {
                factor: format!("{family:?}{rank}"),
                reason: format!(
                    "rank {rank} is below the minimum {} for this family",
                    family.min_rank()
                ),
            });
        }
        Ok(SimpleFactor { family, rank })
    }

    pub fn exceptional(family: Family) -> Result<Self> {
        let rank = family.fixed_rank().ok_or_else(|| Error::InvalidFactor {
            factor: format!("{family:?}"),
            reason: "classical families need an explicit rank".into(),
        })?;
        Ok(SimpleFactor { family, rank })
    }

    /// SU(m), type A_{m-1}.
    pub fn su(m: usize) -> Result<Self> {
        Self::new(Family::A, m.saturating_sub(1))
    }

    /// Spin(2n+1) or SO(2n+1), type B_n.
    pub fn so_odd(n: usize) -> Result<Self> {
        Self::new(Family::B, n)
    }

    /// Sp(n), type C_n.
    pub fn sp(n: usize) -> Result<Self> {
        Self::new(Family::C, n)
    }

    /// SO(2n) or Spin(2n), type D_n.
    pub fn so_even(n: usize) -> Result<Self> {
        Self::new(Family::D, n)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn degrees(&self) -> Vec<u32> {
        let n = self.rank as u32;
        match self.family {
            Family::A => (1..=n).map(|k| 2 * k + 1).collect(),
            Family::B | Family::C => (1..=n).map(|k| 4 * k - 1).collect(),
            Family::D => (1..n).map(|k| 4 * k - 1).chain([2 * n - 1]).collect(),
            Family::G2 => G2_DEGREES.to_vec(),
            Family::F4 => F4_DEGREES.to_vec(),
            Family::E6 => E6_DEGREES.to_vec(),
            Family::E7 => E7_DEGREES.to_vec(),
            Family::E8 => E8_DEGREES.to_vec(),
        }
    }

    /// Manifold dimension of the simple group, from the Lie algebra side.
    pub fn dimension(&self) -> u64 {
        let n = self.rank as u64;
        match self.family {
            Family::A => n * (n + 2),
            Family::B | Family::C => n * (2 * n + 1),
            Family::D => n * (2 * n - 1),
            Family::G2 => 14,
            Family::F4 => 52,
            Family::E6 => 78,
            Family::E7 => 133,
            Family::E8 => 248,
        }
    }
}

impl fmt::Display for SimpleFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.family.is_classical() {
            write!(f, "{:?}{}", self.family, self.rank)
        } else {
            write!(f, "{:?}", self.family)
        }
    }
}

/// Odd sphere degrees d_1..d_n in catalog order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct DegreeSequence(Vec<u32>);

impl DegreeSequence {
    pub fn new(degrees: Vec<u32>) -> Result<Self> {
        if degrees.is_empty() {
            return Err(Error::InvalidContext("degree sequence is empty".into()));
        }
        if let Some(bad) = degrees.iter().find(|&&d| d < 3 || d % 2 == 0) {
            return Err(Error::InvalidContext(format!(
                "degree {bad} is not an odd integer >= 3"
            )));
        }
        Ok(DegreeSequence(degrees))
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    /// rank of the Lie algebra: number of sphere factors.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> u64 {
        self.0.iter().map(|&d| d as u64).sum()
    }
}

impl TryFrom<Vec<u32>> for DegreeSequence {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        DegreeSequence::new(v)
    }
}

impl From<DegreeSequence> for Vec<u32> {
    fn from(d: DegreeSequence) -> Self {
        d.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupSpec {
    Factors(Vec<SimpleFactor>),
    /// Explicit degrees, bypassing the catalog.
    Degrees(DegreeSequence),
}

impl GroupSpec {
    pub fn from_factors(factors: Vec<SimpleFactor>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidContext("group has no factors".into()));
        }
        Ok(GroupSpec::Factors(factors))
    }

    pub fn degrees(&self) -> DegreeSequence {
        match self {
            GroupSpec::Factors(fs) => {
                DegreeSequence(fs.iter().flat_map(SimpleFactor::degrees).collect())
            }
            GroupSpec::Degrees(d) => d.clone(),
        }
    }

    /// rank(g), the only invariant the representation depends on.
    pub fn rank(&self) -> usize {
        self.degrees().len()
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Factors(fs) => {
                for (i, fac) in fs.iter().enumerate() {
                    if i > 0 {
                        f.write_str("x")?;
                    }
                    write!(f, "{fac}")?;
                }
                Ok(())
            }
            GroupSpec::Degrees(d) => {
                let parts: Vec<String> = d.0.iter().map(u32::to_string).collect();
                write!(f, "deg[{}]", parts.join(","))
            }
        }
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    /// `A2xA1`, `D4`, `G2xE8`, or `deg[3,5,7]`.
    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim();
        let offset = s.len() - s.trim_start().len();
        if let Some(rest) = trimmed.strip_prefix("deg[") {
            let body = rest
                .strip_suffix(']')
                .ok_or_else(|| Error::parse(offset + trimmed.len(), "expected closing ']'"))?;
            let mut degrees = Vec::new();
            let mut pos = offset + 4;
            for part in body.split(',') {
                let d: u32 = part
                    .trim()
                    .parse()
                    .map_err(|_| Error::parse(pos, format!("expected a degree, found {part:?}")))?;
                degrees.push(d);
                pos += part.len() + 1;
            }
            return Ok(GroupSpec::Degrees(DegreeSequence::new(degrees)?));
        }
        if trimmed.is_empty() {
            return Err(Error::parse(offset, "empty group specification"));
        }
        let mut factors = Vec::new();
        let mut pos = offset;
        for token in trimmed.split('x') {
            factors.push(parse_factor(token, pos)?);
            pos += token.len() + 1;
        }
        GroupSpec::from_factors(factors)
    }
}

fn parse_factor(token: &str, pos: usize) -> Result<SimpleFactor> {
    let family = match token {
        "G2" => return SimpleFactor::exceptional(Family::G2),
        "F4" => return SimpleFactor::exceptional(Family::F4),
        "E6" => return SimpleFactor::exceptional(Family::E6),
        "E7" => return SimpleFactor::exceptional(Family::E7),
        "E8" => return SimpleFactor::exceptional(Family::E8),
        _ if token.starts_with('A') => Family::A,
        _ if token.starts_with('B') => Family::B,
        _ if token.starts_with('C') => Family::C,
        _ if token.starts_with('D') => Family::D,
        _ => {
            return Err(Error::parse(
                pos,
                format!("unknown factor {token:?}; expected A<k>, B<k>, C<k>, D<k>, G2, F4, E6, E7 or E8"),
            ))
        }
    };
    let rank: usize = token[1..]
        .parse()
        .map_err(|_| Error::parse(pos + 1, format!("expected a rank after {:?}", &token[..1])))?;
    SimpleFactor::new(family, rank)
}

/// Coefficients of (∏_k (1 + x^{d_k}))^r, indexed by homology degree.
pub fn poincare_polynomial(degrees: &DegreeSequence, r: usize) -> Vec<BigUint> {
    let mut poly = vec![BigUint::one()];
    for _ in 0..r {
        for &d in degrees.as_slice() {
            let d = d as usize;
            let mut next = vec![BigUint::zero(); poly.len() + d];
            for (i, c) in poly.iter().enumerate() {
                next[i] += c;
                next[i + d] += c;
            }
            poly = next;
        }
    }
    poly
}

/// Renders `1 + 3x^3 + x^6` style, skipping zero coefficients.
pub fn render_polynomial(coeffs: &[BigUint]) -> String {
    let mut parts = Vec::new();
    for (deg, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let part = match (deg, c.is_one()) {
            (0, _) => c.to_string(),
            (1, true) => "x".to_string(),
            (1, false) => format!("{c}x"),
            (_, true) => format!("x^{deg}"),
            (_, false) => format!("{c}x^{deg}"),
        };
        parts.push(part);
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}
