//! The Pontryagin ring H_*(G^r; Q) as a graded Grassmann algebra.
//!
//! There is one odd generator t^k_i for every sphere factor k in 1..n and free
//! group coordinate i in 1..r. Generator t^k_i lives at bit position
//! p = (k-1)·r + (i-1), so monomials are `u64` bit sets, each k-block
//! occupies a contiguous run of r bits, and ordering by position is the
//! lexicographic order on (k, i).
//!
//! All generators have odd degree, so they pairwise anticommute and square to
//! zero. Reordering a product into position order costs (-1)^{inversions}.

mod class;
mod text;

pub use text::format_monomial;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

pub use class::HomologyClass;

use crate::catalog::DegreeSequence;
use crate::error::{Error, Result};

/// Maximum number of generators n·r that fits a monomial bit set.
pub const MAX_GENERATORS: usize = 64;

/// Sphere-factor index `k` (1..=n) and coordinate `i` (1..=r), both 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GeneratorIndex {
    pub k: usize,
    pub i: usize,
}

impl GeneratorIndex {
    pub fn new(k: usize, i: usize) -> Self {
        GeneratorIndex { k, i }
    }
}

impl fmt::Display for GeneratorIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t{}_{}", self.k, self.i)
    }
}

/// A square-free product of generators. The empty set is the unit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial(pub u64);

impl Monomial {
    pub const UNIT: Monomial = Monomial(0);

    pub fn from_positions(positions: impl IntoIterator<Item = u32>) -> Self {
        Monomial(positions.into_iter().fold(0, |acc, p| acc | (1u64 << p)))
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn is_unit(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, position: u32) -> bool {
        self.0 >> position & 1 == 1
    }

    /// Positions in ascending order.
    pub fn positions(self) -> impl Iterator<Item = u32> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let p = rest.trailing_zeros();
                rest &= rest - 1;
                Some(p)
            }
        })
    }

    /// Product `self · other` in the exterior algebra: `None` when the two
    /// share a generator, otherwise the union and whether the sign is −1.
    ///
    /// The sign counts pairs (a in self, b in other) with a > b, which is the
    /// number of transpositions needed to merge the two sorted runs.
    #[inline]
    pub fn wedge(self, other: Monomial) -> Option<(Monomial, bool)> {
        if self.0 & other.0 != 0 {
            return None;
        }
        let mut crossings = 0u32;
        let mut rest = other.0;
        while rest != 0 {
            let b = rest.trailing_zeros();
            rest &= rest - 1;
            crossings += (self.0 >> b).count_ones();
        }
        Some((Monomial(self.0 | other.0), crossings & 1 == 1))
    }
}

#[derive(Debug)]
struct ContextInner {
    degrees: DegreeSequence,
    r: usize,
}

/// The ring H_*(G^r): a degree sequence and the free group rank.
///
/// Cheap to clone; equality is by value.
#[derive(Clone)]
pub struct Context(Arc<ContextInner>);

impl Context {
    pub fn new(degrees: DegreeSequence, r: usize) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidContext("free group rank r must be at least 1".into()));
        }
        let count = degrees.len() * r;
        if count > MAX_GENERATORS {
            return Err(Error::InvalidContext(format!(
                "n·r = {count} generators exceeds the supported maximum of {MAX_GENERATORS}"
            )));
        }
        Ok(Context(Arc::new(ContextInner { degrees, r })))
    }

    pub fn from_degrees(degrees: &[u32], r: usize) -> Result<Self> {
        Self::new(DegreeSequence::new(degrees.to_vec())?, r)
    }

    pub fn degrees(&self) -> &DegreeSequence {
        &self.0.degrees
    }

    /// Number of sphere factors n = rank(g).
    pub fn n(&self) -> usize {
        self.0.degrees.len()
    }

    pub fn r(&self) -> usize {
        self.0.r
    }

    pub fn num_generators(&self) -> usize {
        self.n() * self.r()
    }

    /// Degree of the product of all generators.
    pub fn top_degree(&self) -> u64 {
        self.0.degrees.total() * self.r() as u64
    }

    pub fn position(&self, g: GeneratorIndex) -> Result<u32> {
        if g.k == 0 || g.k > self.n() || g.i == 0 || g.i > self.r() {
            return Err(Error::IndexOutOfRange(format!(
                "{g} outside k in 1..={}, i in 1..={}",
                self.n(),
                self.r()
            )));
        }
        Ok(((g.k - 1) * self.r() + (g.i - 1)) as u32)
    }

    pub fn generator_at(&self, position: u32) -> GeneratorIndex {
        let p = position as usize;
        GeneratorIndex { k: p / self.r() + 1, i: p % self.r() + 1 }
    }

    pub fn degree_at(&self, position: u32) -> u32 {
        self.0.degrees.as_slice()[position as usize / self.r()]
    }

    pub fn degree_of(&self, m: Monomial) -> u64 {
        m.positions().map(|p| self.degree_at(p) as u64).sum()
    }

    /// Bits of the k-th block (k is 1-based): t^k_1 .. t^k_r.
    pub fn block_mask(&self, k: usize) -> u64 {
        let r = self.r();
        let ones = if r == 64 { u64::MAX } else { (1u64 << r) - 1 };
        ones << ((k - 1) * r)
    }

    pub fn all_mask(&self) -> u64 {
        let c = self.num_generators();
        if c == 64 {
            u64::MAX
        } else {
            (1u64 << c) - 1
        }
    }

    /// Every monomial of total degree `d`, ascending by bit-set value.
    pub fn basis_of_degree(&self, d: u64) -> Vec<Monomial> {
        let positions = self.num_generators() as u32;
        // suffix[p] = total degree available from positions p.. (pruning bound)
        let mut suffix = vec![0u64; positions as usize + 1];
        for p in (0..positions).rev() {
            suffix[p as usize] = suffix[p as usize + 1] + self.degree_at(p) as u64;
        }
        let mut out = Vec::new();
        self.collect_basis(0, positions, d, 0, &suffix, &mut out);
        out.sort_unstable();
        out
    }

    fn collect_basis(
        &self,
        p: u32,
        end: u32,
        remaining: u64,
        acc: u64,
        suffix: &[u64],
        out: &mut Vec<Monomial>,
    ) {
        if remaining == 0 {
            out.push(Monomial(acc));
            return;
        }
        if p == end || suffix[p as usize] < remaining {
            return;
        }
        let d = self.degree_at(p) as u64;
        if d <= remaining {
            self.collect_basis(p + 1, end, remaining - d, acc | (1 << p), suffix, out);
        }
        self.collect_basis(p + 1, end, remaining, acc, suffix, out);
    }

    /// All 2^{n·r} monomials in bit-set order. Only sensible for small n·r.
    pub fn full_basis(&self) -> Vec<Monomial> {
        assert!(self.num_generators() <= 30, "full basis of 2^{} monomials", self.num_generators());
        (0..1u64 << self.num_generators()).map(Monomial).collect()
    }

    /// Degrees that actually occur, ascending.
    pub fn occurring_degrees(&self) -> Vec<u64> {
        let mut reachable = vec![false; self.top_degree() as usize + 1];
        reachable[0] = true;
        for p in 0..self.num_generators() as u32 {
            let d = self.degree_at(p) as usize;
            for x in (d..reachable.len()).rev() {
                if reachable[x - d] {
                    reachable[x] = true;
                }
            }
        }
        (0..reachable.len() as u64).filter(|&x| reachable[x as usize]).collect()
    }
}

impl PartialEq for Context {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.r == other.0.r && self.0.degrees == other.0.degrees)
    }
}

impl Eq for Context {}

impl fmt::Debug for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Context({:?}, r={})", self.0.degrees.as_slice(), self.0.r)
    }
}

/// Sorts a product of generators into position order.
///
/// Returns sign 0 for a repeated generator, otherwise (-1)^{inversions}.
pub fn canonicalize(ctx: &Context, generators: &[GeneratorIndex]) -> Result<(Monomial, i8)> {
    let mut seen = 0u64;
    let mut inversions = 0u32;
    let mut repeated = false;
    for &g in generators {
        let p = ctx.position(g)?;
        if seen >> p & 1 == 1 {
            repeated = true;
        }
        inversions += (seen >> p).count_ones();
        seen |= 1 << p;
    }
    let sign = match (repeated, inversions % 2) {
        (true, _) => 0,
        (false, 0) => 1,
        _ => -1,
    };
    Ok((Monomial(seen), sign))
}
