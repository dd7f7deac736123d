use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use super::{canonicalize, Context, GeneratorIndex, Monomial};
use crate::error::{Error, Result};
use crate::int::Int;

/// An exact integer combination of monomials in one context.
///
/// Terms are kept in bit-set order and zero coefficients are never stored,
/// so structural equality is equality in the ring.
#[derive(Clone, PartialEq, Eq)]
pub struct HomologyClass {
    ctx: Context,
    terms: BTreeMap<Monomial, Int>,
}

impl HomologyClass {
    pub fn zero(ctx: &Context) -> Self {
        HomologyClass { ctx: ctx.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ctx: &Context) -> Self {
        Self::monomial(ctx, Monomial::UNIT)
    }

    pub fn monomial(ctx: &Context, m: Monomial) -> Self {
        debug_assert_eq!(m.0 & !ctx.all_mask(), 0);
        let mut terms = BTreeMap::new();
        terms.insert(m, Int::ONE);
        HomologyClass { ctx: ctx.clone(), terms }
    }

    pub fn generator(ctx: &Context, g: GeneratorIndex) -> Result<Self> {
        let p = ctx.position(g)?;
        Ok(Self::monomial(ctx, Monomial(1 << p)))
    }

    /// The product of the listed generators in the given order.
    pub fn product_of(ctx: &Context, gens: &[GeneratorIndex]) -> Result<Self> {
        let (m, sign) = canonicalize(ctx, gens)?;
        Ok(match sign {
            0 => Self::zero(ctx),
            1 => Self::monomial(ctx, m),
            _ => -Self::monomial(ctx, m),
        })
    }

    pub fn from_terms(ctx: &Context, terms: impl IntoIterator<Item = (Monomial, Int)>) -> Self {
        let mut out = Self::zero(ctx);
        for (m, c) in terms {
            out.add_term(m, &c);
        }
        out
    }

    /// Terms already sorted by monomial, distinct and nonzero.
    pub(crate) fn from_sorted_terms(ctx: &Context, terms: Vec<(Monomial, Int)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        HomologyClass { ctx: ctx.clone(), terms: terms.into_iter().collect() }
    }

    pub fn context(&self) -> &Context {
        &self.ctx
    }

    pub fn terms(&self) -> impl Iterator<Item = (Monomial, &Int)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, Int> {
        self.terms
    }

    pub fn coefficient(&self, m: Monomial) -> Int {
        self.terms.get(&m).cloned().unwrap_or_default()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: &Int) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_context(&self, other: &HomologyClass) -> Result<()> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn add(&self, other: &HomologyClass) -> Result<Self> {
        self.check_context(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &HomologyClass) -> Result<Self> {
        self.add(&-other.clone())
    }

    pub fn scale(&self, s: &Int) -> Self {
        if s.is_zero() {
            return Self::zero(&self.ctx);
        }
        HomologyClass {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(m, c)| (*m, c * s)).collect(),
        }
    }

    /// Pontryagin product, the bilinear extension of [`Monomial::wedge`].
    pub fn multiply(&self, other: &HomologyClass) -> Result<Self> {
        self.check_context(other)?;
        let mut out = Self::zero(&self.ctx);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                if let Some((m, negative)) = a.wedge(*b) {
                    let c = x * y;
                    out.add_term(m, &if negative { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    /// `Some(d)` when every term has degree d. The zero class is homogeneous
    /// of every degree and reports `Some(0)`.
    pub fn homogeneous_degree(&self) -> Option<u64> {
        let mut degrees = self.terms.keys().map(|&m| self.ctx.degree_of(m));
        let first = degrees.next().unwrap_or(0);
        degrees.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous_degree().is_some()
    }
}

impl std::ops::Neg for HomologyClass {
    type Output = HomologyClass;
    fn neg(mut self) -> HomologyClass {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> Context {
        Context::from_degrees(&[3, 5], 3).unwrap()
    }

    fn t(c: &Context, k: usize, i: usize) -> HomologyClass {
        HomologyClass::generator(c, GeneratorIndex::new(k, i)).unwrap()
    }

    #[test]
    fn anticommutation() {
        let c = ctx();
        let lhs = t(&c, 2, 3).multiply(&t(&c, 2, 2)).unwrap();
        let rhs = -t(&c, 2, 2).multiply(&t(&c, 2, 3)).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(lhs.num_terms(), 1);
    }

    #[test]
    fn square_terms_vanish() {
        let c = ctx();
        let x = t(&c, 1, 1).add(&t(&c, 1, 3)).unwrap();
        let prod = x.multiply(&t(&c, 1, 3)).unwrap();
        let expect = HomologyClass::product_of(
            &c,
            &[GeneratorIndex::new(1, 1), GeneratorIndex::new(1, 3)],
        )
        .unwrap();
        assert_eq!(prod, expect);
    }

    #[test]
    fn unit_and_zero() {
        let c = ctx();
        let x = t(&c, 1, 2).add(&t(&c, 2, 1).scale(&Int::from(-4))).unwrap();
        assert_eq!(HomologyClass::one(&c).multiply(&x).unwrap(), x);
        assert_eq!(x.multiply(&HomologyClass::one(&c)).unwrap(), x);
        assert!(x.sub(&x).unwrap().is_zero());
        assert!(x.scale(&Int::ZERO).is_zero());
    }

    #[test]
    fn context_mismatch() {
        let a = ctx();
        let b = Context::from_degrees(&[3, 7], 3).unwrap();
        assert_eq!(t(&a, 1, 1).multiply(&t(&b, 1, 1)), Err(Error::ContextMismatch));
        assert_eq!(t(&a, 1, 1).add(&t(&b, 1, 1)), Err(Error::ContextMismatch));
    }

    #[test]
    fn homogeneity() {
        let c = ctx();
        assert_eq!(HomologyClass::one(&c).homogeneous_degree(), Some(0));
        let x = t(&c, 1, 1).add(&t(&c, 2, 1)).unwrap();
        assert_eq!(x.homogeneous_degree(), None);
        let y = t(&c, 1, 1).multiply(&t(&c, 2, 2)).unwrap();
        assert_eq!(y.homogeneous_degree(), Some(8));
    }
}
