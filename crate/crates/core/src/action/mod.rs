//! The action of Aut(F_r) on H_*(G^r; Q), computed two independent ways.
//!
//! * Path A substitutes generator images letter by letter: a Nielsen letter
//!   R(i,j) or L(i,j) sends t^k_i to t^k_i + t^k_j, a swap exchanges the
//!   coordinates, an inversion negates, and the Grassmann product re-expands.
//! * Path B never looks at the letters. It abelianizes the automorphism and
//!   sends t^k_i to Σ_m M[i][m] t^k_m, where M[i][m] is the exponent sum of
//!   a_i in f(a_m).
//!
//! The action is by precomposition, so it is a right action: for a letter
//! word the first letter acts on homology first and matrices compose in
//! reverse word order.

mod es;
mod matrix;
mod substitute;

use crate::error::{Error, Result};
use crate::free_group::{AutMap, GeneratorWord, Letter};
use crate::grassmann::{Context, GeneratorIndex, HomologyClass, Monomial};
use crate::int::Int;
use crate::linalg::IntMatrix;

pub use es::{es_compose, es_decompose, exterior_power_matrix, tensor_exterior_matrix};
pub use matrix::{full_matrix, representation_matrix, ActionSource, RepMatrix};

/// Image of t^j under the diagonal inclusion into coordinates i and k:
/// t^j_i + t^j_k, or just t^j_i when i = k.
pub fn diagonal_class(ctx: &Context, j: usize, i: usize, k: usize) -> Result<HomologyClass> {
    let a = HomologyClass::generator(ctx, GeneratorIndex::new(j, i))?;
    if i == k {
        return Ok(a);
    }
    let b = HomologyClass::generator(ctx, GeneratorIndex::new(j, k))?;
    a.add(&b)
}

/// A graded unital ring endomorphism, determined by where each generator
/// goes. Images are stored by generator position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingEndomorphism {
    ctx: Context,
    images: Vec<Vec<(Monomial, Int)>>,
}

impl RingEndomorphism {
    pub fn identity(ctx: &Context) -> Self {
        let images =
            (0..ctx.num_generators() as u32).map(|p| vec![(Monomial(1 << p), Int::ONE)]).collect();
        RingEndomorphism { ctx: ctx.clone(), images }
    }

    /// Checks that every image is homogeneous of its generator's degree.
    pub fn new(ctx: &Context, images: Vec<HomologyClass>) -> Result<Self> {
        if images.len() != ctx.num_generators() {
            return Err(Error::InvalidContext(format!(
                "expected {} generator images, got {}",
                ctx.num_generators(),
                images.len()
            )));
        }
        let mut stored = Vec::with_capacity(images.len());
        for (p, img) in images.into_iter().enumerate() {
            if img.context() != ctx {
                return Err(Error::ContextMismatch);
            }
            let want = ctx.degree_at(p as u32) as u64;
            if img.terms().any(|(m, _)| ctx.degree_of(m) != want) {
                return Err(Error::InvalidContext(format!(
                    "image of {} is not homogeneous of degree {want}",
                    ctx.generator_at(p as u32)
                )));
            }
            stored.push(img.into_terms().into_iter().collect());
        }
        Ok(RingEndomorphism { ctx: ctx.clone(), images: stored })
    }

    pub fn context(&self) -> &Context {
        &self.ctx
    }

    pub fn image(&self, g: GeneratorIndex) -> Result<HomologyClass> {
        let p = self.ctx.position(g)?;
        Ok(HomologyClass::from_terms(&self.ctx, self.images[p as usize].iter().cloned()))
    }

    /// The endomorphism induced by one letter.
    pub fn of_letter(letter: Letter, ctx: &Context) -> Result<Self> {
        letter.validate(ctx.r())?;
        let mut e = RingEndomorphism::identity(ctx);
        let r = ctx.r();
        let pos = |k: usize, i: usize| ((k - 1) * r + (i - 1)) as u32;
        for k in 1..=ctx.n() {
            match letter {
                Letter::R(i, j) | Letter::L(i, j) => {
                    e.images[pos(k, i) as usize] =
                        vec![(Monomial(1 << pos(k, i)), Int::ONE), (Monomial(1 << pos(k, j)), Int::ONE)];
                }
                Letter::Rinv(i, j) | Letter::Linv(i, j) => {
                    e.images[pos(k, i) as usize] = vec![
                        (Monomial(1 << pos(k, i)), Int::ONE),
                        (Monomial(1 << pos(k, j)), Int::from(-1)),
                    ];
                }
                Letter::Swap(i, j) => {
                    e.images.swap(pos(k, i) as usize, pos(k, j) as usize);
                }
                Letter::Invert(i) => {
                    e.images[pos(k, i) as usize] = vec![(Monomial(1 << pos(k, i)), Int::from(-1))];
                }
            }
        }
        for img in &mut e.images {
            img.sort_by_key(|(m, _)| *m);
        }
        Ok(e)
    }

    /// t^k_i ↦ Σ_m M[i][m] t^k_m for every sphere index k.
    pub fn from_exponent_sums(m: &IntMatrix, ctx: &Context) -> Result<Self> {
        let r = ctx.r();
        if m.rows() != r || m.cols() != r {
            return Err(Error::RankMismatch { expected: r, found: m.rows() });
        }
        let mut images = Vec::with_capacity(ctx.num_generators());
        for k in 0..ctx.n() {
            for i in 0..r {
                let img: Vec<(Monomial, Int)> = (0..r)
                    .filter(|&col| !m[(i, col)].is_zero())
                    .map(|col| (Monomial(1 << (k * r + col)), m[(i, col)].clone()))
                    .collect();
                images.push(img);
            }
        }
        Ok(RingEndomorphism { ctx: ctx.clone(), images })
    }

    /// Image of one monomial: the product of its generators' images in
    /// position order.
    pub fn apply_monomial(&self, m: Monomial) -> Vec<(Monomial, Int)> {
        let mut acc: Vec<(Monomial, Int)> = vec![(Monomial::UNIT, Int::ONE)];
        for p in m.positions() {
            let img = &self.images[p as usize];
            if img.is_empty() {
                return Vec::new();
            }
            if img.len() == 1 {
                // a single term maps monomials injectively: no merging needed
                let (g, c) = &img[0];
                acc.retain_mut(|(a, x)| match a.wedge(*g) {
                    Some((prod, negative)) => {
                        *a = prod;
                        let v = &*x * c;
                        *x = if negative { -v } else { v };
                        true
                    }
                    None => false,
                });
            } else {
                let mut next = Vec::with_capacity(acc.len() * img.len());
                for (a, x) in &acc {
                    for (g, c) in img {
                        if let Some((prod, negative)) = a.wedge(*g) {
                            let v = x * c;
                            next.push((prod, if negative { -v } else { v }));
                        }
                    }
                }
                acc = merge_terms(next);
            }
            if acc.is_empty() {
                break;
            }
        }
        acc.sort_unstable_by_key(|(m, _)| *m);
        acc
    }

    pub fn apply(&self, x: &HomologyClass) -> Result<HomologyClass> {
        if x.context() != &self.ctx {
            return Err(Error::ContextMismatch);
        }
        let mut out = HomologyClass::zero(&self.ctx);
        for (m, c) in x.terms() {
            for (img, v) in self.apply_monomial(m) {
                out.add_term(img, &(c * &v));
            }
        }
        Ok(out)
    }

    /// `self` followed by `next`: x ↦ next(self(x)).
    pub fn then(&self, next: &RingEndomorphism) -> Result<RingEndomorphism> {
        let images = self
            .images
            .iter()
            .map(|img| {
                let class = HomologyClass::from_terms(&self.ctx, img.iter().cloned());
                next.apply(&class)
            })
            .collect::<Result<Vec<_>>>()?;
        RingEndomorphism::new(&self.ctx, images)
    }
}

fn merge_terms(mut terms: Vec<(Monomial, Int)>) -> Vec<(Monomial, Int)> {
    terms.sort_unstable_by_key(|(m, _)| *m);
    let mut out: Vec<(Monomial, Int)> = Vec::with_capacity(terms.len());
    for (m, c) in terms {
        match out.last_mut() {
            Some((last, acc)) if *last == m => *acc += &c,
            _ => out.push((m, c)),
        }
    }
    out.retain(|(_, c)| !c.is_zero());
    out
}

pub fn endo_of_letter(letter: Letter, ctx: &Context) -> Result<RingEndomorphism> {
    RingEndomorphism::of_letter(letter, ctx)
}

/// Path A: letters act one after another, the first letter first.
pub fn act_path_a(word: &GeneratorWord, x: &HomologyClass) -> Result<HomologyClass> {
    let ctx = x.context();
    word.validate(ctx.r())?;
    let mut terms: Vec<(Monomial, Int)> = x.terms().map(|(m, c)| (m, c.clone())).collect();
    for &l in word.letters() {
        terms = substitute::substitute(l, ctx, terms);
    }
    Ok(HomologyClass::from_sorted_terms(ctx, terms))
}

/// Path A as a single endomorphism: the generator images pushed through
/// every letter in turn.
pub fn path_a_endomorphism(word: &GeneratorWord, ctx: &Context) -> Result<RingEndomorphism> {
    let images = (0..ctx.num_generators() as u32)
        .map(|p| act_path_a(word, &HomologyClass::monomial(ctx, Monomial(1 << p))))
        .collect::<Result<Vec<_>>>()?;
    RingEndomorphism::new(ctx, images)
}

/// Path B: the endomorphism read off the abelianization of `f`.
pub fn path_b_endomorphism(f: &AutMap, ctx: &Context) -> Result<RingEndomorphism> {
    if f.r() != ctx.r() {
        return Err(Error::RankMismatch { expected: ctx.r(), found: f.r() });
    }
    let m = f.abelianization_matrix();
    let det = m.det();
    if !det.abs().is_one() {
        return Err(Error::NotInvertible { det });
    }
    RingEndomorphism::from_exponent_sums(&m, ctx)
}

pub fn act_path_b(f: &AutMap, x: &HomologyClass) -> Result<HomologyClass> {
    path_b_endomorphism(f, x.context())?.apply(x)
}
