//! Letter substitution on sorted term lists, the inner loop of Path A.
//!
//! Every letter replaces a generator t^k_i by ±t^k_i, by t^k_j, or by
//! t^k_i ± t^k_j, so substituting into a monomial only moves single bits
//! inside a k-block. Moving the factor at coordinate i to coordinate j passes
//! exactly the generators of the monomial strictly between the two
//! positions, which fixes the sign.

use crate::free_group::Letter;
use crate::grassmann::{Context, Monomial};
use crate::int::Int;

use super::merge_terms;

/// Shifts the coordinate-i bits of every block onto coordinate j.
fn shift(bits: u64, i: usize, j: usize) -> u64 {
    if j > i {
        bits << (j - i)
    } else {
        bits >> (i - j)
    }
}

/// Mask of coordinates i and j in every block.
fn coordinate_mask(ctx: &Context, i: usize) -> u64 {
    (1..=ctx.n()).fold(0, |acc, k| acc | 1u64 << ((k - 1) * ctx.r() + i - 1))
}

/// Bits strictly between coordinates i and j within the block of `bit`.
fn between(bit: u64, i: usize, j: usize) -> u64 {
    let other = shift(bit, i, j);
    let (lo, hi) = if bit < other { (bit, other) } else { (other, bit) };
    (hi - 1) & !(lo | (lo - 1))
}

fn odd_crossings(m: u64, moved: u64, i: usize, j: usize) -> bool {
    let mut rest = moved;
    let mut parity = 0;
    while rest != 0 {
        let bit = rest & rest.wrapping_neg();
        rest &= rest - 1;
        parity ^= (m & between(bit, i, j)).count_ones() & 1;
    }
    parity == 1
}

fn signed(c: &Int, negative: bool) -> Int {
    if negative {
        -c.clone()
    } else {
        c.clone()
    }
}

/// Applies the ring endomorphism of `letter` to a sorted, merged term list.
pub(crate) fn substitute(letter: Letter, ctx: &Context, terms: Vec<(Monomial, Int)>) -> Vec<(Monomial, Int)> {
    match letter {
        Letter::Invert(i) => {
            let mask = coordinate_mask(ctx, i);
            terms
                .into_iter()
                .map(|(m, c)| if (m.0 & mask).count_ones() % 2 == 1 { (m, -c) } else { (m, c) })
                .collect()
        }
        Letter::Swap(i, j) => {
            let mi = coordinate_mask(ctx, i);
            let mj = coordinate_mask(ctx, j);
            let mut out: Vec<(Monomial, Int)> = terms
                .into_iter()
                .map(|(m, c)| {
                    let at_i = m.0 & mi;
                    let at_j = m.0 & mj;
                    let both = at_i & shift(at_j, j, i);
                    let only_i = at_i & !both;
                    let image = (m.0 & !(mi | mj)) | shift(at_i, i, j) | shift(at_j, j, i);
                    // a lone factor moves across the bits between; a pair
                    // exchanges places, which is one transposition
                    let negative = odd_crossings(m.0, only_i, i, j)
                        ^ odd_crossings(m.0, at_j & !shift(both, i, j), j, i)
                        ^ (both.count_ones() % 2 == 1);
                    (Monomial(image), if negative { -c } else { c })
                })
                .collect();
            out.sort_unstable_by_key(|(m, _)| *m);
            out
        }
        Letter::R(i, j) | Letter::L(i, j) | Letter::Rinv(i, j) | Letter::Linv(i, j) => {
            let minus = matches!(letter, Letter::Rinv(..) | Letter::Linv(..));
            let mi = coordinate_mask(ctx, i);
            let mut out = Vec::with_capacity(terms.len() * 2);
            for (m, c) in &terms {
                // blocks where t^k_i may become t^k_j (t^k_j absent)
                let movable = m.0 & mi & !shift(m.0, j, i);
                let mut s = movable;
                loop {
                    let image = (m.0 & !s) | shift(s, i, j);
                    let negative = odd_crossings(m.0, s, i, j) ^ (minus && s.count_ones() % 2 == 1);
                    out.push((Monomial(image), signed(c, negative)));
                    if s == 0 {
                        break;
                    }
                    s = (s - 1) & movable;
                }
            }
            merge_terms(out)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::RingEndomorphism;
    use crate::grassmann::HomologyClass;

    fn all_letters_agree_with_generic_route(degrees: &[u32], r: usize) {
        let ctx = Context::from_degrees(degrees, r).unwrap();
        for letter in Letter::all(r) {
            let generic = RingEndomorphism::of_letter(letter, &ctx).unwrap();
            for m in ctx.full_basis() {
                let expect = generic.apply(&HomologyClass::monomial(&ctx, m)).unwrap();
                let got = substitute(letter, &ctx, vec![(m, Int::from(3))]);
                let got = HomologyClass::from_sorted_terms(&ctx, got);
                assert_eq!(got, expect.scale(&Int::from(3)), "{letter} on {m:?}");
            }
        }
    }

    #[test]
    fn matches_generic_substitution() {
        all_letters_agree_with_generic_route(&[3, 5], 3);
        all_letters_agree_with_generic_route(&[3, 5, 7], 3);
        all_letters_agree_with_generic_route(&[3], 5);
    }

    #[test]
    fn between_masks() {
        // positions 0 and 3: bits 1 and 2 lie between
        assert_eq!(between(1, 1, 4), 0b0110);
        assert_eq!(between(0b1000, 4, 1), 0b0110);
        assert_eq!(between(1 << 4, 1, 2), 0);
    }
}
