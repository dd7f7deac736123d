//! Identification of H_*(G^r) with n copies of the exterior algebra Λ(A),
//! A = Q^r, sending e_{j_1} ∧ … ∧ e_{j_m} in copy k to t^k_{j_1} … t^k_{j_m}.
//!
//! Because the k-blocks of a canonical monomial are contiguous and in
//! increasing k order, the identification carries no sign on the canonical
//! basis. Through it the action becomes ⊗_k Λ(Mᵀ), a tensor product of
//! exterior powers whose entries are minors of the exponent-sum matrix M.

use crate::error::{Error, Result};
use crate::grassmann::{canonicalize, Context, GeneratorIndex, Monomial};
use crate::int::Int;
use crate::linalg::IntMatrix;

use super::RepMatrix;

/// Splits a monomial into its k-blocks, each a sorted subset of 1..=r.
pub fn es_decompose(ctx: &Context, m: Monomial) -> Vec<Vec<usize>> {
    let r = ctx.r();
    (1..=ctx.n())
        .map(|k| {
            let block = (m.bits() & ctx.block_mask(k)) >> ((k - 1) * r);
            Monomial(block).positions().map(|p| p as usize + 1).collect()
        })
        .collect()
}

/// E_1(v_1) · … · E_n(v_n) for the wedge monomials v_k = e_{S_k}. Returns the
/// product monomial and its sign (always +1 for sorted subsets).
pub fn es_compose(ctx: &Context, parts: &[Vec<usize>]) -> Result<(Monomial, i8)> {
    if parts.len() != ctx.n() {
        return Err(Error::InvalidContext(format!(
            "expected {} blocks, got {}",
            ctx.n(),
            parts.len()
        )));
    }
    let gens: Vec<GeneratorIndex> = parts
        .iter()
        .enumerate()
        .flat_map(|(k, subset)| subset.iter().map(move |&i| GeneratorIndex::new(k + 1, i)))
        .collect();
    canonicalize(ctx, &gens)
}

/// Sparse columns of Λ(Mᵀ) on Λ(Q^r) in the subset basis (subset S ↔ bit
/// mask S): column S lists the nonzero (T, minor of M with rows S and
/// columns T). Minors of size k come from those of size k−1 by Laplace
/// expansion along the smallest row.
pub fn exterior_power_columns(m: &IntMatrix) -> Vec<Vec<(u64, Int)>> {
    let r = m.rows();
    assert_eq!(r, m.cols());
    assert!(r <= 16, "exterior algebra of rank {r} is too large");
    let size = 1usize << r;
    let mut by_size: Vec<Vec<u64>> = vec![Vec::new(); r + 1];
    let mut rank = vec![0usize; size];
    for s in 0..size as u64 {
        let level = &mut by_size[s.count_ones() as usize];
        rank[s as usize] = level.len();
        level.push(s);
    }
    let mut columns: Vec<Vec<(u64, Int)>> = vec![Vec::new(); size];
    columns[0].push((0, Int::ONE));
    // prev[rank(S)·len + rank(T)] = minor(S, T) for |S| = |T| = k − 1
    let mut prev = vec![Int::ONE];
    for k in 1..=r {
        let below = by_size[k - 1].len();
        let subsets = &by_size[k];
        let mut next = vec![Int::ZERO; subsets.len() * subsets.len()];
        for (si, &rows) in subsets.iter().enumerate() {
            let s0 = rows.trailing_zeros() as usize;
            let rest = rank[(rows & (rows - 1)) as usize];
            for (ti, &cols) in subsets.iter().enumerate() {
                let mut acc = Int::ZERO;
                let mut remaining = cols;
                let mut negative = false;
                while remaining != 0 {
                    let t = remaining.trailing_zeros() as usize;
                    remaining &= remaining - 1;
                    let sub = &prev[rest * below + rank[(cols & !(1 << t)) as usize]];
                    if !sub.is_zero() && !m[(s0, t)].is_zero() {
                        let term = &m[(s0, t)] * sub;
                        acc = if negative { &acc - &term } else { &acc + &term };
                    }
                    negative = !negative;
                }
                if !acc.is_zero() {
                    columns[rows as usize].push((cols, acc.clone()));
                }
                next[si * subsets.len() + ti] = acc;
            }
        }
        prev = next;
    }
    for col in &mut columns {
        col.sort_unstable_by_key(|(t, _)| *t);
    }
    columns
}

/// Dense form of [`exterior_power_columns`]: entry (T, S).
pub fn exterior_power_matrix(m: &IntMatrix) -> IntMatrix {
    let size = 1usize << m.rows();
    let mut out = IntMatrix::zeros(size, size);
    for (s, col) in exterior_power_columns(m).into_iter().enumerate() {
        for (t, v) in col {
            out[(t as usize, s)] = v;
        }
    }
    out
}

/// The full action matrix assembled as ⊗_k Λ(Mᵀ) and transported through the
/// block identification. Reads only M and n, never the degrees.
pub fn tensor_exterior_matrix(m: &IntMatrix, ctx: &Context) -> Result<RepMatrix> {
    let r = ctx.r();
    if m.rows() != r || m.cols() != r {
        return Err(Error::RankMismatch { expected: r, found: m.rows() });
    }
    if ctx.num_generators() > 20 {
        return Err(Error::InvalidContext("full matrix is too large".into()));
    }
    let lam_cols = exterior_power_columns(m);
    let size = 1usize << r;
    let basis = ctx.full_basis();
    let mask = (size - 1) as u64;
    let columns = basis
        .iter()
        .map(|&col| {
            let mut terms: Vec<(u64, Int)> = vec![(0, Int::ONE)];
            for k in 0..ctx.n() {
                let s = (col.bits() >> (k * r)) & mask;
                let mut next = Vec::with_capacity(terms.len() * lam_cols[s as usize].len());
                for (acc, x) in &terms {
                    for (t, v) in &lam_cols[s as usize] {
                        next.push((acc | (t << (k * r)), x * v));
                    }
                }
                terms = next;
            }
            terms.sort_unstable_by_key(|(row, _)| *row);
            terms.into_iter().map(|(row, v)| (row as u32, v)).collect()
        })
        .collect();
    Ok(RepMatrix::from_columns(ctx, None, basis, columns))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decompose_examples() {
        let c = Context::from_degrees(&[3, 5], 3).unwrap();
        assert_eq!(es_decompose(&c, Monomial::UNIT), vec![Vec::<usize>::new(), vec![]]);
        // t1_1 t1_3 t2_2
        let m = Monomial::from_positions([0, 2, 4]);
        assert_eq!(es_decompose(&c, m), vec![vec![1, 3], vec![2]]);
        assert_eq!(es_compose(&c, &[vec![1, 3], vec![2]]).unwrap(), (m, 1));
    }

    #[test]
    fn compose_inverts_decompose_without_sign() {
        for (degrees, r) in [(vec![3u32], 12usize), (vec![3, 5], 6), (vec![3, 5, 7], 4), (vec![3, 5, 7, 9], 3)] {
            let c = Context::from_degrees(&degrees, r).unwrap();
            for bits in 0..1u64 << c.num_generators() {
                let m = Monomial(bits);
                assert_eq!(es_compose(&c, &es_decompose(&c, m)).unwrap(), (m, 1));
            }
        }
    }

    #[test]
    fn laplace_levels_match_direct_minors() {
        let m = IntMatrix::from_i64_rows(&[&[2, -1, 0, 3], &[1, 1, 4, 0], &[0, 5, -2, 1], &[7, 0, 1, -1]]);
        let lam = exterior_power_matrix(&m);
        for s in 0..16usize {
            for t in 0..16usize {
                let rows: Vec<usize> = (0..4).filter(|&i| s >> i & 1 == 1).collect();
                let cols: Vec<usize> = (0..4).filter(|&i| t >> i & 1 == 1).collect();
                let expect = if rows.len() == cols.len() { m.minor(&rows, &cols) } else { Int::ZERO };
                assert_eq!(lam[(t, s)], expect, "S={s:b} T={t:b}");
            }
        }
    }

    #[test]
    fn exterior_power_of_transvection() {
        // M for R(1,2): column 2 = (1,1)
        let m = IntMatrix::from_i64_rows(&[&[1, 1], &[0, 1]]);
        let lam = exterior_power_matrix(&m);
        // basis: {}, {1}, {2}, {1,2}; e1 ↦ e1 + e2, e2 ↦ e2, e1∧e2 ↦ e1∧e2
        let expect = IntMatrix::from_i64_rows(&[
            &[1, 0, 0, 0],
            &[0, 1, 0, 0],
            &[0, 1, 1, 0],
            &[0, 0, 0, 1],
        ]);
        assert_eq!(lam, expect);
    }
}
