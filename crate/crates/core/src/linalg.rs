//! Small dense integer matrices (abelianization matrices, minors).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::int::Int;

/// Row-major square or rectangular integer matrix.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![Int::ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Int::ONE;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Int>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IntMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| Int::from(v)).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let v = &self[(i, j)];
                    if i == j {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j].add_mul(a, b);
                    }
                }
            }
        }
        out
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Int {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Int::ONE;
        }
        let mut a: Vec<Vec<Int>> = (0..n).map(|i| self.data[i * n..(i + 1) * n].to_vec()).collect();
        let mut negate = false;
        let mut prev = Int::ONE;
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        negate = !negate;
                    }
                    None => return Int::ZERO,
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                    a[i][j] = v.div_exact(&prev);
                }
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        if negate {
            -d
        } else {
            d
        }
    }

    /// Minor on the given (sorted) row and column index sets.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Int {
        debug_assert_eq!(rows.len(), cols.len());
        let sub = IntMatrix::from_rows(
            rows.iter().map(|&i| cols.iter().map(|&j| self[(i, j)].clone()).collect()).collect(),
        );
        sub.det()
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = Int;
    fn index(&self, (i, j): (usize, usize)) -> &Int {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Int {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(", ")?;
            }
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        f.write_str("]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Leibniz expansion over all permutations.
    fn det_oracle(m: &IntMatrix) -> Int {
        fn perms(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in perms(n - 1) {
                for pos in 0..=p.len() {
                    let mut q = p.clone();
                    q.insert(pos, n - 1);
                    out.push(q);
                }
            }
            out
        }
        let n = m.rows();
        let mut total = Int::ZERO;
        for p in perms(n) {
            let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .filter(|&(i, j)| p[i] > p[j])
                .count();
            let mut term = Int::ONE;
            for (i, &pi) in p.iter().enumerate() {
                term = &term * &m[(i, pi)];
            }
            total = if inversions % 2 == 0 { &total + &term } else { &total - &term };
        }
        total
    }

    #[test]
    fn det_matches_leibniz() {
        let cases = [
            IntMatrix::from_i64_rows(&[&[2, -1, 0], &[1, 3, 4], &[0, 5, -2]]),
            IntMatrix::from_i64_rows(&[&[0, 1, 2], &[0, 3, 4], &[5, 6, 7]]),
            IntMatrix::from_i64_rows(&[&[0, 0], &[0, 1]]),
            IntMatrix::from_i64_rows(&[&[1, 2, 3, 4], &[0, 1, 0, 7], &[3, 0, 0, 1], &[2, 2, 9, 0]]),
        ];
        for m in &cases {
            assert_eq!(m.det(), det_oracle(m), "{m:?}");
        }
        assert_eq!(IntMatrix::identity(5).det(), Int::ONE);
    }

    #[test]
    fn product_and_transpose() {
        let a = IntMatrix::from_i64_rows(&[&[1, 1], &[0, 1]]);
        let b = IntMatrix::from_i64_rows(&[&[1, 0], &[1, 1]]);
        assert_eq!(a.mul(&b), IntMatrix::from_i64_rows(&[&[2, 1], &[1, 1]]));
        assert_eq!(a.transpose(), b);
        assert!(IntMatrix::identity(3).is_identity());
        assert!(!a.is_identity());
    }
}
