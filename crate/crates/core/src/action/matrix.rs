use std::fmt;

use serde::{Deserialize, Serialize};

use super::{path_a_endomorphism, path_b_endomorphism, RingEndomorphism};
use crate::catalog::DegreeSequence;
use crate::error::{Error, Result};
use crate::free_group::{AutMap, GeneratorWord};
use crate::grassmann::{format_monomial, Context, HomologyClass, Monomial};
use crate::int::Int;

/// What acts: a letter word (computed by Path A) or an explicit
/// automorphism (computed by Path B).
#[derive(Debug, Clone)]
pub enum ActionSource {
    Word(GeneratorWord),
    Map(AutMap),
}

impl ActionSource {
    pub fn endomorphism(&self, ctx: &Context) -> Result<RingEndomorphism> {
        match self {
            ActionSource::Word(w) => path_a_endomorphism(w, ctx),
            ActionSource::Map(f) => path_b_endomorphism(f, ctx),
        }
    }
}

impl From<GeneratorWord> for ActionSource {
    fn from(w: GeneratorWord) -> Self {
        ActionSource::Word(w)
    }
}

impl From<AutMap> for ActionSource {
    fn from(f: AutMap) -> Self {
        ActionSource::Map(f)
    }
}

/// Exact matrix of an action on one graded piece, or on the whole ring when
/// `degree` is `None`. Column c holds the coordinates of the image of
/// `basis[c]`; columns are stored sparsely as (row, value) pairs sorted by row.
#[derive(Clone, PartialEq, Eq)]
pub struct RepMatrix {
    ctx: Context,
    degree: Option<u64>,
    basis: Vec<Monomial>,
    columns: Vec<Vec<(u32, Int)>>,
}

impl RepMatrix {
    pub(crate) fn assemble(
        ctx: &Context,
        degree: Option<u64>,
        basis: Vec<Monomial>,
        endo: &RingEndomorphism,
    ) -> Self {
        let columns = basis
            .iter()
            .map(|&m| {
                endo.apply_monomial(m)
                    .into_iter()
                    .map(|(img, v)| {
                        let row = basis.binary_search(&img).expect("action preserves degree");
                        (row as u32, v)
                    })
                    .collect()
            })
            .collect();
        RepMatrix { ctx: ctx.clone(), degree, basis, columns }
    }

    pub(crate) fn from_columns(
        ctx: &Context,
        degree: Option<u64>,
        basis: Vec<Monomial>,
        columns: Vec<Vec<(u32, Int)>>,
    ) -> Self {
        RepMatrix { ctx: ctx.clone(), degree, basis, columns }
    }

    pub fn context(&self) -> &Context {
        &self.ctx
    }

    pub fn degree(&self) -> Option<u64> {
        self.degree
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn column(&self, c: usize) -> &[(u32, Int)] {
        &self.columns[c]
    }

    pub fn entry(&self, row: usize, col: usize) -> Int {
        let column = &self.columns[col];
        match column.binary_search_by_key(&(row as u32), |(r, _)| *r) {
            Ok(i) => column[i].1.clone(),
            Err(_) => Int::ZERO,
        }
    }

    /// Image of basis element `c` as a class.
    pub fn column_class(&self, c: usize) -> HomologyClass {
        HomologyClass::from_terms(
            &self.ctx,
            self.columns[c].iter().map(|(row, v)| (self.basis[*row as usize], v.clone())),
        )
    }

    pub fn is_identity(&self) -> bool {
        self.columns
            .iter()
            .enumerate()
            .all(|(c, col)| col.len() == 1 && col[0].0 as usize == c && col[0].1.is_one())
    }

    pub fn nonzeros(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    /// `self · rhs` (apply `rhs` first). Both must share a basis.
    pub fn mul(&self, rhs: &RepMatrix) -> Result<RepMatrix> {
        if self.ctx != rhs.ctx || self.basis != rhs.basis {
            return Err(Error::ContextMismatch);
        }
        let dim = self.dim();
        let mut acc = vec![Int::ZERO; dim];
        let mut touched = Vec::new();
        let columns = rhs
            .columns
            .iter()
            .map(|rcol| {
                for (k, b) in rcol {
                    for (i, a) in &self.columns[*k as usize] {
                        let slot = &mut acc[*i as usize];
                        if slot.is_zero() {
                            touched.push(*i);
                        }
                        slot.add_mul(a, b);
                    }
                }
                touched.sort_unstable();
                touched.dedup();
                let col: Vec<(u32, Int)> = touched
                    .drain(..)
                    .filter_map(|i| {
                        let v = std::mem::take(&mut acc[i as usize]);
                        (!v.is_zero()).then_some((i, v))
                    })
                    .collect();
                col
            })
            .collect();
        Ok(RepMatrix { ctx: self.ctx.clone(), degree: self.degree, basis: self.basis.clone(), columns })
    }

    /// Does every column stay inside the degree of its basis element?
    pub fn is_graded(&self) -> bool {
        self.columns.iter().enumerate().all(|(c, col)| {
            let d = self.ctx.degree_of(self.basis[c]);
            col.iter().all(|(row, _)| self.ctx.degree_of(self.basis[*row as usize]) == d)
        })
    }

    /// Dense square submatrix on the listed basis monomials (rows and
    /// columns in the given order).
    pub fn restrict(&self, monomials: &[Monomial]) -> Result<crate::linalg::IntMatrix> {
        let idx = monomials
            .iter()
            .map(|m| {
                self.basis
                    .binary_search(m)
                    .map_err(|_| Error::IndexOutOfRange(format!("{m:?} is not in the basis")))
            })
            .collect::<Result<Vec<_>>>()?;
        let rows = idx
            .iter()
            .map(|&r| idx.iter().map(|&c| self.entry(r, c)).collect())
            .collect();
        Ok(crate::linalg::IntMatrix::from_rows(rows))
    }

    pub fn dense_columns(&self) -> Vec<Vec<Int>> {
        self.columns
            .iter()
            .map(|col| {
                let mut dense = vec![Int::ZERO; self.dim()];
                for (row, v) in col {
                    dense[*row as usize] = v.clone();
                }
                dense
            })
            .collect()
    }

    /// `{"schema":1,"context":{"degrees":[..],"r":N},"degree":d,"basis":[..],"columns":[[..],..]}`
    /// with dense integer columns; `degree` is null for a full matrix.
    pub fn to_json(&self) -> serde_json::Value {
        let doc = MatrixJson {
            schema: 1,
            context: ContextJson { degrees: self.ctx.degrees().clone(), r: self.ctx.r() },
            degree: self.degree,
            basis: self.basis.iter().map(|&m| format_monomial(&self.ctx, m)).collect(),
            columns: self.dense_columns(),
        };
        serde_json::to_value(doc).expect("matrix serializes")
    }

    pub fn from_json(src: &str) -> Result<Self> {
        let doc: MatrixJson = serde_json::from_str(src).map_err(|e| Error::Json(e.to_string()))?;
        if doc.schema != 1 {
            return Err(Error::Json(format!("unsupported schema version {}", doc.schema)));
        }
        let ctx = Context::new(doc.context.degrees, doc.context.r)?;
        let mut basis = Vec::with_capacity(doc.basis.len());
        for s in &doc.basis {
            let class = HomologyClass::parse(&ctx, s)?;
            match class.terms().collect::<Vec<_>>().as_slice() {
                [(m, c)] if c.is_one() => basis.push(*m),
                _ => return Err(Error::Json(format!("basis entry {s:?} is not a canonical monomial"))),
            }
        }
        if !basis.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::Json("basis is not in ascending bit-set order".into()));
        }
        if doc.columns.len() != basis.len() {
            return Err(Error::Json("number of columns differs from the basis size".into()));
        }
        let mut columns = Vec::with_capacity(basis.len());
        for col in doc.columns {
            if col.len() != basis.len() {
                return Err(Error::Json("column length differs from the basis size".into()));
            }
            columns.push(
                col.into_iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(i, v)| (i as u32, v))
                    .collect(),
            );
        }
        Ok(RepMatrix { ctx, degree: doc.degree, basis, columns })
    }

    /// Rows as nested lists, e.g. `[[1, 0], [1, 1]]`.
    pub fn rows_string(&self) -> String {
        let n = self.dim();
        let rows: Vec<String> = (0..n)
            .map(|r| {
                let vals: Vec<String> = (0..n).map(|c| self.entry(r, c).to_string()).collect();
                format!("[{}]", vals.join(", "))
            })
            .collect();
        format!("[{}]", rows.join(", "))
    }
}

impl fmt::Debug for RepMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RepMatrix(degree={:?}, dim={}, {})", self.degree, self.dim(), self.rows_string())
    }
}

#[derive(Serialize, Deserialize)]
struct ContextJson {
    degrees: DegreeSequence,
    r: usize,
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    schema: u32,
    context: ContextJson,
    degree: Option<u64>,
    basis: Vec<String>,
    columns: Vec<Vec<Int>>,
}

/// Matrix of the action on H_d(G^r) in the basis `basis_of_degree(d)`.
pub fn representation_matrix(source: &ActionSource, d: u64, ctx: &Context) -> Result<RepMatrix> {
    let endo = source.endomorphism(ctx)?;
    Ok(RepMatrix::assemble(ctx, Some(d), ctx.basis_of_degree(d), &endo))
}

/// Matrix of the action on all 2^{n·r} monomials in bit-set order.
pub fn full_matrix(source: &ActionSource, ctx: &Context) -> Result<RepMatrix> {
    if ctx.num_generators() > 20 {
        return Err(Error::InvalidContext(format!(
            "full matrix over 2^{} monomials is too large",
            ctx.num_generators()
        )));
    }
    let endo = source.endomorphism(ctx)?;
    Ok(RepMatrix::assemble(ctx, None, ctx.full_basis(), &endo))
}
