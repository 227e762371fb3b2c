//! Dense exact linear algebra over F_q.
//!
//! Row reduction always pivots on the first nonzero entry in column order, so
//! every derived basis is reproducible.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ffield::{Elem, FieldCtx};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("matrices live over different fields")]
    MixedFields,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("matrix entry {0} is outside the field")]
    BadEntry(u64),
}

pub type Result<T> = std::result::Result<T, LinalgError>;

#[derive(Clone, PartialEq, Eq)]
pub struct MatFq {
    ctx: Arc<FieldCtx>,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl fmt::Debug for MatFq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "MatFq {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<u32> = self.row(r).iter().map(|e| e.code()).collect();
            writeln!(f, "  {row:?}")?;
        }
        write!(f, "]")
    }
}

/// Result of row reduction.
#[derive(Debug, Clone)]
pub struct Rref {
    pub matrix: MatFq,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

fn same_field(a: &FieldCtx, b: &FieldCtx) -> bool {
    std::ptr::eq(a, b) || a == b
}

impl MatFq {
    pub fn new(ctx: Arc<FieldCtx>, rows: usize, cols: usize, data: Vec<Elem>) -> Self {
        assert_eq!(rows * cols, data.len(), "data length must be rows*cols");
        Self {
            ctx,
            rows,
            cols,
            data,
        }
    }

    pub fn zeros(ctx: Arc<FieldCtx>, rows: usize, cols: usize) -> Self {
        Self::new(ctx, rows, cols, vec![Elem::ZERO; rows * cols])
    }

    pub fn identity(ctx: Arc<FieldCtx>, n: usize) -> Self {
        let mut m = Self::zeros(ctx, n, n);
        for i in 0..n {
            m.set(i, i, Elem::ONE);
        }
        m
    }

    pub fn from_rows(ctx: Arc<FieldCtx>, cols: usize, rows: &[Vec<Elem>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend_from_slice(r);
        }
        Self::new(ctx, rows.len(), cols, data)
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn ctx_arc(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, r: usize, c: usize) -> Elem {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    fn check_field(&self, other: &MatFq) -> Result<()> {
        if same_field(&self.ctx, &other.ctx) {
            Ok(())
        } else {
            Err(LinalgError::MixedFields)
        }
    }

    pub fn transpose(&self) -> MatFq {
        let mut out = MatFq::zeros(self.ctx.clone(), self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c));
            }
        }
        out
    }

    pub fn matmul(&self, other: &MatFq) -> Result<MatFq> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(LinalgError::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let ctx = &self.ctx;
        let mut out = MatFq::zeros(self.ctx.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for t in 0..self.cols {
                let a = self.get(i, t);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = ctx.add(out.data[idx], ctx.mul(a, other.get(t, j)));
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix.
    pub fn left_mul_vec(&self, v: &[Elem]) -> Result<Vec<Elem>> {
        if v.len() != self.rows {
            return Err(LinalgError::ShapeMismatch(format!(
                "vector of length {} times {}x{}",
                v.len(),
                self.rows,
                self.cols
            )));
        }
        let ctx = &self.ctx;
        let mut out = vec![Elem::ZERO; self.cols];
        for (i, &a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o = ctx.add(*o, ctx.mul(a, self.get(i, j)));
            }
        }
        Ok(out)
    }

    /// Every entry raised to `p^j`.
    pub fn entrywise_frobenius(&self, j: u32) -> MatFq {
        let data = self
            .data
            .iter()
            .map(|&x| self.ctx.frobenius(x, j))
            .collect();
        MatFq::new(self.ctx.clone(), self.rows, self.cols, data)
    }

    /// `self` on top of `other`.
    pub fn stack(&self, other: &MatFq) -> Result<MatFq> {
        self.check_field(other)?;
        if self.cols != other.cols {
            return Err(LinalgError::ShapeMismatch(format!(
                "stacking {} columns on {} columns",
                self.cols, other.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(MatFq::new(
            self.ctx.clone(),
            self.rows + other.rows,
            self.cols,
            data,
        ))
    }

    pub fn select_columns(&self, cols: &[usize]) -> MatFq {
        let mut data = Vec::with_capacity(self.rows * cols.len());
        for r in 0..self.rows {
            data.extend(cols.iter().map(|&c| self.get(r, c)));
        }
        MatFq::new(self.ctx.clone(), self.rows, cols.len(), data)
    }

    pub fn select_rows(&self, rows: &[usize]) -> MatFq {
        let mut data = Vec::with_capacity(self.cols * rows.len());
        for &r in rows {
            data.extend_from_slice(self.row(r));
        }
        MatFq::new(self.ctx.clone(), rows.len(), self.cols, data)
    }

    /// Reduced row echelon form.
    pub fn rref(&self) -> Rref {
        let ctx = &self.ctx;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut lead = 0;
        for col in 0..m.cols {
            if lead == m.rows {
                break;
            }
            let Some(pr) = (lead..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(pr, lead);
            let inv = ctx.inv(m.get(lead, col)).expect("pivot is nonzero");
            for c in col..m.cols {
                let v = m.get(lead, c);
                m.set(lead, c, ctx.mul(v, inv));
            }
            for r in 0..m.rows {
                if r == lead {
                    continue;
                }
                let factor = m.get(r, col);
                if factor.is_zero() {
                    continue;
                }
                let neg = ctx.neg(factor);
                for c in col..m.cols {
                    let upd = ctx.add(m.get(r, c), ctx.mul(neg, m.get(lead, c)));
                    m.set(r, c, upd);
                }
            }
            pivots.push(col);
            lead += 1;
        }
        Rref {
            rank: pivots.len(),
            matrix: m,
            pivots,
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rank_destructive()
    }

    // Forward elimination only; cheaper than a full rref.
    fn rank_destructive(&self) -> usize {
        let ctx = &self.ctx;
        let mut m = self.clone();
        let mut lead = 0;
        for col in 0..m.cols {
            if lead == m.rows {
                break;
            }
            let Some(pr) = (lead..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(pr, lead);
            let inv = ctx.inv(m.get(lead, col)).expect("pivot is nonzero");
            for r in lead + 1..m.rows {
                let factor = m.get(r, col);
                if factor.is_zero() {
                    continue;
                }
                let f = ctx.neg(ctx.mul(factor, inv));
                for c in col..m.cols {
                    let upd = ctx.add(m.get(r, c), ctx.mul(f, m.get(lead, c)));
                    m.set(r, c, upd);
                }
            }
            lead += 1;
        }
        lead
    }

    /// Nonzero rows of the rref: a canonical basis of the row space.
    pub fn row_space_basis(&self) -> MatFq {
        let r = self.rref();
        let keep: Vec<usize> = (0..r.rank).collect();
        r.matrix.select_rows(&keep)
    }

    /// Basis `B` of the right kernel: `self * B^T = 0`, `rank(B) = cols - rank`.
    pub fn null_space(&self) -> MatFq {
        let ctx = &self.ctx;
        let r = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &r.pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut out = MatFq::zeros(self.ctx.clone(), free.len(), self.cols);
        for (bi, &f) in free.iter().enumerate() {
            out.set(bi, f, Elem::ONE);
            for (pi, &pc) in r.pivots.iter().enumerate() {
                out.set(bi, pc, ctx.neg(r.matrix.get(pi, f)));
            }
        }
        out
    }

    /// Basis of the left kernel: vectors `x` with `x * self = 0`.
    pub fn left_null_space(&self) -> MatFq {
        self.transpose().null_space()
    }

    /// Row-space membership of a vector.
    pub fn row_space_contains(&self, v: &[Elem]) -> Result<bool> {
        if v.len() != self.cols {
            return Err(LinalgError::ShapeMismatch(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        let base = self.rank();
        let ext = self.stack(&MatFq::from_rows(
            self.ctx.clone(),
            self.cols,
            &[v.to_vec()],
        ))?;
        Ok(ext.rank() == base)
    }
}

/// `dim(rowspace A ∩ rowspace B) = rank A + rank B - rank [A; B]`.
pub fn intersection_dim(a: &MatFq, b: &MatFq) -> Result<usize> {
    let stacked = a.stack(b)?;
    Ok(a.rank() + b.rank() - stacked.rank())
}

/// Canonical (rref) basis of `rowspace A ∩ rowspace B`, obtained from the left
/// kernel of the stacked matrix `[A'; B']` of row-space bases: a kernel vector
/// `(x, y)` gives the common vector `x A'`.
pub fn intersection_basis(a: &MatFq, b: &MatFq) -> Result<MatFq> {
    let ab = a.row_space_basis();
    let bb = b.row_space_basis();
    let stacked = ab.stack(&bb)?;
    let kernel = stacked.left_null_space();
    let ctx = a.ctx_arc().clone();
    let mut rows = Vec::with_capacity(kernel.rows());
    for i in 0..kernel.rows() {
        let x = &kernel.row(i)[..ab.rows()];
        rows.push(ab.left_mul_vec(x)?);
    }
    Ok(MatFq::from_rows(ctx, a.cols(), &rows).row_space_basis())
}

/// Wire form of a matrix: entries are coefficient vectors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<Vec<u64>>>,
}

impl MatrixJson {
    pub fn from_mat(m: &MatFq) -> Self {
        let entries = (0..m.rows())
            .map(|r| m.row(r).iter().map(|&x| m.ctx().coeffs(x)).collect())
            .collect();
        Self {
            rows: m.rows(),
            cols: m.cols(),
            entries,
        }
    }

    pub fn to_mat(&self, ctx: Arc<FieldCtx>) -> Result<MatFq> {
        if self.entries.len() != self.rows || self.entries.iter().any(|r| r.len() != self.cols) {
            return Err(LinalgError::ShapeMismatch(
                "entries disagree with rows/cols".into(),
            ));
        }
        let mut data = Vec::with_capacity(self.rows * self.cols);
        for row in &self.entries {
            for c in row {
                let x = ctx
                    .from_coeffs(c)
                    .map_err(|_| LinalgError::BadEntry(c.iter().copied().max().unwrap_or(0)))?;
                data.push(x);
            }
        }
        Ok(MatFq::new(ctx, self.rows, self.cols, data))
    }
}
