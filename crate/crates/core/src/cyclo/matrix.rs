use std::fmt;

use super::field::FieldCtx;
use super::num::CycloNum;
use crate::par;

/// Sparse vector: strictly increasing indices, no stored zeros.
pub type SparseVec = Vec<(usize, CycloNum)>;

/// Sums duplicate indices and drops zeros. Input need not be sorted.
pub fn canonicalize(mut v: Vec<(usize, CycloNum)>) -> SparseVec {
    v.sort_by_key(|e| e.0);
    let mut out: SparseVec = Vec::with_capacity(v.len());
    for (i, x) in v {
        match out.last_mut() {
            Some((j, acc)) if *j == i => *acc += &x,
            _ => {
                if let Some((_, acc)) = out.last() {
                    if acc.is_zero() {
                        out.pop();
                    }
                }
                out.push((i, x));
            }
        }
    }
    if let Some((_, acc)) = out.last() {
        if acc.is_zero() {
            out.pop();
        }
    }
    out
}

/// a + c*b for sorted sparse vectors.
pub fn axpy(a: &[(usize, CycloNum)], c: &CycloNum, b: &[(usize, CycloNum)]) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, c * &b[j].1));
            j += 1;
        } else {
            let s = &a[i].1 + &(c * &b[j].1);
            if !s.is_zero() {
                out.push((a[i].0, s));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Exact sparse matrix in compressed-row form. Entries are sorted by
/// (row, col), never duplicated and never zero, so derived equality is
/// equality of matrices.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    ctx: &'static FieldCtx,
    rows: usize,
    cols: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
    vals: Vec<CycloNum>,
}

impl ExactMatrix {
    pub fn zeros(ctx: &'static FieldCtx, rows: usize, cols: usize) -> Self {
        ExactMatrix { ctx, rows, cols, row_ptr: vec![0; rows + 1], col_idx: vec![], vals: vec![] }
    }

    pub fn identity(ctx: &'static FieldCtx, n: usize) -> Self {
        Self::diagonal(ctx, &vec![ctx.one(); n])
    }

    pub fn diagonal(ctx: &'static FieldCtx, d: &[CycloNum]) -> Self {
        Self::from_rows(ctx, d.len(), d.iter().enumerate().map(|(i, x)| vec![(i, x.clone())]).collect())
    }

    /// Builds from rows given as sparse vectors (any order, duplicates summed).
    pub fn from_rows(ctx: &'static FieldCtx, cols: usize, rows: Vec<Vec<(usize, CycloNum)>>) -> Self {
        let nrows = rows.len();
        let mut row_ptr = Vec::with_capacity(nrows + 1);
        let mut col_idx = Vec::new();
        let mut vals = Vec::new();
        row_ptr.push(0);
        for r in rows {
            for (c, v) in canonicalize(r) {
                assert!(c < cols, "column {c} out of range {cols}");
                col_idx.push(c);
                vals.push(v);
            }
            row_ptr.push(col_idx.len());
        }
        ExactMatrix { ctx, rows: nrows, cols, row_ptr, col_idx, vals }
    }

    /// Builds from columns given as sparse vectors.
    pub fn from_cols(ctx: &'static FieldCtx, rows: usize, cols: Vec<Vec<(usize, CycloNum)>>) -> Self {
        let ncols = cols.len();
        let mut by_row: Vec<Vec<(usize, CycloNum)>> = vec![Vec::new(); rows];
        for (j, col) in cols.into_iter().enumerate() {
            for (i, v) in col {
                assert!(i < rows, "row {i} out of range {rows}");
                by_row[i].push((j, v));
            }
        }
        Self::from_rows(ctx, ncols, by_row)
    }

    pub fn from_triplets(
        ctx: &'static FieldCtx,
        rows: usize,
        cols: usize,
        entries: impl IntoIterator<Item = (usize, usize, CycloNum)>,
    ) -> Self {
        let mut by_row: Vec<Vec<(usize, CycloNum)>> = vec![Vec::new(); rows];
        for (i, j, v) in entries {
            by_row[i].push((j, v));
        }
        Self::from_rows(ctx, cols, by_row)
    }

    pub fn from_dense(ctx: &'static FieldCtx, cols: usize, dense: &[Vec<CycloNum>]) -> Self {
        let rows = dense
            .iter()
            .map(|row| row.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(j, x)| (j, x.clone())).collect())
            .collect();
        Self::from_rows(ctx, cols, rows)
    }

    /// A single column (n x 1) from a sparse vector.
    pub fn column_vector(ctx: &'static FieldCtx, n: usize, v: &[(usize, CycloNum)]) -> Self {
        Self::from_cols(ctx, n, vec![v.to_vec()])
    }

    /// A single row (1 x n) from a sparse vector.
    pub fn row_vector(ctx: &'static FieldCtx, n: usize, v: &[(usize, CycloNum)]) -> Self {
        Self::from_rows(ctx, n, vec![v.to_vec()])
    }

    pub fn ctx(&self) -> &'static FieldCtx {
        self.ctx
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

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    pub fn is_zero(&self) -> bool {
        self.vals.is_empty()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> (&[usize], &[CycloNum]) {
        let (a, b) = (self.row_ptr[i], self.row_ptr[i + 1]);
        (&self.col_idx[a..b], &self.vals[a..b])
    }

    pub fn row_sparse(&self, i: usize) -> SparseVec {
        let (c, v) = self.row(i);
        c.iter().copied().zip(v.iter().cloned()).collect()
    }

    pub fn get(&self, i: usize, j: usize) -> CycloNum {
        let (c, v) = self.row(i);
        match c.binary_search(&j) {
            Ok(k) => v[k].clone(),
            Err(_) => self.ctx.zero(),
        }
    }

    /// All stored entries in (row, col) order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &CycloNum)> + '_ {
        (0..self.rows).flat_map(move |i| {
            let (c, v) = self.row(i);
            c.iter().zip(v.iter()).map(move |(&j, x)| (i, j, x))
        })
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut cols: Vec<Vec<(usize, CycloNum)>> = vec![Vec::new(); self.cols];
        for (i, j, v) in self.entries() {
            cols[j].push((i, v.clone()));
        }
        ExactMatrix::from_rows(self.ctx, self.rows, cols)
    }

    /// Columns as sparse vectors.
    pub fn columns(&self) -> Vec<SparseVec> {
        self.transpose().into_rows()
    }

    pub fn column(&self, j: usize) -> SparseVec {
        (0..self.rows)
            .filter_map(|i| {
                let (c, v) = self.row(i);
                c.binary_search(&j).ok().map(|k| (i, v[k].clone()))
            })
            .collect()
    }

    pub fn into_rows(self) -> Vec<SparseVec> {
        let mut out = Vec::with_capacity(self.rows);
        let mut vals = self.vals.into_iter();
        for i in 0..self.rows {
            let n = self.row_ptr[i + 1] - self.row_ptr[i];
            let cols = &self.col_idx[self.row_ptr[i]..self.row_ptr[i + 1]];
            out.push(cols.iter().copied().zip(vals.by_ref().take(n)).collect());
        }
        out
    }

    pub fn scale(&self, c: &CycloNum) -> ExactMatrix {
        if c.is_zero() {
            return ExactMatrix::zeros(self.ctx, self.rows, self.cols);
        }
        let mut out = self.clone();
        for v in out.vals.iter_mut() {
            *v = &*v * c;
        }
        out
    }

    pub fn add(&self, other: &ExactMatrix) -> ExactMatrix {
        self.axpy(&self.ctx.one(), other)
    }

    pub fn sub(&self, other: &ExactMatrix) -> ExactMatrix {
        self.axpy(&-self.ctx.one(), other)
    }

    /// self + c*other.
    pub fn axpy(&self, c: &CycloNum, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.shape(), other.shape(), "shape mismatch in add");
        let rows = par::map_range(self.rows, |i| axpy(&self.row_sparse(i), c, &other.row_sparse(i)));
        ExactMatrix::from_rows(self.ctx, self.cols, rows)
    }

    /// Matrix product self * other. Rows are computed independently.
    pub fn mul(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in mul: {:?} * {:?}", self.shape(), other.shape());
        let rows = par::map_range(self.rows, |i| {
            let (ci, vi) = self.row(i);
            let mut acc: Vec<(usize, CycloNum)> = Vec::new();
            for (&k, a) in ci.iter().zip(vi) {
                let (ck, vk) = other.row(k);
                for (&j, b) in ck.iter().zip(vk) {
                    acc.push((j, a * b));
                }
            }
            canonicalize(acc)
        });
        ExactMatrix::from_rows(self.ctx, other.cols, rows)
    }

    /// Applies the matrix to a sparse column vector.
    pub fn apply(&self, v: &[(usize, CycloNum)]) -> SparseVec {
        self.apply_cols(&[v.to_vec()]).pop().unwrap()
    }

    /// Applies the matrix to many sparse column vectors, in parallel.
    pub fn apply_cols(&self, vs: &[SparseVec]) -> Vec<SparseVec> {
        let t = self.transpose();
        par::map_slice(vs, |v| {
            let mut acc = Vec::new();
            for (k, x) in v {
                let (c, vals) = t.row(*k);
                for (&i, a) in c.iter().zip(vals) {
                    acc.push((i, a * x));
                }
            }
            canonicalize(acc)
        })
    }

    /// Kronecker product with left-major index flattening.
    pub fn kron(&self, other: &ExactMatrix) -> ExactMatrix {
        let rows = par::map_range(self.rows * other.rows, |idx| {
            let (i, k) = (idx / other.rows, idx % other.rows);
            let (ci, vi) = self.row(i);
            let (ck, vk) = other.row(k);
            let mut out = Vec::with_capacity(ci.len() * ck.len());
            for (&j, a) in ci.iter().zip(vi) {
                for (&l, b) in ck.iter().zip(vk) {
                    out.push((j * other.cols + l, a * b));
                }
            }
            out
        });
        ExactMatrix::from_rows(self.ctx, self.cols * other.cols, rows)
    }

    pub fn trace(&self) -> CycloNum {
        assert!(self.is_square());
        let mut t = self.ctx.zero();
        for i in 0..self.rows {
            t += &self.get(i, i);
        }
        t
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == ExactMatrix::identity(self.ctx, self.rows)
    }

    pub fn pow(&self, e: u32) -> ExactMatrix {
        let mut acc = ExactMatrix::identity(self.ctx, self.rows);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Sub-matrix with the given rows and columns, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> ExactMatrix {
        let mut pos = vec![usize::MAX; self.cols];
        for (k, &c) in cols.iter().enumerate() {
            pos[c] = k;
        }
        let out = rows
            .iter()
            .map(|&i| {
                let (c, v) = self.row(i);
                c.iter()
                    .zip(v)
                    .filter(|(j, _)| pos[**j] != usize::MAX)
                    .map(|(j, x)| (pos[*j], x.clone()))
                    .collect()
            })
            .collect();
        ExactMatrix::from_rows(self.ctx, cols.len(), out)
    }

    /// [self | other].
    pub fn hstack(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.rows, other.rows);
        let rows = (0..self.rows)
            .map(|i| {
                let mut r = self.row_sparse(i);
                r.extend(other.row_sparse(i).into_iter().map(|(j, x)| (j + self.cols, x)));
                r
            })
            .collect();
        ExactMatrix::from_rows(self.ctx, self.cols + other.cols, rows)
    }

    /// [self ; other].
    pub fn vstack(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, other.cols);
        let mut rows = self.clone().into_rows();
        rows.extend(other.clone().into_rows());
        ExactMatrix::from_rows(self.ctx, self.cols, rows)
    }

    /// Row-major flattening into a sparse vector of length rows*cols.
    pub fn vec(&self) -> SparseVec {
        self.entries().map(|(i, j, x)| (i * self.cols + j, x.clone())).collect()
    }

    pub fn to_dense(&self) -> Vec<Vec<CycloNum>> {
        let mut d = vec![vec![self.ctx.zero(); self.cols]; self.rows];
        for (i, j, x) in self.entries() {
            d[i][j] = x.clone();
        }
        d
    }

    /// The exact text matrix format: a `MATRIX rows cols` header, then one
    /// `i j VALUE` line per stored entry.
    pub fn to_text(&self) -> String {
        let mut s = format!("MATRIX {} {}\n", self.rows, self.cols);
        for (i, j, x) in self.entries() {
            s.push_str(&format!("{i} {j} {x}\n"));
        }
        s
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExactMatrix {}x{} [", self.rows, self.cols)?;
        for (n, (i, j, x)) in self.entries().enumerate() {
            if n > 0 {
                write!(f, ", ")?;
            }
            if n == 12 {
                write!(f, "... {} more", self.nnz() - 12)?;
                break;
            }
            write!(f, "({i},{j}): {x}")?;
        }
        write!(f, "]")
    }
}


/// `f_1 ⊗ … ⊗ f_k` as an operator that is applied to vectors without
/// forming the Kronecker product. Indices are flattened left-major.
pub struct KronOp {
    cols: Vec<ExactMatrix>,
    in_dims: Vec<usize>,
    out_dims: Vec<usize>,
}

impl KronOp {
    pub fn new(factors: &[&ExactMatrix]) -> Self {
        KronOp {
            cols: factors.iter().map(|f| f.transpose()).collect(),
            in_dims: factors.iter().map(|f| f.cols()).collect(),
            out_dims: factors.iter().map(|f| f.rows()).collect(),
        }
    }

    pub fn in_dim(&self) -> usize {
        self.in_dims.iter().product()
    }

    pub fn out_dim(&self) -> usize {
        self.out_dims.iter().product()
    }

    pub fn apply(&self, v: &[(usize, CycloNum)]) -> SparseVec {
        let n = self.cols.len();
        let mut acc = Vec::new();
        let mut digits = vec![0; n];
        for (idx, c) in v {
            let mut rest = *idx;
            for k in (0..n).rev() {
                digits[k] = rest % self.in_dims[k];
                rest /= self.in_dims[k];
            }
            let mut partial: Vec<(usize, CycloNum)> = vec![(0, c.clone())];
            for k in 0..n {
                let (ci, vi) = self.cols[k].row(digits[k]);
                let mut next = Vec::with_capacity(partial.len() * ci.len());
                for (p, x) in &partial {
                    for (&i, y) in ci.iter().zip(vi) {
                        next.push((p * self.out_dims[k] + i, x * y));
                    }
                }
                partial = next;
            }
            acc.extend(partial);
        }
        canonicalize(acc)
    }
}

pub fn kron_apply(factors: &[&ExactMatrix], v: &[(usize, CycloNum)]) -> SparseVec {
    KronOp::new(factors).apply(v)
}
