//! Exact Gaussian elimination over the cyclotomic field.
//!
//! Everything goes through [`Echelon`], which keeps its rows in fully reduced
//! form as they arrive. The reduced row echelon form of a matrix is unique, so
//! bases read off from it do not depend on the order rows were fed in.

use std::collections::BTreeMap;

use super::field::FieldCtx;
use super::matrix::{canonicalize, ExactMatrix, SparseVec};
use super::num::CycloNum;
use super::poly::Poly;
use crate::Error;

/// Incremental reduced echelon form. Pivot rows have leading coefficient 1 and
/// vanish at every other pivot column.
#[derive(Clone, Debug)]
pub struct Echelon {
    ncols: usize,
    rows: BTreeMap<usize, SparseVec>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Echelon { ncols, rows: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.keys().copied().collect()
    }

    pub fn pivot_rows(&self) -> impl Iterator<Item = (usize, &SparseVec)> {
        self.rows.iter().map(|(k, v)| (*k, v))
    }

    /// Removes all pivot columns from `row`.
    pub fn reduce(&self, row: &[(usize, CycloNum)]) -> SparseVec {
        let mut terms: Vec<(usize, CycloNum)> = Vec::new();
        let mut touched = false;
        for (j, x) in row {
            if let Some(p) = self.rows.get(j) {
                touched = true;
                let c = -x;
                for (k, y) in p {
                    terms.push((*k, &c * y));
                }
            }
        }
        if !touched {
            return row.to_vec();
        }
        terms.extend(row.iter().cloned());
        canonicalize(terms)
    }

    /// Adds a row. Returns false if it was already in the span.
    pub fn insert(&mut self, row: &[(usize, CycloNum)]) -> bool {
        let r = self.reduce(row);
        self.insert_reduced(r)
    }

    pub fn into_rref(self, ctx: &'static FieldCtx) -> Rref {
        Rref { ctx, ncols: self.ncols, pivots: self.pivots(), rows: self.rows.into_values().collect() }
    }

    fn insert_reduced(&mut self, r: SparseVec) -> bool {
        if r.is_empty() {
            return false;
        }
        let lead = r[0].0;
        let inv = r[0].1.inv().expect("nonzero lead");
        let r: SparseVec = r.into_iter().map(|(j, x)| (j, &x * &inv)).collect();
        for p in self.rows.values_mut() {
            if let Ok(k) = p.binary_search_by_key(&lead, |e| e.0) {
                let c = -&p[k].1;
                *p = super::matrix::axpy(p, &c, &r);
            }
        }
        self.rows.insert(lead, r);
        true
    }
}

/// Reduced row echelon form of a matrix.
#[derive(Clone, Debug)]
pub struct Rref {
    pub ctx: &'static FieldCtx,
    pub ncols: usize,
    pub pivots: Vec<usize>,
    pub rows: Vec<SparseVec>,
}

pub fn rref(m: &ExactMatrix) -> Rref {
    let mut e = Echelon::new(m.cols());
    for i in 0..m.rows() {
        e.insert(&m.row_sparse(i));
    }
    e.into_rref(m.ctx())
}

pub fn rank(m: &ExactMatrix) -> usize {
    rref(m).pivots.len()
}

/// Basis of the right kernel {x : m x = 0}, one vector per free column in
/// increasing order, normalized to 1 at its free column.
pub fn nullspace(m: &ExactMatrix) -> Vec<SparseVec> {
    nullspace_from_rref(&rref(m))
}

pub fn nullspace_from_rref(r: &Rref) -> Vec<SparseVec> {
    let is_pivot: std::collections::HashSet<usize> = r.pivots.iter().copied().collect();
    let mut out = Vec::new();
    for f in (0..r.ncols).filter(|c| !is_pivot.contains(c)) {
        let mut v: Vec<(usize, CycloNum)> = Vec::new();
        for (k, row) in r.rows.iter().enumerate() {
            if let Ok(pos) = row.binary_search_by_key(&f, |e| e.0) {
                v.push((r.pivots[k], -&row[pos].1));
            }
        }
        v.push((f, r.ctx.one()));
        out.push(canonicalize(v));
    }
    out
}

pub fn inverse(m: &ExactMatrix) -> Result<ExactMatrix, Error> {
    assert!(m.is_square(), "inverse of a non-square matrix");
    let n = m.rows();
    let ctx = m.ctx();
    let mut e = Echelon::new(2 * n);
    for i in 0..n {
        let mut row = m.row_sparse(i);
        row.push((n + i, ctx.one()));
        e.insert(&row);
    }
    let piv = e.pivots();
    let rank = piv.iter().filter(|&&p| p < n).count();
    if rank < n {
        return Err(Error::Singular { rank, size: n });
    }
    let rows = e
        .rows
        .into_values()
        .map(|row| row.into_iter().filter(|(j, _)| *j >= n).map(|(j, x)| (j - n, x)).collect())
        .collect();
    Ok(ExactMatrix::from_rows(ctx, n, rows))
}

/// One solution X of A X = B (free variables set to zero).
pub fn solve(a: &ExactMatrix, b: &ExactMatrix) -> Result<ExactMatrix, Error> {
    assert_eq!(a.rows(), b.rows(), "solve: row mismatch");
    let n = a.cols();
    let ctx = a.ctx();
    let mut e = Echelon::new(n + b.cols());
    for i in 0..a.rows() {
        let mut row = a.row_sparse(i);
        row.extend(b.row_sparse(i).into_iter().map(|(j, x)| (j + n, x)));
        e.insert(&row);
    }
    if e.pivots().iter().any(|&p| p >= n) {
        return Err(Error::Inconsistent);
    }
    let mut out: Vec<SparseVec> = vec![Vec::new(); n];
    for (p, row) in e.pivot_rows() {
        out[p] = row.iter().filter(|(j, _)| *j >= n).map(|(j, x)| (j - n, x.clone())).collect();
    }
    Ok(ExactMatrix::from_rows(ctx, b.cols(), out))
}

/// Monic minimal polynomial, from the first linear dependence among
/// vec(I), vec(A), vec(A^2), ...
pub fn min_poly(a: &ExactMatrix) -> Poly {
    assert!(a.is_square());
    let ctx = a.ctx();
    let n = a.rows();
    let nn = n * n;
    let mut e = Echelon::new(nn + n + 1);
    let mut power = ExactMatrix::identity(ctx, n);
    for k in 0..=n {
        let mut row = power.vec();
        row.push((nn + k, ctx.one()));
        let r = e.reduce(&row);
        if r.first().is_some_and(|(j, _)| *j >= nn) || r.is_empty() {
            // the main part vanished: the tracking part is a relation
            let mut c = vec![ctx.zero(); k + 1];
            for (j, x) in r {
                c[j - nn] = x;
            }
            return Poly::new(ctx, c).monic();
        }
        e.insert_reduced(r);
        power = power.mul(a);
    }
    unreachable!("Cayley-Hamilton bounds the degree by n")
}

/// Outcome of a projective comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Proportionality {
    /// A = c B.
    Scalar(CycloNum),
    /// No such c; `witness` is an entry where A differs from c B for the
    /// candidate c (or the first entry where exactly one side vanishes).
    Not { witness: (usize, usize) },
}

impl Proportionality {
    pub fn scalar(&self) -> Option<&CycloNum> {
        match self {
            Proportionality::Scalar(c) => Some(c),
            Proportionality::Not { .. } => None,
        }
    }
}

/// Finds c with A = c B, taking the candidate from the first nonzero entry of B.
pub fn proportional(a: &ExactMatrix, b: &ExactMatrix) -> Proportionality {
    assert_eq!(a.shape(), b.shape());
    let ctx = a.ctx();
    let Some((i0, j0, b0)) = b.entries().next() else {
        return match a.entries().next() {
            None => Proportionality::Scalar(ctx.one()),
            Some((i, j, _)) => Proportionality::Not { witness: (i, j) },
        };
    };
    let c = &a.get(i0, j0) * &b0.inv().unwrap();
    let diff = a.sub(&b.scale(&c));
    let first = diff.entries().next().map(|(i, j, _)| (i, j));
    match first {
        None => Proportionality::Scalar(c),
        Some(witness) => Proportionality::Not { witness },
    }
}

#[cfg(test)]
mod tests {
    use super::super::field::field_init;
    use super::*;

    fn m(ctx: &'static FieldCtx, rows: &[&[i64]]) -> ExactMatrix {
        let dense: Vec<Vec<CycloNum>> = rows.iter().map(|r| r.iter().map(|&x| ctx.int(x)).collect()).collect();
        ExactMatrix::from_dense(ctx, rows[0].len(), &dense)
    }

    #[test]
    fn identity_rank_and_min_poly() {
        let ctx = field_init(3).unwrap();
        let id = ExactMatrix::identity(ctx, 5);
        assert_eq!(rank(&id), 5);
        assert_eq!(min_poly(&id), Poly::from_ints(ctx, &[-1, 1]));
    }

    #[test]
    fn jordan_block_min_poly() {
        let ctx = field_init(3).unwrap();
        let j = m(ctx, &[&[1, 1], &[0, 1]]);
        let p = min_poly(&j);
        assert_eq!(p, Poly::from_ints(ctx, &[1, -2, 1]));
        assert!(p.has_repeated_root());
    }

    #[test]
    fn nullspace_is_reduced_and_annihilated() {
        let ctx = field_init(3).unwrap();
        let a = m(ctx, &[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 0, 1, 1]]);
        let ns = nullspace(&a);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(a.apply(v).is_empty());
        }
        // one basis vector per free column (1 and 3), normalized there
        assert_eq!(ns[0].iter().find(|e| e.0 == 1).unwrap().1, ctx.one());
        assert!(ns[0].iter().all(|e| e.0 != 3));
    }

    #[test]
    fn inverse_and_singular() {
        let ctx = field_init(5).unwrap();
        let a = ExactMatrix::from_dense(ctx, 2, &[vec![ctx.q(), ctx.one()], vec![ctx.int(1), ctx.i()]]);
        let inv = inverse(&a).unwrap();
        assert!(a.mul(&inv).is_identity());
        let s = m(ctx, &[&[1, 2], &[2, 4]]);
        match inverse(&s) {
            Err(Error::Singular { rank, size }) => assert_eq!((rank, size), (1, 2)),
            other => panic!("expected singular, got {other:?}"),
        }
    }

    #[test]
    fn solve_consistent_and_not() {
        let ctx = field_init(3).unwrap();
        let a = m(ctx, &[&[1, 1], &[0, 2]]);
        let b = m(ctx, &[&[3], &[4]]);
        let x = solve(&a, &b).unwrap();
        assert_eq!(a.mul(&x), b);
        let s = m(ctx, &[&[1, 1], &[1, 1]]);
        let c = m(ctx, &[&[1], &[2]]);
        assert!(matches!(solve(&s, &c), Err(Error::Inconsistent)));
    }

    #[test]
    fn proportionality() {
        let ctx = field_init(3).unwrap();
        let id = ExactMatrix::identity(ctx, 2);
        assert_eq!(proportional(&id.scale(&ctx.int(2)), &id), Proportionality::Scalar(ctx.int(2)));
        let j = m(ctx, &[&[1, 1], &[0, 1]]);
        assert_eq!(proportional(&id, &j), Proportionality::Not { witness: (0, 1) });
    }
}
