//! Finite-dimensional ribbon Hopf algebras given by structure tensors.

mod axioms;
mod derived;
mod io;
mod qsl2;

pub use axioms::{verify_hopf_axioms, AxiomMode, AxiomReport};
pub use derived::{
    drinfeld_element, drinfeld_map, drinfeld_map_inv, drinfeld_map_inv_closed_form, drinfeld_map_inv_with_s2, lambda_form, integral_checks, m_matrix,
    m_matrix_closed_form, pivotal_consistency, stabilization_params, SqrtChoice, StabilizationParams,
};
pub use io::{dump_hopf, load_hopf};
pub use qsl2::{small_qsl2, Qsl2};

use crate::cyclo::matrix::{canonicalize, SparseVec};
use crate::cyclo::{CycloNum, ExactMatrix, FieldCtx};

/// Structure tensors of a ribbon Hopf algebra on a fixed basis.
///
/// `mult` is stored with one row per input pair (row `x*dim + y` holds
/// `e_x e_y`) and `comult` with one row per input (row `x` holds `Δ(e_x)` in
/// the left-major basis of H⊗H). The antipode matrices likewise have row `x`
/// equal to the image of `e_x`. Elements of H⊗H are sparse vectors indexed by
/// `a*dim + b` for `e_a ⊗ e_b`.
#[derive(Clone, Debug)]
pub struct HopfData {
    pub ctx: &'static FieldCtx,
    pub name: String,
    pub dim: usize,
    pub basis_labels: Vec<String>,
    pub mult: ExactMatrix,
    pub unit: SparseVec,
    pub comult: ExactMatrix,
    pub counit: SparseVec,
    pub antipode: ExactMatrix,
    pub antipode_inv: ExactMatrix,
    pub r_matrix: SparseVec,
    pub r_matrix_inv: SparseVec,
    pub ribbon_v: SparseVec,
    pub ribbon_v_inv: SparseVec,
    pub pivotal_g: SparseVec,
    pub integral_lambda: SparseVec,
    pub cointegral: SparseVec,
    /// Basis indices generating H as an algebra. Module checks only need
    /// these. Algebras loaded from files list every basis element.
    pub generators: Vec<usize>,
}

fn pair_apply(
    a: &[(usize, CycloNum)],
    b: &[(usize, CycloNum)],
    mut f: impl FnMut(usize, usize, &CycloNum),
) {
    for (x, u) in a {
        for (y, w) in b {
            f(*x, *y, &(u * w));
        }
    }
}

impl HopfData {
    pub fn zero(&self) -> CycloNum {
        self.ctx.zero()
    }

    pub fn basis(&self, x: usize) -> SparseVec {
        vec![(x, self.ctx.one())]
    }

    pub fn one_elem(&self) -> SparseVec {
        self.unit.clone()
    }

    pub fn mul_basis(&self, x: usize, y: usize) -> SparseVec {
        self.mult.row_sparse(x * self.dim + y)
    }

    pub fn mul(&self, a: &[(usize, CycloNum)], b: &[(usize, CycloNum)]) -> SparseVec {
        let mut acc = Vec::new();
        pair_apply(a, b, |x, y, c| {
            let (cols, vals) = self.mult.row(x * self.dim + y);
            for (&k, v) in cols.iter().zip(vals) {
                acc.push((k, c * v));
            }
        });
        canonicalize(acc)
    }

    /// Product of several elements, left to right.
    pub fn mul_all(&self, items: &[&[(usize, CycloNum)]]) -> SparseVec {
        let mut acc = self.unit.clone();
        for it in items {
            acc = self.mul(&acc, it);
        }
        acc
    }

    pub fn coproduct(&self, a: &[(usize, CycloNum)]) -> SparseVec {
        let mut acc = Vec::new();
        for (x, c) in a {
            let (cols, vals) = self.comult.row(*x);
            for (&k, v) in cols.iter().zip(vals) {
                acc.push((k, c * v));
            }
        }
        canonicalize(acc)
    }

    fn apply_rowmap(m: &ExactMatrix, a: &[(usize, CycloNum)]) -> SparseVec {
        let mut acc = Vec::new();
        for (x, c) in a {
            let (cols, vals) = m.row(*x);
            for (&k, v) in cols.iter().zip(vals) {
                acc.push((k, c * v));
            }
        }
        canonicalize(acc)
    }

    pub fn antipode_of(&self, a: &[(usize, CycloNum)]) -> SparseVec {
        Self::apply_rowmap(&self.antipode, a)
    }

    pub fn antipode_inv_of(&self, a: &[(usize, CycloNum)]) -> SparseVec {
        Self::apply_rowmap(&self.antipode_inv, a)
    }

    pub fn pair(&self, covector: &[(usize, CycloNum)], a: &[(usize, CycloNum)]) -> CycloNum {
        let mut s = self.ctx.zero();
        let (mut i, mut j) = (0, 0);
        while i < covector.len() && j < a.len() {
            match covector[i].0.cmp(&a[j].0) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    s += &(&covector[i].1 * &a[j].1);
                    i += 1;
                    j += 1;
                }
            }
        }
        s
    }

    pub fn counit_of(&self, a: &[(usize, CycloNum)]) -> CycloNum {
        self.pair(&self.counit, a)
    }

    pub fn lambda_of(&self, a: &[(usize, CycloNum)]) -> CycloNum {
        self.pair(&self.integral_lambda, a)
    }

    /// Splits an element of H⊗H into (left index, right index, coefficient).
    pub fn split2<'a>(&self, t: &'a [(usize, CycloNum)]) -> impl Iterator<Item = (usize, usize, &'a CycloNum)> + 'a {
        let d = self.dim;
        t.iter().map(move |(k, c)| (k / d, k % d, c))
    }

    pub fn tensor2(&self, a: &[(usize, CycloNum)], b: &[(usize, CycloNum)]) -> SparseVec {
        let mut acc = Vec::new();
        pair_apply(a, b, |x, y, c| acc.push((x * self.dim + y, c.clone())));
        canonicalize(acc)
    }

    /// Product in H⊗H.
    pub fn mul2(&self, s: &[(usize, CycloNum)], t: &[(usize, CycloNum)]) -> SparseVec {
        let d = self.dim;
        let mut acc = Vec::new();
        for (k1, c1) in s {
            let (a, b) = (k1 / d, k1 % d);
            for (k2, c2) in t {
                let (x, y) = (k2 / d, k2 % d);
                let c = c1 * c2;
                let (ca, va) = self.mult.row(a * d + x);
                let (cb, vb) = self.mult.row(b * d + y);
                for (&i, u) in ca.iter().zip(va) {
                    let cu = &c * u;
                    for (&j, w) in cb.iter().zip(vb) {
                        acc.push((i * d + j, &cu * w));
                    }
                }
            }
        }
        canonicalize(acc)
    }

    /// Swaps the tensor factors of an element of H⊗H.
    pub fn flip(&self, t: &[(usize, CycloNum)]) -> SparseVec {
        let d = self.dim;
        canonicalize(t.iter().map(|(k, c)| ((k % d) * d + k / d, c.clone())).collect())
    }

    /// Applies a linear map on each factor (given per basis element).
    pub fn map2(
        &self,
        t: &[(usize, CycloNum)],
        f: impl Fn(usize) -> SparseVec,
        g: impl Fn(usize) -> SparseVec,
    ) -> SparseVec {
        let mut acc = Vec::new();
        for (a, b, c) in self.split2(t) {
            let fa = f(a);
            let gb = g(b);
            pair_apply(&fa, &gb, |x, y, w| acc.push((x * self.dim + y, c * w)));
        }
        canonicalize(acc)
    }

    /// Matrix of left multiplication by `a` (columns are inputs).
    pub fn left_mult_matrix(&self, a: &[(usize, CycloNum)]) -> ExactMatrix {
        let cols = (0..self.dim).map(|y| self.mul(a, &self.basis(y))).collect();
        ExactMatrix::from_cols(self.ctx, self.dim, cols)
    }

    /// Matrix of right multiplication by `a` (columns are inputs).
    pub fn right_mult_matrix(&self, a: &[(usize, CycloNum)]) -> ExactMatrix {
        let cols = (0..self.dim).map(|y| self.mul(&self.basis(y), a)).collect();
        ExactMatrix::from_cols(self.ctx, self.dim, cols)
    }

    /// The antipode as a matrix acting on columns.
    pub fn antipode_matrix(&self) -> ExactMatrix {
        self.antipode.transpose()
    }

    pub fn antipode_inv_matrix(&self) -> ExactMatrix {
        self.antipode_inv.transpose()
    }

    pub fn inverse_element(&self, a: &[(usize, CycloNum)]) -> Option<SparseVec> {
        let l = self.left_mult_matrix(a);
        let inv = crate::cyclo::inverse(&l).ok()?;
        Some(inv.apply(&self.unit))
    }

    /// Index of a basis label, if present.
    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.basis_labels.iter().position(|l| l == label)
    }
}
