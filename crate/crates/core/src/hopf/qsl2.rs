//! The small quantum group of sl2 at an odd root of unity, on the PBW basis
//! E^a F^b K^c with index a*r^2 + b*r + c.

use super::HopfData;
use crate::cyclo::matrix::{canonicalize, SparseVec};
use crate::cyclo::{field_init, CycloNum, ExactMatrix, FieldCtx};
use crate::error::Error;
use crate::par;

/// Left multiplication by the generators on the PBW basis.
pub struct Qsl2 {
    pub ctx: &'static FieldCtx,
    pub r: usize,
    f_table: Vec<SparseVec>,
}

impl Qsl2 {
    pub fn new(r: u32) -> Result<Self, Error> {
        let ctx = field_init(r)?;
        let r = r as usize;
        let mut q = Qsl2 { ctx, r, f_table: Vec::new() };
        q.build_f_table();
        Ok(q)
    }

    pub fn dim(&self) -> usize {
        self.r * self.r * self.r
    }

    pub fn index(&self, a: usize, b: usize, c: usize) -> usize {
        (a * self.r + b) * self.r + c
    }

    pub fn exponents(&self, x: usize) -> (usize, usize, usize) {
        let r = self.r;
        (x / (r * r), (x / r) % r, x % r)
    }

    pub fn label(&self, x: usize) -> String {
        let (a, b, c) = self.exponents(x);
        let mut parts = Vec::new();
        for (g, e) in [("E", a), ("F", b), ("K", c)] {
            match e {
                0 => {}
                1 => parts.push(g.to_string()),
                _ => parts.push(format!("{g}^{e}")),
            }
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }

    fn build_f_table(&mut self) {
        let (r, ctx) = (self.r, self.ctx);
        let inv_c1 = ctx.curly(1).inv().expect("{1} is nonzero");
        let mut table = vec![Vec::new(); self.dim()];
        for d in 0..r {
            for e in 0..r {
                for f in 0..r {
                    let x = self.index(d, e, f);
                    table[x] = if d == 0 {
                        if e + 1 < r {
                            vec![(self.index(0, e + 1, f), ctx.one())]
                        } else {
                            Vec::new()
                        }
                    } else {
                        let prev = table[self.index(d - 1, e, f)].clone();
                        let base = vec![(self.index(d - 1, e, f), ctx.one())];
                        let comm = {
                            let kp = self.k(&base);
                            let km = self.kinv(&base);
                            let mut acc = kp;
                            for (i, c) in km {
                                acc.push((i, -c));
                            }
                            canonicalize(acc.into_iter().map(|(i, c)| (i, &c * &inv_c1)).collect())
                        };
                        let mut acc = self.e(&prev);
                        for (i, c) in comm {
                            acc.push((i, -c));
                        }
                        canonicalize(acc)
                    };
                }
            }
        }
        self.f_table = table;
    }

    /// E * v
    pub fn e(&self, v: &[(usize, CycloNum)]) -> SparseVec {
        let r = self.r;
        let out = v
            .iter()
            .filter_map(|(x, c)| {
                let (a, b, k) = self.exponents(*x);
                (a + 1 < r).then(|| (self.index(a + 1, b, k), c.clone()))
            })
            .collect();
        canonicalize(out)
    }

    /// F * v
    pub fn f(&self, v: &[(usize, CycloNum)]) -> SparseVec {
        let mut acc = Vec::new();
        for (x, c) in v {
            for (y, w) in &self.f_table[*x] {
                acc.push((*y, c * w));
            }
        }
        canonicalize(acc)
    }

    /// K^s * v for any integer s.
    pub fn k_pow(&self, s: i64, v: &[(usize, CycloNum)]) -> SparseVec {
        let r = self.r as i64;
        let out = v
            .iter()
            .map(|(x, c)| {
                let (a, b, k) = self.exponents(*x);
                let ph = self.ctx.q_pow(s * (2 * a as i64 - 2 * b as i64));
                let nk = (k as i64 + s).rem_euclid(r) as usize;
                (self.index(a, b, nk), c * &ph)
            })
            .collect();
        canonicalize(out)
    }

    pub fn k(&self, v: &[(usize, CycloNum)]) -> SparseVec {
        self.k_pow(1, v)
    }

    pub fn kinv(&self, v: &[(usize, CycloNum)]) -> SparseVec {
        self.k_pow(-1, v)
    }

    pub fn one(&self) -> SparseVec {
        vec![(0, self.ctx.one())]
    }

    fn repeat(&self, n: usize, v: SparseVec, op: impl Fn(&SparseVec) -> SparseVec) -> SparseVec {
        (0..n).fold(v, |acc, _| op(&acc))
    }

    /// PBW expansion of F^a K^b E^c.
    pub fn fke(&self, a: usize, b: i64, c: usize) -> SparseVec {
        let v = vec![(self.index(c, 0, 0), self.ctx.one())];
        let v = self.k_pow(b, &v);
        self.repeat(a, v, |w| self.f(w))
    }

    /// PBW expansion of K^b E^a.
    pub fn ke(&self, b: i64, a: usize) -> SparseVec {
        self.k_pow(b, &[(self.index(a, 0, 0), self.ctx.one())])
    }

    /// PBW expansion of K^c F^a.
    pub fn kf(&self, c: i64, a: usize) -> SparseVec {
        self.k_pow(c, &[(self.index(0, a, 0), self.ctx.one())])
    }

    /// e_x * v
    pub fn left_basis(&self, x: usize, v: &[(usize, CycloNum)]) -> SparseVec {
        let (a, b, c) = self.exponents(x);
        let w = self.k_pow(c as i64, v);
        let w = self.repeat(b, w, |u| self.f(u));
        self.repeat(a, w, |u| self.e(u))
    }

    fn mult_table(&self) -> ExactMatrix {
        let dim = self.dim();
        let r = self.r;
        // columns[y][x] = e_x e_y
        let columns: Vec<Vec<SparseVec>> = par::map_range(dim, |y| {
            let mut out: Vec<SparseVec> = vec![Vec::new(); dim];
            for x in 0..dim {
                let (a, b, c) = self.exponents(x);
                out[x] = if a > 0 {
                    self.e(&out[x - r * r])
                } else if b > 0 {
                    self.f(&out[x - r])
                } else if c > 0 {
                    self.k(&out[x - 1])
                } else {
                    vec![(y, self.ctx.one())]
                };
            }
            out
        });
        let mut rows = vec![Vec::new(); dim * dim];
        for (y, col) in columns.into_iter().enumerate() {
            for (x, v) in col.into_iter().enumerate() {
                rows[x * dim + y] = v;
            }
        }
        ExactMatrix::from_rows(self.ctx, dim, rows)
    }

    fn tensor_op(
        &self,
        t: &[(usize, CycloNum)],
        terms: &[(&dyn Fn(&SparseVec) -> SparseVec, &dyn Fn(&SparseVec) -> SparseVec)],
    ) -> SparseVec {
        let d = self.dim();
        let mut acc = Vec::new();
        for (k, c) in t {
            let (u, w) = (k / d, k % d);
            for (f, g) in terms {
                let fu = f(&vec![(u, self.ctx.one())]);
                let gw = g(&vec![(w, self.ctx.one())]);
                for (i, a) in &fu {
                    let ca = c * a;
                    for (j, b) in &gw {
                        acc.push((i * d + j, &ca * b));
                    }
                }
            }
        }
        canonicalize(acc)
    }

    fn comult_table(&self) -> ExactMatrix {
        let dim = self.dim();
        let r = self.r;
        let id = |v: &SparseVec| v.clone();
        let e = |v: &SparseVec| self.e(v);
        let f = |v: &SparseVec| self.f(v);
        let k = |v: &SparseVec| self.k(v);
        let ki = |v: &SparseVec| self.kinv(v);
        let mut rows: Vec<SparseVec> = vec![Vec::new(); dim];
        for x in 0..dim {
            let (a, b, c) = self.exponents(x);
            rows[x] = if a > 0 {
                self.tensor_op(&rows[x - r * r], &[(&e, &k), (&id, &e)])
            } else if b > 0 {
                self.tensor_op(&rows[x - r], &[(&ki, &f), (&f, &id)])
            } else if c > 0 {
                self.tensor_op(&rows[x - 1], &[(&k, &k)])
            } else {
                vec![(0, self.ctx.one())]
            };
        }
        ExactMatrix::from_rows(self.ctx, dim * dim, rows)
    }

    fn antipode_rows(&self, inverse: bool) -> ExactMatrix {
        let dim = self.dim();
        let neg = |v: SparseVec| -> SparseVec { v.into_iter().map(|(i, c)| (i, -c)).collect() };
        let rows = par::map_range(dim, |x| {
            let (a, b, c) = self.exponents(x);
            let mut w = self.one();
            for _ in 0..a {
                w = if inverse { neg(self.kinv(&self.e(&w))) } else { neg(self.e(&self.kinv(&w))) };
            }
            for _ in 0..b {
                w = if inverse { neg(self.f(&self.k(&w))) } else { neg(self.k(&self.f(&w))) };
            }
            self.k_pow(-(c as i64), &w)
        });
        ExactMatrix::from_rows(self.ctx, dim, rows)
    }

    fn scaled(&self, v: SparseVec, c: &CycloNum) -> SparseVec {
        canonicalize(v.into_iter().map(|(i, a)| (i, &a * c)).collect())
    }

    fn r_element(&self, inverse: bool) -> SparseVec {
        let (r, ctx) = (self.r, self.ctx);
        let d = self.dim();
        let sign = if inverse { -1 } else { 1 };
        let inv_r = ctx.frac(1, r as i64);
        let mut acc = Vec::new();
        for a in 0..r {
            let ai = a as i64;
            let base = &(&ctx.curly(sign).pow(ai).unwrap() * &ctx.qfact(ai).inv().unwrap()) * &inv_r;
            for b in 0..r {
                for c in 0..r {
                    let (bi, ci) = (b as i64, c as i64);
                    let coef = &base * &ctx.q_pow(sign * (ai * (ai - 1) / 2 - 2 * bi * ci));
                    let (left, right) = if inverse {
                        (vec![(self.index(a, 0, b), ctx.one())], vec![(self.index(0, a, c), ctx.one())])
                    } else {
                        (self.ke(bi, a), self.kf(ci, a))
                    };
                    for (i, x) in &left {
                        let cx = &coef * x;
                        for (j, y) in &right {
                            acc.push((i * d + j, &cx * y));
                        }
                    }
                }
            }
        }
        canonicalize(acc)
    }

    fn ribbon(&self, inverse: bool) -> SparseVec {
        let (r, ctx) = (self.r as i64, self.ctx);
        let h = (r - 1) / 2;
        let pre = if inverse {
            &ctx.i_pow(-h) * &ctx.sqrt_r().inv().unwrap()
        } else {
            &ctx.i_pow(h) * &ctx.sqrt_r().inv().unwrap()
        };
        let mut acc = Vec::new();
        for a in 0..r {
            let curly = ctx.curly(if inverse { 1 } else { -1 }).pow(a).unwrap();
            let base = &(&curly * &ctx.qfact(a).inv().unwrap()) * &pre;
            for b in 0..r {
                let e = if inverse {
                    a * (a - 1) / 2 + (r - 1) * (a + b - 1) * (a + b - 1) / 2
                } else {
                    -a * (a - 1) / 2 + (r + 1) * (a - b - 1) * (a - b - 1) / 2
                };
                let coef = &base * &ctx.q_pow(e);
                acc.extend(self.scaled(self.fke(a as usize, b, a as usize), &coef));
            }
        }
        canonicalize(acc)
    }

    /// Builds the full structure tensors.
    pub fn build(&self) -> HopfData {
        let (r, ctx) = (self.r, self.ctx);
        let dim = self.dim();
        let c1 = ctx.curly(1);
        let c1pow = c1.pow(2 * r as i64 - 2).unwrap();
        let r3 = ctx.int((r * r * r) as i64);
        let lambda_val = &r3 * &c1pow.inv().unwrap();
        let coint_val = &c1pow * &r3.inv().unwrap();
        HopfData {
            ctx,
            name: format!("qsl2_r{r}"),
            dim,
            basis_labels: (0..dim).map(|x| self.label(x)).collect(),
            mult: self.mult_table(),
            unit: self.one(),
            comult: self.comult_table(),
            counit: (0..r).map(|c| (self.index(0, 0, c), ctx.one())).collect(),
            antipode: self.antipode_rows(false),
            antipode_inv: self.antipode_rows(true),
            r_matrix: self.r_element(false),
            r_matrix_inv: self.r_element(true),
            ribbon_v: self.ribbon(false),
            ribbon_v_inv: self.ribbon(true),
            pivotal_g: vec![(self.index(0, 0, 1), ctx.one())],
            integral_lambda: vec![(self.index(r - 1, r - 1, 1), lambda_val)],
            cointegral: (0..r).map(|c| (self.index(r - 1, r - 1, c), coint_val.clone())).collect(),
            generators: vec![self.index(1, 0, 0), self.index(0, 1, 0), self.index(0, 0, 1)],
        }
    }
}

/// The small quantum group of sl2 at q = exp(2πi/r), r odd and at least 3.
pub fn small_qsl2(r: u32) -> Result<HopfData, Error> {
    Ok(Qsl2::new(r)?.build())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimension_and_labels() {
        let h = small_qsl2(3).unwrap();
        assert_eq!(h.dim, 27);
        assert_eq!(h.basis_labels[0], "1");
        assert_eq!(h.basis_labels[26], "E^2*F^2*K^2");
    }

    #[test]
    fn commutator_relation() {
        let q = Qsl2::new(3).unwrap();
        let h = q.build();
        let e = h.basis(q.index(1, 0, 0));
        let f = h.basis(q.index(0, 1, 0));
        let ef = h.mul(&e, &f);
        let fe = h.mul(&f, &e);
        let mut lhs = ef;
        for (i, c) in fe {
            lhs.push((i, -c));
        }
        let lhs = canonicalize(lhs);
        let inv = q.ctx.curly(1).inv().unwrap();
        let k = q.k(&q.one());
        let ki = q.kinv(&q.one());
        let mut rhs = k;
        for (i, c) in ki {
            rhs.push((i, -c));
        }
        let rhs = canonicalize(rhs.into_iter().map(|(i, c)| (i, &c * &inv)).collect());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn lambda_of_top_element() {
        let q = Qsl2::new(3).unwrap();
        let h = q.build();
        let top = h.basis(q.index(2, 2, 1));
        assert_eq!(h.lambda_of(&top), q.ctx.int(3));
        assert!(h.lambda_of(&h.unit).is_zero());
    }
}
