//! Exact verification of the Hopf, quasitriangular and ribbon axioms.

use super::HopfData;
use crate::cyclo::matrix::{canonicalize, SparseVec};
use crate::cyclo::CycloNum;
use crate::par;
use std::fmt;

/// Which elements the multiplicative checks range over.
///
/// `Exhaustive` checks identities like (xy)z = x(yz) on every triple of basis
/// elements. `GeneratorReduced` lets the leftmost variable range over algebra
/// generators only. Every basis element is a product of generators and each
/// identity checked that way is stable under multiplying the left variable,
/// so this is a complete check with far fewer products.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AxiomMode {
    Exhaustive,
    GeneratorReduced,
    /// Exhaustive up to dimension 64, generator-reduced above.
    Auto,
}

#[derive(Clone, Debug)]
pub struct AxiomCheck {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct AxiomReport {
    pub mode: AxiomMode,
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failed(&self) -> Vec<&AxiomCheck> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "mode {:?}", self.mode)?;
        for c in &self.checks {
            let status = if c.passed { "ok" } else { "FAIL" };
            if c.detail.is_empty() {
                writeln!(f, "{status} {}", c.name)?;
            } else {
                writeln!(f, "{status} {} ({})", c.name, c.detail)?;
            }
        }
        Ok(())
    }
}

fn scale(a: &[(usize, CycloNum)], c: &CycloNum) -> SparseVec {
    canonicalize(a.iter().map(|(i, x)| (*i, x * c)).collect())
}

/// First failing witness over `0..n`, if any.
fn first_failure(n: usize, f: impl Fn(usize) -> Option<String> + Sync + Send) -> Option<String> {
    par::map_range(n, f).into_iter().flatten().next()
}

fn check(name: &'static str, failure: Option<String>) -> AxiomCheck {
    AxiomCheck { name, passed: failure.is_none(), detail: failure.unwrap_or_default() }
}

/// Elements of H⊗H⊗H use index (a*d + b)*d + c.
struct Triple<'a> {
    h: &'a HopfData,
}

impl Triple<'_> {
    fn embed(&self, t: &[(usize, CycloNum)], slots: (usize, usize)) -> SparseVec {
        let d = self.h.dim;
        let one = self.h.unit.clone();
        let mut acc = Vec::new();
        for (a, b, c) in self.h.split2(t) {
            for (u, w) in &one {
                let cw = c * w;
                let mut idx = [*u; 3];
                idx[slots.0] = a;
                idx[slots.1] = b;
                acc.push(((idx[0] * d + idx[1]) * d + idx[2], cw));
            }
        }
        canonicalize(acc)
    }

    fn mul(&self, s: &[(usize, CycloNum)], t: &[(usize, CycloNum)]) -> SparseVec {
        let d = self.h.dim;
        let mut acc = Vec::new();
        for (k1, c1) in s {
            let (a1, b1, e1) = (k1 / (d * d), (k1 / d) % d, k1 % d);
            for (k2, c2) in t {
                let (a2, b2, e2) = (k2 / (d * d), (k2 / d) % d, k2 % d);
                let c = c1 * c2;
                let pa = self.h.mul_basis(a1, a2);
                let pb = self.h.mul_basis(b1, b2);
                let pe = self.h.mul_basis(e1, e2);
                for (i, x) in &pa {
                    let cx = &c * x;
                    for (j, y) in &pb {
                        let cy = &cx * y;
                        for (k, z) in &pe {
                            acc.push(((i * d + j) * d + k, &cy * z));
                        }
                    }
                }
            }
        }
        canonicalize(acc)
    }

    /// (Δ⊗id)(t) when `left`, (id⊗Δ)(t) otherwise.
    fn coproduct_slot(&self, t: &[(usize, CycloNum)], left: bool) -> SparseVec {
        let d = self.h.dim;
        let mut acc = Vec::new();
        for (a, b, c) in self.h.split2(t) {
            let (split, keep) = if left { (a, b) } else { (b, a) };
            let (cols, vals) = self.h.comult.row(split);
            for (&k, v) in cols.iter().zip(vals) {
                let (x, y) = (k / d, k % d);
                let idx = if left { (x * d + y) * d + keep } else { (keep * d + x) * d + y };
                acc.push((idx, c * v));
            }
        }
        canonicalize(acc)
    }
}

pub fn verify_hopf_axioms(h: &HopfData, mode: AxiomMode) -> AxiomReport {
    let mode = match mode {
        AxiomMode::Auto if h.dim <= 64 => AxiomMode::Exhaustive,
        AxiomMode::Auto => AxiomMode::GeneratorReduced,
        m => m,
    };
    let d = h.dim;
    let lefts: Vec<usize> = match mode {
        AxiomMode::Exhaustive => (0..d).collect(),
        _ => h.generators.clone(),
    };
    let label = |x: usize| h.basis_labels[x].clone();
    let one = h.unit.clone();
    let mut checks = Vec::new();

    checks.push(check(
        "associativity",
        first_failure(lefts.len() * d, |k| {
            let (x, y) = (lefts[k / d], k % d);
            let xy = h.mul_basis(x, y);
            (0..d).find_map(|z| {
                let lhs = h.mul(&xy, &h.basis(z));
                let rhs = h.mul(&h.basis(x), &h.mul_basis(y, z));
                (lhs != rhs).then(|| format!("x={} y={} z={}", label(x), label(y), label(z)))
            })
        }),
    ));

    checks.push(check(
        "unit",
        first_failure(d, |x| {
            let b = h.basis(x);
            (h.mul(&one, &b) != b || h.mul(&b, &one) != b).then(|| format!("x={}", label(x)))
        }),
    ));

    let tri = Triple { h };
    checks.push(check(
        "coassociativity",
        first_failure(d, |x| {
            let dx = h.comult.row_sparse(x);
            (tri.coproduct_slot(&dx, true) != tri.coproduct_slot(&dx, false)).then(|| format!("x={}", label(x)))
        }),
    ));

    checks.push(check(
        "counit",
        first_failure(d, |x| {
            let dx = h.comult.row_sparse(x);
            let mut left = Vec::new();
            let mut right = Vec::new();
            for (a, b, c) in h.split2(&dx) {
                left.extend(scale(&h.basis(b), &(c * &h.counit_of(&h.basis(a)))));
                right.extend(scale(&h.basis(a), &(c * &h.counit_of(&h.basis(b)))));
            }
            let b = h.basis(x);
            (canonicalize(left) != b || canonicalize(right) != b).then(|| format!("x={}", label(x)))
        }),
    ));

    let one2 = h.tensor2(&one, &one);
    checks.push(check(
        "coproduct is multiplicative",
        if h.coproduct(&one) != one2 {
            Some("coproduct of the unit".into())
        } else {
            first_failure(lefts.len() * d, |k| {
                let (x, y) = (lefts[k / d], k % d);
                let lhs = h.coproduct(&h.mul_basis(x, y));
                let rhs = h.mul2(&h.comult.row_sparse(x), &h.comult.row_sparse(y));
                (lhs != rhs).then(|| format!("x={} y={}", label(x), label(y)))
            })
        },
    ));

    checks.push(check(
        "counit is multiplicative",
        if !h.counit_of(&one).is_one() {
            Some("counit of the unit".into())
        } else {
            first_failure(lefts.len() * d, |k| {
                let (x, y) = (lefts[k / d], k % d);
                let lhs = h.counit_of(&h.mul_basis(x, y));
                let rhs = &h.counit_of(&h.basis(x)) * &h.counit_of(&h.basis(y));
                (lhs != rhs).then(|| format!("x={} y={}", label(x), label(y)))
            })
        },
    ));

    checks.push(check(
        "antipode",
        first_failure(d, |x| {
            let dx = h.comult.row_sparse(x);
            let mut left = Vec::new();
            let mut right = Vec::new();
            for (a, b, c) in h.split2(&dx) {
                left.extend(scale(&h.mul(&h.antipode_of(&h.basis(a)), &h.basis(b)), c));
                right.extend(scale(&h.mul(&h.basis(a), &h.antipode_of(&h.basis(b))), c));
            }
            let target = scale(&one, &h.counit_of(&h.basis(x)));
            (canonicalize(left) != target || canonicalize(right) != target).then(|| format!("x={}", label(x)))
        }),
    ));

    checks.push(check(
        "antipode inverse",
        first_failure(d, |x| {
            let b = h.basis(x);
            (h.antipode_of(&h.antipode_inv_of(&b)) != b || h.antipode_inv_of(&h.antipode_of(&b)) != b)
                .then(|| format!("x={}", label(x)))
        }),
    ));

    let r = &h.r_matrix;
    checks.push(check(
        "R intertwines coproduct and opposite",
        first_failure(lefts.len(), |k| {
            let x = lefts[k];
            let dx = h.comult.row_sparse(x);
            let lhs = h.mul2(&h.flip(&dx), r);
            let rhs = h.mul2(r, &dx);
            (lhs != rhs).then(|| format!("x={}", label(x)))
        }),
    ));

    let r13 = tri.embed(r, (0, 2));
    let r23 = tri.embed(r, (1, 2));
    let r12 = tri.embed(r, (0, 1));
    checks.push(check(
        "hexagon (coproduct on first factor)",
        (tri.coproduct_slot(r, true) != tri.mul(&r13, &r23)).then(|| "mismatch".to_string()),
    ));
    checks.push(check(
        "hexagon (coproduct on second factor)",
        (tri.coproduct_slot(r, false) != tri.mul(&r13, &r12)).then(|| "mismatch".to_string()),
    ));
    checks.push(check(
        "R inverse",
        (h.mul2(r, &h.r_matrix_inv) != one2 || h.mul2(&h.r_matrix_inv, r) != one2).then(|| "mismatch".to_string()),
    ));

    let v = &h.ribbon_v;
    let vi = &h.ribbon_v_inv;
    checks.push(check(
        "ribbon element central",
        first_failure(lefts.len(), |k| {
            let x = h.basis(lefts[k]);
            (h.mul(v, &x) != h.mul(&x, v)).then(|| format!("x={}", label(lefts[k])))
        }),
    ));
    checks.push(check("ribbon element invertible", (h.mul(v, vi) != one).then(|| "v v^-1 != 1".to_string())));
    checks.push(check("ribbon element antipode", (h.antipode_of(v) != *v).then(|| "S(v) != v".to_string())));
    checks.push(check("ribbon element counit", (!h.counit_of(v).is_one()).then(|| "eps(v) != 1".to_string())));
    let m = h.mul2(&h.flip(r), r);
    checks.push(check(
        "ribbon element coproduct",
        (h.coproduct(vi) != h.mul2(&m, &h.tensor2(vi, vi))).then(|| "mismatch".to_string()),
    ));

    let g = &h.pivotal_g;
    let g_inv = h.inverse_element(g);
    checks.push(check(
        "pivotal element grouplike",
        match &g_inv {
            None => Some("g is not invertible".into()),
            Some(_) => (h.coproduct(g) != h.tensor2(g, g) || !h.counit_of(g).is_one()).then(|| "mismatch".to_string()),
        },
    ));
    checks.push(check(
        "square of antipode is conjugation by g",
        match &g_inv {
            None => Some("g is not invertible".into()),
            Some(gi) => first_failure(d, |x| {
                let b = h.basis(x);
                let lhs = h.antipode_of(&h.antipode_of(&b));
                let rhs = h.mul(&h.mul(g, &b), gi);
                (lhs != rhs).then(|| format!("x={}", label(x)))
            }),
        },
    ));
    checks.push(check(
        "pivotal element equals u v^-1",
        (!super::pivotal_consistency(h)).then(|| "g != u v^-1".to_string()),
    ));

    AxiomReport { mode, checks }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::ExactMatrix;
    use crate::hopf::small_qsl2;

    #[test]
    fn qsl2_r3_passes_exhaustively() {
        let h = small_qsl2(3).unwrap();
        let rep = verify_hopf_axioms(&h, AxiomMode::Exhaustive);
        assert!(rep.all_passed(), "{rep}");
    }

    #[test]
    fn corrupted_antipode_is_caught() {
        let mut h = small_qsl2(3).unwrap();
        let mut rows = h.antipode.clone().into_rows();
        let e = h.generators[0];
        rows[e] = scale(&rows[e], &h.ctx.int(2));
        h.antipode = ExactMatrix::from_rows(h.ctx, h.dim, rows);
        let rep = verify_hopf_axioms(&h, AxiomMode::Exhaustive);
        let failed: Vec<_> = rep.failed().iter().map(|c| c.name).collect();
        assert!(failed.contains(&"antipode"), "{rep}");
    }
}
