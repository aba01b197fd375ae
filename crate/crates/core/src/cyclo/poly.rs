use std::fmt;

use super::field::FieldCtx;
use super::matrix::ExactMatrix;
use super::num::CycloNum;

/// Univariate polynomial over the field, lowest degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    ctx: &'static FieldCtx,
    coeffs: Vec<CycloNum>,
}

impl Poly {
    pub fn new(ctx: &'static FieldCtx, mut coeffs: Vec<CycloNum>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { ctx, coeffs }
    }

    pub fn from_ints(ctx: &'static FieldCtx, c: &[i64]) -> Self {
        Self::new(ctx, c.iter().map(|&x| ctx.int(x)).collect())
    }

    /// x - a
    pub fn linear(a: &CycloNum) -> Self {
        let ctx = a.ctx();
        Self::new(ctx, vec![-a, ctx.one()])
    }

    pub fn coeffs(&self) -> &[CycloNum] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn monic(&self) -> Poly {
        match self.coeffs.last() {
            None => self.clone(),
            Some(lead) => {
                let inv = lead.inv().expect("nonzero leading coefficient");
                Poly::new(self.ctx, self.coeffs.iter().map(|c| c * &inv).collect())
            }
        }
    }

    pub fn derivative(&self) -> Poly {
        let c = self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c.scale_int(k as i64)).collect();
        Poly::new(self.ctx, c)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::new(self.ctx, vec![]);
        }
        let mut out = vec![self.ctx.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        Poly::new(self.ctx, out)
    }

    /// Quotient and remainder.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead_inv = d.coeffs[dd].inv().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::new(self.ctx, vec![]), self.clone());
        }
        let mut quot = vec![self.ctx.zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if !c.is_zero() {
                for j in 0..=dd {
                    rem[k + j] -= &(&c * &d.coeffs[j]);
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Poly::new(self.ctx, quot), Poly::new(self.ctx, rem))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// True if some root occurs with multiplicity > 1 (over the algebraic closure).
    pub fn has_repeated_root(&self) -> bool {
        self.gcd(&self.derivative()).degree().unwrap_or(0) > 0
    }

    pub fn eval(&self, x: &CycloNum) -> CycloNum {
        let mut acc = self.ctx.zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// p(A) by Horner's rule.
    pub fn eval_matrix(&self, a: &ExactMatrix) -> ExactMatrix {
        let n = a.rows();
        let mut acc = ExactMatrix::zeros(self.ctx, n, n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(a).add(&ExactMatrix::identity(self.ctx, n).scale(c));
        }
        acc
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let xs = match k {
                0 => String::new(),
                1 => "x".into(),
                _ => format!("x^{k}"),
            };
            if k == 0 {
                write!(f, "({c})")?;
            } else if c.is_one() {
                write!(f, "{xs}")?;
            } else {
                write!(f, "({c})*{xs}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
