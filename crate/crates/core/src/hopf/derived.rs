//! Elements and maps derived from the structure tensors: the Drinfeld
//! element, the monodromy M = R21 R12, the Drinfeld map and the
//! stabilization parameters.

use super::axioms::AxiomCheck;
use super::{HopfData, Qsl2};
use crate::cyclo::matrix::{canonicalize, SparseVec};
use crate::cyclo::{inverse, CycloNum, ExactMatrix, FieldCtx};
use crate::error::Error;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// u = Σ S(R'') R'
pub fn drinfeld_element(h: &HopfData) -> SparseVec {
    let mut acc = Vec::new();
    for (a, b, c) in h.split2(&h.r_matrix) {
        let t = h.mul(&h.antipode_of(&h.basis(b)), &h.basis(a));
        acc.extend(t.into_iter().map(|(i, x)| (i, &x * c)));
    }
    canonicalize(acc)
}

/// Checks g = u v^-1.
pub fn pivotal_consistency(h: &HopfData) -> bool {
    h.mul(&drinfeld_element(h), &h.ribbon_v_inv) == h.pivotal_g
}

/// M = R21 R12 as an element of H⊗H.
pub fn m_matrix(h: &HopfData) -> SparseVec {
    h.mul2(&h.flip(&h.r_matrix), &h.r_matrix)
}

/// The monodromy of the small quantum group written out term by term.
pub fn m_matrix_closed_form(r: u32) -> Result<SparseVec, Error> {
    let q = Qsl2::new(r)?;
    let ctx = q.ctx;
    let (ri, d) = (r as i64, q.dim());
    let mut acc = Vec::new();
    for a in 0..ri {
        for b in 0..ri {
            let pre = &(&ctx.curly(1).pow(a + b)? * &(&ctx.qfact(a) * &ctx.qfact(b)).inv()?) * &ctx.frac(1, ri);
            for c in 0..ri {
                for dd in 0..ri {
                    let e = (a * (a - 1) + b * (b - 1)) / 2 - 2 * c * dd - (b + c) * (b - dd);
                    let coef = &pre * &ctx.q_pow(e);
                    let left = q.fke(b as usize, c, a as usize);
                    // E^b K^d F^a = q^{-2ad} E^b F^a K^d
                    let right = q.index(b as usize, a as usize, dd as usize);
                    let coef = &coef * &ctx.q_pow(-2 * a * dd);
                    for (i, x) in left {
                        acc.push((i * d + right, &coef * &x));
                    }
                }
            }
        }
    }
    Ok(canonicalize(acc))
}

/// D(φ) = φ(M') M'', as a matrix from the dual basis to the basis.
pub fn drinfeld_map(h: &HopfData) -> ExactMatrix {
    let m = m_matrix(h);
    ExactMatrix::from_triplets(h.ctx, h.dim, h.dim, h.split2(&m).map(|(a, b, c)| (b, a, c.clone())))
}

pub fn drinfeld_map_inv(h: &HopfData) -> Result<ExactMatrix, Error> {
    inverse(&drinfeld_map(h))
}

/// Matrix of the bilinear form (x, y) ↦ λ(xy).
pub fn lambda_form(h: &HopfData) -> ExactMatrix {
    let rows = crate::par::map_range(h.dim, |s| {
        canonicalize(
            (0..h.dim)
                .map(|t| (t, h.lambda_of(&h.mul_basis(s, t))))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        )
    });
    ExactMatrix::from_rows(h.ctx, h.dim, rows)
}

fn antipode_power(h: &HopfData, k: i32, v: &SparseVec) -> SparseVec {
    let mut w = v.clone();
    for _ in 0..k.unsigned_abs() {
        w = if k > 0 { h.antipode_of(&w) } else { h.antipode_inv_of(&w) };
    }
    w
}

/// x ↦ ζ^-1 λ(S^-1(x) S(R') S^k(M'') S(u)^-1 R'') λ(M' ·)
fn drinfeld_inv_formula(h: &HopfData, zeta: &CycloNum, k: i32) -> Result<ExactMatrix, Error> {
    let d = h.dim;
    let su = h.antipode_of(&drinfeld_element(h));
    let su_inv = h.inverse_element(&su).ok_or(Error::Singular { rank: 0, size: d })?;
    let r_terms: Vec<(usize, usize, CycloNum)> = h.split2(&h.r_matrix).map(|(a, b, c)| (a, b, c.clone())).collect();
    let tails: Vec<SparseVec> = r_terms.iter().map(|(_, b, _)| h.mul(&su_inv, &h.basis(*b))).collect();
    let heads: Vec<SparseVec> = r_terms.iter().map(|(a, _, _)| h.antipode_of(&h.basis(*a))).collect();
    let y_cols = crate::par::map_range(d, |b| {
        let m2 = antipode_power(h, k, &h.basis(b));
        let mut acc = Vec::new();
        for (j, (_, _, c)) in r_terms.iter().enumerate() {
            let t = h.mul(&h.mul(&heads[j], &m2), &tails[j]);
            acc.extend(t.into_iter().map(|(i, x)| (i, &x * c)));
        }
        canonicalize(acc)
    });
    let y = ExactMatrix::from_cols(h.ctx, d, y_cols);
    let lam = lambda_form(h);
    let p = h.antipode_inv_matrix().transpose().mul(&lam).mul(&y);
    let m = m_matrix(h);
    let mm = ExactMatrix::from_triplets(h.ctx, d, d, h.split2(&m).map(|(a, b, c)| (a, b, c.clone())));
    Ok(lam.transpose().mul(&mm).mul(&p.transpose()).scale(&zeta.inv()?))
}

/// The inverse of the Drinfeld map from the integral and R alone:
/// x ↦ ζ^-1 λ(S^-1(x) S(R') S^-2(M'') S(u)^-1 R'') λ(M' ·).
///
/// With S^2(M'') in place of S^-2(M'') the same expression equals D^-1
/// precomposed with x ↦ g x g^-1, see `drinfeld_map_inv_with_s2`.
pub fn drinfeld_map_inv_closed_form(h: &HopfData, zeta: &CycloNum) -> Result<ExactMatrix, Error> {
    drinfeld_inv_formula(h, zeta, -2)
}

/// The closed form with S^2(M'') in the middle slot.
pub fn drinfeld_map_inv_with_s2(h: &HopfData, zeta: &CycloNum) -> Result<ExactMatrix, Error> {
    drinfeld_inv_formula(h, zeta, 2)
}

/// Integral identities: right integral, two-sided cointegral, normalization
/// and the symmetrised trace property.
pub fn integral_checks(h: &HopfData) -> Vec<AxiomCheck> {
    let d = h.dim;
    let label = |x: usize| h.basis_labels[x].clone();
    let first = |f: &(dyn Fn(usize) -> Option<String> + Sync)| -> Option<String> {
        crate::par::map_range(d, f).into_iter().flatten().next()
    };
    let mk = |name, fail: Option<String>| AxiomCheck { name, passed: fail.is_none(), detail: fail.unwrap_or_default() };
    let lam = &h.integral_lambda;
    let co = &h.cointegral;
    let mut out = Vec::new();
    out.push(mk(
        "right integral",
        first(&|x| {
            let mut acc = Vec::new();
            for (a, b, c) in h.split2(&h.comult.row_sparse(x)) {
                let l = h.lambda_of(&h.basis(a));
                if !l.is_zero() {
                    acc.push((b, &l * c));
                }
            }
            let target: SparseVec =
                h.unit.iter().map(|(i, c)| (*i, c * &h.lambda_of(&h.basis(x)))).collect();
            (canonicalize(acc) != canonicalize(target)).then(|| format!("x={}", label(x)))
        }),
    ));
    out.push(mk(
        "two-sided cointegral",
        first(&|x| {
            let b = h.basis(x);
            let e = h.counit_of(&b);
            let target = canonicalize(co.iter().map(|(i, c)| (*i, c * &e)).collect());
            (h.mul(&b, co) != target || h.mul(co, &b) != target).then(|| format!("x={}", label(x)))
        }),
    ));
    out.push(mk(
        "integral normalized against cointegral",
        (!h.pair(lam, co).is_one()).then(|| format!("lambda(cointegral) = {}", h.pair(lam, co))),
    ));
    out.push(mk(
        "symmetrised trace property",
        crate::par::map_range(d * d, |k| {
            let (x, y) = (k / d, k % d);
            let lhs = h.lambda_of(&h.mul_basis(x, y));
            let s2y = h.antipode_of(&h.antipode_of(&h.basis(y)));
            let rhs = h.lambda_of(&h.mul(&s2y, &h.basis(x)));
            (lhs != rhs).then(|| format!("x={} y={}", label(x), label(y)))
        })
        .into_iter()
        .flatten()
        .next(),
    ));
    out
}

/// Which square root of ζ to use for 𝒟.
#[derive(Clone, Debug)]
pub enum SqrtChoice {
    /// The root with positive real part in the standard embedding (positive
    /// imaginary part if the real part vanishes).
    Positive,
    Negative,
    Explicit(CycloNum),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizationParams {
    pub delta_minus: CycloNum,
    pub delta_plus: CycloNum,
    pub zeta: CycloNum,
    pub script_d: CycloNum,
    pub small_delta: CycloNum,
}

/// √p for a prime p, when it lies in the field.
fn sqrt_prime(ctx: &'static FieldCtx, p: u64) -> Option<CycloNum> {
    let n = ctx.n() as u64;
    if p == 2 {
        if n % 8 != 0 {
            return None;
        }
        // ζ_8 + ζ_8^-1
        let k = (n / 8) as i64;
        return Some(&ctx.zeta_pow(k) + &ctx.zeta_pow(-k));
    }
    if n % p != 0 {
        return None;
    }
    let step = (n / p) as i64;
    let mut g = ctx.zero();
    for k in 0..p as i64 {
        g += &ctx.zeta_pow(step * ((k * k) % p as i64));
    }
    if p % 4 == 1 {
        Some(g)
    } else if n % 4 == 0 {
        Some(&(-ctx.i()) * &g)
    } else {
        None
    }
}

fn sqrt_positive_integer(ctx: &'static FieldCtx, n: &BigInt) -> Option<CycloNum> {
    let mut rest = n.clone();
    let mut out = ctx.one();
    let mut p = BigInt::from(2);
    while &p * &p <= rest {
        let mut e = 0;
        while (&rest % &p).is_zero() {
            rest /= &p;
            e += 1;
        }
        if e > 0 {
            let pu: u64 = p.clone().try_into().ok()?;
            out = &out * &ctx.int(pu.pow(e / 2) as i64);
            if e % 2 == 1 {
                out = &out * &sqrt_prime(ctx, pu)?;
            }
        }
        p += 1;
    }
    if rest > BigInt::from(1) {
        let s = rest.sqrt();
        if &s * &s == rest {
            let su: i64 = s.try_into().ok()?;
            out = &out * &ctx.int(su);
        } else {
            out = &out * &sqrt_prime(ctx, rest.try_into().ok()?)?;
        }
    }
    Some(out)
}

/// A square root of a rational number inside the field, if one exists.
pub fn sqrt_rational(x: &CycloNum) -> Option<CycloNum> {
    let ctx = x.ctx();
    if !x.is_rational() {
        return None;
    }
    let c = x.coeff(0);
    if c.is_zero() {
        return Some(ctx.zero());
    }
    let num = c.numer().abs();
    let den = c.denom().clone();
    let root = &sqrt_positive_integer(ctx, &(&num * &den))? * &CycloNum::from_rational(ctx, &num_rational::BigRational::new(1.into(), den));
    if c.is_negative() {
        Some(&root * &ctx.i())
    } else {
        Some(root)
    }
}

fn positive_root(x: &CycloNum) -> Option<CycloNum> {
    let s = sqrt_rational(x)?;
    let (re, im) = s.embed_complex();
    let positive = if re.abs() > 1e-9 { re > 0.0 } else { im > 0.0 };
    Some(if positive { s } else { -s })
}

pub fn stabilization_params(h: &HopfData, choice: SqrtChoice) -> Result<StabilizationParams, Error> {
    let delta_minus = h.lambda_of(&h.ribbon_v);
    let delta_plus = h.lambda_of(&h.ribbon_v_inv);
    let zeta = &delta_minus * &delta_plus;
    if zeta.is_zero() {
        return Err(Error::Modularity("the product of the stabilization parameters vanishes".into()));
    }
    let d = match choice {
        SqrtChoice::Explicit(d) => {
            if &d * &d != zeta {
                return Err(Error::Invalid(format!("{d} is not a square root of {zeta}")));
            }
            d
        }
        SqrtChoice::Positive | SqrtChoice::Negative => {
            let p = positive_root(&zeta)
                .ok_or_else(|| Error::Invalid(format!("no square root of {zeta} found in the field")))?;
            if matches!(choice, SqrtChoice::Negative) {
                -p
            } else {
                p
            }
        }
    };
    let delta = &delta_plus * &d.inv()?;
    debug_assert_eq!(delta, &d * &delta_minus.inv()?);
    Ok(StabilizationParams { delta_minus, delta_plus, zeta, script_d: d, small_delta: delta })
}
