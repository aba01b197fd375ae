use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use smallvec::SmallVec;

use super::field::FieldCtx;
use crate::Error;

type SmallCoeffs = SmallVec<[i64; 8]>;

/// An element of Q(z), z = exp(2 pi i / 4r), in the power basis z^0..z^(phi-1).
///
/// Stored as integer numerators over one positive common denominator with the
/// overall gcd removed. Values whose parts fit in i64 use the small form, all
/// others the big form, so two equal values always have identical storage.
#[derive(Clone)]
pub struct CycloNum {
    ctx: &'static FieldCtx,
    repr: Repr,
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Small { num: SmallCoeffs, den: i64 },
    Big { num: Vec<BigInt>, den: BigInt },
}

fn fits(x: i128) -> bool {
    x > i64::MIN as i128 && x <= i64::MAX as i128
}

impl CycloNum {
    pub fn zero(ctx: &'static FieldCtx) -> Self {
        let num = SmallVec::from_elem(0, ctx.phi_n());
        CycloNum { ctx, repr: Repr::Small { num, den: 1 } }
    }

    pub fn one(ctx: &'static FieldCtx) -> Self {
        Self::from_int(ctx, 1)
    }

    pub fn from_int(ctx: &'static FieldCtx, k: i64) -> Self {
        Self::from_frac(ctx, k, 1)
    }

    pub fn from_frac(ctx: &'static FieldCtx, a: i64, b: i64) -> Self {
        assert!(b != 0, "zero denominator");
        let mut num = vec![0i128; ctx.phi_n()];
        num[0] = a as i128;
        Self::from_i128(ctx, num, b as i128)
    }

    pub fn from_rational(ctx: &'static FieldCtx, c: &BigRational) -> Self {
        let mut coeffs = vec![BigRational::zero(); ctx.phi_n()];
        coeffs[0] = c.clone();
        Self::from_coeffs(ctx, &coeffs)
    }

    pub(crate) fn from_int_coeffs(ctx: &'static FieldCtx, c: &[i64]) -> Self {
        let num: Vec<i128> = c.iter().map(|&x| x as i128).collect();
        Self::from_i128(ctx, num, 1)
    }

    /// Builds a number from rational coordinates in the power basis. Extra
    /// coordinates beyond the field degree are folded in through z^k.
    pub fn from_coeffs(ctx: &'static FieldCtx, coeffs: &[BigRational]) -> Self {
        let mut den = BigInt::one();
        for c in coeffs {
            den = den.lcm(c.denom());
        }
        let mut num = vec![BigInt::zero(); ctx.phi_n()];
        for (k, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let scaled = c.numer() * (&den / c.denom());
            if k < ctx.phi_n() {
                num[k] += scaled;
            } else {
                let row = ctx.zpow_table(k % ctx.n() as usize);
                for (j, &t) in row.iter().enumerate() {
                    if t != 0 {
                        num[j] += &scaled * t;
                    }
                }
            }
        }
        Self::from_big(ctx, num, den)
    }

    fn from_i128(ctx: &'static FieldCtx, mut num: Vec<i128>, mut den: i128) -> Self {
        let mut g = den.abs();
        for &x in &num {
            if g == 1 {
                break;
            }
            g = g.gcd(&x);
        }
        if den < 0 {
            g = -g;
        }
        if g != 1 {
            for x in num.iter_mut() {
                *x /= g;
            }
            den /= g;
        }
        if num.iter().all(|&x| x == 0) {
            den = 1;
        }
        if fits(den) && num.iter().all(|&x| fits(x)) {
            let num: SmallCoeffs = num.iter().map(|&x| x as i64).collect();
            CycloNum { ctx, repr: Repr::Small { num, den: den as i64 } }
        } else {
            let num = num.into_iter().map(BigInt::from).collect();
            Self::from_big(ctx, num, BigInt::from(den))
        }
    }

    fn from_big(ctx: &'static FieldCtx, mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        let mut g = den.abs();
        for x in &num {
            if g.is_one() {
                break;
            }
            g = g.gcd(x);
        }
        if den.is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for x in num.iter_mut() {
                *x = &*x / &g;
            }
            den = &den / &g;
        }
        if num.iter().all(|x| x.is_zero()) {
            den = BigInt::one();
        }
        let small = den.to_i64().filter(|&d| d != i64::MIN).and_then(|d| {
            let mut out = SmallCoeffs::with_capacity(num.len());
            for x in &num {
                out.push(x.to_i64().filter(|&v| v != i64::MIN)?);
            }
            Some((out, d))
        });
        match small {
            Some((num, den)) => CycloNum { ctx, repr: Repr::Small { num, den } },
            None => CycloNum { ctx, repr: Repr::Big { num, den } },
        }
    }

    pub fn ctx(&self) -> &'static FieldCtx {
        self.ctx
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Small { num, .. } => num.iter().all(|&x| x == 0),
            Repr::Big { num, .. } => num.iter().all(|x| x.is_zero()),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.repr {
            Repr::Small { num, den } => *den == 1 && num[0] == 1 && num[1..].iter().all(|&x| x == 0),
            Repr::Big { .. } => false,
        }
    }

    /// True if the value lies in Q.
    pub fn is_rational(&self) -> bool {
        match &self.repr {
            Repr::Small { num, .. } => num[1..].iter().all(|&x| x == 0),
            Repr::Big { num, .. } => num[1..].iter().all(|x| x.is_zero()),
        }
    }

    /// Rational coordinates in the power basis, in lowest terms.
    pub fn coeffs(&self) -> Vec<BigRational> {
        match &self.repr {
            Repr::Small { num, den } => num
                .iter()
                .map(|&x| BigRational::new(BigInt::from(x), BigInt::from(*den)))
                .collect(),
            Repr::Big { num, den } => num.iter().map(|x| BigRational::new(x.clone(), den.clone())).collect(),
        }
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        match &self.repr {
            Repr::Small { num, den } => BigRational::new(BigInt::from(num[k]), BigInt::from(*den)),
            Repr::Big { num, den } => BigRational::new(num[k].clone(), den.clone()),
        }
    }

    fn big_parts(&self) -> (Vec<BigInt>, BigInt) {
        match &self.repr {
            Repr::Small { num, den } => (num.iter().map(|&x| BigInt::from(x)).collect(), BigInt::from(*den)),
            Repr::Big { num, den } => (num.clone(), den.clone()),
        }
    }

    fn add_signed(&self, other: &CycloNum, negate: bool) -> CycloNum {
        debug_assert_eq!(self.ctx.r(), other.ctx.r(), "mixed fields");
        if let (Repr::Small { num: a, den: da }, Repr::Small { num: b, den: db }) = (&self.repr, &other.repr) {
            if let Some(out) = small_add(a, *da, b, *db, negate) {
                return Self::from_i128(self.ctx, out.0, out.1);
            }
        }
        let (a, da) = self.big_parts();
        let (b, db) = other.big_parts();
        let l = da.lcm(&db);
        let fa = &l / &da;
        let fb = &l / &db;
        let num = a
            .iter()
            .zip(b.iter())
            .map(|(x, y)| if negate { x * &fa - y * &fb } else { x * &fa + y * &fb })
            .collect();
        Self::from_big(self.ctx, num, l)
    }

    fn mul_impl(&self, other: &CycloNum) -> CycloNum {
        debug_assert_eq!(self.ctx.r(), other.ctx.r(), "mixed fields");
        let ctx = self.ctx;
        if let (Repr::Small { num: a, den: da }, Repr::Small { num: b, den: db }) = (&self.repr, &other.repr) {
            if let Some(out) = small_mul(ctx, a, *da, b, *db) {
                return Self::from_i128(ctx, out.0, out.1);
            }
        }
        let (a, da) = self.big_parts();
        let (b, db) = other.big_parts();
        let phi = ctx.phi_n();
        let mut prod = vec![BigInt::zero(); 2 * phi - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        let mut num: Vec<BigInt> = prod[..phi].to_vec();
        for (k, c) in prod.iter().enumerate().skip(phi) {
            if c.is_zero() {
                continue;
            }
            for (j, &t) in ctx.zpow_table(k).iter().enumerate() {
                if t != 0 {
                    num[j] += c * t;
                }
            }
        }
        Self::from_big(ctx, num, da * db)
    }

    /// Multiplies by a rational integer.
    pub fn scale_int(&self, k: i64) -> CycloNum {
        self * &CycloNum::from_int(self.ctx, k)
    }

    /// Image under the Galois automorphism z -> z^k, gcd(k, 4r) = 1.
    pub fn galois(&self, k: u32) -> CycloNum {
        let ctx = self.ctx;
        let n = ctx.n() as usize;
        let (a, den) = self.big_parts();
        let mut num = vec![BigInt::zero(); ctx.phi_n()];
        for (j, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let row = ctx.zpow_table((j * k as usize) % n);
            for (t, &c) in row.iter().enumerate() {
                if c != 0 {
                    num[t] += x * c;
                }
            }
        }
        Self::from_big(ctx, num, den)
    }

    /// Multiplicative inverse, via the product of the nontrivial conjugates
    /// divided by the (rational) norm.
    pub fn inv(&self) -> Result<CycloNum, Error> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let ctx = self.ctx;
        let n = ctx.n();
        let mut conj = CycloNum::one(ctx);
        for k in 2..n {
            if k.gcd(&n) == 1 {
                conj = &conj * &self.galois(k);
            }
        }
        let norm = self * &conj;
        debug_assert!(norm.is_rational());
        let c = norm.coeff(0);
        let inv_norm = CycloNum::from_rational(ctx, &c.recip());
        Ok(&conj * &inv_norm)
    }

    pub fn pow(&self, e: i64) -> Result<CycloNum, Error> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = CycloNum::one(self.ctx);
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        Ok(acc)
    }

    /// Numerical value under z -> exp(2 pi i / 4r). For reports and sign
    /// checks only; never used to decide equality.
    pub fn embed_complex(&self) -> (f64, f64) {
        let n = self.ctx.n() as f64;
        let (mut re, mut im) = (0.0, 0.0);
        for (k, c) in self.coeffs().iter().enumerate() {
            let v = c.to_f64().unwrap_or(f64::NAN);
            if v == 0.0 {
                continue;
            }
            let ang = 2.0 * std::f64::consts::PI * k as f64 / n;
            re += v * ang.cos();
            im += v * ang.sin();
        }
        (re, im)
    }

    /// `embed_complex` rendered with a fixed number of digits.
    pub fn format_approx(&self, digits: usize) -> String {
        let (re, im) = self.embed_complex();
        let re = if re.abs() < 0.5 * 10f64.powi(-(digits as i32)) { 0.0 } else { re };
        let im = if im.abs() < 0.5 * 10f64.powi(-(digits as i32)) { 0.0 } else { im };
        if im == 0.0 {
            format!("{re:.digits$}")
        } else if im < 0.0 {
            format!("{re:.digits$} - {:.digits$}i", -im)
        } else {
            format!("{re:.digits$} + {im:.digits$}i")
        }
    }

    fn cmp_key(&self) -> (Vec<BigInt>, BigInt) {
        self.big_parts()
    }
}

fn small_add(a: &[i64], da: i64, b: &[i64], db: i64, negate: bool) -> Option<(Vec<i128>, i128)> {
    let (da, db) = (da as i128, db as i128);
    let (fa, fb, l) = if da == db {
        (1, 1, da)
    } else {
        let g = da.gcd(&db);
        (db / g, da / g, (da / g).checked_mul(db)?)
    };
    let mut out = Vec::with_capacity(a.len());
    for (&x, &y) in a.iter().zip(b.iter()) {
        let x = (x as i128).checked_mul(fa)?;
        let y = (y as i128).checked_mul(fb)?;
        out.push(if negate { x.checked_sub(y)? } else { x.checked_add(y)? });
    }
    Some((out, l))
}

fn small_mul(ctx: &FieldCtx, a: &[i64], da: i64, b: &[i64], db: i64) -> Option<(Vec<i128>, i128)> {
    let phi = a.len();
    let mut prod = [0i128; 64];
    let prod = if 2 * phi - 1 <= 64 { &mut prod[..2 * phi - 1] } else { return None };
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            if y != 0 {
                prod[i + j] = prod[i + j].checked_add((x as i128).checked_mul(y as i128)?)?;
            }
        }
    }
    let mut num = prod[..phi].to_vec();
    for k in phi..prod.len() {
        let c = prod[k];
        if c == 0 {
            continue;
        }
        for (j, &t) in ctx.zpow_table(k).iter().enumerate() {
            if t != 0 {
                num[j] = num[j].checked_add(c.checked_mul(t as i128)?)?;
            }
        }
    }
    Some((num, (da as i128).checked_mul(db as i128)?))
}

impl PartialEq for CycloNum {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.r() == other.ctx.r() && self.repr == other.repr
    }
}

impl Eq for CycloNum {}

impl Hash for CycloNum {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ctx.r().hash(state);
        self.repr.hash(state);
    }
}

/// A total order with no arithmetic meaning, used for canonical sorting.
impl Ord for CycloNum {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_key().cmp(&other.cmp_key())
    }
}

impl PartialOrd for CycloNum {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl<'a> Add<&'a CycloNum> for &'a CycloNum {
    type Output = CycloNum;
    fn add(self, rhs: &CycloNum) -> CycloNum {
        self.add_signed(rhs, false)
    }
}

impl<'a> Sub<&'a CycloNum> for &'a CycloNum {
    type Output = CycloNum;
    fn sub(self, rhs: &CycloNum) -> CycloNum {
        self.add_signed(rhs, true)
    }
}

impl<'a> Mul<&'a CycloNum> for &'a CycloNum {
    type Output = CycloNum;
    fn mul(self, rhs: &CycloNum) -> CycloNum {
        self.mul_impl(rhs)
    }
}

impl Add for CycloNum {
    type Output = CycloNum;
    fn add(self, rhs: CycloNum) -> CycloNum {
        self.add_signed(&rhs, false)
    }
}

impl Sub for CycloNum {
    type Output = CycloNum;
    fn sub(self, rhs: CycloNum) -> CycloNum {
        self.add_signed(&rhs, true)
    }
}

impl Mul for CycloNum {
    type Output = CycloNum;
    fn mul(self, rhs: CycloNum) -> CycloNum {
        self.mul_impl(&rhs)
    }
}

impl AddAssign<&CycloNum> for CycloNum {
    fn add_assign(&mut self, rhs: &CycloNum) {
        *self = self.add_signed(rhs, false);
    }
}

impl SubAssign<&CycloNum> for CycloNum {
    fn sub_assign(&mut self, rhs: &CycloNum) {
        *self = self.add_signed(rhs, true);
    }
}

impl MulAssign<&CycloNum> for CycloNum {
    fn mul_assign(&mut self, rhs: &CycloNum) {
        *self = self.mul_impl(rhs);
    }
}

impl Neg for &CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        let repr = match &self.repr {
            Repr::Small { num, den } => Repr::Small { num: num.iter().map(|&x| -x).collect(), den: *den },
            Repr::Big { num, den } => Repr::Big { num: num.iter().map(|x| -x).collect(), den: den.clone() },
        };
        CycloNum { ctx: self.ctx, repr }
    }
}

impl Neg for CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::super::field::field_init;
    use super::*;

    #[test]
    fn cyclotomic_relation_r3() {
        let ctx = field_init(3).unwrap();
        let s = &ctx.q() + &ctx.q_pow(2);
        assert_eq!(s, ctx.int(-1));
    }

    #[test]
    fn inverse_of_i() {
        let ctx = field_init(3).unwrap();
        assert_eq!(ctx.i().inv().unwrap(), -ctx.i());
    }

    #[test]
    fn inverse_of_zero_fails() {
        let ctx = field_init(5).unwrap();
        assert!(matches!(ctx.zero().inv(), Err(Error::DivisionByZero)));
    }

    #[test]
    fn curly_one_squared_r3() {
        let ctx = field_init(3).unwrap();
        let c = ctx.curly(1);
        // q - q^-1 = i*sqrt(3) when q = exp(2 pi i/3)
        assert_eq!(&c * &c, ctx.int(-3));
        assert_eq!(c, &ctx.i() * &ctx.sqrt_r());
    }

    #[test]
    fn big_path_round_trip() {
        let ctx = field_init(3).unwrap();
        let x = &ctx.frac(1, 1 << 40) + &ctx.q();
        let mut acc = ctx.one();
        for _ in 0..6 {
            acc = &acc * &x;
        }
        let back = &acc * &x.pow(-6).unwrap();
        assert!(back.is_one());
    }

    #[test]
    fn galois_fixes_rationals() {
        let ctx = field_init(7).unwrap();
        let x = ctx.frac(-5, 3);
        assert_eq!(x.galois(5), x);
        assert_eq!(ctx.i().galois(3), -ctx.i());
    }

    #[test]
    fn embedding_of_q() {
        for r in [3u32, 5, 7] {
            let ctx = field_init(r).unwrap();
            let (re, im) = ctx.q().embed_complex();
            let ang = 2.0 * std::f64::consts::PI / r as f64;
            assert!((re - ang.cos()).abs() < 1e-12 && (im - ang.sin()).abs() < 1e-12);
        }
    }
}
