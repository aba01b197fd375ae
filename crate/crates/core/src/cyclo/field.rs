use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use super::num::CycloNum;
use crate::Error;

/// The field Q(z) with z a primitive 4r-th root of unity, r odd.
///
/// Contexts are interned per `r` and live for the whole process, so numbers can
/// carry a plain `&'static` reference.
#[derive(Debug)]
pub struct FieldCtx {
    r: u32,
    n: u32,
    phi: usize,
    /// Coefficients of the cyclotomic polynomial, lowest degree first.
    phi_poly: Vec<i64>,
    /// `zpow[k]` is z^k written in the power basis, for 0 <= k < n.
    zpow: Vec<Vec<i64>>,
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.r == other.r
    }
}

impl Eq for FieldCtx {}

static REGISTRY: OnceLock<Mutex<HashMap<u32, &'static FieldCtx>>> = OnceLock::new();

/// Builds (or fetches) the field context for an odd `r >= 3`.
pub fn field_init(r: u32) -> Result<&'static FieldCtx, Error> {
    if r < 3 || r % 2 == 0 {
        return Err(Error::InvalidOrder(r));
    }
    let reg = REGISTRY.get_or_init(|| Mutex::new(HashMap::new()));
    let mut map = reg.lock().expect("field registry poisoned");
    if let Some(ctx) = map.get(&r) {
        return Ok(ctx);
    }
    let ctx: &'static FieldCtx = Box::leak(Box::new(FieldCtx::build(r)));
    map.insert(r, ctx);
    Ok(ctx)
}

impl FieldCtx {
    fn build(r: u32) -> FieldCtx {
        let n = 4 * r;
        let phi_poly = cyclotomic_poly(n as usize);
        let phi = phi_poly.len() - 1;
        debug_assert_eq!(phi, euler_phi(n as u64) as usize);
        let mut zpow = Vec::with_capacity(n as usize);
        let mut cur = vec![0i64; phi];
        cur[0] = 1;
        for _ in 0..n {
            zpow.push(cur.clone());
            // multiply by z: shift, then fold the overflow through the monic relation
            let top = cur[phi - 1];
            for j in (1..phi).rev() {
                cur[j] = cur[j - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for j in 0..phi {
                    cur[j] -= top * phi_poly[j];
                }
            }
        }
        FieldCtx { r, n, phi, phi_poly, zpow }
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    /// Order of the root of unity z, namely 4r.
    pub fn n(&self) -> u32 {
        self.n
    }

    /// Degree of the field over Q.
    pub fn phi_n(&self) -> usize {
        self.phi
    }

    pub fn phi_poly(&self) -> &[i64] {
        &self.phi_poly
    }

    pub(crate) fn zpow_table(&self, k: usize) -> &[i64] {
        &self.zpow[k]
    }

    pub fn zero(&'static self) -> CycloNum {
        CycloNum::zero(self)
    }

    pub fn one(&'static self) -> CycloNum {
        CycloNum::one(self)
    }

    pub fn int(&'static self, k: i64) -> CycloNum {
        CycloNum::from_int(self, k)
    }

    pub fn frac(&'static self, a: i64, b: i64) -> CycloNum {
        CycloNum::from_frac(self, a, b)
    }

    /// z^k for any integer k.
    pub fn zeta_pow(&'static self, k: i64) -> CycloNum {
        let k = k.rem_euclid(self.n as i64) as usize;
        CycloNum::from_int_coeffs(self, &self.zpow[k])
    }

    /// q^k where q = z^4 = exp(2 pi i / r).
    pub fn q_pow(&'static self, k: i64) -> CycloNum {
        self.zeta_pow(4 * k)
    }

    pub fn q(&'static self) -> CycloNum {
        self.q_pow(1)
    }

    /// i^k where i = z^r.
    pub fn i_pow(&'static self, k: i64) -> CycloNum {
        self.zeta_pow(self.r as i64 * k)
    }

    pub fn i(&'static self) -> CycloNum {
        self.i_pow(1)
    }

    /// The positive square root of r, built from the quadratic Gauss sum.
    pub fn sqrt_r(&'static self) -> CycloNum {
        let r = self.r as i64;
        let mut g = self.zero();
        for k in 0..r {
            g += &self.q_pow(k * k);
        }
        if r % 4 == 1 {
            g
        } else {
            -(&self.i() * &g)
        }
    }

    /// {k} = q^k - q^-k.
    pub fn curly(&'static self, k: i64) -> CycloNum {
        &self.q_pow(k) - &self.q_pow(-k)
    }

    /// Quantum integer [k] = {k}/{1}.
    pub fn qint(&'static self, k: i64) -> CycloNum {
        &self.curly(k) * &self.curly(1).inv().expect("{1} is nonzero")
    }

    /// Quantum factorial [k]!.
    pub fn qfact(&'static self, k: i64) -> CycloNum {
        let mut acc = self.one();
        for j in 1..=k {
            acc = &acc * &self.qint(j);
        }
        acc
    }
}

pub fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Integer coefficients of the n-th cyclotomic polynomial, lowest first.
/// Obtained as (x^n - 1) divided by every Phi_d with d a proper divisor of n.
pub fn cyclotomic_poly(n: usize) -> Vec<i64> {
    let mut p = vec![0i64; n + 1];
    p[0] = -1;
    p[n] = 1;
    for d in 1..n {
        if n % d == 0 {
            let q = cyclotomic_poly(d);
            let (quot, rem) = div_monic(&p, &q);
            assert!(rem.iter().all(|&c| c == 0), "cyclotomic division left a remainder");
            p = quot;
        }
    }
    p
}

/// Division by a monic integer polynomial. Both lowest degree first.
pub fn div_monic(a: &[i64], b: &[i64]) -> (Vec<i64>, Vec<i64>) {
    let db = b.len() - 1;
    assert_eq!(b[db], 1);
    let mut rem = a.to_vec();
    if a.len() <= db {
        return (vec![0], rem);
    }
    let mut quot = vec![0i64; a.len() - db];
    for k in (0..quot.len()).rev() {
        let c = rem[k + db];
        quot[k] = c;
        if c != 0 {
            for j in 0..=db {
                rem[k + j] -= c * b[j];
            }
        }
    }
    rem.truncate(db.max(1));
    (quot, rem)
}
