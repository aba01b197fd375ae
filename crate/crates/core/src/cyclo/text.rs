//! Canonical text form of field elements: a polynomial in `z` with rational
//! coefficients, highest power first, e.g. `1/3*z^2 - 2`. Zero prints as `0`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::field::FieldCtx;
use super::num::CycloNum;
use crate::Error;

fn fmt_rational(c: &BigRational) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coeffs = self.coeffs();
        let mut first = true;
        for (k, c) in coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let zpart = match k {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{k}"),
            };
            if k == 0 {
                write!(f, "{}", fmt_rational(&mag))?;
            } else if mag.is_one() {
                write!(f, "{zpart}")?;
            } else {
                write!(f, "{}*{zpart}", fmt_rational(&mag))?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => {
            let a: BigInt = a.trim().parse().ok()?;
            let b: BigInt = b.trim().parse().ok()?;
            if b.is_zero() {
                return None;
            }
            Some(BigRational::new(a, b))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

fn parse_term(t: &str) -> Option<(BigRational, usize)> {
    let t = t.trim();
    if t.is_empty() {
        return None;
    }
    let (coef, zpart) = match t.find('z') {
        None => return Some((parse_rational(t)?, 0)),
        Some(pos) => {
            let head = t[..pos].trim();
            let coef = if head.is_empty() {
                BigRational::one()
            } else {
                parse_rational(head.strip_suffix('*')?)?
            };
            (coef, t[pos + 1..].trim())
        }
    };
    let k = if zpart.is_empty() {
        1
    } else {
        zpart.strip_prefix('^')?.trim().parse().ok()?
    };
    Some((coef, k))
}

/// Parses the canonical form. Powers of z at or above the field degree are
/// reduced, so any integer polynomial in z is accepted.
pub fn parse_cyclo(ctx: &'static FieldCtx, text: &str) -> Result<CycloNum, Error> {
    let err = || Error::Parse { line: 0, col: 0, msg: format!("bad field element `{text}`") };
    let s = text.trim();
    if s.is_empty() {
        return Err(err());
    }
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut cur = String::new();
    let mut neg = false;
    for (idx, ch) in s.char_indices() {
        if (ch == '+' || ch == '-') && !cur.trim().is_empty() && !cur.trim_end().ends_with('*') && !cur.trim_end().ends_with('/') {
            terms.push((neg, std::mem::take(&mut cur)));
            neg = ch == '-';
        } else if (ch == '+' || ch == '-') && cur.trim().is_empty() && idx < s.len() {
            if ch == '-' {
                neg = !neg;
            }
        } else {
            cur.push(ch);
        }
    }
    terms.push((neg, cur));
    let mut coeffs: Vec<BigRational> = Vec::new();
    for (neg, t) in terms {
        let (mut c, k) = parse_term(&t).ok_or_else(err)?;
        if neg {
            c = -c;
        }
        if coeffs.len() <= k {
            coeffs.resize(k + 1, BigRational::zero());
        }
        coeffs[k] += c;
    }
    Ok(CycloNum::from_coeffs(ctx, &coeffs))
}

#[cfg(test)]
mod tests {
    use super::super::field::field_init;
    use super::*;

    #[test]
    fn prints_canonical() {
        let ctx = field_init(3).unwrap();
        let x = &(&ctx.frac(1, 3) * &ctx.zeta_pow(2)) - &ctx.int(2);
        assert_eq!(x.to_string(), "1/3*z^2 - 2");
        assert_eq!(ctx.zero().to_string(), "0");
        assert_eq!((-ctx.zeta_pow(1)).to_string(), "-z");
        assert_eq!(ctx.zeta_pow(3).to_string(), "z^3");
    }

    #[test]
    fn parses_what_it_prints() {
        let ctx = field_init(5).unwrap();
        for s in ["1/3*z^2 - 2", "0", "-z", "z^7 + 5/2*z - 1/9", "-3/4"] {
            let x = parse_cyclo(ctx, s).unwrap();
            assert_eq!(x.to_string(), s);
        }
    }

    #[test]
    fn reduces_high_powers() {
        let ctx = field_init(3).unwrap();
        // z^12 = 1
        assert!(parse_cyclo(ctx, "z^12").unwrap().is_one());
        assert_eq!(parse_cyclo(ctx, "z^4 + z^8").unwrap(), ctx.int(-1));
    }

    #[test]
    fn rejects_garbage() {
        let ctx = field_init(3).unwrap();
        assert!(parse_cyclo(ctx, "z^").is_err());
        assert!(parse_cyclo(ctx, "1/0").is_err());
        assert!(parse_cyclo(ctx, "").is_err());
        assert!(parse_cyclo(ctx, "x").is_err());
    }
}
