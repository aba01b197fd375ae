use crate::cyclo::{min_poly, proportional, ExactMatrix, Poly};
use crate::error::Error;

#[derive(Clone, Debug)]
pub struct OrderReport {
    pub min_poly: Poly,
    /// gcd(p, p') is nonconstant.
    pub repeated_root: bool,
    /// Every root of the squarefree part is a root of unity of order
    /// dividing the field's 4r.
    pub roots_of_unity: bool,
    /// Smallest k ≤ bound with A^k a scalar multiple of the identity.
    pub first_scalar_power: Option<usize>,
    pub bound: usize,
}

impl OrderReport {
    /// A non-diagonalizable matrix has infinite order in PGL.
    pub fn certifies_infinite_order(&self) -> bool {
        self.repeated_root && self.first_scalar_power.is_none()
    }
}

/// Exact minimal polynomial, repeated-root test and a search for scalar
/// powers up to `bound`.
pub fn infinite_order_witness(a: &ExactMatrix, bound: usize) -> Result<OrderReport, Error> {
    if !a.is_square() {
        return Err(Error::Invalid("matrix is not square".into()));
    }
    let ctx = a.ctx();
    let mp = min_poly(a);
    if mp.coeffs().first().is_none_or(|c| c.is_zero()) {
        return Err(Error::Singular { rank: 0, size: a.rows() });
    }
    let g = mp.gcd(&mp.derivative());
    let repeated_root = g.degree().is_some_and(|d| d > 0);
    let (rad, _) = mp.div_rem(&g);
    let n = ctx.n() as usize;
    let mut xn = vec![ctx.zero(); n + 1];
    xn[0] = -ctx.one();
    xn[n] = ctx.one();
    let roots_of_unity = Poly::new(ctx, xn).div_rem(&rad).1.is_zero();
    let id = ExactMatrix::identity(ctx, a.rows());
    let mut power = id.clone();
    let mut first = None;
    for k in 1..=bound {
        power = power.mul(a);
        if proportional(&power, &id).scalar().is_some() {
            first = Some(k);
            break;
        }
    }
    Ok(OrderReport { min_poly: mp, repeated_root, roots_of_unity, first_scalar_power: first, bound })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::field_init;

    #[test]
    fn small_cases() {
        let ctx = field_init(3).unwrap();
        let r = infinite_order_witness(&ExactMatrix::identity(ctx, 3), 5).unwrap();
        assert!(!r.repeated_root);
        assert_eq!(r.first_scalar_power, Some(1));
        assert_eq!(r.min_poly, Poly::from_ints(ctx, &[-1, 1]));

        let j = ExactMatrix::from_dense(ctx, 2, &[vec![ctx.one(), ctx.one()], vec![ctx.zero(), ctx.one()]]);
        let r = infinite_order_witness(&j, 10).unwrap();
        assert!(r.repeated_root && r.roots_of_unity);
        assert!(r.certifies_infinite_order());

        // a diagonal matrix of 12th roots of unity has finite order
        let z = ctx.zeta_pow(1);
        let d = ExactMatrix::diagonal(ctx, &[ctx.one(), z.clone(), z.pow(5).unwrap()]);
        let r = infinite_order_witness(&d, 20).unwrap();
        assert!(!r.repeated_root && r.roots_of_unity);
        assert_eq!(r.first_scalar_power, Some(12));

        let two = ExactMatrix::diagonal(ctx, &[ctx.int(2), ctx.one()]);
        assert!(!infinite_order_witness(&two, 3).unwrap().roots_of_unity);
        assert!(infinite_order_witness(&ExactMatrix::zeros(ctx, 2, 2), 3).is_err());
    }
}
