use crate::cyclo::matrix::{canonicalize, SparseVec};
use crate::cyclo::{CycloNum, ExactMatrix, KronOp};
use crate::error::Error;
use crate::par;
use crate::rep::{Category, Module, Morphism};

/// One tensor slot in the source of a dinatural family: either a pair
/// H*⊗H standing for a coend slot, or a fixed object.
#[derive(Clone, Debug)]
pub enum Slot {
    Coend,
    Object(Module),
}

/// The morphism out of the coend slots that factors a dinatural family,
/// given the family's linear map at X=H on basis vectors of its source.
/// Each coend slot is fed φ⊗1.
pub(crate) fn from_dinatural_fn<F>(cat: &Category, layout: &[Slot], target: &Module, family: F) -> Result<Morphism, Error>
where
    F: Fn(&SparseVec) -> SparseVec + Sync + Send,
{
    let h = &cat.hopf;
    let d = h.dim;
    let unit = &h.unit;
    let dims: Vec<usize> = layout.iter().map(|s| if let Slot::Object(m) = s { m.dim() } else { d }).collect();
    let in_dims: Vec<usize> = layout.iter().map(|s| if let Slot::Object(m) = s { m.dim() } else { d * d }).collect();
    let n: usize = dims.iter().product();
    let cols = par::map_range(n, |idx| {
        let mut digits = vec![0; dims.len()];
        let mut rest = idx;
        for k in (0..dims.len()).rev() {
            digits[k] = rest % dims[k];
            rest /= dims[k];
        }
        // expand the coend slots into φ_a ⊗ 1
        let mut partial: SparseVec = vec![(0, cat.ctx().one())];
        for (k, slot) in layout.iter().enumerate() {
            let mut next = Vec::new();
            for (p, x) in &partial {
                match slot {
                    Slot::Object(_) => next.push((p * in_dims[k] + digits[k], x.clone())),
                    Slot::Coend => {
                        for (u, c) in unit {
                            next.push((p * in_dims[k] + digits[k] * d + u, x * c));
                        }
                    }
                }
            }
            partial = next;
        }
        family(&canonicalize(partial))
    });
    let source = cat.tensor_all(
        &layout.iter().map(|s| if let Slot::Object(m) = s { m.clone() } else { cat.coadjoint.clone() }).collect::<Vec<_>>(),
    );
    let m = Morphism::new(source, target.clone(), ExactMatrix::from_cols(cat.ctx(), target.dim(), cols));
    if !m.is_intertwiner() {
        return Err(Error::Invalid("dinatural family does not factor through the coend: result is not an intertwiner".into()));
    }
    Ok(m)
}

/// f(α) = α_(H,…,H) ∘ ((id⊗η)^{⊗n} ⊗ id_W) for a family given at X=H.
/// The source of `family` must be the tensor product of the layout with
/// each coend slot read as H*⊗H.
pub fn from_dinatural_at_h(cat: &Category, family: &Morphism, layout: &[Slot]) -> Result<Morphism, Error> {
    let d = cat.hopf.dim;
    let want: usize = layout.iter().map(|s| if let Slot::Object(m) = s { m.dim() } else { d * d }).product();
    if family.source.dim() != want {
        return Err(Error::Invalid(format!("family source has dimension {}, layout needs {want}", family.source.dim())));
    }
    from_dinatural_fn(cat, layout, &family.target, |v| family.matrix.apply(v))
}

/// c_{B,A} ∘ c_{A,B} on A⊗B.
pub fn double_braiding(cat: &Category, a: &Module, b: &Module) -> Morphism {
    let m = cat.braiding(b, a).matrix.mul(&cat.braiding(a, b).matrix);
    Morphism::new(cat.tensor(a, b), cat.tensor(a, b), m)
}

/// The coend 𝕃 = coad with its structure morphisms.
pub struct CoendOps<'a> {
    pub cat: &'a Category,
    pub l: Module,
    pub t_op: Morphism,
    pub s_op: Morphism,
    pub omega: Morphism,
    /// Λ : 1 → 𝕃, 1 ↦ λ.
    pub integral: Morphism,
    /// ε : 𝕃 → 1, φ ↦ φ(1).
    pub counit: Morphism,
    pub copairing: Morphism,
}

impl<'a> CoendOps<'a> {
    /// Ω_{L,X} on X⊗𝕃.
    pub fn omega_left(&self, x: &Module) -> Result<Morphism, Error> {
        let cat = self.cat;
        let reg = &cat.regular;
        let hd = cat.dual(reg);
        let db = double_braiding(cat, x, &hd).matrix;
        let idx = ExactMatrix::identity(cat.ctx(), x.dim());
        let idh = ExactMatrix::identity(cat.ctx(), reg.dim());
        let first = KronOp::new(&[&db, &idh]);
        let i_h = cat.i_map(reg).matrix;
        let second = KronOp::new(&[&idx, &i_h]);
        let target = cat.tensor(x, &self.l);
        from_dinatural_fn(cat, &[Slot::Object(x.clone()), Slot::Coend], &target, |v| second.apply(&first.apply(v)))
    }

    /// Ω_{R,Y} on 𝕃⊗Y.
    pub fn omega_right(&self, y: &Module) -> Result<Morphism, Error> {
        let cat = self.cat;
        let reg = &cat.regular;
        let db = double_braiding(cat, reg, y).matrix;
        let idy = ExactMatrix::identity(cat.ctx(), y.dim());
        let idh = ExactMatrix::identity(cat.ctx(), reg.dim());
        let first = KronOp::new(&[&idh, &db]);
        let i_h = cat.i_map(reg).matrix;
        let second = KronOp::new(&[&i_h, &idy]);
        let target = cat.tensor(&self.l, y);
        from_dinatural_fn(cat, &[Slot::Coend, Slot::Object(y.clone())], &target, |v| second.apply(&first.apply(v)))
    }

    /// ℋ = Ω∘(𝒯⊗𝒯).
    pub fn h_op(&self) -> Morphism {
        let m = self.omega.matrix.mul(&self.t_op.matrix.kron(&self.t_op.matrix));
        Morphism::new(self.omega.source.clone(), self.omega.target.clone(), m)
    }

    /// ℋ_{L,X} = Ω_{L,X}∘(θ_X⊗𝒯).
    pub fn h_left(&self, x: &Module) -> Result<Morphism, Error> {
        let o = self.omega_left(x)?;
        let m = o.matrix.mul(&self.cat.twist(x).matrix.kron(&self.t_op.matrix));
        Ok(Morphism::new(o.source, o.target, m))
    }

    /// ℋ_{R,Y} = Ω_{R,Y}∘(𝒯⊗θ_Y).
    pub fn h_right(&self, y: &Module) -> Result<Morphism, Error> {
        let o = self.omega_right(y)?;
        let m = o.matrix.mul(&self.t_op.matrix.kron(&self.cat.twist(y).matrix));
        Ok(Morphism::new(o.source, o.target, m))
    }

    /// ω = (ε⊗ε)∘Ω, the Hopf pairing of the coend.
    pub fn hopf_pairing(&self) -> Morphism {
        let e = self.counit.matrix.kron(&self.counit.matrix);
        Morphism::new(self.omega.source.clone(), self.cat.trivial.clone(), e.mul(&self.omega.matrix))
    }

    /// ℛ^{(n)} : 1 → 𝕃^{⊗n}⊗𝕃^{⊗n}, as a column vector.
    pub fn nested_copairing(&self, n: usize) -> SparseVec {
        nested(&self.copairing.matrix.column(0), self.l.dim(), n, self.cat.ctx().one())
    }
}

fn nested(r: &SparseVec, d: usize, n: usize, one: CycloNum) -> SparseVec {
    let mut acc: SparseVec = vec![(0, one)];
    // ℛ^{(k)} = (id⊗ℛ^{(k-1)}⊗id)∘ℛ, so the outermost pair wraps the rest
    for k in 1..=n {
        let inner = d.pow(2 * (k as u32 - 1));
        let mut next = Vec::with_capacity(acc.len() * r.len());
        for (ab, c) in r {
            let (a, b) = (ab / d, ab % d);
            for (idx, x) in &acc {
                next.push(((a * inner + idx) * d + b, c * x));
            }
        }
        acc = canonicalize(next);
    }
    acc
}

/// ℛ(1)(x⊗y) = λ(xy), the braided coproduct of the coend applied to λ.
/// Δ̄∘i_X = (i_X⊗i_X)∘(id⊗coev_X⊗id) at X=H gives Δ̄(φ)(x⊗y) = φ(xy).
pub fn radford_copairing(cat: &Category) -> Morphism {
    copairing_from(cat, false)
}

/// The copairing with ℛ(1)(x⊗y) = λ(yx) when `reversed` is set. That form
/// is not H-invariant; it is kept so tests can pin that down.
pub fn copairing_from(cat: &Category, reversed: bool) -> Morphism {
    let h = &cat.hopf;
    let d = h.dim;
    let entries: Vec<(usize, CycloNum)> = (0..d * d)
        .filter_map(|k| {
            let (x, y) = (k / d, k % d);
            let v = if reversed { h.lambda_of(&h.mul_basis(y, x)) } else { h.lambda_of(&h.mul_basis(x, y)) };
            (!v.is_zero()).then_some((k, v))
        })
        .collect();
    let l = &cat.coadjoint;
    Morphism::new(cat.trivial.clone(), cat.tensor(l, l), ExactMatrix::column_vector(cat.ctx(), d * d, &entries))
}

/// Builds 𝒯, 𝒮, Ω, Λ, ε and ℛ. 𝒯, Ω and 𝒮 come from their defining
/// dinatural families at X=H.
pub fn coend_operators(cat: &Category) -> Result<CoendOps<'_>, Error> {
    let ctx = cat.ctx();
    let h = &cat.hopf;
    let d = h.dim;
    let reg = &cat.regular;
    let l = cat.coadjoint.clone();
    let i_h = cat.i_map(reg).matrix;
    let idh = ExactMatrix::identity(ctx, d);

    let theta = cat.twist(reg).matrix;
    let t_family = KronOp::new(&[&idh, &theta]);
    let t_op = from_dinatural_fn(cat, &[Slot::Coend], &l, |v| i_h.apply(&t_family.apply(v)))?;

    let hd = cat.dual(reg);
    let db = double_braiding(cat, reg, &hd).matrix;
    let mid = KronOp::new(&[&idh, &db, &idh]);
    let outer = KronOp::new(&[&i_h, &i_h]);
    let ll = cat.tensor(&l, &l);
    let omega = from_dinatural_fn(cat, &[Slot::Coend, Slot::Coend], &ll, |v| outer.apply(&mid.apply(v)))?;

    let integral = Morphism::new(cat.trivial.clone(), l.clone(), ExactMatrix::column_vector(ctx, d, &h.integral_lambda));
    let counit = Morphism::new(l.clone(), cat.trivial.clone(), ExactMatrix::row_vector(ctx, d, &h.unit));

    // α_X = (ε⊗id)∘Ω∘(i_X⊗Λ)
    let lam = integral.matrix.column(0);
    let eps_id = counit.matrix.kron(&ExactMatrix::identity(ctx, d));
    let s_op = from_dinatural_fn(cat, &[Slot::Coend], &l, |v| {
        let x = i_h.apply(v);
        let mut pair = Vec::with_capacity(x.len() * lam.len());
        for (a, c) in &x {
            for (b, y) in &lam {
                pair.push((a * d + b, c * y));
            }
        }
        eps_id.apply(&omega.matrix.apply(&canonicalize(pair)))
    })?;

    let copairing = radford_copairing(cat);
    Ok(CoendOps { cat, l, t_op, s_op, omega, integral, counit, copairing })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nesting_shapes() {
        let cat = Category::qsl2(3).unwrap();
        let r = radford_copairing(&cat).matrix.column(0);
        let one = cat.ctx().one();
        assert_eq!(nested(&r, 27, 0, one.clone()), vec![(0, one.clone())]);
        assert_eq!(nested(&r, 27, 1, one.clone()), r);
        let r2 = nested(&r, 27, 2, one);
        assert_eq!(r2.len(), r.len() * r.len());
        assert!(r2.last().unwrap().0 < 27usize.pow(4));
    }
}
