//! The modified trace on projective modules.

use super::{Category, DualityKind, Module, Morphism};
use crate::cyclo::matrix::{canonicalize, KronOp, SparseVec};
use crate::cyclo::{inverse, CycloNum, ExactMatrix, Proportionality};
use crate::error::Error;
use std::sync::Arc;

/// A presentation of P as a direct summand of the regular module:
/// π∘ι = id_P.
#[derive(Clone, Debug)]
pub struct Retract {
    pub iota: Morphism,
    pub pi: Morphism,
}

/// η₁ : 1 → P1 and ε₁ : P1 → 1 with t_{P1}(η₁∘ε₁) = 1. `factor` is the
/// rescaling applied to the first basis vector of Hom(1, P1).
#[derive(Clone, Debug)]
pub struct TraceNormalization {
    pub eta1: Morphism,
    pub eps1: Morphism,
    pub factor: CycloNum,
}

impl Category {
    /// t_H(f) = λ(g f(1)) on the regular module.
    fn trace_regular(&self, f: &Morphism) -> CycloNum {
        let h = &self.hopf;
        let f1 = f.matrix.apply(&h.unit);
        h.lambda_of(&h.mul(&h.pivotal_g, &f1))
    }

    /// Trace on H⊗V through the isomorphism with H^{⊕dim V} given by
    /// x⊗v ↦ x₁⊗S(x₂)v.
    fn trace_free(&self, f: &Morphism, v: &Module) -> CycloNum {
        let h = &self.hopf;
        let n = v.dim();
        let g = &h.pivotal_g;
        let mut total = h.zero();
        for k in 0..n {
            let input: SparseVec = h.unit.iter().map(|(x, c)| (x * n + k, c.clone())).collect();
            let out = f.matrix.apply(&input);
            // Ψ(e_x ⊗ v_j) = Σ e_a ⊗ S(e_b) v_j, keep the v_k component
            let mut comp = Vec::new();
            for (idx, c) in &out {
                let (x, j) = (idx / n, idx % n);
                for (a, b, d) in h.split2(&h.comult.row_sparse(x)) {
                    let coeff = v.act(&h.antipode_of(&h.basis(b))).get(k, j);
                    if !coeff.is_zero() {
                        comp.push((a, &(c * d) * &coeff));
                    }
                }
            }
            total += &h.lambda_of(&h.mul(g, &canonicalize(comp)));
        }
        total
    }

    /// Finds ι: P → H and π: H → P with π∘ι = id by scanning pairs of hom
    /// basis vectors for an invertible composite. Cached by module name.
    pub fn retract(&self, p: &Module) -> Result<Arc<Retract>, Error> {
        if let Some(r) = self.retracts.lock().unwrap().get(p.name()) {
            return Ok(r.clone());
        }
        let into = self.hom_space(p, &self.regular);
        let out = self.hom_space(&self.regular, p);
        for iota in &into {
            for pi in &out {
                let comp = pi.matrix.mul(&iota.matrix);
                if let Ok(inv) = inverse(&comp) {
                    let pi = Morphism::new(self.regular.clone(), p.clone(), inv.mul(&pi.matrix));
                    let r = Arc::new(Retract { iota: iota.clone(), pi });
                    self.retracts.lock().unwrap().insert(p.name().to_string(), r.clone());
                    return Ok(r);
                }
            }
        }
        Err(Error::NoRetract(format!("{} is not a direct summand of H found by pairwise search", p.name())))
    }

    /// The modified trace of an endomorphism of a projective module.
    pub fn modified_trace(&self, f: &Morphism) -> Result<CycloNum, Error> {
        if f.source != f.target {
            return Err(Error::Invalid("trace of a non-endomorphism".into()));
        }
        let p = &f.source;
        if p.is_regular() {
            return Ok(self.trace_regular(f));
        }
        if let Some((a, b)) = p.tensor_parts() {
            if a.is_regular() {
                return Ok(self.trace_free(f, b));
            }
        }
        let r = self.retract(p).map_err(|e| match e {
            Error::NoRetract(m) => Error::NotProjective(m),
            e => e,
        })?;
        let lifted = r.iota.compose(f)?.compose(&r.pi)?;
        Ok(self.trace_regular(&lifted))
    }

    /// Normalizes η₁ so that t_{P1}(η₁∘ε₁) = 1, with ε₁ the first basis
    /// vector of Hom(P1, 1).
    pub fn normalize_trace(&self) -> Result<TraceNormalization, Error> {
        self.normalization
            .get_or_init(|| {
                let p = self.p1()?.clone();
                let eta = self.hom_space(&self.trivial, &p);
                let eps = self.hom_space(&p, &self.trivial);
                if eta.len() != 1 || eps.len() != 1 {
                    return Err(Error::Invalid(format!(
                        "expected one-dimensional Hom(1,P1) and Hom(P1,1), got {} and {}",
                        eta.len(),
                        eps.len()
                    )));
                }
                let (eta, eps1) = (&eta[0], eps[0].clone());
                let t = self.modified_trace(&eta.compose(&eps1)?)?;
                let factor = t.inv()?;
                Ok(TraceNormalization { eta1: eta.scale(&factor), eps1, factor })
            })
            .clone()
    }

    /// ⟨f⟩ with f = ⟨f⟩ ε₁ for f : P1 → 1.
    pub fn eps1_coefficient(&self, f: &Morphism) -> Result<CycloNum, Error> {
        let n = self.normalize_trace()?;
        match crate::cyclo::proportional(&f.matrix, &n.eps1.matrix) {
            Proportionality::Scalar(c) => Ok(c),
            Proportionality::Not { .. } => Err(Error::Invalid("morphism is not a multiple of the projective cover map".into())),
        }
    }

    /// (id_X ⊗ ev→_Y)(f ⊗ id_{Y*})(id_X ⊗ coev←_Y) for f : X⊗Y → X⊗Y.
    pub fn partial_trace(&self, f: &Morphism, x: &Module, y: &Module) -> Result<Morphism, Error> {
        let xy = self.tensor(x, y);
        if f.source != xy || f.target != xy {
            return Err(Error::Invalid(format!("partial trace needs an endomorphism of {}", xy.name())));
        }
        let ctx = self.ctx();
        let idx = ExactMatrix::identity(ctx, x.dim());
        let idyd = ExactMatrix::identity(ctx, y.dim());
        let coev = self.duality(y, DualityKind::CoevL);
        let ev = self.duality(y, DualityKind::EvR);
        let step1 = KronOp::new(&[&idx, &coev.matrix]);
        let step2 = KronOp::new(&[&f.matrix, &idyd]);
        let step3 = KronOp::new(&[&idx, &ev.matrix]);
        let cols: Vec<SparseVec> = crate::par::map_range(x.dim(), |j| {
            let v = step1.apply(&[(j, ctx.one())]);
            step3.apply(&step2.apply(&v))
        });
        Ok(Morphism::new(x.clone(), x.clone(), ExactMatrix::from_cols(ctx, x.dim(), cols)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trace_of_h_on_p1() {
        let c = Category::qsl2(3).unwrap();
        let h = c.h_endomorphism().unwrap();
        assert!(!c.modified_trace(&h).unwrap().is_zero());
        // the categorical dimension of P1 vanishes, its modified dimension does not
        let p = c.p1().unwrap();
        let loop_ = c.duality(p, DualityKind::EvR).compose(&c.duality(p, DualityKind::CoevL)).unwrap();
        assert!(loop_.scalar().is_zero());
        assert!(!c.modified_trace(&Morphism::identity(p)).unwrap().is_zero());
        let idh = Morphism::identity(&c.regular);
        assert_eq!(c.modified_trace(&idh).unwrap(), c.hopf.lambda_of(&c.hopf.pivotal_g));
    }

    #[test]
    fn normalization() {
        let c = Category::qsl2(3).unwrap();
        let n = c.normalize_trace().unwrap();
        assert!(c.modified_trace(&n.eta1.compose(&n.eps1).unwrap()).unwrap().is_one());
        assert!(n.eps1.compose(&n.eta1).unwrap().matrix.is_zero());
        assert!(c.eps1_coefficient(&n.eps1).unwrap().is_one());
    }

    #[test]
    fn trivial_module_is_not_projective() {
        let c = Category::qsl2(3).unwrap();
        let id = Morphism::identity(&c.trivial);
        assert!(matches!(c.modified_trace(&id), Err(Error::NotProjective(_))));
    }
}
