use super::Module;
use crate::cyclo::{CycloNum, ExactMatrix};
use crate::error::Error;
use std::fmt;

/// A linear map between modules. The matrix has one row per basis vector of
/// the target and one column per basis vector of the source.
#[derive(Clone)]
pub struct Morphism {
    pub source: Module,
    pub target: Module,
    pub matrix: ExactMatrix,
}

impl fmt::Debug for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {} ({} nonzero)", self.source.name(), self.target.name(), self.matrix.nnz())
    }
}

impl PartialEq for Morphism {
    fn eq(&self, other: &Self) -> bool {
        self.source == other.source && self.target == other.target && self.matrix == other.matrix
    }
}

impl Morphism {
    pub fn new(source: Module, target: Module, matrix: ExactMatrix) -> Self {
        assert_eq!(matrix.shape(), (target.dim(), source.dim()), "morphism {} -> {}", source.name(), target.name());
        Morphism { source, target, matrix }
    }

    pub fn identity(v: &Module) -> Self {
        Morphism::new(v.clone(), v.clone(), ExactMatrix::identity(v.hopf().ctx, v.dim()))
    }

    pub fn zero(source: &Module, target: &Module) -> Self {
        Morphism::new(source.clone(), target.clone(), ExactMatrix::zeros(source.hopf().ctx, target.dim(), source.dim()))
    }

    /// `self ∘ first`
    pub fn compose(&self, first: &Morphism) -> Result<Morphism, Error> {
        if first.target != self.source {
            return Err(Error::Invalid(format!(
                "cannot compose {} -> {} after {} -> {}",
                self.source.name(),
                self.target.name(),
                first.source.name(),
                first.target.name()
            )));
        }
        Ok(Morphism::new(first.source.clone(), self.target.clone(), self.matrix.mul(&first.matrix)))
    }

    /// `self ⊗ other`
    pub fn tensor(&self, other: &Morphism) -> Morphism {
        Morphism::new(
            super::ModuleRep::tensor(&self.source, &other.source),
            super::ModuleRep::tensor(&self.target, &other.target),
            self.matrix.kron(&other.matrix),
        )
    }

    pub fn scale(&self, c: &CycloNum) -> Morphism {
        Morphism::new(self.source.clone(), self.target.clone(), self.matrix.scale(c))
    }

    pub fn add(&self, other: &Morphism) -> Morphism {
        assert!(self.source == other.source && self.target == other.target);
        Morphism::new(self.source.clone(), self.target.clone(), self.matrix.add(&other.matrix))
    }

    /// Replaces source and target by modules with the same dimension, e.g.
    /// to identify triv⊗V with V.
    pub fn retype(&self, source: &Module, target: &Module) -> Morphism {
        Morphism::new(source.clone(), target.clone(), self.matrix.clone())
    }

    /// Checks f ρ_V(x) = ρ_W(x) f for every algebra generator x.
    pub fn is_intertwiner(&self) -> bool {
        let h = self.source.hopf();
        h.generators.iter().all(|&x| self.matrix.mul(self.source.action(x)) == self.target.action(x).mul(&self.matrix))
    }

    /// The scalar of a morphism between one-dimensional spaces.
    pub fn scalar(&self) -> CycloNum {
        assert_eq!(self.matrix.shape(), (1, 1));
        self.matrix.get(0, 0)
    }
}
