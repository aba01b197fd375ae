//! Finite-dimensional modules over a Hopf algebra, morphisms between them,
//! and the ribbon structure of the module category.

mod category;
mod morphism;
mod trace;

pub use category::{Category, DualityKind};
pub use morphism::Morphism;
pub use trace::{Retract, TraceNormalization};

use crate::cyclo::matrix::SparseVec;
use crate::cyclo::{CycloNum, ExactMatrix};
use crate::hopf::HopfData;
use std::fmt;
use std::sync::{Arc, OnceLock};

pub type Module = Arc<ModuleRep>;

#[derive(Debug)]
enum Kind {
    Trivial,
    Regular,
    Adjoint,
    Coadjoint,
    /// Actions of E, F, K on a module of the small quantum group.
    Pbw { gens: [ExactMatrix; 3], r: usize },
    Table,
    Dual(Module),
    Tensor(Module, Module),
}

/// A left module: the action of every basis element of H as a matrix
/// (columns are inputs). Actions are computed on first use.
pub struct ModuleRep {
    name: String,
    dim: usize,
    hopf: Arc<HopfData>,
    kind: Kind,
    factors: Vec<String>,
    actions: Vec<OnceLock<ExactMatrix>>,
}

impl fmt::Debug for ModuleRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.name, self.dim)
    }
}

impl PartialEq for ModuleRep {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.dim == other.dim
    }
}

impl Eq for ModuleRep {}

impl ModuleRep {
    fn build(name: String, dim: usize, hopf: Arc<HopfData>, kind: Kind) -> Module {
        let n = hopf.dim;
        let factors = match &kind {
            Kind::Tensor(a, b) => a.factors.iter().chain(&b.factors).cloned().collect(),
            _ => vec![name.clone()],
        };
        Arc::new(ModuleRep { name, dim, hopf, kind, factors, actions: (0..n).map(|_| OnceLock::new()).collect() })
    }

    pub fn trivial(h: &Arc<HopfData>) -> Module {
        Self::build("triv".into(), 1, h.clone(), Kind::Trivial)
    }

    pub fn regular(h: &Arc<HopfData>) -> Module {
        Self::build("H".into(), h.dim, h.clone(), Kind::Regular)
    }

    pub fn adjoint(h: &Arc<HopfData>) -> Module {
        Self::build("ad".into(), h.dim, h.clone(), Kind::Adjoint)
    }

    pub fn coadjoint(h: &Arc<HopfData>) -> Module {
        Self::build("coad".into(), h.dim, h.clone(), Kind::Coadjoint)
    }

    /// A module of the small quantum group given by the actions of E, F, K.
    /// The PBW basis element E^aF^bK^c acts as E^a F^b K^c.
    pub fn from_generators(h: &Arc<HopfData>, name: &str, r: usize, e: ExactMatrix, f: ExactMatrix, k: ExactMatrix) -> Module {
        let dim = e.rows();
        Self::build(name.into(), dim, h.clone(), Kind::Pbw { gens: [e, f, k], r })
    }

    /// A module given by the action of every basis element.
    pub fn from_table(h: &Arc<HopfData>, name: &str, actions: Vec<ExactMatrix>) -> Module {
        let dim = actions.first().map_or(0, |a| a.rows());
        let m = Self::build(name.into(), dim, h.clone(), Kind::Table);
        for (cell, a) in m.actions.iter().zip(actions) {
            let _ = cell.set(a);
        }
        m
    }

    pub fn dual(v: &Module) -> Module {
        let name = if v.factors.len() > 1 { format!("({})*", v.name) } else { format!("{}*", v.name) };
        Self::build(name, v.dim, v.hopf.clone(), Kind::Dual(v.clone()))
    }

    pub fn tensor(a: &Module, b: &Module) -> Module {
        Self::build(format!("{}⊗{}", a.name, b.name), a.dim * b.dim, a.hopf.clone(), Kind::Tensor(a.clone(), b.clone()))
    }

    /// Tensor product of a list, nested to the right. The empty product is
    /// the trivial module.
    pub fn tensor_all(h: &Arc<HopfData>, items: &[Module]) -> Module {
        match items {
            [] => Self::trivial(h),
            [one] => one.clone(),
            [first, rest @ ..] => Self::tensor(first, &Self::tensor_all(h, rest)),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn hopf(&self) -> &Arc<HopfData> {
        &self.hopf
    }

    /// Names of the tensor factors, left to right.
    pub fn factor_names(&self) -> &[String] {
        &self.factors
    }

    pub fn is_regular(&self) -> bool {
        matches!(self.kind, Kind::Regular)
    }

    pub fn tensor_parts(&self) -> Option<(&Module, &Module)> {
        match &self.kind {
            Kind::Tensor(a, b) => Some((a, b)),
            _ => None,
        }
    }

    /// Matrix of the basis element `x` of H.
    pub fn action(&self, x: usize) -> &ExactMatrix {
        self.actions[x].get_or_init(|| self.compute_action(x))
    }

    /// Matrix of an arbitrary element of H.
    pub fn act(&self, a: &[(usize, CycloNum)]) -> ExactMatrix {
        let mut m = ExactMatrix::zeros(self.hopf.ctx, self.dim, self.dim);
        for (x, c) in a {
            m = m.axpy(c, self.action(*x));
        }
        m
    }

    /// Acts by an element of H on a vector.
    pub fn act_on(&self, a: &[(usize, CycloNum)], v: &[(usize, CycloNum)]) -> SparseVec {
        let mut acc = Vec::new();
        for (x, c) in a {
            for (i, y) in self.action(*x).apply(v) {
                acc.push((i, c * &y));
            }
        }
        crate::cyclo::matrix::canonicalize(acc)
    }

    fn compute_action(&self, x: usize) -> ExactMatrix {
        let h = &self.hopf;
        let ctx = h.ctx;
        let d = h.dim;
        match &self.kind {
            Kind::Trivial => {
                let e = h.counit_of(&h.basis(x));
                ExactMatrix::from_triplets(ctx, 1, 1, (!e.is_zero()).then_some((0, 0, e)))
            }
            Kind::Regular => ExactMatrix::from_cols(ctx, d, (0..d).map(|y| h.mul_basis(x, y)).collect()),
            Kind::Adjoint => {
                let dx = h.comult.row_sparse(x);
                let cols = (0..d)
                    .map(|y| {
                        let mut acc = Vec::new();
                        for (a, b, c) in h.split2(&dx) {
                            let t = h.mul(&h.mul_basis(a, y), &h.antipode_of(&h.basis(b)));
                            acc.extend(t.into_iter().map(|(i, v)| (i, &v * c)));
                        }
                        crate::cyclo::matrix::canonicalize(acc)
                    })
                    .collect();
                ExactMatrix::from_cols(ctx, d, cols)
            }
            Kind::Coadjoint => {
                // (x·φ)(y) = φ(S(x1) y x2): the transpose of y ↦ S(x1) y x2
                let dx = h.comult.row_sparse(x);
                let cols = (0..d)
                    .map(|y| {
                        let mut acc = Vec::new();
                        for (a, b, c) in h.split2(&dx) {
                            let t = h.mul(&h.mul(&h.antipode_of(&h.basis(a)), &h.basis(y)), &h.basis(b));
                            acc.extend(t.into_iter().map(|(i, v)| (i, &v * c)));
                        }
                        crate::cyclo::matrix::canonicalize(acc)
                    })
                    .collect();
                ExactMatrix::from_cols(ctx, d, cols).transpose()
            }
            Kind::Pbw { gens, r } => {
                let (a, b, c) = (x / (r * r), (x / r) % r, x % r);
                gens[0].pow(a as u32).mul(&gens[1].pow(b as u32)).mul(&gens[2].pow(c as u32))
            }
            Kind::Table => unreachable!("table actions are set at construction"),
            Kind::Dual(v) => v.act(&h.antipode_of(&h.basis(x))).transpose(),
            Kind::Tensor(a, b) => {
                let dx = h.comult.row_sparse(x);
                // group by the left factor to save Kronecker products
                let mut groups: Vec<(usize, SparseVec)> = Vec::new();
                for (l, r, c) in h.split2(&dx) {
                    match groups.last_mut() {
                        Some((k, v)) if *k == l => v.push((r, c.clone())),
                        _ => groups.push((l, vec![(r, c.clone())])),
                    }
                }
                let mut m = ExactMatrix::zeros(ctx, self.dim, self.dim);
                for (l, right) in groups {
                    m = m.add(&a.action(l).kron(&b.act(&right)));
                }
                m
            }
        }
    }

    /// Checks the module axioms on all basis elements, or with the left
    /// factor restricted to generators.
    pub fn check_module_axioms(&self, exhaustive: bool) -> bool {
        let h = &self.hopf;
        if !self.act(&h.unit).is_identity() {
            return false;
        }
        let lefts: Vec<usize> = if exhaustive { (0..h.dim).collect() } else { h.generators.clone() };
        crate::par::all_range(lefts.len() * h.dim, |k| {
            let (x, y) = (lefts[k / h.dim], k % h.dim);
            self.act(&h.mul_basis(x, y)) == self.action(x).mul(self.action(y))
        })
    }
}
