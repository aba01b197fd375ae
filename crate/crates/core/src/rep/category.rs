use super::trace::{Retract, TraceNormalization};
use super::{Module, ModuleRep, Morphism};
use crate::cyclo::matrix::{canonicalize, SparseVec};
use crate::cyclo::{nullspace_from_rref, CycloNum, Echelon, ExactMatrix};
use crate::error::Error;
use crate::hopf::{small_qsl2, HopfData};
use crate::par;
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DualityKind {
    /// V*⊗V → 1, φ⊗v ↦ φ(v)
    EvL,
    /// 1 → V⊗V*, 1 ↦ Σ v_i⊗φ^i
    CoevL,
    /// V⊗V* → 1, v⊗φ ↦ φ(gv)
    EvR,
    /// 1 → V*⊗V, 1 ↦ Σ φ^i⊗g⁻¹v_i
    CoevR,
}

/// The category of finite-dimensional H-modules. Holds the standard
/// modules, a name registry and memo tables for hom spaces and retracts.
pub struct Category {
    pub hopf: Arc<HopfData>,
    pub trivial: Module,
    pub regular: Module,
    pub adjoint: Module,
    pub coadjoint: Module,
    p1: Option<Module>,
    registry: Mutex<BTreeMap<String, Module>>,
    duals: Mutex<HashMap<String, Module>>,
    homs: Mutex<HashMap<(String, String), Arc<Vec<ExactMatrix>>>>,
    pub(super) retracts: Mutex<HashMap<String, Arc<Retract>>>,
    pub(super) normalization: OnceLock<Result<TraceNormalization, Error>>,
}

impl Category {
    pub fn new(hopf: HopfData) -> Self {
        let hopf = Arc::new(hopf);
        let trivial = ModuleRep::trivial(&hopf);
        let regular = ModuleRep::regular(&hopf);
        let adjoint = ModuleRep::adjoint(&hopf);
        let coadjoint = ModuleRep::coadjoint(&hopf);
        let mut reg = BTreeMap::new();
        for m in [&trivial, &regular, &adjoint, &coadjoint] {
            reg.insert(m.name().to_string(), m.clone());
        }
        Category {
            hopf,
            trivial,
            regular,
            adjoint,
            coadjoint,
            p1: None,
            registry: Mutex::new(reg),
            duals: Mutex::new(HashMap::new()),
            homs: Mutex::new(HashMap::new()),
            retracts: Mutex::new(HashMap::new()),
            normalization: OnceLock::new(),
        }
    }

    /// Modules of the small quantum group at order r, including P1.
    pub fn qsl2(r: u32) -> Result<Self, Error> {
        let mut c = Category::new(small_qsl2(r)?);
        let p1 = p1_module(&c.hopf, r as usize);
        c.registry.lock().unwrap().insert("P1".into(), p1.clone());
        c.p1 = Some(p1);
        Ok(c)
    }

    pub fn ctx(&self) -> &'static crate::cyclo::FieldCtx {
        self.hopf.ctx
    }

    pub fn p1(&self) -> Result<&Module, Error> {
        self.p1.as_ref().ok_or_else(|| Error::Unknown("P1 (only defined for the small quantum group)".into()))
    }

    pub fn register(&self, m: Module) -> Result<(), Error> {
        if m.name().contains(['⊗', '*', '(', ')', ' ']) {
            return Err(Error::Invalid(format!("module name {:?} is reserved", m.name())));
        }
        self.registry.lock().unwrap().insert(m.name().to_string(), m);
        Ok(())
    }

    /// Looks up a module by name token.
    pub fn module(&self, name: &str) -> Result<Module, Error> {
        self.registry.lock().unwrap().get(name).cloned().ok_or_else(|| Error::Unknown(format!("module {name}")))
    }

    pub fn module_names(&self) -> Vec<String> {
        self.registry.lock().unwrap().keys().cloned().collect()
    }

    pub fn tensor(&self, a: &Module, b: &Module) -> Module {
        ModuleRep::tensor(a, b)
    }

    pub fn tensor_all(&self, items: &[Module]) -> Module {
        ModuleRep::tensor_all(&self.hopf, items)
    }

    /// The dual module. Memoized by name so lazily built actions are shared.
    pub fn dual(&self, v: &Module) -> Module {
        let mut duals = self.duals.lock().unwrap();
        if let Some(d) = duals.get(v.name()) {
            if d.dim() == v.dim() {
                return d.clone();
            }
        }
        let d = ModuleRep::dual(v);
        duals.insert(v.name().to_string(), d.clone());
        d
    }

    pub fn identity(&self, v: &Module) -> Morphism {
        Morphism::identity(v)
    }

    /// The permutation v⊗w ↦ w⊗v.
    pub fn flip_matrix(&self, nv: usize, nw: usize) -> ExactMatrix {
        let one = self.ctx().one();
        ExactMatrix::from_triplets(self.ctx(), nw * nv, nv * nw, (0..nv * nw).map(|k| {
            let (i, j) = (k / nw, k % nw);
            (j * nv + i, k, one.clone())
        }))
    }

    /// Σ ρ_V(t')⊗ρ_W(t'') for an element t of H⊗H.
    fn act2(&self, v: &Module, w: &Module, t: &[(usize, CycloNum)]) -> ExactMatrix {
        let mut groups: Vec<(usize, SparseVec)> = Vec::new();
        for (a, b, c) in self.hopf.split2(t) {
            match groups.last_mut() {
                Some((k, g)) if *k == a => g.push((b, c.clone())),
                _ => groups.push((a, vec![(b, c.clone())])),
            }
        }
        let parts = par::map_slice(&groups, |(a, right)| v.action(*a).kron(&w.act(right)));
        parts.into_iter().fold(ExactMatrix::zeros(self.ctx(), v.dim() * w.dim(), v.dim() * w.dim()), |m, p| m.add(&p))
    }

    /// c_{V,W}(v⊗w) = R''w ⊗ R'v
    pub fn braiding(&self, v: &Module, w: &Module) -> Morphism {
        let m = self.flip_matrix(v.dim(), w.dim()).mul(&self.act2(v, w, &self.hopf.r_matrix));
        Morphism::new(self.tensor(v, w), self.tensor(w, v), m)
    }

    /// The inverse of c_{V,W}, a map W⊗V → V⊗W.
    pub fn braiding_inv(&self, v: &Module, w: &Module) -> Morphism {
        let m = self.act2(v, w, &self.hopf.r_matrix_inv).mul(&self.flip_matrix(w.dim(), v.dim()));
        Morphism::new(self.tensor(w, v), self.tensor(v, w), m)
    }

    /// θ_V, the action of v⁻¹.
    pub fn twist(&self, v: &Module) -> Morphism {
        Morphism::new(v.clone(), v.clone(), v.act(&self.hopf.ribbon_v_inv))
    }

    pub fn twist_inv(&self, v: &Module) -> Morphism {
        Morphism::new(v.clone(), v.clone(), v.act(&self.hopf.ribbon_v))
    }

    pub fn duality(&self, v: &Module, kind: DualityKind) -> Morphism {
        let ctx = self.ctx();
        let n = v.dim();
        let vd = self.dual(v);
        let one = ctx.one();
        match kind {
            DualityKind::EvL => Morphism::new(
                self.tensor(&vd, v),
                self.trivial.clone(),
                ExactMatrix::from_triplets(ctx, 1, n * n, (0..n).map(|i| (0, i * n + i, one.clone()))),
            ),
            DualityKind::CoevL => Morphism::new(
                self.trivial.clone(),
                self.tensor(v, &vd),
                ExactMatrix::from_triplets(ctx, n * n, 1, (0..n).map(|i| (i * n + i, 0, one.clone()))),
            ),
            DualityKind::EvR => {
                let g = v.act(&self.hopf.pivotal_g);
                Morphism::new(
                    self.tensor(v, &vd),
                    self.trivial.clone(),
                    ExactMatrix::from_triplets(ctx, 1, n * n, g.entries().map(|(i, j, c)| (0, j * n + i, c.clone()))),
                )
            }
            DualityKind::CoevR => {
                let gi = self.hopf.inverse_element(&self.hopf.pivotal_g).expect("pivotal element is invertible");
                let g = v.act(&gi);
                Morphism::new(
                    self.trivial.clone(),
                    self.tensor(&vd, v),
                    ExactMatrix::from_triplets(ctx, n * n, 1, g.entries().map(|(k, i, c)| (i * n + k, 0, c.clone()))),
                )
            }
        }
    }

    /// i_V : V*⊗V → coad, i_V(φ⊗v)(x) = φ(x·v)
    pub fn i_map(&self, v: &Module) -> Morphism {
        let n = v.dim();
        let trip: Vec<_> = (0..self.hopf.dim)
            .flat_map(|x| v.action(x).entries().map(move |(i, j, c)| (x, i * n + j, c.clone())).collect::<Vec<_>>())
            .collect();
        Morphism::new(
            self.tensor(&self.dual(v), v),
            self.coadjoint.clone(),
            ExactMatrix::from_triplets(self.ctx(), self.hopf.dim, n * n, trip),
        )
    }

    /// j_V : ad → V⊗V*, j_V(x) = Σ (x·v_i)⊗φ^i
    pub fn j_map(&self, v: &Module) -> Morphism {
        let n = v.dim();
        let trip: Vec<_> = (0..self.hopf.dim)
            .flat_map(|x| v.action(x).entries().map(move |(k, i, c)| (k * n + i, x, c.clone())).collect::<Vec<_>>())
            .collect();
        Morphism::new(
            self.adjoint.clone(),
            self.tensor(v, &self.dual(v)),
            ExactMatrix::from_triplets(self.ctx(), n * n, self.hopf.dim, trip),
        )
    }

    /// η : 1 → ad, 1 ↦ 1_H
    pub fn unit_map(&self) -> Morphism {
        Morphism::new(self.trivial.clone(), self.adjoint.clone(), ExactMatrix::column_vector(self.ctx(), self.hopf.dim, &self.hopf.unit))
    }

    /// Basis of Hom_H(V, W), memoized by module names. Only the algebra
    /// generators enter the constraint system.
    pub fn hom_space(&self, v: &Module, w: &Module) -> Vec<Morphism> {
        let key = (v.name().to_string(), w.name().to_string());
        let cached = self.homs.lock().unwrap().get(&key).cloned();
        let basis = match cached {
            Some(b) => b,
            None => {
                let b = Arc::new(self.solve_hom(v, w));
                self.homs.lock().unwrap().insert(key, b.clone());
                b
            }
        };
        basis.iter().map(|m| Morphism::new(v.clone(), w.clone(), m.clone())).collect()
    }

    fn solve_hom(&self, v: &Module, w: &Module) -> Vec<ExactMatrix> {
        let (nv, nw) = (v.dim(), w.dim());
        let nvars = nv * nw;
        let mut ech = Echelon::new(nvars);
        for &x in &self.hopf.generators {
            let at = v.action(x).transpose();
            let b = w.action(x);
            let rows = par::map_range(nvars, |k| {
                let (i, j) = (k / nv, k % nv);
                let mut row = Vec::new();
                let (ac, av) = at.row(j);
                for (&kk, a) in ac.iter().zip(av) {
                    row.push((i * nv + kk, a.clone()));
                }
                let (bc, bv) = b.row(i);
                for (&kk, c) in bc.iter().zip(bv) {
                    row.push((kk * nv + j, -c));
                }
                canonicalize(row)
            });
            for row in rows {
                if !row.is_empty() {
                    ech.insert(&row);
                }
            }
            if ech.rank() == nvars {
                break;
            }
        }
        let rref = ech.into_rref(self.ctx());
        nullspace_from_rref(&rref)
            .into_iter()
            .map(|vec| ExactMatrix::from_triplets(self.ctx(), nw, nv, vec.into_iter().map(|(k, c)| (k / nv, k % nv, c))))
            .collect()
    }

    /// The nilpotent endomorphism of P1 sending b₀ to a₀.
    pub fn h_endomorphism(&self) -> Result<Morphism, Error> {
        let p = self.p1()?;
        let n = p.dim();
        Ok(Morphism::new(p.clone(), p.clone(), ExactMatrix::from_triplets(self.ctx(), n, n, [(0, n - 1, self.ctx().one())])))
    }
}

/// The projective cover of the trivial module, on the basis
/// a₀, x_0..x_{r-2}, y_0..y_{r-2}, b₀.
fn p1_module(h: &Arc<HopfData>, r: usize) -> Module {
    let ctx = h.ctx;
    let n = 2 * r;
    let a0 = 0;
    let x = |k: usize| 1 + k;
    let y = |k: usize| r + k;
    let b0 = n - 1;
    let one = ctx.one();
    let mut e = Vec::new();
    let mut f = Vec::new();
    let mut k = vec![(a0, a0, one.clone()), (b0, b0, one.clone())];
    for j in 0..r - 1 {
        let ji = j as i64;
        let w = ctx.q_pow(-2 * ji - 2);
        k.push((x(j), x(j), w.clone()));
        k.push((y(j), y(j), w));
        let c = -(&ctx.qint(ji) * &ctx.qint(ji + 1));
        if j > 0 {
            e.push((x(j - 1), x(j), c.clone()));
            e.push((y(j - 1), y(j), c));
        } else {
            e.push((a0, y(0), one.clone()));
        }
        if j + 1 < r - 1 {
            f.push((x(j + 1), x(j), one.clone()));
            f.push((y(j + 1), y(j), one.clone()));
        } else {
            f.push((a0, x(j), one.clone()));
        }
    }
    e.push((x(r - 2), b0, one.clone()));
    f.push((y(0), b0, one.clone()));
    let m = |t: Vec<(usize, usize, CycloNum)>| ExactMatrix::from_triplets(ctx, n, n, t.into_iter().filter(|e| !e.2.is_zero()));
    ModuleRep::from_generators(h, "P1", r, m(e), m(f), m(k))
}
