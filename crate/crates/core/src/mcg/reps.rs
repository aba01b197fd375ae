use super::coend::CoendOps;
use crate::cyclo::matrix::SparseVec;
use crate::cyclo::{inverse, CycloNum, Echelon, ExactMatrix, KronOp};
use crate::error::Error;
use crate::par;
use crate::rep::{Category, DualityKind, Module, Morphism};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    /// On C(V₁⊗…⊗V_m, 𝕃^{⊗g}).
    Lyu,
    /// On C(V₁⊗…⊗V_m⊗𝕃^{⊗g}, 1).
    RhoX,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Lyu => "lyu",
            Side::RhoX => "rhoX",
        })
    }
}

impl std::str::FromStr for Side {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "lyu" => Ok(Side::Lyu),
            "rhoX" | "rhox" => Ok(Side::RhoX),
            _ => Err(Error::Invalid(format!("side must be lyu or rhoX, got {s:?}"))),
        }
    }
}

/// Mapping class group generators. Indices are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    X(usize, usize),
    W(usize, usize),
    V(usize),
    H(usize),
    S(usize),
    T(usize),
    Hij(usize, usize),
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::X(i, j) => write!(f, "x_{i},{j}"),
            Generator::W(i, j) => write!(f, "w_{i},{j}"),
            Generator::V(i) => write!(f, "v_{i}"),
            Generator::H(k) => write!(f, "H_{k}"),
            Generator::S(j) => write!(f, "S_{j}"),
            Generator::T(j) => write!(f, "T_{j}"),
            Generator::Hij(i, j) => write!(f, "H_{i},{j}"),
        }
    }
}

/// The generating set for genus g and the given labels.
pub fn generators(g: usize, labels: &[String]) -> Vec<Generator> {
    let m = labels.len();
    let mut out = Vec::new();
    for i in 1..=m {
        for j in i + 1..=m {
            if labels[i - 1] == labels[j - 1] {
                out.push(Generator::X(i, j));
            }
        }
    }
    for i in 1..=m {
        for j in i + 1..=m {
            out.push(Generator::W(i, j));
        }
    }
    out.extend((1..=m).map(Generator::V));
    out.extend((2..=g).map(Generator::H));
    out.extend((1..=g).map(Generator::S));
    out.extend((1..=g).map(Generator::T));
    for i in 1..=m {
        out.extend((1..=g).map(|j| Generator::Hij(i, j)));
    }
    out
}

/// A projective representation in a fixed hom basis. Matrices act on
/// coordinate columns; scalars from framing anomalies are not included.
#[derive(Clone, Debug)]
pub struct McgRep {
    pub genus: usize,
    pub labels: Vec<String>,
    pub side: Side,
    pub basis: Vec<Morphism>,
    pub generator_matrices: Vec<(Generator, ExactMatrix)>,
}

impl McgRep {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn matrix(&self, g: Generator) -> Option<&ExactMatrix> {
        self.generator_matrices.iter().find(|(h, _)| *h == g).map(|(_, m)| m)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("REP side={} genus={} labels=[{}] dim={}\n", self.side, self.genus, self.labels.join(","), self.dim());
        for (g, m) in &self.generator_matrices {
            s.push_str(&format!("GENERATOR {g}\n"));
            s.push_str(&m.to_text());
        }
        s
    }
}

/// Coordinates in a basis of a subspace, by reduction against the basis
/// with tracking columns.
struct Coords {
    n: usize,
    ech: Echelon,
}

impl Coords {
    fn new(basis: &[Morphism]) -> Self {
        let n = basis.first().map_or(0, |b| b.matrix.rows() * b.matrix.cols());
        let mut ech = Echelon::new(n + basis.len());
        for (k, b) in basis.iter().enumerate() {
            let mut row = b.matrix.vec();
            row.push((n + k, b.matrix.ctx().one()));
            ech.insert(&row);
        }
        Coords { n, ech }
    }

    fn of(&self, m: &ExactMatrix) -> Result<SparseVec, Error> {
        let r = self.ech.reduce(&m.vec());
        if r.first().is_some_and(|(j, _)| *j < self.n) {
            return Err(Error::Invalid("image is not in the hom space".into()));
        }
        Ok(r.into_iter().map(|(j, x)| (j - self.n, -x)).collect())
    }
}

/// Applies f₁⊗…⊗f_k to each column of `m`.
fn post(factors: &[&ExactMatrix], m: &ExactMatrix) -> ExactMatrix {
    let op = KronOp::new(factors);
    let cols = par::map_slice(&m.columns(), |c| op.apply(c));
    ExactMatrix::from_cols(m.ctx(), op.out_dim(), cols)
}

/// m ∘ (f₁⊗…⊗f_k).
fn pre(m: &ExactMatrix, factors: &[&ExactMatrix]) -> ExactMatrix {
    let ts: Vec<ExactMatrix> = factors.iter().map(|f| f.transpose()).collect();
    post(&ts.iter().collect::<Vec<_>>(), &m.transpose()).transpose()
}

fn id(cat: &Category, n: usize) -> ExactMatrix {
    ExactMatrix::identity(cat.ctx(), n)
}

/// Shared data for both sides at one (g, labels).
pub struct McgSetup<'o, 'a> {
    pub ops: &'o CoendOps<'a>,
    pub genus: usize,
    pub labels: Vec<String>,
    modules: Vec<Module>,
}

impl<'o, 'a> McgSetup<'o, 'a> {
    pub fn new(ops: &'o CoendOps<'a>, genus: usize, labels: &[&str]) -> Result<Self, Error> {
        let modules = labels.iter().map(|l| ops.cat.module(l)).collect::<Result<Vec<_>, _>>()?;
        Ok(McgSetup { ops, genus, labels: labels.iter().map(|s| s.to_string()).collect(), modules })
    }

    fn cat(&self) -> &'a Category {
        self.ops.cat
    }

    fn m(&self) -> usize {
        self.modules.len()
    }

    pub fn v_object(&self) -> Module {
        self.cat().tensor_all(&self.modules)
    }

    fn l_power(&self, k: usize) -> Module {
        self.cat().tensor_all(&vec![self.ops.l.clone(); k])
    }

    fn ldim(&self, k: usize) -> usize {
        self.ops.l.dim().pow(k as u32)
    }

    fn vdim(&self, range: std::ops::Range<usize>) -> usize {
        self.modules[range].iter().map(|m| m.dim()).product()
    }

    pub fn space(&self, side: Side) -> (Module, Module) {
        match side {
            Side::Lyu => (self.v_object(), self.l_power(self.genus)),
            Side::RhoX => {
                let mut all = self.modules.clone();
                all.extend(std::iter::repeat_n(self.ops.l.clone(), self.genus));
                (self.cat().tensor_all(&all), self.cat().trivial.clone())
            }
        }
    }

    pub fn basis(&self, side: Side) -> Vec<Morphism> {
        let (s, t) = self.space(side);
        self.cat().hom_space(&s, &t)
    }

    /// F_C of a braid word on V₁⊗…⊗V_m. Letters (k, ±1) are σ_k^{±1} with k
    /// 1-based, applied left to right.
    fn braid_word(&self, word: &[(usize, i32)]) -> ExactMatrix {
        let cat = self.cat();
        let mut objs = self.modules.clone();
        let total: usize = objs.iter().map(|m| m.dim()).product();
        let mut acc = id(cat, total);
        for &(k, s) in word {
            let (a, b) = (objs[k - 1].clone(), objs[k].clone());
            let c = if s > 0 { cat.braiding(&a, &b).matrix } else { cat.braiding_inv(&b, &a).matrix };
            let before: usize = objs[..k - 1].iter().map(|m| m.dim()).product();
            let after: usize = objs[k + 1..].iter().map(|m| m.dim()).product();
            acc = id(cat, before).kron(&c).kron(&id(cat, after)).mul(&acc);
            objs.swap(k - 1, k);
        }
        acc
    }

    /// σ_{j-1}⋯σ_{i+1} σ_i^e σ_{i+1}⁻¹⋯σ_{j-1}⁻¹: e=1 gives x_{i,j}, e=2 gives w_{i,j}.
    fn braid_generator(&self, i: usize, j: usize, e: usize) -> ExactMatrix {
        let mut word: Vec<(usize, i32)> = (i + 1..j).rev().map(|k| (k, -1)).collect();
        word.extend(std::iter::repeat_n((i, 1), e));
        word.extend((i + 1..j).map(|k| (k, 1)));
        self.braid_word(&word)
    }

    /// F_C(f) for the braid-type generators.
    pub fn braid_image(&self, g: Generator) -> Result<ExactMatrix, Error> {
        let cat = self.cat();
        let m = self.m();
        match g {
            Generator::X(i, j) | Generator::W(i, j) if i < j && j <= m => {
                if matches!(g, Generator::X(..)) && self.labels[i - 1] != self.labels[j - 1] {
                    return Err(Error::Invalid(format!("{g} needs equal labels")));
                }
                Ok(self.braid_generator(i, j, if matches!(g, Generator::X(..)) { 1 } else { 2 }))
            }
            Generator::V(i) if (1..=m).contains(&i) => {
                let t = cat.twist(&self.modules[i - 1]).matrix;
                Ok(id(cat, self.vdim(0..i - 1)).kron(&t).kron(&id(cat, self.vdim(i..m))))
            }
            _ => Err(Error::Invalid(format!("{g} is not a braid generator here"))),
        }
    }

    fn check_generator(&self, g: Generator) -> Result<(), Error> {
        let (m, gen) = (self.m(), self.genus);
        let ok = match g {
            Generator::X(i, j) => i < j && j <= m && self.labels[i - 1] == self.labels[j - 1],
            Generator::W(i, j) => i >= 1 && i < j && j <= m,
            Generator::V(i) => (1..=m).contains(&i),
            Generator::H(k) => (2..=gen).contains(&k),
            Generator::S(j) | Generator::T(j) => (1..=gen).contains(&j),
            Generator::Hij(i, j) => (1..=m).contains(&i) && (1..=gen).contains(&j),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Invalid(format!("generator {g} does not exist for genus {gen} with {m} labels")))
        }
    }

    /// ρ_L(f)(ℓ) for ℓ : V → 𝕃^{⊗g}.
    pub fn act_lyu(&self, g: Generator, l: &ExactMatrix) -> Result<ExactMatrix, Error> {
        self.check_generator(g)?;
        let cat = self.cat();
        let ops = self.ops;
        let gen = self.genus;
        Ok(match g {
            Generator::X(..) | Generator::W(..) | Generator::V(..) => l.mul(&inverse(&self.braid_image(g)?)?),
            Generator::H(k) => post(&[&id(cat, self.ldim(gen - k)), &ops.h_op().matrix, &id(cat, self.ldim(k - 2))], l),
            Generator::S(j) => post(&[&id(cat, self.ldim(gen - j)), &ops.s_op.matrix, &id(cat, self.ldim(j - 1))], l),
            Generator::T(j) => post(&[&id(cat, self.ldim(gen - j)), &ops.t_op.matrix, &id(cat, self.ldim(j - 1))], l),
            Generator::Hij(i, j) => {
                let m = self.m();
                let w = cat.tensor_all(&self.modules[i - 1..]);
                let wd = cat.dual(&w);
                let du = self.vdim(0..i - 1);
                let mut yparts = vec![ops.l.clone(); j - 1];
                yparts.push(wd.clone());
                let y = cat.tensor_all(&yparts);
                let hr = ops.h_right(&y)?;
                // coeviso: (ℓ⊗id_{W*})∘(id_U⊗coev_W)
                let coev = cat.duality(&w, DualityKind::CoevL).matrix;
                let f = l.kron(&id(cat, wd.dim())).mul(&id(cat, du).kron(&coev));
                let f = post(&[&id(cat, self.ldim(gen - j)), &hr.matrix], &f);
                // eviso: (id_{𝕃^g}⊗ev_W)∘(f⊗id_W)
                let ev = cat.duality(&w, DualityKind::EvL).matrix;
                debug_assert_eq!(w.dim(), self.vdim(i - 1..m));
                id(cat, self.ldim(gen)).kron(&ev).mul(&f.kron(&id(cat, w.dim())))
            }
        })
    }

    /// ρ_X(f)(x') for x' : V⊗𝕃^{⊗g} → 1.
    pub fn act_rhox(&self, g: Generator, x: &ExactMatrix) -> Result<ExactMatrix, Error> {
        self.check_generator(g)?;
        let cat = self.cat();
        let ops = self.ops;
        let gen = self.genus;
        let dv = self.vdim(0..self.m());
        Ok(match g {
            Generator::X(..) | Generator::W(..) | Generator::V(..) => {
                pre(x, &[&inverse(&self.braid_image(g)?)?, &id(cat, self.ldim(gen))])
            }
            Generator::H(k) => pre(x, &[&id(cat, dv * self.ldim(k - 2)), &ops.h_op().matrix, &id(cat, self.ldim(gen - k))]),
            Generator::S(j) => pre(x, &[&id(cat, dv * self.ldim(j - 1)), &ops.s_op.matrix, &id(cat, self.ldim(gen - j))]),
            Generator::T(j) => pre(x, &[&id(cat, dv * self.ldim(j - 1)), &ops.t_op.matrix, &id(cat, self.ldim(gen - j))]),
            Generator::Hij(i, j) => {
                let mut xparts = self.modules[i - 1..].to_vec();
                xparts.extend(std::iter::repeat_n(ops.l.clone(), j - 1));
                let xo = cat.tensor_all(&xparts);
                let hl = ops.h_left(&xo)?;
                pre(x, &[&id(cat, self.vdim(0..i - 1)), &hl.matrix, &id(cat, self.ldim(gen - j))])
            }
        })
    }

    fn build(&self, side: Side) -> Result<McgRep, Error> {
        let basis = self.basis(side);
        if basis.is_empty() {
            return Err(Error::ZeroSpace);
        }
        let coords = Coords::new(&basis);
        let gens = generators(self.genus, &self.labels);
        let mut mats = Vec::with_capacity(gens.len());
        for g in gens {
            let cols = basis
                .iter()
                .map(|b| {
                    let img = match side {
                        Side::Lyu => self.act_lyu(g, &b.matrix)?,
                        Side::RhoX => self.act_rhox(g, &b.matrix)?,
                    };
                    coords.of(&img)
                })
                .collect::<Result<Vec<_>, _>>()?;
            mats.push((g, ExactMatrix::from_cols(self.cat().ctx(), basis.len(), cols)));
        }
        Ok(McgRep { genus: self.genus, labels: self.labels.clone(), side, basis, generator_matrices: mats })
    }

    pub fn lyu_rep(&self) -> Result<McgRep, Error> {
        self.build(Side::Lyu)
    }

    pub fn rhox_rep(&self) -> Result<McgRep, Error> {
        self.build(Side::RhoX)
    }

    /// φ(x') = (x'⊗id_{𝕃^{⊗g}})∘(id_V⊗ℛ^{(g)}) as a linear map between the
    /// two hom spaces, in their bases.
    pub fn phi_map(&self, x: &ExactMatrix) -> ExactMatrix {
        let ctx = self.cat().ctx();
        let lg = self.ldim(self.genus);
        let dv = self.vdim(0..self.m());
        let r = self.ops.nested_copairing(self.genus);
        let mut by_q: BTreeMap<usize, Vec<(usize, CycloNum)>> = BTreeMap::new();
        for (idx, c) in r {
            by_q.entry(idx / lg).or_default().push((idx % lg, c));
        }
        let mut trip = Vec::new();
        for (_, col, c) in x.entries() {
            let (v, q) = (col / lg, col % lg);
            if let Some(list) = by_q.get(&q) {
                for (p, y) in list {
                    trip.push(((*p, v), c * y));
                }
            }
        }
        trip.sort_by_key(|e| e.0);
        let mut merged: Vec<(usize, usize, CycloNum)> = Vec::new();
        for ((p, v), c) in trip {
            match merged.last_mut() {
                Some((a, b, acc)) if (*a, *b) == (p, v) => *acc += &c,
                _ => merged.push((p, v, c)),
            }
        }
        ExactMatrix::from_triplets(ctx, lg, dv, merged.into_iter().filter(|e| !e.2.is_zero()))
    }

    /// The matrix of φ from the ρ_X basis to the ρ_L basis. Fails if φ is
    /// singular.
    pub fn intertwiner_phi(&self, rhox: &McgRep, lyu: &McgRep) -> Result<ExactMatrix, Error> {
        let coords = Coords::new(&lyu.basis);
        let cols = rhox.basis.iter().map(|b| coords.of(&self.phi_map(&b.matrix))).collect::<Result<Vec<_>, _>>()?;
        let phi = ExactMatrix::from_cols(self.cat().ctx(), lyu.dim(), cols);
        if phi.rows() != phi.cols() {
            return Err(Error::Singular { rank: phi.cols().min(phi.rows()), size: phi.rows().max(phi.cols()) });
        }
        inverse(&phi)?;
        Ok(phi)
    }
}

pub fn lyu_rep(ops: &CoendOps, g: usize, labels: &[&str]) -> Result<McgRep, Error> {
    McgSetup::new(ops, g, labels)?.lyu_rep()
}

pub fn rhox_rep(ops: &CoendOps, g: usize, labels: &[&str]) -> Result<McgRep, Error> {
    McgSetup::new(ops, g, labels)?.rhox_rep()
}

pub fn intertwiner_phi(ops: &CoendOps, g: usize, labels: &[&str]) -> Result<ExactMatrix, Error> {
    let s = McgSetup::new(ops, g, labels)?;
    let (x, l) = (s.rhox_rep()?, s.lyu_rep()?);
    s.intertwiner_phi(&x, &l)
}
