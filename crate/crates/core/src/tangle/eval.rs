use super::ast::{Color, Orientation, Piece, Sign, Slice, Strand, TangleAst};
use super::check::{check, red_link, Walk};
use super::coupons::CouponRegistry;
use crate::cyclo::matrix::{canonicalize, SparseVec};
use crate::cyclo::{CycloNum, ExactMatrix};
use crate::error::Error;
use crate::par;
use crate::rep::{Category, DualityKind, Module, Morphism};
use std::collections::HashMap;
use std::sync::{Arc, Mutex};

/// Default bound on the dimension of any intermediate boundary.
pub const DEFAULT_WIDTH_CAP: u128 = 1 << 24;

/// A boundary point of a closed graph, given as a level (0 is the bottom,
/// k is the boundary after slice k) and a position from the left.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CutPoint {
    pub level: usize,
    pub pos: usize,
}

enum Factor {
    Id(usize),
    /// Transposed piece matrix, so that row i is the image of input i.
    Map(Arc<ExactMatrix>),
}

impl Factor {
    fn in_dim(&self) -> usize {
        match self {
            Factor::Id(n) => *n,
            Factor::Map(m) => m.rows(),
        }
    }

    fn out_dim(&self) -> usize {
        match self {
            Factor::Id(n) => *n,
            Factor::Map(m) => m.cols(),
        }
    }
}

struct SliceOp(Vec<Factor>);

const CHUNK: usize = 64;

impl SliceOp {
    fn apply_chunk(&self, v: &[(usize, CycloNum)]) -> Vec<(usize, CycloNum)> {
        let n = self.0.len();
        let mut acc = Vec::new();
        let mut digits = vec![0; n];
        for (idx, c) in v {
            let mut rest = *idx;
            for k in (0..n).rev() {
                let d = self.0[k].in_dim();
                digits[k] = rest % d;
                rest /= d;
            }
            let mut partial: Vec<(usize, CycloNum)> = vec![(0, c.clone())];
            for (k, f) in self.0.iter().enumerate() {
                let od = f.out_dim();
                match f {
                    Factor::Id(_) => {
                        for p in &mut partial {
                            p.0 = p.0 * od + digits[k];
                        }
                    }
                    Factor::Map(m) => {
                        let (ci, vi) = m.row(digits[k]);
                        let mut next = Vec::with_capacity(partial.len() * ci.len());
                        for (p, x) in &partial {
                            for (&i, y) in ci.iter().zip(vi) {
                                next.push((p * od + i, x * y));
                            }
                        }
                        partial = next;
                    }
                }
            }
            acc.extend(partial);
        }
        acc
    }

    fn apply(&self, v: &[(usize, CycloNum)]) -> SparseVec {
        if v.len() <= CHUNK {
            return canonicalize(self.apply_chunk(v));
        }
        let chunks: Vec<&[(usize, CycloNum)]> = v.chunks(CHUNK).collect();
        let parts = par::map_slice(&chunks, |c| self.apply_chunk(c));
        canonicalize(parts.into_iter().flatten().collect())
    }
}

/// Evaluates slice programs in the module category of a Hopf algebra.
/// Piece matrices are cached across evaluations.
pub struct Evaluator<'a> {
    pub cat: &'a Category,
    pub coupons: &'a CouponRegistry,
    pub cap: u128,
    cache: Mutex<HashMap<String, Arc<ExactMatrix>>>,
}

impl<'a> Evaluator<'a> {
    pub fn new(cat: &'a Category, coupons: &'a CouponRegistry) -> Self {
        Evaluator { cat, coupons, cap: DEFAULT_WIDTH_CAP, cache: Mutex::new(HashMap::new()) }
    }

    pub fn with_cap(mut self, cap: u128) -> Self {
        self.cap = cap;
        self
    }

    /// The module at a boundary point: V for an upward strand, V* for a
    /// downward one.
    pub fn object(&self, s: &Strand) -> Result<Module, Error> {
        let base = self.cat.module(&s.label)?;
        Ok(match s.orientation {
            Orientation::Up => base,
            Orientation::Down => self.cat.dual(&base),
        })
    }

    fn objects(&self, strands: &[Strand]) -> Result<Vec<Module>, Error> {
        strands.iter().map(|s| self.object(s)).collect()
    }

    fn piece_matrix(&self, p: &Piece, ins: &[Module], label: Option<&Module>) -> Result<Arc<ExactMatrix>, Error> {
        let names: Vec<&str> = ins.iter().map(|m| m.name()).collect();
        let key = format!("{p}|{}|{}", names.join(","), label.map_or("", |m| m.name()));
        if let Some(m) = self.cache.lock().unwrap().get(&key) {
            return Ok(m.clone());
        }
        let c = self.cat;
        let m = match p {
            Piece::Id => c.identity(&ins[0]),
            Piece::Cross(Sign::Plus) => c.braiding(&ins[0], &ins[1]),
            Piece::Cross(Sign::Minus) => c.braiding_inv(&ins[1], &ins[0]),
            Piece::Twist(Sign::Plus) => c.twist(&ins[0]),
            Piece::Twist(Sign::Minus) => c.twist_inv(&ins[0]),
            Piece::Ev { prime: false } => c.duality(&ins[1], DualityKind::EvL),
            Piece::Ev { prime: true } => c.duality(&ins[0], DualityKind::EvR),
            Piece::Coev { prime: false, .. } => c.duality(label.unwrap(), DualityKind::CoevL),
            Piece::Coev { prime: true, .. } => c.duality(label.unwrap(), DualityKind::CoevR),
            Piece::Coupon(name) => self.coupons.get(name)?.morphism.clone(),
        };
        let t = Arc::new(m.matrix.transpose());
        self.cache.lock().unwrap().insert(key, t.clone());
        Ok(t)
    }

    fn slice_op(&self, slice: &Slice, below: &[Module]) -> Result<SliceOp, Error> {
        let mut factors: Vec<Factor> = Vec::new();
        let mut pos = 0;
        for p in &slice.pieces {
            let n = match p {
                Piece::Id | Piece::Twist(_) => 1,
                Piece::Cross(_) | Piece::Ev { .. } => 2,
                Piece::Coev { .. } => 0,
                Piece::Coupon(name) => self.coupons.get(name)?.inputs.len(),
            };
            let ins = &below[pos..pos + n];
            pos += n;
            if let Piece::Id = p {
                let d = ins[0].dim();
                match factors.last_mut() {
                    Some(Factor::Id(prev)) => *prev *= d,
                    _ => factors.push(Factor::Id(d)),
                }
                continue;
            }
            let label = match p {
                Piece::Coev { label, .. } => Some(self.cat.module(label)?),
                _ => None,
            };
            factors.push(Factor::Map(self.piece_matrix(p, ins, label.as_ref())?));
        }
        Ok(SliceOp(factors))
    }

    fn check_width(&self, walk: &Walk) -> Result<Vec<Vec<Module>>, Error> {
        let mut mods = Vec::with_capacity(walk.levels.len());
        for (k, level) in walk.levels.iter().enumerate() {
            let ms = self.objects(level)?;
            let width: u128 = ms.iter().map(|m| m.dim() as u128).product();
            if width > self.cap {
                return Err(Error::WidthCap { slice: k, width, cap: self.cap });
            }
            mods.push(ms);
        }
        Ok(mods)
    }

    /// Pushes each input vector through all slices.
    fn propagate(&self, ast: &TangleAst, mods: &[Vec<Module>], inputs: Vec<SparseVec>) -> Result<Vec<SparseVec>, Error> {
        let ops: Vec<SliceOp> =
            ast.slices.iter().zip(mods).map(|(s, below)| self.slice_op(s, below)).collect::<Result<_, _>>()?;
        let mut states = inputs;
        for op in &ops {
            states = states.iter().map(|v| op.apply(v)).collect();
        }
        Ok(states)
    }

    fn morphism(&self, src: &[Module], dst: &[Module], cols: Vec<SparseVec>) -> Morphism {
        let source = self.cat.tensor_all(src);
        let target = self.cat.tensor_all(dst);
        let m = ExactMatrix::from_cols(self.cat.ctx(), target.dim(), cols);
        Morphism::new(source, target, m)
    }

    /// F_C of a tangle, composing slices bottom to top. Red strands are
    /// evaluated with their written labels.
    pub fn evaluate_rt(&self, ast: &TangleAst) -> Result<Morphism, Error> {
        let walk = check(ast, self.coupons)?;
        let mods = self.check_width(&walk)?;
        let bottom = &mods[0];
        let n: usize = bottom.iter().map(|m| m.dim()).product();
        let ctx = self.cat.ctx();
        let inputs: Vec<SparseVec> = (0..n).map(|i| vec![(i, ctx.one())]).collect();
        let cols = self.propagate(ast, &mods, inputs)?;
        Ok(self.morphism(bottom, mods.last().unwrap(), cols))
    }

    /// λ⊗1 ∈ H*⊗H, as a vector in the left-major product basis.
    fn lambda_one(&self) -> SparseVec {
        let h = &self.cat.hopf;
        let mut v = Vec::new();
        for (x, l) in &h.integral_lambda {
            for (y, u) in &h.unit {
                v.push((x * h.dim + y, l * u));
            }
        }
        canonicalize(v)
    }

    /// F_Λ of a graph in n-bottom form: red strands are labeled by the
    /// regular representation, F_C is applied, and each of the n leading
    /// (H*, H) input pairs is fed λ⊗1.
    pub fn evaluate_bichrome(&self, ast: &TangleAst) -> Result<Morphism, Error> {
        let ast = ast.relabel_red();
        let walk = check(&ast, self.coupons)?;
        red_link(&ast, &walk)?;
        let mods = self.check_width(&walk)?;
        let n = ast.red_pairs;
        let d2 = self.cat.hopf.dim * self.cat.hopf.dim;
        let lam = self.lambda_one();
        let mut red_in: SparseVec = vec![(0, self.cat.ctx().one())];
        for _ in 0..n {
            let mut next = Vec::new();
            for (i, a) in &red_in {
                for (j, b) in &lam {
                    next.push((i * d2 + j, a * b));
                }
            }
            red_in = canonicalize(next);
        }
        let blue = &mods[0][2 * n..];
        let nb: usize = blue.iter().map(|m| m.dim()).product();
        let inputs: Vec<SparseVec> =
            (0..nb).map(|b| red_in.iter().map(|(i, c)| (i * nb + b, c.clone())).collect()).collect();
        let cols = self.propagate(&ast, &mods, inputs)?;
        Ok(self.morphism(blue, mods.last().unwrap(), cols))
    }

    /// Whether the modified trace is available on this module.
    pub fn is_projective(&self, m: &Module) -> bool {
        m.is_regular() || self.cat.retract(m).is_ok()
    }

    /// Opens a closed graph at a blue boundary point. The lower end is
    /// pushed right, behind everything right of the cut, and leaves at the
    /// top right. The upper end enters at the bottom right, crosses the
    /// lower end once, then moves left behind the same strands. The crossing
    /// is a kink of the closed component, cancelled by an opposite twist, so
    /// the right closure of the result is the original framed graph.
    pub fn cut_open(&self, ast: &TangleAst, cut: CutPoint) -> Result<TangleAst, Error> {
        self.cut_open_with(ast, cut, Sign::Plus)
    }

    /// As [`Self::cut_open`], with the sign of the crossing between the two
    /// ends chosen explicitly.
    pub fn cut_open_with(&self, ast: &TangleAst, cut: CutPoint, tip: Sign) -> Result<TangleAst, Error> {
        let walk = check(&ast.relabel_red(), self.coupons)?;
        let n = ast.red_pairs;
        if ast.bottom.len() != 2 * n || !walk.levels.last().unwrap().is_empty() {
            return Err(Error::Invalid("only closed graphs (red bottom pairs only, empty top) can be cut".into()));
        }
        if cut.level == 0 || cut.level > ast.slices.len() {
            return Err(Error::Invalid(format!("cut level {} is not between two slices", cut.level)));
        }
        let level = &walk.levels[cut.level];
        let s = level.get(cut.pos).ok_or_else(|| Error::Invalid(format!("no strand at position {} of level {}", cut.pos, cut.level)))?;
        if s.color == Color::Red {
            return Err(Error::Invalid("the cut must be on a blue strand".into()));
        }
        let v = s.clone();
        let width = level.len();
        let swap = |at: usize, p: Piece| -> Vec<Piece> {
            let mut out = vec![Piece::Id; at];
            out.push(p);
            out.extend(vec![Piece::Id; width - at - 1]);
            out
        };
        let mut slices: Vec<Vec<Piece>> = Vec::new();
        for s in &ast.slices[..cut.level] {
            let mut p = s.pieces.clone();
            p.push(Piece::Id);
            slices.push(p);
        }
        // (W1, out, W2, in): out moves right behind W2
        for p in cut.pos..width - 1 {
            slices.push(swap(p, Piece::Cross(Sign::Minus)));
        }
        // (W1, W2, out, in): the two ends cross, then the kink is undone
        let undo = match tip {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        };
        slices.push(swap(width - 1, Piece::Cross(tip)));
        let mut untwist = vec![Piece::Id; width];
        untwist.push(Piece::Twist(undo));
        slices.push(untwist);
        // (W1, W2, in, out): in moves left behind W2
        for p in (cut.pos..width - 1).rev() {
            slices.push(swap(p, Piece::Cross(Sign::Plus)));
        }
        for s in &ast.slices[cut.level..] {
            let mut p = s.pieces.clone();
            p.push(Piece::Id);
            slices.push(p);
        }
        let mut bottom = ast.bottom.clone();
        bottom.push(v.clone());
        Ok(TangleAst::new(bottom, slices, Some(vec![v])))
    }

    /// F'_Λ(T) = t_V(F_Λ(T_V)) for the graph opened at `cut`.
    pub fn renorm_eval(&self, ast: &TangleAst, cut: CutPoint) -> Result<CycloNum, Error> {
        let opened = self.cut_open(ast, cut)?;
        let v = self.object(&opened.bottom[opened.bottom.len() - 1])?;
        if !self.is_projective(&v) {
            return Err(Error::NotProjective(format!("cut label {} is not projective", v.name())));
        }
        let f = self.evaluate_bichrome(&opened)?;
        let f = f.retype(&v, &v);
        self.cat.modified_trace(&f)
    }

    /// The first blue boundary point (scanning levels bottom to top, then
    /// left to right) whose label is projective.
    pub fn default_cut(&self, ast: &TangleAst) -> Result<CutPoint, Error> {
        let walk = check(&ast.relabel_red(), self.coupons)?;
        for (level, strands) in walk.levels.iter().enumerate().skip(1) {
            for (pos, s) in strands.iter().enumerate() {
                if s.color == Color::Blue && self.is_projective(&self.object(s)?) {
                    return Ok(CutPoint { level, pos });
                }
            }
        }
        Err(Error::Inadmissible("no blue edge with a projective label".into()))
    }
}
