use super::coend::CoendOps;
use super::reps::{Generator, McgRep};
use crate::cyclo::matrix::SparseVec;
use crate::cyclo::{proportional, rank, CycloNum, ExactMatrix, KronOp, Proportionality};
use crate::error::Error;
use crate::par;
use crate::rep::{DualityKind, Morphism};

/// One named exact check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub ok: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, ok: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), ok, detail: detail.into() }
    }

    fn proportional(name: impl Into<String>, a: &ExactMatrix, b: &ExactMatrix) -> Self {
        match proportional(a, b) {
            Proportionality::Scalar(c) if !c.is_zero() => Check::new(name, true, format!("scalar {c}")),
            Proportionality::Scalar(_) => Check::new(name, false, "scalar 0"),
            Proportionality::Not { witness } => Check::new(name, false, format!("differs at entry {witness:?}")),
        }
    }

    fn equal_vec(name: impl Into<String>, a: &SparseVec, b: &SparseVec) -> Self {
        let ok = a == b;
        Check::new(name, ok, if ok { format!("{} nonzero entries", a.len()) } else { "vectors differ".to_string() })
    }
}

fn word(mats: &[&ExactMatrix]) -> ExactMatrix {
    let mut acc = mats[0].clone();
    for m in &mats[1..] {
        acc = acc.mul(m);
    }
    acc
}

/// (ST)³ ∝ S² and S⁴ ∝ id.
pub fn sl2z_relations(s: &ExactMatrix, t: &ExactMatrix, tag: &str) -> Vec<Check> {
    let st = s.mul(t);
    let s2 = s.mul(s);
    let id = ExactMatrix::identity(s.ctx(), s.rows());
    vec![
        Check::proportional(format!("{tag}(ST)^3 ∝ S^2"), &word(&[&st, &st, &st]), &s2),
        Check::proportional(format!("{tag}S^4 ∝ id"), &s2.mul(&s2), &id),
    ]
}

/// The relations on 𝕃 itself: (𝒮𝒯)³ ∝ 𝒮², and 𝒮⁴ ∝ θ_𝕃⁻¹, which becomes
/// 𝒮⁴ ∝ id on C(1, 𝕃) where the twist acts trivially.
pub fn coend_sl2z_checks(ops: &CoendOps) -> Vec<Check> {
    let s = &ops.s_op.matrix;
    let mut out = sl2z_relations(s, &ops.t_op.matrix, "coend ");
    out.pop();
    let s2 = s.mul(s);
    let twist_inv = ops.cat.twist_inv(&ops.l).matrix;
    out.push(Check::proportional("coend S^4 ∝ θ_L^-1", &s2.mul(&s2), &twist_inv));
    out
}

fn kron_vec(factors: &[&ExactMatrix], v: &SparseVec) -> SparseVec {
    KronOp::new(factors).apply(v)
}

/// Non-degeneracy of ℛ and the four copairing identities. The partial
/// monodromy identity is taken at X = P1, Y = P1* with f = coev, and at
/// X = Y = P1 over a basis of C(1, P1⊗P1).
pub fn radford_checks(ops: &CoendOps) -> Result<Vec<Check>, Error> {
    let cat = ops.cat;
    let ctx = cat.ctx();
    let d = ops.l.dim();
    let idl = ExactMatrix::identity(ctx, d);
    let r = ops.copairing.matrix.column(0);
    let mut out = Vec::new();

    let square = ExactMatrix::from_triplets(ctx, d, d, r.iter().map(|(k, c)| (k / d, k % d, c.clone())));
    let rk = rank(&square);
    out.push(Check::new("copairing non-degenerate", rk == d, format!("rank {rk} of {d}")));
    out.push(Check::new("copairing is an intertwiner", ops.copairing.is_intertwiner(), ""));

    let r2 = ops.nested_copairing(2);
    let left = kron_vec(&[&ops.omega.matrix, &idl, &idl], &r2);
    let right = kron_vec(&[&idl, &idl, &ops.omega.matrix], &r2);
    out.push(Check::equal_vec("(Ω⊗id)ℛ⁽²⁾ = (id⊗Ω)ℛ⁽²⁾", &left, &right));

    let p1 = cat.p1()?.clone();
    let p1d = cat.dual(&p1);
    let mut fs: Vec<(String, Morphism, crate::rep::Module, crate::rep::Module)> =
        vec![("coev".into(), cat.duality(&p1, DualityKind::CoevL), p1.clone(), p1d.clone())];
    let pp = cat.tensor(&p1, &p1);
    for (k, f) in cat.hom_space(&cat.trivial, &pp).into_iter().enumerate() {
        fs.push((format!("f{}", k + 1), f, p1.clone(), p1.clone()));
    }
    for (name, f, x, y) in fs {
        let ol = ops.omega_left(&x)?;
        let or = ops.omega_right(&y)?;
        let idx = ExactMatrix::identity(ctx, x.dim());
        let idy = ExactMatrix::identity(ctx, y.dim());
        let rf = kron_vec(&[&idx, &ops.copairing.matrix, &idy], &f.matrix.column(0));
        let a = kron_vec(&[&ol.matrix, &idl, &idy], &rf);
        let b = kron_vec(&[&idx, &idl, &or.matrix], &rf);
        out.push(Check::equal_vec(format!("(Ω_L,X⊗id)ℛ_f = (id⊗Ω_R,Y)ℛ_f at X={}, Y={}, f={name}", x.name(), y.name()), &a, &b));
    }

    for (label, op) in [("S", &ops.s_op.matrix), ("T", &ops.t_op.matrix)] {
        let a = kron_vec(&[op, &idl], &r);
        let b = kron_vec(&[&idl, op], &r);
        out.push(Check::equal_vec(format!("({label}⊗id)ℛ = (id⊗{label})ℛ"), &a, &b));
    }
    Ok(out)
}

/// 𝒯∘i_V = i_V∘(id⊗θ_V).
pub fn dinaturality_checks(ops: &CoendOps) -> Result<Vec<Check>, Error> {
    let cat = ops.cat;
    let mut mods = vec![cat.trivial.clone(), cat.regular.clone()];
    if let Ok(p) = cat.p1() {
        mods.insert(1, p.clone());
    }
    Ok(par::map_slice(&mods, |v| {
        let i = cat.i_map(v).matrix;
        let idd = ExactMatrix::identity(cat.ctx(), v.dim());
        let lhs = ops.t_op.matrix.mul(&i);
        let rhs = i.mul(&idd.kron(&cat.twist(v).matrix));
        Check::new(format!("T∘i_{} = i_{}∘(id⊗θ)", v.name(), v.name()), lhs == rhs, "")
    }))
}

/// Relations among the generators of one representation: genus-one SL(2,ℤ)
/// relations on (S_j, T_j), x² ∝ w, the braid relation, and commutation of
/// twists with pure braids.
pub fn rep_relations(rep: &McgRep) -> Vec<Check> {
    let tag = format!("{} g={} [{}]: ", rep.side, rep.genus, rep.labels.join(","));
    let mut out = Vec::new();
    let m = rep.labels.len();
    for j in 1..=rep.genus {
        if let (Some(s), Some(t)) = (rep.matrix(Generator::S(j)), rep.matrix(Generator::T(j))) {
            let checks = sl2z_relations(s, t, &format!("{tag}j={j} "));
            // S⁴ is a boundary twist unless the surface is a closed torus
            out.extend(checks.into_iter().take(if m == 0 && rep.genus == 1 { 2 } else { 1 }));
        }
    }
    for i in 1..=m {
        for j in i + 1..=m {
            if let (Some(x), Some(w)) = (rep.matrix(Generator::X(i, j)), rep.matrix(Generator::W(i, j))) {
                out.push(Check::proportional(format!("{tag}x_{i},{j}^2 ∝ w_{i},{j}"), &x.mul(x), w));
            }
        }
    }
    if m >= 3 {
        if let (Some(a), Some(b)) = (rep.matrix(Generator::X(1, 2)), rep.matrix(Generator::X(2, 3))) {
            out.push(Check::proportional(format!("{tag}braid relation x12 x23 x12 ∝ x23 x12 x23"), &word(&[a, b, a]), &word(&[b, a, b])));
        }
    }
    for i in 1..=m {
        let Some(v) = rep.matrix(Generator::V(i)) else { continue };
        for a in 1..=m {
            for b in a + 1..=m {
                if let Some(w) = rep.matrix(Generator::W(a, b)) {
                    out.push(Check::proportional(format!("{tag}v_{i} w_{a},{b} ∝ w_{a},{b} v_{i}"), &v.mul(w), &w.mul(v)));
                }
            }
        }
    }
    out
}

/// φ∘ρ_X(f) ∝ ρ_L(f)∘φ for every generator.
pub fn intertwining_checks(phi: &ExactMatrix, rhox: &McgRep, lyu: &McgRep) -> Vec<Check> {
    let tag = format!("g={} [{}]: ", lyu.genus, lyu.labels.join(","));
    rhox.generator_matrices
        .iter()
        .map(|(g, x)| match lyu.matrix(*g) {
            Some(l) => Check::proportional(format!("{tag}φ ρ_X({g}) ∝ ρ_L({g}) φ"), &phi.mul(x), &l.mul(phi)),
            None => Check::new(format!("{tag}{g}"), false, "missing on the Lyubashenko side"),
        })
        .collect()
}

/// Scalar c with A = c·B, or the first differing entry.
pub fn proportional_scalar(a: &ExactMatrix, b: &ExactMatrix) -> Result<CycloNum, (usize, usize)> {
    match proportional(a, b) {
        Proportionality::Scalar(c) => Ok(c),
        Proportionality::Not { witness } => Err(witness),
    }
}
