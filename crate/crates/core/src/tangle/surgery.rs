use super::ast::{parse_program, TangleAst};
use super::check::{check, red_link};
use super::eval::{CutPoint, Evaluator};
use crate::cyclo::CycloNum;
use crate::error::Error;
use crate::hopf::StabilizationParams;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// A red surgery link together with a blue graph, both in one n-bottom
/// slice program. Component k is the k-th red bottom pair.
#[derive(Clone, Debug)]
pub struct SurgeryPresentation {
    pub ast: TangleAst,
    pub framings: Vec<i64>,
    pub linking_matrix: Vec<Vec<i64>>,
    pub cut: Option<CutPoint>,
}

impl SurgeryPresentation {
    pub fn components(&self) -> usize {
        self.framings.len()
    }
}

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, col: 1, msg: msg.into() }
}

/// Reads a surgery file: a slice program plus `framing c f` lines (one per
/// red component, numbered from 1), an optional `linking` ... `end` block
/// and an optional `cut level position`. Framings and linking numbers are
/// recomputed from the diagram and must agree with the declared values.
pub fn parse_surgery(text: &str, evaluator: &Evaluator) -> Result<SurgeryPresentation, Error> {
    let (ast, extra) = parse_program(text, true)?;
    let walk = check(&ast.relabel_red(), evaluator.coupons)?;
    let link = red_link(&ast.relabel_red(), &walk)?;
    let n = ast.red_pairs;
    let mut declared: Vec<Option<i64>> = vec![None; n];
    for &(c, f, line) in &extra.framings {
        if c > n {
            return Err(perr(line, format!("component {c} does not exist ({n} red components)")));
        }
        if declared[c - 1].replace(f).is_some() {
            return Err(perr(line, format!("duplicate framing for component {c}")));
        }
        if link.framings[c - 1] != f {
            return Err(perr(line, format!("component {c} has blackboard framing {} in the diagram, declared {f}", link.framings[c - 1])));
        }
    }
    if let Some(k) = declared.iter().position(Option::is_none) {
        return Err(Error::Invalid(format!("missing `framing` line for component {}", k + 1)));
    }
    if let Some((rows, line)) = &extra.linking {
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(perr(*line, format!("linking matrix must be {n}×{n}")));
        }
        for i in 0..n {
            for j in 0..n {
                if rows[i][j] != rows[j][i] {
                    return Err(perr(*line, "linking matrix is not symmetric"));
                }
            }
            if rows[i][i] != link.framings[i] {
                return Err(perr(*line, format!("linking matrix diagonal entry {} differs from the framing", i + 1)));
            }
        }
        if *rows != link.linking {
            return Err(perr(*line, format!("declared linking matrix differs from the diagram: {:?}", link.linking)));
        }
    }
    let cut = extra.cut.map(|(level, pos, _)| CutPoint { level, pos });
    Ok(SurgeryPresentation { framings: link.framings.clone(), linking_matrix: link.linking, ast, cut })
}

/// Signature of a symmetric integer matrix by congruence diagonalization
/// over the rationals. A zero diagonal with a nonzero off-diagonal entry is
/// split off as a hyperbolic 2×2 block, which contributes 0.
pub fn linking_signature(m: &[Vec<i64>]) -> Result<i64, Error> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(Error::Invalid("linking matrix is not square".into()));
    }
    let mut a: Vec<Vec<BigRational>> =
        m.iter().map(|r| r.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect()).collect();
    for i in 0..n {
        for j in 0..i {
            if a[i][j] != a[j][i] {
                return Err(Error::Invalid("linking matrix is not symmetric".into()));
            }
        }
    }
    let mut alive: Vec<usize> = (0..n).collect();
    let mut sig = 0i64;
    while !alive.is_empty() {
        if let Some(&i) = alive.iter().find(|&&i| !a[i][i].is_zero()) {
            let p = a[i][i].clone();
            sig += if p.is_positive() { 1 } else { -1 };
            alive.retain(|&k| k != i);
            let col: Vec<BigRational> = alive.iter().map(|&k| a[k][i].clone()).collect();
            for (x, &k) in alive.iter().enumerate() {
                for (y, &l) in alive.iter().enumerate() {
                    let d = &(&col[x] * &col[y]) / &p;
                    a[k][l] -= d;
                }
            }
            continue;
        }
        let pair = alive.iter().enumerate().find_map(|(x, &i)| alive[x + 1..].iter().find(|&&j| !a[i][j].is_zero()).map(|&j| (i, j)));
        let Some((i, j)) = pair else { break };
        let b = a[i][j].clone();
        alive.retain(|&k| k != i && k != j);
        let ci: Vec<BigRational> = alive.iter().map(|&k| a[k][i].clone()).collect();
        let cj: Vec<BigRational> = alive.iter().map(|&k| a[k][j].clone()).collect();
        for (x, &k) in alive.iter().enumerate() {
            for (y, &l) in alive.iter().enumerate() {
                let d = &(&(&ci[x] * &cj[y]) + &(&cj[x] * &ci[y])) / &b;
                a[k][l] -= d;
            }
        }
    }
    Ok(sig)
}

fn int_pow(x: &CycloNum, k: i64) -> Result<CycloNum, Error> {
    let base = if k < 0 { x.inv()? } else { x.clone() };
    let mut out = x.ctx().one();
    for _ in 0..k.unsigned_abs() {
        out = &out * &base;
    }
    Ok(out)
}

/// 𝒟^{−1−ℓ} δ^{−σ} F'_Λ(L ∪ T).
pub fn surgery_invariant(p: &SurgeryPresentation, params: &StabilizationParams, evaluator: &Evaluator) -> Result<CycloNum, Error> {
    let cut = match p.cut {
        Some(c) => c,
        None => evaluator.default_cut(&p.ast)?,
    };
    let f = evaluator.renorm_eval(&p.ast, cut)?;
    let l = p.components() as i64;
    let sigma = linking_signature(&p.linking_matrix)?;
    Ok(&(&int_pow(&params.script_d, -1 - l)? * &int_pow(&params.small_delta, -sigma)?) * &f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signatures() {
        assert_eq!(linking_signature(&[vec![1]]).unwrap(), 1);
        assert_eq!(linking_signature(&[vec![0, 1], vec![1, 0]]).unwrap(), 0);
        assert_eq!(linking_signature(&[vec![3]]).unwrap(), 1);
        assert_eq!(linking_signature(&[vec![-2, 1], vec![1, -2]]).unwrap(), -2);
        assert_eq!(linking_signature(&[]).unwrap(), 0);
        assert_eq!(linking_signature(&[vec![0, 0], vec![0, 0]]).unwrap(), 0);
        // E8 is positive definite
        let mut e8 = vec![vec![0i64; 8]; 8];
        for i in 0..8 {
            e8[i][i] = 2;
        }
        for (i, j) in [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (2, 7)] {
            e8[i][j] = -1;
            e8[j][i] = -1;
        }
        assert_eq!(linking_signature(&e8).unwrap(), 8);
        assert!(linking_signature(&[vec![0, 1], vec![2, 0]]).is_err());
    }
}
